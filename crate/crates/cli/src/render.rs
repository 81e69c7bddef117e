//! Plain-text views of the JSON documents.

use std::fmt::Write;

use serde::Serialize;

use gentle_core::decide::DecisionReport;
use gentle_core::surface::SurfaceModel;
use gentle_core::ValidationReport;

use crate::report::{AnalysisReport, Stage};

/// Serialized name of a unit enum variant, e.g. `Yes` or `OUT_DEGREE`.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".into(),
    }
}

pub fn validation(r: &ValidationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "class:              {}", tag(&r.algebra_class));
    let _ = writeln!(s, "finite dimensional: {}", r.finite_dimensional);
    let _ = writeln!(s, "smooth proper:      {}", r.smooth_proper);
    let _ = write!(s, "connected:          {}", r.connected);
    for v in &r.violations {
        let _ = write!(
            s,
            "\n  {:<24} {:<12} {}",
            tag(&v.code),
            v.location,
            v.message
        );
    }
    s
}

pub fn surface(m: &SurfaceModel) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "genus {}, {} boundary components, {} orbifold points, euler characteristic {}",
        m.genus,
        m.boundaries.len(),
        m.orbifold_count,
        m.euler_characteristic
    );
    let _ = write!(s, "{:>4} {:>6} {:>8} {:>4}", "id", "marked", "winding", "m");
    for b in &m.boundaries {
        let _ = write!(
            s,
            "\n{:>4} {:>6} {:>8} {:>4}",
            b.id,
            b.black_points.len(),
            b.winding,
            b.m
        );
    }
    s
}

pub fn decisions(d: &DecisionReport) -> String {
    let mut s = String::new();
    let rows = [
        ("tau-tilting finite", tag(&d.tau_tilting_finite)),
        ("representation finite", tag(&d.representation_finite)),
        ("silting discrete", tag(&d.silting_discrete)),
        ("derived discrete", tag(&d.derived_discrete)),
        ("presilting is partial silting", tag(&d.presilting_partial)),
    ];
    for (name, v) in rows {
        let _ = writeln!(s, "{name:<30} {v}");
    }
    if let Some(c) = d.tau.as_ref().and_then(|t| t.minimal_band.as_ref()) {
        let _ = writeln!(s, "minimal band: {:?} of period {}", c.shape, c.band.period);
    }
    if let Some(js) = &d.silting.subset {
        let _ = writeln!(
            s,
            "boundary subset {js:?} with m values {:?}",
            d.silting.m_values
        );
    }
    for n in &d.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s.trim_end().to_string()
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = validation(&r.validation);
    let section = |s: &mut String, title: &str, body: String| {
        let _ = write!(s, "\n\n[{title}]\n{body}");
    };
    let words = match &r.words {
        Stage::Done(w) => match &w.band {
            Some(b) => format!("band: {}", b.display(&r.presentation)),
            None => "no bands".into(),
        },
        Stage::NotApplicable(why) => format!("not applicable: {why}"),
    };
    section(&mut s, "words", words);
    let body = match &r.surface {
        Stage::Done(m) => surface(m),
        Stage::NotApplicable(why) => format!("not applicable: {why}"),
    };
    section(&mut s, "surface", body);
    let body = match &r.decisions {
        Stage::Done(d) => decisions(d),
        Stage::NotApplicable(why) => format!("not applicable: {why}"),
    };
    section(&mut s, "decisions", body);
    let _ = write!(s, "\n\ninput sha256:{}", r.input_digest);
    s
}
