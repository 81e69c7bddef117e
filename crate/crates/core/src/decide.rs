//! Finiteness decisions: τ-tilting finiteness through bands, silting
//! discreteness and derived discreteness through the surface model.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::minimality::{find_minimal_band, MinimalBandCertificate};
use crate::presentation::{validate, AlgebraClass, Arrow, Presentation, ValidationReport};
use crate::surface::{build_surface, scc_winding_genus0, SurfaceModel};
use crate::words::{band_exists, Band};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SiltingVerdict {
    Yes,
    No,
    /// Every known obstruction is absent, but the implication back to
    /// silting discreteness is open for one orbifold point.
    ConjecturalYes,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DerivedVerdict {
    DynkinType,
    DiscreteLambda,
    No,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PartialVerdict {
    Yes,
    No,
    NeedsHandleWindings,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauDecision {
    pub finite: bool,
    pub band: Option<Band>,
    pub minimal_band: Option<MinimalBandCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiltingDecision {
    pub verdict: SiltingVerdict,
    pub genus: Option<usize>,
    pub orbifold_count: usize,
    pub m_values: Vec<i64>,
    /// Boundary ids (1-based) whose m-values sum to 2.
    pub subset: Option<Vec<usize>>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialDecision {
    pub verdict: PartialVerdict,
    pub genus: Option<usize>,
    /// `gcd(w(s), w(t), m_1, ..., m_b)` when it was evaluated.
    pub a_tilde: Option<i64>,
    pub gcd_m: Option<i64>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Check {
    /// Same vertices, the arrows of degree 0 and the relations among them.
    pub degree_zero_part: Presentation,
    pub band: Option<Band>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub tau_tilting_finite: Verdict,
    pub representation_finite: Verdict,
    pub silting_discrete: SiltingVerdict,
    pub derived_discrete: DerivedVerdict,
    pub presilting_partial: PartialVerdict,
    pub tau: Option<TauDecision>,
    pub silting: SiltingDecision,
    pub partial: PartialDecision,
    pub notes: Vec<String>,
}

fn require_valid(p: &Presentation) -> Result<ValidationReport> {
    let r = validate(p);
    if !r.is_admissible() || r.algebra_class == AlgebraClass::Invalid {
        return Err(Error::InvalidInput(
            "presentation is not gentle or skew-gentle".into(),
        ));
    }
    Ok(r)
}

/// Finite iff there is no band; the same bit decides representation
/// finiteness. Defined for ungraded input only.
pub fn tau_tilting_finite(p: &Presentation) -> Result<TauDecision> {
    if let Some(a) = p.arrows().iter().find(|a| a.degree != 0) {
        return Err(Error::GradedInput(format!(
            "arrow {} has degree {}",
            a.id, a.degree
        )));
    }
    let band = band_exists(p)?;
    let minimal_band = match band {
        Some(_) => find_minimal_band(p)?,
        None => None,
    };
    Ok(TauDecision {
        finite: band.is_none(),
        band,
        minimal_band,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd of a list; 0 for the empty list and for all zeros.
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |g, &v| gcd(g, v))
}

/// First subset (in binary counting order over boundary ids) with
/// `sum of m = 2`.
pub fn equipartition_subset(model: &SurfaceModel) -> Option<Vec<usize>> {
    let m = model.m_values();
    let b = m.len();
    (1u64..1 << b)
        .map(|mask| (0..b).filter(|j| mask >> j & 1 == 1).collect::<Vec<_>>())
        .find(|js| js.iter().map(|&j| m[j]).sum::<i64>() == 2)
        .map(|js| js.into_iter().map(|j| j + 1).collect())
}

/// The same search phrased through curves: the first subset whose
/// separating curve has winding number zero.
pub fn zero_winding_subset(model: &SurfaceModel) -> Result<Option<Vec<usize>>> {
    let b = model.boundaries.len();
    for mask in 1u64..1 << b {
        let js: Vec<usize> = (0..b)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| j + 1)
            .collect();
        if scc_winding_genus0(model, &js)? == 0 {
            return Ok(Some(js));
        }
    }
    Ok(None)
}

pub fn silting_discrete(p: &Presentation) -> Result<SiltingDecision> {
    let r = require_valid(p)?;
    let orbifold_count = p.orbifold_count();
    let mut d = SiltingDecision {
        verdict: SiltingVerdict::NotApplicable,
        genus: None,
        orbifold_count,
        m_values: Vec::new(),
        subset: None,
        reason: None,
    };
    // two orbifold points already obstruct, smooth or not
    if orbifold_count >= 2 {
        d.verdict = SiltingVerdict::No;
        d.reason = Some(format!("{orbifold_count} orbifold points"));
        return Ok(d);
    }
    if !r.smooth_proper || !r.connected {
        d.reason = Some("needs a connected smooth-proper presentation".into());
        return Ok(d);
    }
    let model = build_surface(p)?;
    d.genus = Some(model.genus);
    d.m_values = model.m_values();
    if model.genus > 0 {
        d.verdict = SiltingVerdict::No;
        d.reason = Some(format!("genus {}", model.genus));
        return Ok(d);
    }
    if let Some(js) = equipartition_subset(&model) {
        d.verdict = SiltingVerdict::No;
        d.reason = Some("boundary m-values split evenly".into());
        d.subset = Some(js);
        return Ok(d);
    }
    d.verdict = if orbifold_count == 0 {
        SiltingVerdict::Yes
    } else {
        SiltingVerdict::ConjecturalYes
    };
    Ok(d)
}

fn ungraded_gentle_surface(p: &Presentation) -> Result<std::result::Result<SurfaceModel, String>> {
    let r = require_valid(p)?;
    if r.algebra_class != AlgebraClass::Gentle {
        return Ok(Err("defined for gentle presentations".into()));
    }
    if !p.is_trivially_graded() {
        return Ok(Err("defined for ungraded presentations".into()));
    }
    if !r.smooth_proper || !r.connected {
        return Ok(Err("needs a connected smooth-proper presentation".into()));
    }
    Ok(Ok(build_surface(p)?))
}

/// Disk: derived equivalent to a Dynkin type A quiver. Annulus whose core
/// curve has nonzero winding: derived equivalent to some `Lambda(r, n, m)`.
pub fn derived_discrete(p: &Presentation) -> Result<DerivedVerdict> {
    let model = match ungraded_gentle_surface(p)? {
        Ok(m) => m,
        Err(_) => return Ok(DerivedVerdict::NotApplicable),
    };
    let m = model.m_values();
    Ok(match (model.genus, m.len()) {
        (0, 1) => DerivedVerdict::DynkinType,
        (0, 2) if m.iter().all(|&x| x != 2) => DerivedVerdict::DiscreteLambda,
        _ => DerivedVerdict::No,
    })
}

/// Whether every presilting object is partial silting. At genus one the
/// answer depends on the windings `(w(s), w(t))` of a pair of handle curves,
/// which must be supplied.
pub fn presilting_partial_silting(
    p: &Presentation,
    handle_windings: Option<(i64, i64)>,
) -> Result<PartialDecision> {
    let r = require_valid(p)?;
    let mut d = PartialDecision {
        verdict: PartialVerdict::NotApplicable,
        genus: None,
        a_tilde: None,
        gcd_m: None,
        reason: None,
    };
    if r.algebra_class != AlgebraClass::Gentle {
        d.reason = Some("defined for gentle presentations".into());
        return Ok(d);
    }
    if !r.smooth_proper || !r.connected {
        d.reason = Some("needs a connected smooth-proper presentation".into());
        return Ok(d);
    }
    let model = build_surface(p)?;
    d.genus = Some(model.genus);
    d.verdict = match model.genus {
        0 => PartialVerdict::Yes,
        1 => match handle_windings {
            Some((s, t)) => {
                let m = model.m_values();
                let gm = gcd_all(&m);
                let mut all = vec![s, t];
                all.extend(m);
                let a = gcd_all(&all);
                d.a_tilde = Some(a);
                d.gcd_m = Some(gm);
                if a != gm {
                    PartialVerdict::Yes
                } else {
                    PartialVerdict::No
                }
            }
            None => PartialVerdict::NeedsHandleWindings,
        },
        _ => PartialVerdict::No,
    };
    Ok(d)
}

/// Restricts to arrows of degree 0 and looks for a band there.
pub fn h0_band_check(p: &Presentation) -> Result<H0Check> {
    let r = require_valid(p)?;
    if r.algebra_class != AlgebraClass::Gentle {
        return Err(Error::InvalidInput(
            "degree-zero check is defined for gentle presentations".into(),
        ));
    }
    let arrows: Vec<Arrow> = p
        .arrows()
        .iter()
        .filter(|a| a.degree == 0)
        .cloned()
        .collect();
    let keep = |id: &str| arrows.iter().any(|a| a.id == id);
    let relations = p
        .relations()
        .iter()
        .filter(|(a, b)| keep(a) && keep(b))
        .cloned()
        .collect();
    let sub = Presentation::new(p.vertices().to_vec(), arrows, relations, Vec::new())?;
    let band = band_exists(&sub)?;
    Ok(H0Check {
        degree_zero_part: sub,
        band,
    })
}

/// All decisions at once. Properties that do not apply to the input are
/// marked as such, with the reason in `notes`.
pub fn decide(p: &Presentation, handle_windings: Option<(i64, i64)>) -> Result<DecisionReport> {
    let mut notes = Vec::new();
    let tau = match tau_tilting_finite(p) {
        Ok(t) => Some(t),
        Err(Error::GradedInput(msg)) => {
            notes.push(format!("tau_tilting_finite: graded input ({msg})"));
            None
        }
        Err(e) => return Err(e),
    };
    let tau_verdict = match &tau {
        Some(t) if t.finite => Verdict::Yes,
        Some(_) => Verdict::No,
        None => Verdict::NotApplicable,
    };
    let silting = silting_discrete(p)?;
    if let (SiltingVerdict::NotApplicable, Some(r)) = (silting.verdict, &silting.reason) {
        notes.push(format!("silting_discrete: {r}"));
    }
    let derived = match ungraded_gentle_surface(p)? {
        Ok(_) => derived_discrete(p)?,
        Err(reason) => {
            notes.push(format!("derived_discrete: {reason}"));
            DerivedVerdict::NotApplicable
        }
    };
    let partial = presilting_partial_silting(p, handle_windings)?;
    if let (PartialVerdict::NotApplicable, Some(r)) = (partial.verdict, &partial.reason) {
        notes.push(format!("presilting_partial: {r}"));
    }
    Ok(DecisionReport {
        tau_tilting_finite: tau_verdict,
        representation_finite: tau_verdict,
        silting_discrete: silting.verdict,
        derived_discrete: derived,
        presilting_partial: partial.verdict,
        tau,
        silting,
        partial,
        notes,
    })
}

impl DecisionReport {
    pub fn to_json(&self, p: &Presentation) -> Value {
        let tau = self.tau.as_ref();
        json!({
            "tau_tilting_finite": self.tau_tilting_finite,
            "representation_finite": self.representation_finite,
            "silting_discrete": self.silting_discrete,
            "derived_discrete": self.derived_discrete,
            "presilting_partial": self.presilting_partial,
            "evidence": {
                "band": tau.and_then(|t| t.band.as_ref()).map(|b| b.to_json(p)),
                "minimal_band": tau.and_then(|t| t.minimal_band.as_ref()).map(|c| c.to_json(p)),
                "genus": self.silting.genus,
                "orbifold_count": self.silting.orbifold_count,
                "m_values": self.silting.m_values,
                "subset": self.silting.subset,
                "silting_reason": self.silting.reason,
                "a_tilde": self.partial.a_tilde,
                "gcd_m": self.partial.gcd_m,
            },
            "notes": self.notes,
        })
    }
}
