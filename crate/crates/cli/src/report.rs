//! The `analyze` report: every stage of the pipeline, or the reason it was
//! skipped.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gentle_core::decide::{decide, DecisionReport};
use gentle_core::minimality::{find_minimal_band, MinimalBandCertificate};
use gentle_core::presentation::validate;
use gentle_core::surface::{build_surface, SurfaceModel};
use gentle_core::words::{band_exists, Band};
use gentle_core::{Error, Presentation, ValidationReport};

/// A stage result, or why the stage did not run.
pub enum Stage<T> {
    Done(T),
    NotApplicable(String),
}

impl<T> Stage<T> {
    fn from_result(r: gentle_core::Result<T>) -> gentle_core::Result<Self> {
        match r {
            Ok(v) => Ok(Stage::Done(v)),
            Err(Error::InternalInconsistency(m)) => Err(Error::InternalInconsistency(m)),
            Err(e) => Ok(Stage::NotApplicable(e.to_string())),
        }
    }

    fn to_json(&self, f: impl FnOnce(&T) -> Value) -> Value {
        match self {
            Stage::Done(v) => f(v),
            Stage::NotApplicable(reason) => json!({ "not_applicable": reason }),
        }
    }
}

pub struct Words {
    pub band: Option<Band>,
    pub minimal_band: Option<MinimalBandCertificate>,
}

pub struct AnalysisReport {
    pub presentation: Presentation,
    pub validation: ValidationReport,
    pub words: Stage<Words>,
    pub surface: Stage<SurfaceModel>,
    pub decisions: Stage<DecisionReport>,
    pub input_digest: String,
}

pub fn digest(p: &Presentation) -> String {
    Sha256::digest(p.to_json().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn analyze(
    p: &Presentation,
    handle_windings: Option<(i64, i64)>,
) -> gentle_core::Result<AnalysisReport> {
    let validation = validate(p);
    let input_digest = digest(p);
    if !validation.is_admissible() {
        let skip = || "presentation is not gentle or skew-gentle".to_string();
        return Ok(AnalysisReport {
            presentation: p.clone(),
            validation,
            words: Stage::NotApplicable(skip()),
            surface: Stage::NotApplicable(skip()),
            decisions: Stage::NotApplicable(skip()),
            input_digest,
        });
    }
    let words = Stage::from_result(band_exists(p).and_then(|band| {
        Ok(Words {
            band,
            minimal_band: find_minimal_band(p)?,
        })
    }))?;
    Ok(AnalysisReport {
        presentation: p.clone(),
        validation,
        words,
        surface: Stage::from_result(build_surface(p))?,
        decisions: Stage::from_result(decide(p, handle_windings))?,
        input_digest,
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let p = &self.presentation;
        json!({
            "validation": self.validation,
            "words": self.words.to_json(|w| json!({
                "band_found": w.band.is_some(),
                "band_witness": w.band.as_ref().map(|b| b.to_json(p)),
                "minimal_band": w.minimal_band.as_ref().map(|c| c.to_json(p)),
            })),
            "surface": self.surface.to_json(SurfaceModel::to_json),
            "decisions": self.decisions.to_json(|d| d.to_json(p)),
            "versions": {
                "gentle": env!("CARGO_PKG_VERSION"),
                "report_format": 1,
            },
            "input_digest": format!("sha256:{}", self.input_digest),
        })
    }
}
