//! The bound report: minimized combined length, every bound value, and the
//! verdict, serialized as versioned JSON with 17 significant digits.

use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::bounds::{certify, vr_bound_poly, BendingHypothesis, BoundError, Certification, Route, Verdict};
use crate::extremal::{DiscreteOptions, ElMethod};
use crate::surface::Surface;
use crate::systems::{minimize_l, Minimum, SystemError, Witness};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const COMPRESSIBILITY_NOTE: &str = "conditional on compressibility of the chosen curves: homology \
independence is checked as a necessary condition only";
pub const FINITE_FAMILY_NOTE: &str = "the length is minimized over a finite family of named curves, so it bounds \
the true minimum from above";
pub const SYSTOLIC_NOTE: &str = "the genus-two systolic hypothesis is checked on this upper bound rather than on \
the true minimum, which makes the check conservative";
pub const BOUND_ONLY_WARNING: &str = "only the genus bound applies; no sign conclusion";

/// A real emitted with 17 significant digits; non-finite values become null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CurveEntry {
    pub name: String,
    pub lower: Real,
    pub upper: Real,
    pub lower_method: ElMethod,
    pub upper_method: ElMethod,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SystemEntry {
    pub curves: Vec<String>,
    pub indices: Vec<usize>,
    pub pairwise_disjoint: Witness,
    pub pairwise_non_homotopic: Witness,
    pub homology_rank: usize,
    pub homology_independent: bool,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LengthEntry {
    pub lower: Real,
    pub upper: Real,
    pub systems_evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Flagged {
    pub value: Real,
    pub valid: bool,
    pub hypothesis: &'static str,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BendingEntry {
    pub total_bending: Real,
    pub thurston_area: Real,
    pub poly_bound: Real,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundsEntry {
    pub genus_bound: Option<Real>,
    pub small_length_bound: Option<Flagged>,
    pub genus_two_bound: Option<Flagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bending: Option<BendingEntry>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CriterionEntry {
    pub threshold: Real,
    pub squared_length_upper: Real,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundReport {
    pub schema: &'static str,
    pub schema_version: u32,
    pub genus: u32,
    pub model: &'static str,
    pub system: SystemEntry,
    pub per_curve: Vec<CurveEntry>,
    pub length: LengthEntry,
    pub bounds: BoundsEntry,
    pub criterion: CriterionEntry,
    pub verdict: Verdict,
    pub verdict_route: Option<Route>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<&'static str>,
    pub notes: Vec<&'static str>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Systems(#[from] SystemError),
    #[error(transparent)]
    Bounds(#[from] BoundError),
}

/// Minimize the combined length over the named curves and certify.
pub fn evaluate(
    surface: &Surface,
    budget: usize,
    opts: DiscreteOptions,
    bending: Option<BendingHypothesis>,
) -> Result<BoundReport, PipelineError> {
    let min = minimize_l(surface, budget, opts)?;
    let cert = certify(min.length.upper, surface.genus)?;
    build_report(surface, &min, &cert, bending)
}

pub fn build_report(
    surface: &Surface,
    min: &Minimum,
    cert: &Certification,
    bending: Option<BendingHypothesis>,
) -> Result<BoundReport, PipelineError> {
    let g = surface.genus;
    let sys = &min.system;
    let per_curve = sys
        .curves
        .iter()
        .zip(&min.length.per_curve)
        .map(|(&i, e)| CurveEntry {
            name: surface.curves[i].name.clone(),
            lower: Real(e.lower),
            upper: Real(e.upper),
            lower_method: e.lower_method,
            upper_method: e.upper_method,
        })
        .collect();
    let bending = match bending {
        Some(b) if min.length.upper.is_finite() => Some(BendingEntry {
            total_bending: Real(b.total_bending),
            thurston_area: Real(b.thurston_area(g)),
            poly_bound: Real(vr_bound_poly(min.length.upper, g, &b)?),
        }),
        _ => None,
    };
    let mut notes = vec![COMPRESSIBILITY_NOTE, FINITE_FAMILY_NOTE];
    if g == 2 {
        notes.push(SYSTOLIC_NOTE);
    }
    Ok(BoundReport {
        schema: "vrbound.bound_report",
        schema_version: REPORT_SCHEMA_VERSION,
        genus: g,
        model: surface.kind().as_str(),
        system: SystemEntry {
            curves: sys.names.clone(),
            indices: sys.curves.clone(),
            pairwise_disjoint: sys.pairwise_disjoint.clone(),
            pairwise_non_homotopic: sys.pairwise_non_homotopic.clone(),
            homology_rank: sys.homology_rank,
            homology_independent: sys.homology_independent,
        },
        per_curve,
        length: LengthEntry {
            lower: Real(min.length.lower),
            upper: Real(min.length.upper),
            systems_evaluated: min.systems_evaluated,
        },
        bounds: BoundsEntry {
            genus_bound: cert.genus_bound.map(Real),
            small_length_bound: cert.small_length_bound.map(|b| Flagged {
                value: Real(b.value),
                valid: b.valid,
                hypothesis: "L^3 <= 2 pi^2",
            }),
            genus_two_bound: cert.genus_two_bound.map(|b| Flagged {
                value: Real(b.value),
                valid: b.valid,
                hypothesis: "L^2 <= 2/sqrt(3)",
            }),
            bending,
        },
        criterion: CriterionEntry {
            threshold: Real(cert.threshold),
            squared_length_upper: Real(cert.length_upper * cert.length_upper),
        },
        verdict: cert.verdict,
        verdict_route: cert.route,
        warning: (cert.verdict == Verdict::BoundOnly).then_some(BOUND_ONLY_WARNING),
        notes,
    })
}
