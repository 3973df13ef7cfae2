//! Certified intervals for the extremal length of a curve class.
//!
//! Each surface model has its own source of bounds:
//!
//! | model            | lower endpoint          | upper endpoint        |
//! |------------------|-------------------------|-----------------------|
//! | Fenchel–Nielsen  | hyperbolic comparison   | hyperbolic comparison |
//! | flat cylinders   | metric ratio (`c²/A`)   | cylinder restriction  |
//! | triangulated mesh| discrete solver         | discrete solver       |
//!
//! [`estimate_curve`] dispatches on the model.

mod comparison;
mod cover;
mod discrete;
mod metric;

use serde::Serialize;

pub use comparison::el_interval_from_hyperbolic_length;
pub use cover::{shortest_homotopic_cycle, CycleCertificate, Equivalence, HomologyCover, ShortestCycle};
pub use discrete::{el_discrete, el_discrete_mesh, DiscreteElResult, DiscreteElState, DiscreteOptions, TraceRecord};
pub use metric::{el_lower_from_metric, el_upper_from_cylinder, flat_torus_holonomy, MetricLowerBound};

use crate::surface::{CurveClass, Surface, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ElMethod {
    MetricRatio,
    CylinderRestriction,
    HyperbolicComparison,
    DiscreteSolver,
    None,
}

/// Interval `[lower, upper]` containing `EL(γ, Σ)`, with the method that
/// produced each endpoint. `upper` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElEstimate {
    pub lower: f64,
    pub upper: f64,
    pub lower_method: ElMethod,
    pub upper_method: ElMethod,
}

impl ElEstimate {
    pub fn new(lower: f64, upper: f64, lower_method: ElMethod, upper_method: ElMethod) -> Self {
        debug_assert!(lower >= 0.0 && lower <= upper, "bad interval [{lower}, {upper}]");
        Self {
            lower,
            upper,
            lower_method: if lower > 0.0 { lower_method } else { lower_method_or_none(lower_method, lower) },
            upper_method: if upper.is_finite() { upper_method } else { ElMethod::None },
        }
    }

    pub fn unbounded() -> Self {
        Self {
            lower: 0.0,
            upper: f64::INFINITY,
            lower_method: ElMethod::None,
            upper_method: ElMethod::None,
        }
    }

    pub fn lower_only(lower: f64, method: ElMethod) -> Self {
        Self::new(lower, f64::INFINITY, method, ElMethod::None)
    }

    pub fn upper_only(upper: f64, method: ElMethod) -> Self {
        Self::new(0.0, upper, ElMethod::None, method)
    }

    /// Intersection of two valid intervals for the same quantity.
    pub fn intersect(self, other: ElEstimate) -> ElEstimate {
        let (lower, lower_method) = if other.lower > self.lower {
            (other.lower, other.lower_method)
        } else {
            (self.lower, self.lower_method)
        };
        let (upper, upper_method) = if other.upper < self.upper {
            (other.upper, other.upper_method)
        } else {
            (self.upper, self.upper_method)
        };
        ElEstimate {
            lower,
            upper,
            lower_method,
            upper_method,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_finite()
    }

    /// (upper − lower) / upper.
    pub fn relative_width(&self) -> f64 {
        if self.upper == 0.0 {
            0.0
        } else {
            (self.upper - self.lower) / self.upper
        }
    }
}

// A zero lower endpoint is trivially valid; keep the tag only when a method
// actually certified it (the comparison interval at ℓ → 0, for instance).
fn lower_method_or_none(m: ElMethod, lower: f64) -> ElMethod {
    if lower == 0.0 && m == ElMethod::MetricRatio {
        ElMethod::None
    } else {
        m
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ElError {
    #[error("the surface model carries no explicit conformal metric")]
    NoMetric,
    #[error("curve {0:?} does not live on this surface model")]
    CurveNotOnModel(String),
    #[error("curve {0:?} is not the core of a flat cylinder")]
    NotACoreCurve(String),
    #[error("hyperbolic length must be positive, got {0}")]
    NonpositiveLength(f64),
    #[error("the curve is null-homologous")]
    TrivialCurve,
    #[error("tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),
    #[error("edge weights must be nonnegative")]
    InvalidWeights,
    #[error("cover window cap reached before the shortest length stabilized")]
    WindowOverflow { best: Box<ShortestCycle> },
    #[error("cutting-plane budget exhausted with bracket [{}, {}]", .best.estimate.lower, .best.estimate.upper)]
    NonconvergenceWithinBudget { best: Box<DiscreteElResult> },
}

/// Best available interval for one named curve, by the model's method.
pub fn estimate_curve(surface: &Surface, curve: &CurveClass, opts: &DiscreteOptions) -> Result<ElEstimate, ElError> {
    use crate::surface::CurveHandle;
    match (&surface.model, &curve.handle) {
        (SurfaceModel::FenchelNielsen(f), CurveHandle::PantsCurve(i)) => {
            el_interval_from_hyperbolic_length(f.curves[*i].length)
        }
        (SurfaceModel::FlatCylinder(_), CurveHandle::CylinderCore(_)) => {
            let lo = el_lower_from_metric(surface, curve)?;
            let up = el_upper_from_cylinder(surface, curve)?;
            Ok(lo.estimate.intersect(up))
        }
        (SurfaceModel::TriangulatedMesh(_), CurveHandle::EdgeCycle(_)) => match el_discrete(surface, curve, opts) {
            Ok(r) => Ok(r.estimate),
            Err(ElError::NonconvergenceWithinBudget { best }) => Ok(best.estimate),
            Err(ElError::TrivialCurve) => Ok(ElEstimate::unbounded()),
            Err(e) => Err(e),
        },
        _ => Err(ElError::CurveNotOnModel(curve.name.clone())),
    }
}
