use super::{ElError, ElEstimate, ElMethod};

/// Interval for the extremal length of a simple closed geodesic of
/// hyperbolic length `ℓ`: `[ℓ/π, (ℓ/2)·e^{ℓ/2}]`.
///
/// Both endpoints come from the classical comparison between hyperbolic and
/// extremal length; twists play no role.
pub fn el_interval_from_hyperbolic_length(length: f64) -> Result<ElEstimate, ElError> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(ElError::NonpositiveLength(length));
    }
    let lower = length / std::f64::consts::PI;
    let upper = 0.5 * length * (0.5 * length).exp();
    Ok(ElEstimate {
        lower,
        upper,
        lower_method: ElMethod::HyperbolicComparison,
        upper_method: ElMethod::HyperbolicComparison,
    })
}
