use std::f64::consts::PI;

use super::HypError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallReport {
    pub volume: f64,
    pub area: f64,
    pub ratio: f64,
    pub below_half: bool,
}

/// `sinh x − x`, with a series near zero.
fn sinh_minus_id(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0 * (1.0 + x2 / 110.0))))
    } else {
        x.sinh() - x
    }
}

/// Volume, boundary area and their ratio for the round ball of radius `r`.
pub fn ball_isoperimetric(r: f64) -> Result<BallReport, HypError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(HypError::Domain("radius must be positive"));
    }
    let volume = PI * sinh_minus_id(2.0 * r);
    let sh = r.sinh();
    let area = 4.0 * PI * sh * sh;
    let ratio = volume / area;
    Ok(BallReport { volume, area, ratio, below_half: ratio < 0.5 })
}
