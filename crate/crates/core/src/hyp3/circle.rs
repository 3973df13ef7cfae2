use std::f64::consts::{PI, TAU};

use super::HypError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleReport {
    pub exterior_sum: f64,
    pub total_curvature: f64,
    pub disk_area: f64,
    /// `total_curvature − 2π − disk_area`, zero in exact arithmetic.
    pub lemma_gap: f64,
}

/// Exterior-angle sum of the regular `k`-gon inscribed in a circle of
/// radius `r`.
pub fn inscribed_exterior_sum(r: f64, k: usize) -> f64 {
    let (sh, ch) = (r.sinh(), r.cosh());
    // cosh s − 1 for the side s, free of cancellation.
    let t = (PI / k as f64).sin();
    let cm1 = 2.0 * sh * sh * t * t;
    let sinh_s = (cm1 * (cm1 + 2.0)).sqrt();
    // Base angle φ of the isosceles triangle (centre, two adjacent vertices);
    // the exterior angle is π − 2φ = 2 asin(cos φ).
    let cos_phi = ch * cm1 / (sh * sinh_s);
    k as f64 * 2.0 * cos_phi.min(1.0).asin()
}

pub fn circle_bending_check(r: f64, k: usize) -> Result<CircleReport, HypError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(HypError::Domain("radius must be positive"));
    }
    if k < 3 {
        return Err(HypError::TooFewVertices(k));
    }
    let total_curvature = TAU * r.cosh();
    let disk_area = TAU * (r.cosh() - 1.0);
    Ok(CircleReport {
        exterior_sum: inscribed_exterior_sum(r, k),
        total_curvature,
        disk_area,
        lemma_gap: total_curvature - TAU - disk_area,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp3::{polygon_report, regular_polygon};

    #[test]
    fn unit_circle_values() {
        let c = circle_bending_check(1.0, 8).unwrap();
        assert!((c.total_curvature - 9.695461572464488).abs() < 1e-12);
        assert!((c.disk_area - 3.412276265284902).abs() < 1e-12);
        assert!(c.lemma_gap.abs() < 1e-14);
    }

    #[test]
    fn matches_polygon_angles() {
        for &(r, k) in &[(0.3, 3usize), (1.0, 7), (2.5, 16)] {
            let rep = polygon_report(&regular_polygon(k, r)).unwrap();
            let s = inscribed_exterior_sum(r, k);
            assert!((rep.exterior_angle_sum - s).abs() < 1e-10, "{} vs {s}", rep.exterior_angle_sum);
        }
    }

    #[test]
    fn converges_from_below_at_second_order() {
        let exact = TAU * 1f64.cosh();
        let errs: Vec<f64> = [8, 16, 32, 64, 128].iter().map(|&k| exact - inscribed_exterior_sum(1.0, k)).collect();
        for w in errs.windows(2) {
            assert!(w[0] > w[1] && w[1] > 0.0);
        }
        let order = (errs[3] / errs[4]).log2();
        assert!((order - 2.0).abs() < 0.01, "{order}");
    }

    #[test]
    fn small_radius_is_euclidean() {
        let c = circle_bending_check(1e-6, 64).unwrap();
        assert!((c.total_curvature - TAU).abs() < 1e-10);
        assert!(c.disk_area < 1e-10);
    }
}
