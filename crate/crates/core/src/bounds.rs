//! Upper bounds on the renormalized volume in terms of the combined length
//! `L = L(Σ, Γ)`, and the sign verdict derived from them.

use std::f64::consts::PI;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    #[error("K must be positive, got {0}")]
    NonpositiveK(f64),
    #[error("length must be positive, got {0}")]
    NonpositiveLength(f64),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("total bending must be nonnegative and finite, got {0}")]
    InvalidBending(f64),
    #[error("Thurston length {length} of curve {index} is not above 2π")]
    LengthBelow2Pi { index: usize, length: f64 },
    #[error("expected {expected} Thurston lengths, got {got}")]
    WrongCurveCount { expected: usize, got: usize },
}

/// Relative width of the equality band around the negativity threshold.
pub const EQUALITY_TOL: f64 = 1e-12;

fn check_genus(g: u32) -> Result<(), BoundError> {
    if g < 2 {
        Err(BoundError::GenusTooSmall(g))
    } else {
        Ok(())
    }
}

fn check_length(l: f64, allow_zero: bool) -> Result<(), BoundError> {
    let ok = l.is_finite() && (l > 0.0 || (allow_zero && l == 0.0));
    if ok {
        Ok(())
    } else {
        Err(BoundError::NonpositiveLength(l))
    }
}

/// Hypothesized total bending of the convex-core boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BendingHypothesis {
    pub total_bending: f64,
}

impl BendingHypothesis {
    pub fn new(total_bending: f64) -> Result<Self, BoundError> {
        if total_bending.is_finite() && total_bending >= 0.0 {
            Ok(Self { total_bending })
        } else {
            Err(BoundError::InvalidBending(total_bending))
        }
    }

    /// Area of the Thurston metric, `L(μ) + 4π(g − 1)`.
    pub fn thurston_area(&self, g: u32) -> f64 {
        self.total_bending + 4.0 * PI * (g as f64 - 1.0)
    }
}

/// `P_K(x) = Kx − x²/4`.
pub fn pk(k: f64, x: f64) -> f64 {
    k * x - 0.25 * x * x
}

/// Maximizer and maximum of `P_K`: `(2K, K²)`.
pub fn pk_max(k: f64) -> Result<(f64, f64), BoundError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(BoundError::NonpositiveK(k));
    }
    Ok((2.0 * k, k * k))
}

/// `L·√(4π(g−1) + L(μ)) − L(μ)/4`.
pub fn vr_bound_poly(l: f64, g: u32, bending: &BendingHypothesis) -> Result<f64, BoundError> {
    check_genus(g)?;
    check_length(l, true)?;
    Ok(l * bending.thurston_area(g).sqrt() - 0.25 * bending.total_bending)
}

/// `L² + π(g − 1)`, the supremum of [`vr_bound_poly`] over all bendings.
pub fn vr_bound_genus(l: f64, g: u32) -> Result<f64, BoundError> {
    check_genus(g)?;
    check_length(l, true)?;
    Ok(l * l + PI * (g as f64 - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlaggedBound {
    pub value: f64,
    /// Whether the bound's hypothesis holds at this length.
    pub valid: bool,
}

/// `π(g + 1 − π/L²)`, valid when `L³ ≤ 2π²`.
pub fn vr_bound_small_l(l: f64, g: u32) -> Result<FlaggedBound, BoundError> {
    check_genus(g)?;
    check_length(l, false)?;
    Ok(FlaggedBound {
        value: PI * (g as f64 + 1.0 - PI / (l * l)),
        valid: l * l * l <= 2.0 * PI * PI,
    })
}

/// Genus-two bound `π(3 − π/L²)`; `valid` is the systolic condition
/// `L² ≤ 2/√3`.
pub fn vr_bound_genus2(l: f64) -> Result<FlaggedBound, BoundError> {
    check_length(l, false)?;
    Ok(FlaggedBound {
        value: PI * (3.0 - PI / (l * l)),
        valid: l * l <= 2.0 / 3f64.sqrt(),
    })
}

/// Hypothesized Thurston lengths of a `g`-curve cut system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexCoreInput {
    pub thurston_lengths: Vec<f64>,
}

/// Convex-core volume bound: the sum of the `g − 1` smallest Thurston
/// lengths, i.e. `2π(g−1) + Σ (ℓᵢ − 2π)` over those curves.
pub fn convex_core_bound(input: &ConvexCoreInput, g: u32) -> Result<f64, BoundError> {
    check_genus(g)?;
    let n = g as usize;
    if input.thurston_lengths.len() != n {
        return Err(BoundError::WrongCurveCount {
            expected: n,
            got: input.thurston_lengths.len(),
        });
    }
    for (index, &length) in input.thurston_lengths.iter().enumerate() {
        if !(length.is_finite() && length > 2.0 * PI) {
            return Err(BoundError::LengthBelow2Pi { index, length });
        }
    }
    let mut sorted = input.thurston_lengths.clone();
    sorted.sort_by(f64::total_cmp);
    let excess: f64 = sorted[..n - 1].iter().map(|&x| x - 2.0 * PI).sum();
    Ok(2.0 * PI * (g as f64 - 1.0) + excess)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NegativeCertified,
    NonpositiveAtEquality,
    BoundOnly,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NegativeCertified => "NegativeCertified",
            Verdict::NonpositiveAtEquality => "NonpositiveAtEquality",
            Verdict::BoundOnly => "BoundOnly",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Which bound carries the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    SmallLengthBound,
    GenusTwoBound,
    GenusBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub genus: u32,
    pub length_upper: f64,
    /// `π/(g + 1)`.
    pub threshold: f64,
    pub genus_bound: Option<f64>,
    pub small_length_bound: Option<FlaggedBound>,
    /// Present for genus 2 only.
    pub genus_two_bound: Option<FlaggedBound>,
    pub verdict: Verdict,
    pub route: Option<Route>,
}

/// Verdict from the upper endpoint of the combined-length interval.
pub fn certify(length_upper: f64, g: u32) -> Result<Certification, BoundError> {
    check_genus(g)?;
    let threshold = PI / (g as f64 + 1.0);
    if !length_upper.is_finite() {
        return Ok(Certification {
            genus: g,
            length_upper,
            threshold,
            genus_bound: None,
            small_length_bound: None,
            genus_two_bound: None,
            verdict: Verdict::Inconclusive,
            route: None,
        });
    }
    check_length(length_upper, false)?;
    let genus_bound = vr_bound_genus(length_upper, g)?;
    let small = vr_bound_small_l(length_upper, g)?;
    let genus_two = if g == 2 { Some(vr_bound_genus2(length_upper)?) } else { None };

    let sq = length_upper * length_upper;
    let sharp_route = if small.valid {
        Some(Route::SmallLengthBound)
    } else if genus_two.is_some_and(|b| b.valid) {
        Some(Route::GenusTwoBound)
    } else {
        None
    };
    let (verdict, route) = match sharp_route {
        Some(r) if sq < threshold * (1.0 - EQUALITY_TOL) => (Verdict::NegativeCertified, Some(r)),
        Some(r) if (sq - threshold).abs() <= EQUALITY_TOL * threshold => (Verdict::NonpositiveAtEquality, Some(r)),
        _ => (Verdict::BoundOnly, Some(Route::GenusBound)),
    };
    Ok(Certification {
        genus: g,
        length_upper,
        threshold,
        genus_bound: Some(genus_bound),
        small_length_bound: Some(small),
        genus_two_bound: genus_two,
        verdict,
        route,
    })
}
