use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::HypError;

/// Vertex and boundary counts at depth `n` of the covering tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCount {
    pub g: u32,
    pub n: u32,
    pub d: BigUint,
    pub x: BigUint,
}

impl CoverCount {
    /// `d / x` in floating point, scaled first so huge counts stay finite.
    pub fn ratio(&self) -> f64 {
        let shift = self.x.bits().saturating_sub(60);
        let d = (&self.d >> shift).to_f64().unwrap_or(f64::NAN);
        let x = (&self.x >> shift).to_f64().unwrap_or(f64::NAN);
        d / x
    }
}

/// Iterates `x ← x + 2g·d`, `d ← (2g−1)·d` from `(1, 1)` and checks the
/// closed forms `d = (2g−1)ⁿ`, `x = g((2g−1)ⁿ − 1)/(g−1) + 1`.
pub fn cover_counts(g: u32, n: u32) -> Result<CoverCount, HypError> {
    if g < 2 {
        return Err(HypError::Domain("genus must be at least 2"));
    }
    let mut x = BigUint::one();
    let mut d = BigUint::one();
    let two_g = BigUint::from(2 * g);
    let branch = BigUint::from(2 * g - 1);
    for _ in 0..n {
        x += &two_g * &d;
        d *= &branch;
    }
    let closed_d = branch.pow(n);
    let (q, rem) = (BigUint::from(g) * (&closed_d - 1u32)).div_rem(&BigUint::from(g - 1));
    assert!(rem == BigUint::ZERO, "closed form is not integral");
    let closed_x = q + 1u32;
    assert_eq!(d, closed_d);
    assert_eq!(x, closed_x);
    Ok(CoverCount { g, n, d, x })
}

fn check_areas(g: u32, areas: &[f64]) -> Result<(), HypError> {
    if g < 2 {
        return Err(HypError::Domain("genus must be at least 2"));
    }
    if areas.len() != g as usize {
        return Err(HypError::Domain("expected one disk area per handle"));
    }
    if areas.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) {
        return Err(HypError::Domain("disk areas must be finite and nonnegative"));
    }
    Ok(())
}

/// `2π(g−1) + Σ_{i≤g−k} a_i + ((k−1)/k) Σ_{i>g−k} a_i` for ascending areas.
pub fn volume_bound_family(g: u32, areas: &[f64], k: u32) -> Result<f64, HypError> {
    check_areas(g, areas)?;
    if areas.windows(2).any(|w| w[0] > w[1]) {
        return Err(HypError::UnsortedAreas);
    }
    if k < 1 || k > g {
        return Err(HypError::Domain("k must lie in 1..=g"));
    }
    let split = (g - k) as usize;
    let head: f64 = areas[..split].iter().sum();
    let tail: f64 = areas[split..].iter().sum();
    Ok(TAU * (g - 1) as f64 + head + (k - 1) as f64 / k as f64 * tail)
}

/// Smallest `k` attaining the minimum of the family; ties go to the smaller `k`.
pub fn minimizing_k(g: u32, areas: &[f64]) -> Result<u32, HypError> {
    let mut best = (f64::INFINITY, 0);
    for k in 1..=g {
        let v = volume_bound_family(g, areas, k)?;
        if v < best.0 {
            best = (v, k);
        }
    }
    Ok(best.1)
}

/// Boundary area `4π(g−1) + 2 Σ a_i`; half of it is the volume bound.
pub fn boundary_area(g: u32, areas: &[f64]) -> Result<f64, HypError> {
    check_areas(g, areas)?;
    let sum: f64 = areas.iter().sum();
    let area = 2.0 * TAU * (g - 1) as f64 + 2.0 * sum;
    debug_assert!((0.5 * area - (TAU * (g - 1) as f64 + sum)).abs() <= 1e-12 * area);
    Ok(area)
}
