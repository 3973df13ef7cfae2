//! The lemma-verification suite behind `vrbound verify-lemmas`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::hyp3::{
    ball_isoperimetric, boundary_area, circle_bending_check, cover_counts, inscribed_exterior_sum, minimizing_k,
    polygon_report, random_convex_polygon, regular_polygon, triangle_area, HypError,
};

pub const LEMMA_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub parameters: Value,
    pub values: Value,
    pub pass: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSuite {
    pub schema: &'static str,
    pub schema_version: u32,
    pub seed: u64,
    pub all_pass: bool,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaSuite {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite serializes") + "\n"
    }
}

fn check(name: &'static str, parameters: Value, values: Value, pass: bool, tolerance: f64) -> LemmaCheck {
    LemmaCheck { name, parameters, values, pass, tolerance }
}

fn failed(name: &'static str, parameters: Value, err: HypError) -> LemmaCheck {
    check(name, parameters, json!({ "error": err.to_string() }), false, 0.0)
}

pub fn random_polygons(seed: u64, count: usize) -> LemmaCheck {
    let tol = 1e-9;
    let params = json!({ "count": count, "vertices": [3, 12] });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let m = rng.gen_range(3..=12);
        match polygon_report(&random_convex_polygon(&mut rng, m)) {
            Ok(r) => worst = worst.max(r.lemma_slack.abs()),
            Err(e) => return failed("gauss_bonnet_random_polygons", params, e),
        }
    }
    check("gauss_bonnet_random_polygons", params, json!({ "max_abs_slack": worst }), worst <= tol, tol)
}

fn pentagon() -> LemmaCheck {
    let tol = 1e-9;
    let params = json!({ "vertices": 5, "interior_angle": PI / 2.0 });
    let poly = regular_polygon(5, (1.0 / (PI / 5.0).tan()).acosh());
    match polygon_report(&poly) {
        Ok(r) => {
            let pass = r.lemma_slack.abs() <= tol && (r.disk_area - PI / 2.0).abs() <= tol;
            check(
                "right_angled_pentagon",
                params,
                json!({ "disk_area": r.disk_area, "exterior_angle_sum": r.exterior_angle_sum, "lemma_slack": r.lemma_slack }),
                pass,
                tol,
            )
        }
        Err(e) => failed("right_angled_pentagon", params, e),
    }
}

fn equilateral_triangle() -> LemmaCheck {
    let tol = 1e-12;
    let params = json!({ "side": 1.0 });
    let c = 1f64.cosh();
    let alpha = (c / (c + 1.0)).acos();
    let expected = PI - 3.0 * alpha;
    let r = ((c - 1.0) / 1.5).sqrt().asinh();
    let fan = polygon_report(&regular_polygon(3, r));
    match (triangle_area(alpha, alpha, alpha), fan) {
        (Ok(a), Ok(f)) => check(
            "equilateral_triangle",
            params,
            json!({ "angle": alpha, "area": a, "fan_area": f.disk_area }),
            (a - expected).abs() <= tol && (f.disk_area - expected).abs() <= tol,
            tol,
        ),
        (Err(e), _) | (_, Err(e)) => failed("equilateral_triangle", params, e),
    }
}

fn circle_identity() -> LemmaCheck {
    let tol = 1e-12;
    let radii: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
    let mut worst: f64 = 0.0;
    for &r in &radii {
        let c = circle_bending_check(r, 8).expect("valid radius");
        worst = worst.max((c.lemma_gap / c.total_curvature).abs());
    }
    check(
        "circle_identity",
        json!({ "radii": radii }),
        json!({ "max_relative_gap": worst }),
        worst <= tol,
        tol,
    )
}

/// Empirical order of `exterior_sum → 2π cosh r` between `k = 64` and `k = 512`.
pub fn convergence_order(r: f64) -> f64 {
    let exact = TAU * r.cosh();
    let e64 = exact - inscribed_exterior_sum(r, 64);
    let e512 = exact - inscribed_exterior_sum(r, 512);
    (e64 / e512).ln() / 8f64.ln()
}

fn polygon_convergence() -> LemmaCheck {
    let min_order = 1.9;
    let radii = [0.25, 0.5, 1.0, 2.0];
    let ks: Vec<usize> = (3..=10).map(|p| 1 << p).collect();
    let mut orders = Vec::new();
    let mut monotone = true;
    for &r in &radii {
        let exact = TAU * f64::cosh(r);
        let sums: Vec<f64> = ks.iter().map(|&k| inscribed_exterior_sum(r, k)).collect();
        monotone &= sums.windows(2).all(|w| w[0] < w[1]) && sums.iter().all(|&s| s < exact);
        orders.push(convergence_order(r));
    }
    let pass = monotone && orders.iter().all(|&o| o >= min_order);
    check(
        "polygon_convergence",
        json!({ "radii": radii, "k": ks, "order_between": [64, 512] }),
        json!({ "orders": orders, "monotone_from_below": monotone }),
        pass,
        min_order,
    )
}

pub fn isoperimetric_sweep(seed: u64, count: usize) -> LemmaCheck {
    let tol = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<(f64, f64)> = (0..count)
        .map(|_| {
            // Uniform on (0, 10].
            let r = 10.0 - rng.gen_range(0.0..10.0);
            (r, ball_isoperimetric(r).expect("positive radius").ratio)
        })
        .collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let max_ratio = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let increasing = samples.windows(2).all(|w| w[0].0 == w[1].0 || w[0].1 < w[1].1);
    let at_ten = ball_isoperimetric(10.0).expect("positive radius").ratio;
    let pass = max_ratio < 0.5 && increasing && at_ten < 0.5 && 0.5 - at_ten <= tol;
    check(
        "isoperimetric_sweep",
        json!({ "count": count, "radius_range": [0.0, 10.0] }),
        json!({ "max_ratio": max_ratio, "strictly_increasing": increasing, "ratio_at_10": at_ten }),
        pass,
        tol,
    )
}

pub fn recurrence_exactness() -> LemmaCheck {
    let tol = 1e-6;
    let mut agree = true;
    for g in 2..=10 {
        for n in 0..=30 {
            // cover_counts checks both closed forms exactly.
            agree &= cover_counts(g, n).is_ok();
        }
    }
    let small: Vec<(String, String)> = (0..=2)
        .map(|n| {
            let c = cover_counts(2, n).expect("genus 2");
            (c.x.to_string(), c.d.to_string())
        })
        .collect();
    let expected = [("1", "1"), ("5", "3"), ("17", "9")];
    let small_ok = small.iter().zip(expected).all(|(a, b)| a.0 == b.0 && a.1 == b.1);
    let ratio = cover_counts(2, 30).expect("genus 2").ratio();
    check(
        "recurrence_exactness",
        json!({ "genus": [2, 10], "depth": [0, 30] }),
        json!({ "exact_agreement": agree, "genus_two_first_terms": small, "ratio_g2_n30": ratio }),
        agree && small_ok && (ratio - 0.5).abs() <= tol,
        tol,
    )
}

pub fn family_ordering(seed: u64, per_genus: usize) -> LemmaCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for g in 2..=6u32 {
        for _ in 0..per_genus {
            let mut areas: Vec<f64> = (0..g).map(|_| rng.gen_range(0.0..4.0 * PI)).collect();
            areas.sort_by(f64::total_cmp);
            if minimizing_k(g, &areas) != Ok(1) {
                failures += 1;
            }
        }
    }
    check(
        "volume_bound_family_ordering",
        json!({ "genus": [2, 6], "vectors_per_genus": per_genus }),
        json!({ "failures": failures }),
        failures == 0,
        0.0,
    )
}

fn boundary_areas() -> LemmaCheck {
    let tol = 1e-12;
    let cases: [(u32, Vec<f64>, f64); 3] =
        [(2, vec![0.0, 0.0], 4.0 * PI), (2, vec![1.0, 2.0], 4.0 * PI + 6.0), (5, vec![PI; 5], 26.0 * PI)];
    let mut values = Vec::new();
    let mut pass = true;
    for (g, areas, want) in &cases {
        let got = boundary_area(*g, areas).unwrap_or(f64::NAN);
        pass &= (got - want).abs() <= tol * want;
        values.push(got);
    }
    check("boundary_area", json!({ "cases": cases.len() }), json!({ "values": values }), pass, tol)
}

/// Runs every check; randomized checks draw from `seed`.
pub fn verify_lemmas(seed: u64) -> LemmaSuite {
    let checks = vec![
        random_polygons(seed, 100),
        pentagon(),
        equilateral_triangle(),
        circle_identity(),
        polygon_convergence(),
        isoperimetric_sweep(seed.wrapping_add(1), 1000),
        recurrence_exactness(),
        family_ordering(seed.wrapping_add(2), 100),
        boundary_areas(),
    ];
    LemmaSuite {
        schema: "vrbound.lemma_suite",
        schema_version: LEMMA_SCHEMA_VERSION,
        seed,
        all_pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
