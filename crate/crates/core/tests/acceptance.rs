//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line
//! (visible with `--nocapture`) before asserting.

mod common;

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vrbound::bounds::{pk, pk_max, vr_bound_genus, vr_bound_genus2, vr_bound_poly, vr_bound_small_l, BendingHypothesis, Verdict};
use vrbound::extremal::{el_discrete_mesh, DiscreteOptions};
use vrbound::hyp3::{
    ball_isoperimetric, circle_bending_check, cover_counts, inscribed_exterior_sum, minimizing_k, polygon_report,
    random_convex_polygon, CoverCount,
};
use vrbound::report::evaluate;
use vrbound::surface::TriangulatedMesh;
use vrbound::systems::minimize_l;

fn report(n: u32, what: &str, pass: bool, detail: String) {
    println!("criterion {n}: {} - {what} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_1_discrete_el_convergence() {
    let start = Instant::now();
    let opts = DiscreteOptions::default();
    let coarse = TriangulatedMesh::flat_torus_grid(2.0, 1.0, 64, 32);
    let r = el_discrete_mesh(&coarse, &TriangulatedMesh::grid_row_cycle(64, 0), &opts).unwrap();
    let coarse_time = start.elapsed();
    let e = r.estimate;
    let width = (e.upper - e.lower) / e.upper;
    let fine = TriangulatedMesh::flat_torus_grid(2.0, 1.0, 128, 64);
    let f = el_discrete_mesh(&fine, &TriangulatedMesh::grid_row_cycle(128, 0), &opts).unwrap().estimate;
    let mid_err = ((f.lower + f.upper) / 2.0 - 2.0).abs() / 2.0;
    let pass = e.contains(2.0) && width <= 0.05 && coarse_time < Duration::from_secs(60) && mid_err <= 0.02;
    report(
        1,
        "64x32 bracket contains 2 within 5%, 128x64 midpoint within 2%",
        pass,
        format!("[{}, {}] width {width:.2e} in {coarse_time:?}; fine midpoint error {mid_err:.2e}", e.lower, e.upper),
    );
}

#[test]
fn criterion_2_gauss_bonnet_polygons() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let m = rng.gen_range(3..=12);
        let rep = polygon_report(&random_convex_polygon(&mut rng, m)).unwrap();
        worst = worst.max((rep.disk_area - (rep.exterior_angle_sum - TAU)).abs());
    }
    let t = start.elapsed();
    report(
        2,
        "100 random planar convex polygons satisfy Gauss-Bonnet to 1e-9",
        worst <= 1e-9 && t < Duration::from_secs(5),
        format!("max defect {worst:.2e} in {t:?}"),
    );
}

#[test]
fn criterion_3_circle_identity_and_convergence() {
    let mut worst_gap: f64 = 0.0;
    let mut min_order = f64::INFINITY;
    for &r in &[0.25, 0.5, 1.0, 2.0] {
        let c = circle_bending_check(r, 64).unwrap();
        worst_gap = worst_gap.max((c.disk_area - (c.total_curvature - TAU)).abs());
        let exact = TAU * f64::cosh(r);
        let e64 = exact - inscribed_exterior_sum(r, 64);
        let e512 = exact - inscribed_exterior_sum(r, 512);
        min_order = min_order.min((e64 / e512).ln() / 8f64.ln());
    }
    report(
        3,
        "circle identity to 1e-12 and exterior sums converge at order >= 1.9",
        worst_gap <= 1e-12 && min_order >= 1.9,
        format!("max gap {worst_gap:.2e}, min order {min_order:.4}"),
    );
}

#[test]
fn criterion_4_isoperimetric_sweep() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..1000 {
        let r = 10.0 - rng.gen_range(0.0..10.0);
        max_ratio = max_ratio.max(ball_isoperimetric(r).unwrap().ratio);
    }
    let at_ten = ball_isoperimetric(10.0).unwrap().ratio;
    let t = start.elapsed();
    report(
        4,
        "ratio < 1/2 on 1000 random radii, within 1e-6 of 1/2 at r = 10",
        max_ratio < 0.5 && at_ten < 0.5 && 0.5 - at_ten <= 1e-6 && t < Duration::from_secs(1),
        format!("max ratio {max_ratio}, gap at 10 {:.2e}, {t:?}", 0.5 - at_ten),
    );
}

#[test]
fn criterion_5_recurrence_exactness() {
    use num_bigint::BigUint;
    let mut agree = true;
    for g in 2..=10u32 {
        // Independent iteration, compared against the library's counts.
        let (mut x, mut d) = (BigUint::from(1u32), BigUint::from(1u32));
        for n in 0..=30u32 {
            let c = cover_counts(g, n).unwrap();
            agree &= c.x == x && c.d == d;
            x += BigUint::from(2 * g) * &d;
            d *= BigUint::from(2 * g - 1);
        }
    }
    let first: Vec<CoverCount> = (0..=2).map(|n| cover_counts(2, n).unwrap()).collect();
    let want = [(1u32, 1u32), (5, 3), (17, 9)];
    let small = first.iter().zip(want).all(|(c, (x, d))| c.x == BigUint::from(x) && c.d == BigUint::from(d));
    let ratio = cover_counts(2, 30).unwrap().ratio();
    report(
        5,
        "recurrence equals closed forms for g in 2..=10, n in 0..=30",
        agree && small && (ratio - 0.5).abs() <= 1e-6,
        format!("exact {agree}, first terms {small}, d/x at n = 30: {ratio}"),
    );
}

#[test]
fn criterion_6_bound_algebra() {
    let mut worst_pk: f64 = f64::NEG_INFINITY;
    for &k in &[0.5, 1.0, 2.5, 7.0] {
        let (_, max) = pk_max(k).unwrap();
        let steps = (8.0 * k / 1e-3) as usize;
        for i in 0..=steps {
            worst_pk = worst_pk.max(pk(k, i as f64 * 1e-3) - max);
        }
    }
    let mut worst_zero: f64 = 0.0;
    for g in 2..=10u32 {
        let l = (PI / (g as f64 + 1.0)).sqrt();
        worst_zero = worst_zero.max(vr_bound_small_l(l, g).unwrap().value.abs());
    }
    let g2_zero = vr_bound_genus2((PI / 3.0).sqrt()).unwrap().value.abs();
    let mut worst_dom: f64 = f64::NEG_INFINITY;
    let mut points = 0;
    for i in 0..25 {
        let l = 0.1 + 0.2 * i as f64;
        for g in 2..=9u32 {
            for j in 0..50 {
                let mu = 4.0 * j as f64;
                let b = BendingHypothesis::new(mu).unwrap();
                worst_dom = worst_dom.max(vr_bound_poly(l, g, &b).unwrap() - vr_bound_genus(l, g).unwrap());
                points += 1;
            }
        }
    }
    report(
        6,
        "pk_max dominance, bound zeros, genus bound dominates the polynomial bound",
        worst_pk <= 1e-9 && worst_zero <= 1e-12 && g2_zero <= 1e-12 && worst_dom <= 1e-9 && points == 10_000,
        format!("pk excess {worst_pk:.1e}, zeros {worst_zero:.1e}/{g2_zero:.1e}, dominance excess {worst_dom:.1e} over {points} points"),
    );
}

/// Exhaustive scan: a set of pants curves is admissible iff cutting them
/// leaves the pants graph connected.
fn brute_force(pants: usize, ends: &[[usize; 2]], lengths: &[f64], k: usize) -> (Vec<usize>, f64) {
    fn connected_without(pants: usize, ends: &[[usize; 2]], cut: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..pants).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] == x { x } else { let r = find(p, p[x]); p[x] = r; r }
        }
        for (i, e) in ends.iter().enumerate() {
            if !cut.contains(&i) {
                let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
                parent[a] = b;
            }
        }
        let r = find(&mut parent, 0);
        (0..pants).all(|v| find(&mut parent, v) == r)
    }
    let n = ends.len();
    let mut best: (Vec<usize>, f64) = (vec![], f64::INFINITY);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !connected_without(pants, ends, &set) {
            continue;
        }
        let len: f64 = set.iter().map(|&i| (lengths[i] / 2.0 * (lengths[i] / 2.0).exp()).sqrt()).sum();
        if len < best.1 || (len == best.1 && set < best.0) {
            best = (set, len);
        }
    }
    best
}

#[test]
fn criterion_7_minimization_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = Vec::new();
    let mut runs = 0;
    for g in 2..=4u32 {
        let (pants, ends) = common::pants_graph(g);
        let names = common::names(ends.len());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        for _ in 0..25 {
            let lengths: Vec<f64> = (0..ends.len()).map(|_| rng.gen_range(0.1..4.0)).collect();
            let s = common::fn_surface(g as i64, pants, ends, &lengths, &refs);
            let m = minimize_l(&s, 1000, DiscreteOptions::default()).unwrap();
            let (set, len) = brute_force(pants, ends, &lengths, g as usize - 1);
            runs += 1;
            if m.system.curves != set || (m.length.upper - len).abs() > 1e-12 * len {
                mismatches.push(format!("g={g} lengths={lengths:?}: got {:?}, want {set:?}", m.system.curves));
            }
        }
    }
    report(
        7,
        "minimize_L agrees with the exhaustive scan",
        mismatches.is_empty(),
        format!("{runs} runs, {} mismatches {:?}", mismatches.len(), mismatches.first()),
    );
}

#[test]
fn criterion_8_end_to_end_certification() {
    let opts = DiscreteOptions::default();
    let short = common::theta([0.5, 2.0, 3.0]);
    let long = common::theta([3.0, 2.0, 3.0]);
    let a = evaluate(&short, 1000, opts, None).unwrap();
    let b = evaluate(&long, 1000, opts, None).unwrap();
    let repeat_a = evaluate(&short, 1000, opts, None).unwrap().to_json() == a.to_json();
    let repeat_b = evaluate(&long, 1000, opts, None).unwrap().to_json() == b.to_json();

    // Same through the binary, twice.
    let bin = env!("CARGO_BIN_EXE_vrbound");
    let fixture = common::fixture_path("fn_theta_g2.json");
    let run = || std::process::Command::new(bin).arg("certify").arg("--surface").arg(&fixture).output().unwrap();
    let (o1, o2) = (run(), run());
    let cli_ok = o1.status.success() && o1.stdout == o2.stdout && o1.stdout.starts_with(b"verdict: NegativeCertified\n");

    let pass = a.verdict == Verdict::NegativeCertified
        && b.verdict != Verdict::NegativeCertified
        && repeat_a
        && repeat_b
        && cli_ok;
    report(
        8,
        "l = 0.5 certifies negativity, l = 3 downgrades, runs are byte-identical",
        pass,
        format!("{:?} then {:?}; repeatable {repeat_a}/{repeat_b}; cli {cli_ok}", a.verdict, b.verdict),
    );
}

#[test]
fn criterion_9_bound_family_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = 0;
    for g in 2..=6u32 {
        for _ in 0..100 {
            let mut areas: Vec<f64> = (0..g).map(|_| rng.gen_range(0.0..20.0)).collect();
            areas.sort_by(f64::total_cmp);
            if minimizing_k(g, &areas).unwrap() != 1 {
                failures += 1;
            }
        }
    }
    report(9, "k = 1 minimizes the volume bound family", failures == 0, format!("{failures} failures in 500 vectors"));
}
