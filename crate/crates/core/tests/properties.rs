mod common;

use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vrbound::bounds::{
    certify, convex_core_bound, pk, pk_max, vr_bound_genus, vr_bound_poly, vr_bound_small_l, BendingHypothesis,
    ConvexCoreInput, Verdict,
};
use vrbound::extremal::{el_discrete, el_lower_from_metric, el_upper_from_cylinder, DiscreteOptions};
use vrbound::hyp3::{
    ball_isoperimetric, cover_counts, h3_angle, h3_distance, inscribed_exterior_sum, minimizing_k, polygon_report,
    random_convex_polygon, volume_bound_family, Isometry, PointH3,
};
use vrbound::surface::{euler_genus, Surface, SurfaceModel};
use vrbound::systems::{enumerate_systems, minimize_l, minimize_l_in};

fn fixtures_text() -> Vec<String> {
    common::fixtures().into_iter().map(|(_, s)| s.to_json_string()).collect()
}

#[test]
fn fixtures_declare_their_euler_genus() {
    for (name, s) in common::fixtures() {
        assert_eq!(euler_genus(&s).unwrap(), s.genus, "{name}");
    }
}

#[test]
fn surfaces_are_shareable() {
    fn check<T: Send + Sync>() {}
    check::<Surface>();
}

#[test]
fn cutting_plane_trace_is_monotone_and_feasible() {
    let s = common::grid_torus(1.5, 1.0, 12, 8);
    let r = el_discrete(&s, &s.curves[0], &DiscreteOptions::with_tol(1e-6)).unwrap();
    for w in r.trace.windows(2) {
        assert!(w[1].objective >= w[0].objective * (1.0 - 1e-12));
        assert!(w[1].upper <= w[0].upper * (1.0 + 1e-12));
    }
    for walk in &r.state.active_constraints {
        let len: f64 = walk.iter().map(|e| r.state.weights[e.edge]).sum();
        assert!(len >= 1.0 - 1e-9, "{len}");
    }
}

#[test]
fn cylinder_restriction_dominates_ambient_estimate() {
    // A 1x1 torus: each stacked half-cylinder gives the upper bound 2,
    // the meshed torus itself has extremal length 1.
    let flat = common::stacked_torus();
    let sub = el_upper_from_cylinder(&flat, &flat.curves[0]).unwrap();
    let mesh = common::grid_torus(1.0, 1.0, 8, 8);
    let amb = el_discrete(&mesh, &mesh.curves[0], &DiscreteOptions::default()).unwrap().estimate;
    assert!(sub.upper >= amb.upper * (1.0 - 1e-3));
}

#[test]
fn separating_curves_never_selected() {
    let s = common::fn_surface(2, 2, &common::DUMBBELL, &[3.0, 0.01, 3.0], &["l", "w", "r"]);
    for sys in enumerate_systems(&s, 100).unwrap() {
        assert!(!sys.curves.contains(&1));
    }
    assert_ne!(minimize_l(&s, 100, DiscreteOptions::default()).unwrap().system.curves, vec![1]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn loading_is_total(bytes in proptest::collection::vec(any::<u8>(), 0..512)) {
        let _ = Surface::from_json_bytes(&bytes);
    }

    #[test]
    fn mutated_fixtures_never_crash(idx in 0usize..10, pos in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let mut text = fixtures_text()[idx].clone().into_bytes();
        let i = pos.index(text.len());
        text[i] = byte;
        let _ = Surface::from_json_bytes(&text);
    }

    #[test]
    fn fn_round_trip(g in 2u32..=4, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pants, ends) = common::pants_graph(g);
        let lengths: Vec<f64> = (0..ends.len()).map(|_| rng.gen_range(1e-3..50.0)).collect();
        let names = common::names(ends.len());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let s = common::fn_surface(g as i64, pants, ends, &lengths, &refs);
        let back = Surface::from_json_bytes(s.to_json_string().as_bytes()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn torus_brackets_contain_closed_form(a in 0.5f64..2.0, b in 0.5f64..2.0, nx in 2usize..8, ny in 2usize..8) {
        let s = common::grid_torus(a, b, nx, ny);
        let opts = DiscreteOptions::default();
        for (curve, exact) in [(&s.curves[0], a / b), (&s.curves[1], b / a)] {
            let e = el_discrete(&s, curve, &opts).unwrap().estimate;
            prop_assert!(e.lower <= e.upper && e.contains(exact), "[{}, {}] vs {}", e.lower, e.upper, exact);
            let m = el_lower_from_metric(&s, curve).unwrap();
            prop_assert!(m.estimate.lower <= exact * (1.0 + 1e-12));
        }
    }

    #[test]
    fn metric_lower_bound_is_scale_invariant(lambda in 0.01f64..100.0, a in 0.5f64..2.0) {
        let s = common::grid_torus(a, 1.0, 4, 3);
        let SurfaceModel::TriangulatedMesh(m) = &s.model else { unreachable!() };
        let scaled = Surface::new(1, SurfaceModel::TriangulatedMesh(m.scaled(lambda)), s.curves.clone()).unwrap();
        let x = el_lower_from_metric(&s, &s.curves[0]).unwrap().estimate.lower;
        let y = el_lower_from_metric(&scaled, &scaled.curves[0]).unwrap().estimate.lower;
        prop_assert!((x - y).abs() <= 1e-12 * x);
    }

    #[test]
    fn larger_pool_never_increases_minimum(seed in any::<u64>(), g in 2u32..=4, drop in 0usize..9) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pants, ends) = common::pants_graph(g);
        let lengths: Vec<f64> = (0..ends.len()).map(|_| rng.gen_range(0.1..4.0)).collect();
        let names = common::names(ends.len());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let s = common::fn_surface(g as i64, pants, ends, &lengths, &refs);
        let opts = DiscreteOptions::default();
        let full = minimize_l(&s, 1000, opts).unwrap();
        let pool: Vec<usize> = (0..ends.len()).filter(|&i| i != drop % ends.len()).collect();
        if let Ok(partial) = minimize_l_in(&s, &pool, 1000, opts) {
            prop_assert!(full.length.upper <= partial.length.upper);
        }
        for sys in enumerate_systems(&s, 1000).unwrap() {
            let u: f64 = sys.curves.iter().map(|&i| (lengths[i] / 2.0 * (lengths[i] / 2.0).exp()).sqrt()).sum();
            prop_assert!(full.length.upper <= u * (1.0 + 1e-12));
        }
    }

    #[test]
    fn pk_never_exceeds_its_maximum(k in 1e-3f64..50.0, x in 0.0f64..200.0) {
        let (at, max) = pk_max(k).unwrap();
        prop_assert!(pk(k, x) <= max * (1.0 + 1e-12));
        prop_assert!((pk(k, at) - max).abs() <= 1e-12 * max);
    }

    #[test]
    fn genus_bound_dominates_polynomial(l in 0.0f64..10.0, g in 2u32..20, mu in 0.0f64..500.0) {
        let b = BendingHypothesis::new(mu).unwrap();
        let poly = vr_bound_poly(l, g, &b).unwrap();
        let genus = vr_bound_genus(l, g).unwrap();
        prop_assert!(poly <= genus + 1e-9 * genus.abs().max(1.0));
    }

    #[test]
    fn bounds_increase_with_length(l in 1e-3f64..10.0, dl in 1e-6f64..1.0, g in 2u32..12) {
        prop_assert!(vr_bound_genus(l + dl, g).unwrap() > vr_bound_genus(l, g).unwrap());
        prop_assert!(vr_bound_small_l(l + dl, g).unwrap().value > vr_bound_small_l(l, g).unwrap().value);
    }

    #[test]
    fn verdict_is_monotone(l in 1e-3f64..3.0, shrink in 0.0f64..1.0, g in 2u32..8) {
        let wide = certify(l, g).unwrap();
        let tight = certify(l * shrink.max(1e-6), g).unwrap();
        if wide.verdict == Verdict::NegativeCertified {
            prop_assert_eq!(tight.verdict, Verdict::NegativeCertified);
        }
    }

    #[test]
    fn convex_core_equal_lengths(g in 2u32..12, l in 6.3f64..40.0) {
        let input = ConvexCoreInput { thurston_lengths: vec![l; g as usize] };
        let v = convex_core_bound(&input, g).unwrap();
        prop_assert!((v - (g - 1) as f64 * l).abs() <= 1e-12 * v);
    }

    #[test]
    fn isometries_preserve_distance_and_angle(seed in any::<u64>(), r1 in 0.0f64..3.0, r2 in 0.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Isometry::random(&mut rng, 2.0);
        let o = PointH3::origin();
        let p = PointH3::from_polar(r1 + 0.1, [1.0, 0.2, -0.3]);
        let q = PointH3::from_polar(r2 + 0.1, [-0.4, 1.0, 0.5]);
        let (mo, mp, mq) = (m.apply(&o), m.apply(&p), m.apply(&q));
        prop_assert!(PointH3::new(*mp.coords()).is_ok());
        prop_assert!((h3_distance(&p, &q) - h3_distance(&mp, &mq)).abs() <= 1e-9 * (1.0 + h3_distance(&p, &q)));
        prop_assert!((h3_angle(&o, &p, &q).unwrap() - h3_angle(&mo, &mp, &mq).unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn random_polygons_are_gauss_bonnet(seed in any::<u64>(), m in 3usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = polygon_report(&random_convex_polygon(&mut rng, m)).unwrap();
        prop_assert!((rep.disk_area - (rep.exterior_angle_sum - TAU)).abs() <= 1e-9);
    }

    #[test]
    fn inscribed_sums_approach_from_below(r in 0.05f64..5.0, p in 3u32..10) {
        let k = 1usize << p;
        let (a, b) = (inscribed_exterior_sum(r, k), inscribed_exterior_sum(r, 2 * k));
        prop_assert!(a < b && b < TAU * r.cosh());
    }

    #[test]
    fn isoperimetric_ratio_increases(r in 1e-3f64..9.0, dr in 1e-3f64..1.0) {
        let a = ball_isoperimetric(r).unwrap();
        let b = ball_isoperimetric(r + dr).unwrap();
        prop_assert!(a.below_half && b.below_half && a.ratio < b.ratio);
    }

    #[test]
    fn cover_counts_closed_forms(g in 2u32..=40, n in 0u32..=60) {
        let c = cover_counts(g, n).unwrap();
        prop_assert_eq!(c.d.bits() as u32 <= n * 7 + 1, true);
        // d/x decreases towards (g − 1)/g from above.
        prop_assert!(c.ratio() >= (g - 1) as f64 / g as f64 - 1e-12);
        if n > 0 {
            let p = cover_counts(g, n - 1).unwrap();
            prop_assert!(&c.d * &p.x < &p.d * &c.x);
        }
    }

    #[test]
    fn ascending_areas_prefer_k_one(g in 2u32..=8, raw in proptest::collection::vec(0.0f64..50.0, 8)) {
        let mut areas: Vec<f64> = raw[..g as usize].to_vec();
        areas.sort_by(f64::total_cmp);
        prop_assert_eq!(minimizing_k(g, &areas).unwrap(), 1);
        let zero = volume_bound_family(g, &vec![0.0; g as usize], g).unwrap();
        prop_assert!((zero - TAU * (g - 1) as f64).abs() <= 1e-12 * zero);
    }
}
