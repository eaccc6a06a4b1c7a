use proptest::prelude::*;
use subtour_gap::cli::format::{parse_fractional, parse_instance, parse_tour, write_fractional, write_instance, write_tour};
use subtour_gap::cli::tsplib::{edge_weight, parse_tsplib, write_tsplib};
use subtour_gap::exact::{brute_force, held_karp};
use subtour_gap::families::{closed_form_ratio_metric, fractional_xijk, gen_i3, lambda_certificate, Ijk};
use subtour_gap::localsearch::grad_tour_length;
use subtour_gap::lp::{global_min_cut, solve_subtour_lp};
use subtour_gap::{Edge, EdgeWeightVector, Instance, NormSpec, Tour};

fn norm() -> impl Strategy<Value = NormSpec> {
    prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0)].prop_map(|p| NormSpec::new(p).unwrap())
}

/// Points on a fine grid, so duplicates are unlikely but exact values vary.
fn instance(n: std::ops::RangeInclusive<usize>, dim: usize) -> impl Strategy<Value = Instance> {
    (n, norm()).prop_flat_map(move |(n, norm)| {
        prop::collection::vec(prop::collection::vec(-1000i32..1000, dim), n).prop_filter_map(
            "distinct points",
            move |raw| {
                let pts: Vec<Vec<f64>> = raw.iter().map(|p| p.iter().map(|&c| c as f64 / 97.0).collect()).collect();
                Instance::new(dim, pts, norm).ok()
            },
        )
    })
}

fn tour(n: usize) -> impl Strategy<Value = Tour> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|o| Tour::new(o).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn native_format_round_trip(inst in instance(3..=12, 2)) {
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn native_format_round_trip_in_three_dimensions(inst in instance(3..=12, 3)) {
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn json_round_trip(inst in instance(3..=10, 2)) {
        let json = serde_json::to_string(&inst).unwrap();
        prop_assert_eq!(serde_json::from_str::<Instance>(&json).unwrap(), inst);
    }

    #[test]
    fn tour_text_and_json_round_trip(t in (3usize..=15).prop_flat_map(tour)) {
        prop_assert_eq!(&parse_tour(&write_tour(&t)).unwrap(), &t);
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Tour>(&json).unwrap(), t);
    }

    #[test]
    fn tour_length_ignores_rotation_and_direction(
        (inst, t, shift) in instance(3..=10, 2).prop_flat_map(|i| { let n = i.n(); (Just(i), tour(n), 0..n) })
    ) {
        let mut order = t.order().to_vec();
        order.rotate_left(shift);
        let rotated = Tour::new(order.clone()).unwrap();
        order.reverse();
        let reversed = Tour::new(order).unwrap();
        let l = t.length(&inst).unwrap();
        prop_assert!((rotated.length(&inst).unwrap() - l).abs() < 1e-9 * l.max(1.0));
        prop_assert!((reversed.length(&inst).unwrap() - l).abs() < 1e-9 * l.max(1.0));
        prop_assert_eq!(t.edges().count(), inst.n());
    }

    #[test]
    fn fractional_round_trip(
        weights in prop::collection::vec(prop::option::of(0.0f64..=1.0), 28)
    ) {
        let n = 8;
        let mut x = EdgeWeightVector::new(n);
        let mut it = weights.into_iter();
        for a in 0..n {
            for b in a + 1..n {
                if let Some(w) = it.next().flatten() {
                    x.set(Edge::new(a, b), w).unwrap();
                }
            }
        }
        prop_assert_eq!(parse_fractional(&write_fractional(&x)).unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<EdgeWeightVector>(&json).unwrap(), x);
    }

    #[test]
    fn tsplib_matrix_is_floored_and_symmetric(inst in instance(3..=10, 3)) {
        let m = parse_tsplib(&write_tsplib(&inst, "t")).unwrap();
        for a in 0..inst.n() {
            prop_assert_eq!(m.weight(a, a), 0);
            for b in 0..inst.n() {
                prop_assert_eq!(m.weight(a, b), m.weight(b, a));
                prop_assert_eq!(m.weight(a, b), edge_weight(inst.dist(a, b)));
                prop_assert!(m.weight(a, b) as f64 <= 1000.0 * inst.dist(a, b) + 1e-6);
            }
        }
    }

    #[test]
    fn gradient_is_translation_invariant(
        (inst, t) in instance(4..=9, 2).prop_filter("p > 1", |i| !i.norm().is_rectilinear())
            .prop_flat_map(|i| { let n = i.n(); (Just(i), tour(n)) })
    ) {
        let g = grad_tour_length(&inst, &t).unwrap();
        let c = g.components();
        for axis in 0..2 {
            let s: f64 = c.iter().skip(axis).step_by(2).sum();
            prop_assert!(s.abs() < 1e-9, "axis {}: {}", axis, s);
        }
    }

    #[test]
    fn lambda_certificate_holds(i in 0usize..20, j in 0usize..20, k in 0usize..20) {
        let p = Ijk::new(i, j, k);
        let cert = lambda_certificate(p).unwrap();
        prop_assert!((cert.lambda_sum - 1.0).abs() < 1e-12);
        prop_assert!(cert.max_residual < 1e-12);
        prop_assert!((cert.multiplier - closed_form_ratio_metric(p)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subtour_lp_is_feasible_and_below_the_optimum(inst in instance(4..=9, 2)) {
        let sol = solve_subtour_lp(&inst).unwrap();
        for d in sol.x.degree_vector() {
            prop_assert!((d - 2.0).abs() < 1e-7, "degree {}", d);
        }
        for (_, w) in sol.x.iter() {
            prop_assert!((-1e-9..=1.0 + 1e-9).contains(&w));
        }
        prop_assert!(global_min_cut(&sol.x).0 >= 2.0 - 1e-7);
        prop_assert!((sol.x.cost(&inst).unwrap() - sol.cost).abs() < 1e-7 * sol.cost.max(1.0));
        let opt = held_karp(&inst).unwrap().length;
        prop_assert!(sol.cost <= opt * (1.0 + 1e-9));
        // Wolsey's bound for metric instances.
        prop_assert!(opt <= sol.cost * (1.5 + 1e-9));
    }

    #[test]
    fn held_karp_matches_brute_force(inst in instance(4..=8, 2)) {
        let hk = held_karp(&inst).unwrap();
        let bf = brute_force(&inst).unwrap();
        prop_assert!((hk.length - bf.length).abs() < 1e-9 * bf.length.max(1.0));
        prop_assert!((hk.tour.length(&inst).unwrap() - hk.length).abs() < 1e-9 * hk.length.max(1.0));
    }

    #[test]
    fn prism_fractional_tour_is_feasible(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let p = Ijk::new(i, j, k);
        let x = fractional_xijk(p);
        prop_assert!(x.degree_vector().iter().all(|d| (d - 2.0).abs() < 1e-12));
        prop_assert!(global_min_cut(&x).0 >= 2.0 - 1e-12);
        let lp = solve_subtour_lp(&gen_i3(p)).unwrap().cost;
        prop_assert!((x.cost(&gen_i3(p)).unwrap() - lp).abs() < 1e-7);
    }
}
