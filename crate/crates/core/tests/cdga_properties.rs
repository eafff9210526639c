mod common;

use common::*;
use proptest::prelude::*;

use jetfol::cdga::{
    ext_class_rep, heisenberg, is_exact, mapping_torus, mc_check, surface, surface_mc_data, surface_quadric,
    surface_rep_bridge, trivial_rank2, CdgaModel, FormField, McData,
};
use jetfol::charvar::{betti_pair, normalize_orbit, z2_action, BettiPair};
use jetfol::fpgroup::Presentation;
use jetfol::io;
use jetfol::jetcore::{q, JetMap, Scalar};
use jetfol::obstruction::lift_obstruction;

fn builtin(which: usize) -> CdgaModel<Q> {
    match which {
        0 => heisenberg(),
        1 => surface(1).unwrap(),
        2 => surface(2).unwrap(),
        3 => mapping_torus(q(3, 2)).unwrap(),
        _ => trivial_rank2(),
    }
}

/// A model with a random homogeneous element of each of two degrees.
fn model_and_pair() -> impl Strategy<Value = (CdgaModel<Q>, usize, Vec<Q>, Vec<Q>)> {
    (0usize..5, 0usize..=2, 0usize..=2).prop_flat_map(|(which, p, r)| {
        let m = builtin(which);
        let n = m.dim();
        (Just(m), Just(p), prop::collection::vec(small(), n), prop::collection::vec(small(), n)).prop_map(
            move |(m, p, x, y)| {
                let keep = |v: Vec<Q>, deg: usize| -> Vec<Q> {
                    v.into_iter()
                        .zip(m.basis())
                        .map(|(c, b)| if b.degree == deg { c } else { q(0, 1) })
                        .collect()
                };
                let (x, y) = (keep(x, p), keep(y, r));
                (m, p, x, y)
            },
        )
    })
}

fn periods(genus: usize) -> impl Strategy<Value = Vec<[Q; 4]>> {
    prop::collection::vec((small(), small(), small(), small()).prop_map(|(a, b, c, d)| [a, b, c, d]), genus)
}

/// Periods forced onto the quadric by solving for the last `z`.
fn quadric_periods(genus: usize) -> impl Strategy<Value = Vec<[Q; 4]>> {
    (periods(genus), nonzero()).prop_map(|(mut p, x)| {
        let last = p.len() - 1;
        p[last][0] = x;
        let rest = surface_quadric(&p[..last]);
        let [x, y, w, _] = p[last].clone();
        p[last][3] = (&y * &w - rest) / x;
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differentials_square_to_zero_and_obey_leibniz((m, p, x, y) in model_and_pair()) {
        prop_assert!(m.d(&m.d(&x)).iter().all(Scalar::is_zero));
        let lhs = m.d(&m.mul(&x, &y));
        let sign = if p % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        let rhs: Vec<Q> = m.mul(&m.d(&x), &y).iter()
            .zip(m.mul(&x, &m.d(&y)))
            .map(|(a, b)| a + &sign * &b)
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    // The forms anticommute by degree, so the antisymmetry is graded.
    #[test]
    fn rank1_bracket_is_graded_antisymmetric(
        (m, p, x, y) in model_and_pair(), i in 1usize..4, j in 1usize..4,
    ) {
        let r = m.basis().iter().zip(&y).find(|(_, c)| !c.is_zero()).map_or(0, |(b, _)| b.degree);
        let fi = FormField::rank1(i, x.clone());
        let fj = FormField::rank1(j, y);
        let ab = fi.bracket(&fj, &m).unwrap();
        let ba = fj.bracket(&fi, &m).unwrap();
        let sign = if (p * r) % 2 == 0 { q(-1, 1) } else { q(1, 1) };
        prop_assert_eq!(&ab, &ba.scale(&sign));
        prop_assert!(fi.bracket(&fi, &m).unwrap().is_zero());
    }

    #[test]
    fn heisenberg_family_is_maurer_cartan(s in nonzero(), t in nonzero()) {
        let m = heisenberg::<Q>();
        let data = McData::rank1(vec![
            m.combination(&[("a", s.clone())]).unwrap(),
            m.combination(&[("b", t.clone())]).unwrap(),
            m.combination(&[("c", -(&s * &t))]).unwrap(),
        ]);
        prop_assert!(mc_check(&m, &data).unwrap().iter().all(FormField::is_zero));
        let e = ext_class_rep(&m, &data).unwrap();
        prop_assert!(m.d(&e.rank1_form(&m)).iter().all(Scalar::is_zero));
        let expected = m.combination(&[("a^c", q(-2, 1) * &s * &s * &t)]).unwrap();
        prop_assert_eq!(e.rank1_form(&m), expected);
        prop_assert!(!is_exact(&m, &e.rank1_form(&m), 2, 0).unwrap().exact);
    }

    #[test]
    fn surface_class_vanishes_exactly_on_the_quadric(
        (genus, p, on) in (1usize..=2, any::<bool>()).prop_flat_map(|(g, on)| {
            let p = if on { quadric_periods(g).boxed() } else { periods(g).boxed() };
            (Just(g), p, Just(on))
        }),
    ) {
        let m = surface::<Q>(genus).unwrap();
        let quad = surface_quadric(&p);
        prop_assert!(!on || quad.is_zero());
        let e = ext_class_rep(&m, &surface_mc_data(&m, &p).unwrap()).unwrap().rank1_form(&m);
        prop_assert_eq!(is_exact(&m, &e, 2, 0).unwrap().exact, quad.is_zero());
        let report = lift_obstruction(&surface_rep_bridge(genus, &p).unwrap()).unwrap();
        prop_assert_eq!(report.liftable, quad.is_zero());
    }

    #[test]
    fn normalization_is_scale_invariant(
        u in prop::collection::vec(-10.0f64..10.0, 0..4),
        v in prop::collection::vec(-10.0f64..10.0, 0..4),
        log_t in -2.0f64..2.0,
    ) {
        prop_assume!(u.iter().chain(&v).any(|x| x.abs() > 1e-3));
        let t = 10f64.powf(log_t);
        let base = normalize_orbit(&u, &v).unwrap();
        let su: Vec<f64> = u.iter().map(|x| x / t).collect();
        let sv: Vec<f64> = v.iter().map(|x| x / (t * t)).collect();
        let moved = normalize_orbit(&su, &sv).unwrap();
        for (a, b) in base.u.iter().chain(&base.v).zip(moved.u.iter().chain(&moved.v)) {
            prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        let (fu, fv) = z2_action(&u, &v);
        let flipped = normalize_orbit(&fu, &fv).unwrap();
        prop_assert_eq!((flipped.u, flipped.v), z2_action(&base.u, &base.v));
    }

    #[test]
    fn jets_round_trip_through_text((g, _, _) in jet_triple(3, 4)) {
        let text = io::to_text(&io::jet_to_json(g.map()));
        let back: JetMap<Q> = io::jet_from_json(&serde_json::from_str(&text).unwrap(), "").unwrap();
        prop_assert_eq!(&back, g.map());
        prop_assert_eq!(io::to_text(&io::jet_to_json(&back)), text);
    }

    #[test]
    fn fields_and_reps_round_trip(x in poly(2, 2, 4), r in torus_rep()) {
        let back = io::poly_from_json::<Q>(&io::poly_to_json(&x), "").unwrap();
        prop_assert_eq!(back, x);
        let v = io::representation_to_json(&r);
        let back = io::representation_from_json::<Q>(&v, "", None).unwrap();
        prop_assert_eq!(io::representation_to_json(&back), v);
    }

    #[test]
    fn mc_data_round_trips(p in periods(2)) {
        let m = surface::<Q>(2).unwrap();
        let data = surface_mc_data(&m, &p).unwrap();
        let v = io::mc_to_json(&m, &data);
        let back = io::mc_from_json(&m, &v, "").unwrap();
        prop_assert_eq!(io::mc_to_json(&m, &back), v);
    }
}

#[test]
fn surface_betti_pairs() {
    for g in 1..=3 {
        let p = Presentation::surface(g).unwrap();
        let ones = vec![q(1, 1); 2 * g];
        assert_eq!(betti_pair(&p, &ones).unwrap(), BettiPair { w1: 2 * g, w2: 2 * g });
    }
}

#[test]
fn builtin_models_round_trip() {
    for which in 0..5 {
        let m = builtin(which);
        assert_eq!(io::model_from_json::<Q>(&io::model_to_json(&m), "").unwrap(), m);
    }
}
