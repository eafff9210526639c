mod common;

use common::*;
use proptest::prelude::*;

use jetfol::fpgroup::{
    crossed_extend, d0_matrix, d1_matrix, evaluate_word, flatten_cochain, split_cochain, Letter, ModuleAction,
    Presentation, Word,
};
use jetfol::jetcore::linalg::{in_span, sub_vec};
use jetfol::jetcore::{JetDiffeo, Matrix, Scalar};
use jetfol::obstruction::{
    adjust_images, enumerate_lifts, layer_act, lift_obstruction, lift_obstruction_with, relator_defects,
    transport_rep, Representation, Section, Transport,
};

/// Appends letters so every generator has exponent sum zero; such relators
/// hold in any abelian action.
fn balanced(w: Word, generators: usize) -> Word {
    let mut sums = vec![0i64; generators];
    for l in &w.letters {
        sums[l.generator] += if l.inverse { -1 } else { 1 };
    }
    let mut letters = w.letters;
    for (g, s) in sums.into_iter().enumerate() {
        let fix = if s > 0 { Letter::neg(g) } else { Letter::pos(g) };
        letters.extend(std::iter::repeat_n(fix, s.unsigned_abs() as usize));
    }
    Word::new(letters)
}

/// A presentation with balanced relators and a diagonal action on `F^dim`.
fn abelian_instance() -> impl Strategy<Value = (Presentation, ModuleAction<Q>)> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(n, dim)| {
        (
            prop::collection::vec(word(n, 6), 0..=3),
            prop::collection::vec(prop::collection::vec(nonzero(), dim), n),
        )
            .prop_map(move |(rels, diag)| {
                let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
                let rels = rels.into_iter().map(|w| balanced(w, n)).collect();
                let mats = diag
                    .into_iter()
                    .map(|d| {
                        let mut m = Matrix::zeros(dim, dim);
                        for (i, x) in d.into_iter().enumerate() {
                            m.set(i, i, x);
                        }
                        m
                    })
                    .collect();
                (Presentation::new(names, rels).unwrap(), ModuleAction::new(dim, mats).unwrap())
            })
    })
}

fn free_action(generators: usize, dim: usize) -> impl Strategy<Value = ModuleAction<Q>> {
    prop::collection::vec(invertible(dim), generators).prop_map(move |ms| ModuleAction::new(dim, ms).unwrap())
}

fn cochain(generators: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(small(), dim), generators)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d1_after_d0_vanishes((p, act) in abelian_instance()) {
        let d1 = d1_matrix(&p, &act).unwrap();
        let d0 = d0_matrix(&p, &act).unwrap();
        prop_assert!(d1.mul(&d0).unwrap().is_zero());
    }

    #[test]
    fn surface_complexes_are_chain_complexes(g in 1usize..=3, dim in 1usize..=2) {
        let p = Presentation::surface(g).unwrap();
        let act = ModuleAction::<Q>::trivial(2 * g, dim);
        prop_assert!(d1_matrix(&p, &act).unwrap().mul(&d0_matrix(&p, &act).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn crossed_extension_is_a_crossed_homomorphism(
        (act, c, w1, w2) in (1usize..=3, 1usize..=2).prop_flat_map(|(n, dim)| {
            (free_action(n, dim), cochain(n, dim), word(n, 5), word(n, 5))
        }),
    ) {
        let whole = crossed_extend(&c, &w1.concat(&w2), &act).unwrap();
        let first = crossed_extend(&c, &w1, &act).unwrap();
        let second = act.act(&w1, &crossed_extend(&c, &w2, &act).unwrap()).unwrap();
        let sum: Vec<Q> = first.iter().zip(&second).map(|(a, b)| a + b).collect();
        prop_assert_eq!(whole, sum);
    }

    #[test]
    fn evaluation_ignores_free_reduction(
        (images, w, at, g) in (1usize..=2, 1usize..=2, 1usize..=3).prop_flat_map(|(n, l, k)| {
            (prop::collection::vec(jet(l, k), n), word(n, 5), 0usize..6, 0..n)
        }),
    ) {
        let value = evaluate_word(&w, &images).unwrap();
        let at = at.min(w.len());
        let mut letters = w.letters.clone();
        letters.splice(at..at, [Letter::pos(g), Letter::neg(g)]);
        prop_assert_eq!(&evaluate_word(&Word::new(letters), &images).unwrap(), &value);
        prop_assert_eq!(&evaluate_word(&w.free_reduce(), &images).unwrap(), &value);
    }

    #[test]
    fn adjusting_lifts_shifts_defects_by_d1(r in torus_rep(), a in cochain(2, 1)) {
        let report = lift_obstruction(&r).unwrap();
        let adjusted = adjust_images(&report.section_lifts, &a).unwrap();
        let top = r.k() + 1;
        let shifted: Vec<Q> = relator_defects(r.presentation(), &adjusted)
            .unwrap()
            .iter()
            .flat_map(|d| d.layer_vector(top))
            .collect();
        let step = report.d1.mul_vec(&flatten_cochain(&a)).unwrap();
        let expected: Vec<Q> = report.defect_vector.iter().zip(&step).map(|(x, y)| x + y).collect();
        prop_assert_eq!(shifted, expected);
    }

    #[test]
    fn relators_on_section_lifts_only_fail_at_the_top(r in torus_rep()) {
        let report = lift_obstruction(&r).unwrap();
        for w in r.presentation().relators() {
            let value = evaluate_word(w, &report.section_lifts).unwrap();
            prop_assert!(value.truncate(r.k()).unwrap().is_identity());
        }
    }

    #[test]
    fn verdict_does_not_depend_on_the_section(r in torus_rep()) {
        let levy = lift_obstruction_with(&r, Section::Levy).unwrap();
        let poly = lift_obstruction_with(&r, Section::Polynomial).unwrap();
        prop_assert_eq!(levy.liftable, poly.liftable);
        let diff = sub_vec(&levy.defect_vector, &poly.defect_vector);
        prop_assert!(in_span(&diff, &levy.d1.transpose().to_rows()).unwrap());
    }

    #[test]
    fn conjugation_preserves_liftability(r in torus_rep(), g in jet(1, 3)) {
        let conj = r.conjugate(&g).unwrap();
        let (a, b) = (lift_obstruction(&r).unwrap(), lift_obstruction(&conj).unwrap());
        prop_assert_eq!(a.liftable, b.liftable);
        let diff = sub_vec(&b.defect_vector, &layer_act(&g, &a.defect_vector).unwrap());
        prop_assert!(in_span(&diff, &b.d1.transpose().to_rows()).unwrap());
    }

    #[test]
    fn dilation_transport_is_conjugation(r in torus_rep(), t in positive()) {
        let dilated = transport_rep(&r, &Transport::Dilate(t.clone())).unwrap();
        let d = JetDiffeo::dilation(r.l(), r.k(), t.recip()).unwrap();
        prop_assert_eq!(dilated, r.conjugate(&d).unwrap());
    }

    #[test]
    fn witnesses_validate_and_truncate_back(r in torus_rep()) {
        let report = lift_obstruction(&r).unwrap();
        match report.witness {
            Some(w) => {
                prop_assert_eq!(w.k(), r.k() + 1);
                prop_assert_eq!(transport_rep(&w, &Transport::Project(r.k())).unwrap(), r);
            }
            None => prop_assert!(report.certificate.is_some()),
        }
    }

    #[test]
    fn cocycles_move_lifts_and_other_cochains_break_them(r in torus_rep(), junk in cochain(2, 1)) {
        let Ok(space) = enumerate_lifts(&r) else {
            return Ok(());
        };
        for z in &space.z1_basis {
            prop_assert!(space.lift_with(z).is_ok());
        }
        let flat = flatten_cochain(&junk);
        let d1 = d1_matrix(r.presentation(), &space.module).unwrap();
        let cocycle = d1.mul_vec(&flat).unwrap().iter().all(Scalar::is_zero);
        prop_assert_eq!(space.lift_with(&flat).is_ok(), cocycle);
        prop_assert_eq!(split_cochain(&flat, 1), junk);
    }
}

#[test]
fn surface_lifts_are_liftable_at_the_trivial_point() {
    let p = Presentation::surface(2).unwrap();
    let r = Representation::<Q>::trivial(p, 1, 3).unwrap();
    assert!(lift_obstruction(&r).unwrap().liftable);
}
