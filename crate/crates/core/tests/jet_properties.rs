mod common;

use common::*;
use proptest::prelude::*;

use jetfol::jetcore::{Matrix, Scalar};
use jetfol::jetgroup::{
    alpha_cocycle, chart_g2l, chart_g31, dilation_conjugate, dilation_homotopy, exp_jet, log_jet, section_sk, G2l,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative((f, g, h) in jet_triple(3, 4)) {
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverses_are_two_sided((f, _, _) in jet_triple(3, 5)) {
        let inv = f.invert().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn truncation_is_a_homomorphism((f, g, _) in jet_triple(3, 4), cut in 1usize..4) {
        let cut = cut.min(f.k());
        let a = f.compose(&g).unwrap().truncate(cut).unwrap();
        let b = f.truncate(cut).unwrap().compose(&g.truncate(cut).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kernel_and_affine_solutions_are_exact(
        rows in 1usize..4,
        cols in 1usize..5,
        entries in prop::collection::vec(small(), 16),
        x in prop::collection::vec(small(), 4),
    ) {
        let m = Matrix::from_rows((0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect()).unwrap();
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
        let b = m.mul_vec(&x[..cols]).unwrap();
        let sol = m.solve_affine(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
    }

    #[test]
    fn exp_and_log_are_inverse(
        (x, k) in (1usize..=3, 2usize..=4).prop_flat_map(|(l, k)| (poly(l, 2, k), Just(k))),
    ) {
        let u = exp_jet(&x, k).unwrap();
        prop_assert_eq!(&log_jet(&u).unwrap(), &x);
        prop_assert_eq!(exp_jet(&log_jet(&u).unwrap(), k).unwrap(), u);
    }

    #[test]
    fn exp_is_additive_in_one_variable(k in 2usize..=3, x in poly(1, 2, 3), y in poly(1, 2, 3)) {
        let (x, y) = (x.rebound(2, k).unwrap(), y.rebound(2, k).unwrap());
        let sum = exp_jet(&x.add(&y).unwrap(), k).unwrap();
        let prod = exp_jet(&x, k).unwrap().compose(&exp_jet(&y, k).unwrap()).unwrap();
        prop_assert_eq!(sum, prod);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(
        x in poly(2, 2, 2), y in poly(2, 2, 2), z in poly(2, 2, 2),
    ) {
        let xy = x.bracket(&y).unwrap();
        prop_assert_eq!(&xy, &y.bracket(&x).unwrap().neg());
        let jac = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    // With X of degree 2 and Y of degree 3 in l = 2, every double bracket
    // has degree at least 5 and dies at order 4. Under composition the Lie
    // algebra of the group carries minus the vector field bracket.
    #[test]
    fn commutator_has_the_bracket_as_leading_term(x in poly(2, 2, 2), y in poly(2, 3, 3)) {
        let k = 4;
        let (x, y) = (x.rebound(2, k).unwrap(), y.rebound(2, k).unwrap());
        let (ex, ey) = (exp_jet(&x, k).unwrap(), exp_jet(&y, k).unwrap());
        let comm = ex.compose(&ey).unwrap()
            .compose(&ex.invert().unwrap()).unwrap()
            .compose(&ey.invert().unwrap()).unwrap();
        let expected = x.bracket(&y).unwrap().neg().rebound(2, k).unwrap();
        prop_assert_eq!(log_jet(&comm).unwrap(), expected);
    }

    #[test]
    fn section_is_split_by_truncation((g, _, _) in jet_triple(2, 4)) {
        let s = section_sk(&g).unwrap();
        prop_assert_eq!(s.k(), g.k() + 1);
        prop_assert_eq!(s.truncate(g.k()).unwrap(), g);
    }

    #[test]
    fn alpha_lives_in_the_top_degree((a, b, _) in jet_triple(2, 3)) {
        let alpha = alpha_cocycle(&a, &b).unwrap();
        let top = a.k() + 1;
        prop_assert!(alpha.terms().all(|(_, j, _)| j.weight() == top));
    }

    #[test]
    fn dilation_is_a_homomorphism_and_a_conjugation((g, h, _) in jet_triple(2, 4), t in positive()) {
        let ht = |x: &J| dilation_homotopy(&t, x).unwrap();
        prop_assert_eq!(ht(&g.compose(&h).unwrap()), ht(&g).compose(&ht(&h)).unwrap());
        prop_assert_eq!(ht(&g), dilation_conjugate(&t, &g).unwrap());
    }

    #[test]
    fn g31_chart_matches_the_product_law(a in g31(), b in g31()) {
        let prod = a.to_jet().unwrap().compose(&b.to_jet().unwrap()).unwrap();
        prop_assert_eq!(chart_g31(&prod).unwrap(), a.mul(&b));
        let [a1, a2, a0] = a.to_array();
        let [b1, b2, b0] = b.to_array();
        let closed = [&a1 + &b1 / &a0, &a2 + &b2 / (&a0 * &a0), &a0 * &b0];
        prop_assert_eq!(a.mul(&b).to_array(), closed);
    }

    #[test]
    fn g2l_chart_matches_the_product_law(
        (a, b) in (1usize..=3).prop_flat_map(|l| {
            let elt = move || (poly(l, 2, 2), invertible(l)).prop_map(|(quadratic, linear)| G2l { quadratic, linear });
            (elt(), elt())
        }),
    ) {
        let prod = a.to_jet().unwrap().compose(&b.to_jet().unwrap()).unwrap();
        prop_assert_eq!(chart_g2l(&prod).unwrap(), a.mul(&b).unwrap());
    }
}
