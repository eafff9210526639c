#![allow(dead_code)]

use proptest::prelude::*;

use jetfol::fpgroup::{Letter, Word};
use jetfol::jetcore::{q, JetDiffeo, JetMap, Matrix, Rational};
use jetfol::jetgroup::{layer_basis, PolyVector, G31};
use jetfol::obstruction::Representation;
use jetfol::fpgroup::Presentation;

pub type Q = Rational;
pub type J = JetDiffeo<Q>;

pub fn small() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero() -> impl Strategy<Value = Q> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

pub fn positive() -> impl Strategy<Value = Q> {
    (1i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn invertible(n: usize) -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(small(), n * n).prop_filter_map("singular", move |v| {
        Matrix::from_rows(v.chunks(n).map(<[Q]>::to_vec).collect())
            .ok()
            .filter(Matrix::is_invertible)
    })
}

/// Coefficients for every `(component, monomial)` of degrees `lo..=hi`,
/// each present with probability `density`.
fn sparse_terms(l: usize, lo: usize, hi: usize, density: f64) -> impl Strategy<Value = Vec<(usize, jetfol::jetcore::MultiIndex, Q)>> {
    let slots: Vec<_> = (lo..=hi).flat_map(|d| layer_basis(l, d)).collect();
    prop::collection::vec(prop::option::weighted(density, small()), slots.len()).prop_map(move |cs| {
        slots
            .iter()
            .zip(cs)
            .filter_map(|((i, j), c)| c.map(|c| (*i, j.clone(), c)))
            .collect()
    })
}

pub fn jet(l: usize, k: usize) -> impl Strategy<Value = J> {
    let hi = k.max(1);
    (invertible(l), sparse_terms(l, 2, hi, 0.4)).prop_map(move |(a, terms)| {
        let terms = if k >= 2 { terms } else { Vec::new() };
        let nonlinear = JetMap::from_terms(l, k, terms).unwrap();
        JetDiffeo::new(JetMap::linear(&a, k).unwrap().add(&nonlinear).unwrap()).unwrap()
    })
}

/// Triples of jets in a common `G_{k,l}`.
pub fn jet_triple(max_l: usize, max_k: usize) -> impl Strategy<Value = (J, J, J)> {
    (1..=max_l, 1..=max_k).prop_flat_map(|(l, k)| (jet(l, k), jet(l, k), jet(l, k)))
}

pub fn poly(l: usize, lo: usize, hi: usize) -> impl Strategy<Value = PolyVector<Q>> {
    sparse_terms(l, lo, hi, 0.5).prop_map(move |t| PolyVector::from_terms(l, lo, hi, t).unwrap())
}

pub fn g31() -> impl Strategy<Value = G31<Q>> {
    (small(), small(), nonzero()).prop_map(|(a1, a2, a0)| G31::new(a1, a2, a0).unwrap())
}

/// Torus representations in `G_{3,1}`: commuting unipotent charts, or
/// diagonal ones conjugated by a random jet.
pub fn torus_rep() -> impl Strategy<Value = Representation<Q>> {
    let unipotent = (small(), small(), small(), small()).prop_map(|(a, b, c, d)| {
        Representation::from_g31_charts(Presentation::torus(), 3, &[[a, b, q(1, 1)], [c, d, q(1, 1)]]).unwrap()
    });
    let conjugated = (nonzero(), nonzero(), jet(1, 3)).prop_map(|(a, b, h)| {
        let zero = || q(0, 1);
        Representation::from_g31_charts(Presentation::torus(), 3, &[[zero(), zero(), a], [zero(), zero(), b]])
            .unwrap()
            .conjugate(&h)
            .unwrap()
    });
    prop_oneof![unipotent, conjugated]
}

pub fn word(generators: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..=max_len).prop_map(|ls| {
        Word::new(
            ls.into_iter()
                .map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) })
                .collect(),
        )
    })
}
