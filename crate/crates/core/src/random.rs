//! Seeded generators of random group elements and test data.

use num_bigint::BigInt;
use rand::Rng;

use crate::cdga::Periods;
use crate::jetcore::{JetDiffeo, JetMap, Matrix, MultiIndex, Rational, Scalar};
use crate::jetgroup::{G2l, PolyVector, G31};

/// Default seed of the command-line property runs.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Small rational `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if !Scalar::is_zero(&r) {
            return r;
        }
    }
}

pub fn scalar<F: Scalar>(rng: &mut impl Rng, bound: i64) -> F {
    F::from_rational(&rational(rng, bound))
}

pub fn nonzero_scalar<F: Scalar>(rng: &mut impl Rng, bound: i64) -> F {
    F::from_rational(&nonzero_rational(rng, bound))
}

pub fn invertible_matrix<F: Scalar>(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<F> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| scalar(rng, bound)).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random element of `G_{k,l}`; each nonlinear coefficient is nonzero with
/// probability `density`.
pub fn jet_diffeo<F: Scalar>(rng: &mut impl Rng, l: usize, k: usize, density: f64) -> JetDiffeo<F> {
    let a = invertible_matrix(rng, l, 3);
    let mut terms = Vec::new();
    for w in 2..=k {
        for j in MultiIndex::of_weight(l, w) {
            for i in 0..l {
                if rng.gen_bool(density) {
                    terms.push((i, j.clone(), scalar(rng, 4)));
                }
            }
        }
    }
    let nonlinear = JetMap::from_terms(l, k, terms).expect("weights in range");
    let map = JetMap::linear(&a, k).and_then(|m| m.add(&nonlinear)).expect("same shape");
    JetDiffeo::new(map).expect("invertible linear part")
}

pub fn poly_vector<F: Scalar>(rng: &mut impl Rng, l: usize, lo: usize, hi: usize, density: f64) -> PolyVector<F> {
    let mut v = PolyVector::zero(l, lo, hi).expect("valid bounds");
    for w in lo..=hi {
        for j in MultiIndex::of_weight(l, w) {
            for i in 0..l {
                if rng.gen_bool(density) {
                    v.add_term(i, j.clone(), scalar(rng, 4)).expect("in range");
                }
            }
        }
    }
    v
}

pub fn g31<F: Scalar>(rng: &mut impl Rng) -> G31<F> {
    G31::new(scalar(rng, 5), scalar(rng, 5), nonzero_scalar(rng, 5)).expect("a0 nonzero")
}

pub fn g2l<F: Scalar>(rng: &mut impl Rng, l: usize) -> G2l<F> {
    G2l {
        quadratic: poly_vector(rng, l, 2, 2, 0.7),
        linear: invertible_matrix(rng, l, 3),
    }
}

/// Surface periods; with probability `on_quadric` the last `z` is solved for
/// so that `Σ (x z - y w) = 0`.
pub fn surface_periods(rng: &mut impl Rng, genus: usize, on_quadric: f64) -> Vec<Periods<Rational>> {
    let mut p: Vec<Periods<Rational>> = (0..genus)
        .map(|_| [rational(rng, 6), rational(rng, 6), rational(rng, 6), rational(rng, 6)])
        .collect();
    if rng.gen_bool(on_quadric) {
        let last = genus - 1;
        if Scalar::is_zero(&p[last][0]) {
            p[last][0] = nonzero_rational(rng, 6);
        }
        let rest = crate::cdga::surface_quadric(&p[..last]);
        let [x, y, w, _] = &p[last];
        p[last][3] = (y * w - rest) / x;
    }
    p
}
