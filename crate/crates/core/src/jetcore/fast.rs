//! Integer kernel for composing rational jets.
//!
//! Summing fractions normalizes by a gcd at every step. Scaling `g` by the
//! lcm `D` of its denominators turns all powers `g^J` into integer
//! polynomials, and each output coefficient is divided exactly once.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::jetcore::jet::JetMap;
use crate::jetcore::monomial::MonomialTable;
use crate::jetcore::scalar::Rational;

fn lcm_of_denominators<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> BigInt {
    coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn mul_poly_int(table: &MonomialTable, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = table.len();
    let mut out = vec![BigInt::zero(); n];
    let bnz: Vec<usize> = (0..n).filter(|&j| !b[j].is_zero()).collect();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let wi = table.weights[i];
        for &j in &bnz {
            if wi + table.weights[j] > table.k {
                break;
            }
            out[table.product_index(i, j)] += ai * &b[j];
        }
    }
    out
}

/// Dense components of `f ∘ g`.
pub(crate) fn compose_rational(f: &JetMap<Rational>, g: &JetMap<Rational>, table: &MonomialTable) -> Vec<Vec<Rational>> {
    let (l, k, n) = (f.l(), f.k(), table.len());
    let d = lcm_of_denominators(g.terms().map(|t| t.2));
    let mut gi = vec![vec![BigInt::zero(); n]; l];
    for (i, j, c) in g.terms() {
        let idx = table.index_of(j).expect("weight within order");
        gi[i][idx] = c.numer() * (&d / c.denom());
    }
    // Only the powers f actually uses, plus the chains leading to them.
    let mut needed = vec![false; n];
    for (_, j, _) in f.terms() {
        let mut m = table.index_of(j).expect("weight within order");
        while m != 0 && !needed[m] {
            needed[m] = true;
            m = table.split[m].1;
        }
    }
    let mut powers: Vec<Option<Vec<BigInt>>> = vec![None; n];
    let mut one = vec![BigInt::zero(); n];
    one[0] = BigInt::one();
    powers[0] = Some(one);
    for m in 1..n {
        if needed[m] {
            let (i, prev) = table.split[m];
            let p = powers[prev].as_ref().expect("prefix computed first");
            powers[m] = Some(mul_poly_int(table, p, &gi[i]));
        }
    }
    let e = lcm_of_denominators(f.terms().map(|t| t.2));
    let mut dpow = vec![BigInt::one(); k + 1];
    for w in 1..=k {
        dpow[w] = &dpow[w - 1] * &d;
    }
    let mut acc = vec![vec![BigInt::zero(); n]; l];
    for (i, j, c) in f.terms() {
        let idx = table.index_of(j).expect("weight within order");
        let scale = c.numer() * (&e / c.denom()) * &dpow[k - j.weight()];
        let p = powers[idx].as_ref().expect("needed power computed");
        for (a, pv) in acc[i].iter_mut().zip(p) {
            if !pv.is_zero() {
                *a += &scale * pv;
            }
        }
    }
    let den = e * &dpow[k];
    acc.into_iter()
        .map(|comp| {
            comp.into_iter()
                .map(|a| if a.is_zero() { Rational::zero() } else { Rational::new(a, den.clone()) })
                .collect()
        })
        .collect()
}
