//! Exponential coordinates and the splitting `G_{k,l} = K_{k,l} ⋊ GL(l)`.

use crate::error::{Error, Result};
use crate::jetcore::linalg::Matrix;
use crate::jetcore::monomial::MonomialTable;
use crate::jetcore::scalar::Scalar;
use crate::jetcore::{JetDiffeo, JetMap};
use crate::jetgroup::polyvector::PolyVector;

fn check_nilpotent<F: Scalar>(x: &PolyVector<F>, k: usize) -> Result<()> {
    if let Some((lo, hi)) = x.degree_span() {
        if lo < 2 || hi > k {
            return Err(Error::WeightOutOfRange {
                weight: if lo < 2 { lo } else { hi },
                min: 2,
                max: k,
            });
        }
    }
    Ok(())
}

/// Time-one flow of the vector field `x`, as a `k`-jet:
/// `φ(x)_i = Σ_n Xⁿ(x_i) / n!`.
pub fn exp_jet<F: Scalar>(x: &PolyVector<F>, k: usize) -> Result<JetDiffeo<F>> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    check_nilpotent(x, k)?;
    let l = x.l();
    let table = MonomialTable::get(l, k);
    let xd = x.to_dense(&table);
    let comps: Vec<Vec<F>> = (0..l)
        .map(|i| {
            let mut term = vec![F::zero(); table.len()];
            term[table.index_of(&crate::jetcore::MultiIndex::unit(l, i)).unwrap()] = F::one();
            let mut sum = term.clone();
            for n in 1..k {
                term = table.derive(&xd, &term);
                let inv = F::from_i64(n as i64).recip();
                for t in term.iter_mut() {
                    *t *= &inv;
                }
                if term.iter().all(Scalar::is_zero) {
                    break;
                }
                for (s, t) in sum.iter_mut().zip(&term) {
                    *s += t;
                }
            }
            sum
        })
        .collect();
    JetDiffeo::new(JetMap::from_dense(l, k, &table, &comps))
}

/// Inverse of [`exp_jet`] on jets with identity linear part, solved one
/// degree at a time.
pub fn log_jet<F: Scalar>(u: &JetDiffeo<F>) -> Result<PolyVector<F>> {
    let (l, k) = (u.l(), u.k());
    if u.linear_part() != Matrix::identity(l) {
        return Err(Error::NotUnipotent);
    }
    let mut x = PolyVector::zero(l, 2, k.max(2))?;
    for d in 2..=k {
        let cur = exp_jet(&x, k)?;
        let diff = u.map().sub(cur.map())?;
        for (i, j, c) in diff.terms() {
            debug_assert!(j.weight() >= d);
            if j.weight() == d {
                x.add_term(i, j.clone(), c.clone())?;
            }
        }
    }
    Ok(x)
}

/// `g = exp(nilpotent) ∘ linear`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyCoords<F: Scalar> {
    pub linear: Matrix<F>,
    pub nilpotent: PolyVector<F>,
}

impl<F: Scalar> LevyCoords<F> {
    pub fn decompose(g: &JetDiffeo<F>) -> Result<Self> {
        let a = g.linear_part();
        let a_inv = JetDiffeo::linear(&a.inverse()?, g.k())?;
        let u = g.compose(&a_inv)?;
        Ok(LevyCoords {
            linear: a,
            nilpotent: log_jet(&u)?,
        })
    }

    /// Rebuilds the group element at order `k`.
    pub fn recompose(&self, k: usize) -> Result<JetDiffeo<F>> {
        if self.linear.rows() != self.nilpotent.l() || !self.linear.is_square() {
            return Err(Error::dim("linear part size", self.nilpotent.l(), self.linear.rows()));
        }
        let a = JetDiffeo::linear(&self.linear, k)?;
        exp_jet(&self.nilpotent, k)?.compose(&a)
    }
}

/// Canonical set-theoretic splitting `G_{k,l} → G_{k+1,l}`: keep the Levy
/// coordinates and read them at one order higher.
pub fn section_sk<F: Scalar>(g: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
    let k = g.k();
    let mut c = LevyCoords::decompose(g)?;
    c.nilpotent = c.nilpotent.rebound(2, k + 1)?;
    c.recompose(k + 1)
}

/// Top-layer deviation of `s(g1) ∘ s(g2) ∘ s(g1 g2)⁻¹` from the identity.
///
/// The result lives in degree `k + 1`; lower degrees cancel exactly.
pub fn alpha_cocycle<F: Scalar>(g1: &JetDiffeo<F>, g2: &JetDiffeo<F>) -> Result<PolyVector<F>> {
    if g1.k() != g2.k() {
        return Err(Error::dim("jet order", g1.k(), g2.k()));
    }
    let prod = g1.compose(g2)?;
    let r = section_sk(g1)?
        .compose(&section_sk(g2)?)?
        .compose(&section_sk(&prod)?.invert()?)?;
    top_layer(&r)
}

/// For a jet `x + a(x)` with `a` concentrated in the top weight, returns `a`.
pub(crate) fn top_layer<F: Scalar>(r: &JetDiffeo<F>) -> Result<PolyVector<F>> {
    let k = r.k();
    let mut out = PolyVector::zero(r.l(), k, k)?;
    for ((i, j), c) in r.map().minus_identity() {
        assert!(
            j.weight() == k,
            "deviation from the identity in weight {} below the top layer {}",
            j.weight(),
            k
        );
        out.add_term(i, j, c)?;
    }
    Ok(out)
}

/// `h_t(g)`: scales the degree-`d` exponential coordinate by `t^{d-1}`.
///
/// For `t > 0` this is conjugation by `x ↦ t⁻¹ x`; `h_0` keeps only the
/// linear part.
pub fn dilation_homotopy<F: Scalar>(t: &F, g: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
    if t.is_negative() {
        return Err(Error::InvalidParameter("dilation parameter must be non-negative".into()));
    }
    let k = g.k();
    let mut c = LevyCoords::decompose(g)?;
    let mut scaled = PolyVector::zero(g.l(), 2, k.max(2))?;
    for d in 2..=k {
        let part = c.nilpotent.degree_part(d).scale(&t.pow(d as i32 - 1));
        scaled = scaled.add(&part)?.rebound(2, k.max(2))?;
    }
    c.nilpotent = scaled;
    c.recompose(k)
}

/// Conjugation `D ∘ g ∘ D⁻¹` with `D(x) = t⁻¹ x`, for `t ≠ 0`.
pub fn dilation_conjugate<F: Scalar>(t: &F, g: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("conjugation needs t != 0".into()));
    }
    JetDiffeo::dilation(g.l(), g.k(), t.recip())?.conjugate(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};
    use crate::jetcore::MultiIndex;

    fn t(c: &[i64]) -> JetDiffeo<Rational> {
        JetDiffeo::new(JetMap::univariate(&c.iter().map(|&x| q(x, 1)).collect::<Vec<_>>()).unwrap()).unwrap()
    }

    fn field_1d(terms: &[(u32, Rational)], max: usize) -> PolyVector<Rational> {
        PolyVector::from_terms(
            1,
            2,
            max,
            terms.iter().map(|(d, c)| (0, MultiIndex::new(vec![*d]).unwrap(), c.clone())),
        )
        .unwrap()
    }

    #[test]
    fn exp_examples() {
        let zero = PolyVector::<Rational>::zero(1, 2, 3).unwrap();
        assert!(exp_jet(&zero, 3).unwrap().is_identity());
        let (a1, a2) = (q(2, 3), q(-5, 7));
        let x = field_1d(&[(2, a1.clone()), (3, a2.clone())], 3);
        let expected = JetMap::univariate(&[q(1, 1), a1.clone(), &a2 + &a1 * &a1]).unwrap();
        assert_eq!(exp_jet(&x, 3).unwrap().map(), &expected);
        let top = field_1d(&[(3, q(4, 1))], 3);
        assert_eq!(exp_jet(&top, 3).unwrap(), t(&[1, 0, 4]));
    }

    #[test]
    fn exp_rejects_low_degrees() {
        let x = PolyVector::from_terms(1, 1, 3, [(0, MultiIndex::new(vec![1]).unwrap(), q(1, 1))]).unwrap();
        assert!(exp_jet(&x, 3).is_err());
    }

    #[test]
    fn log_examples() {
        assert!(log_jet(&t(&[1, 0, 0])).unwrap().is_zero());
        assert_eq!(log_jet(&t(&[1, 1, 1])).unwrap(), field_1d(&[(2, q(1, 1))], 3));
        assert_eq!(log_jet(&t(&[1, 0, 1])).unwrap(), field_1d(&[(3, q(1, 1))], 3));
        assert_eq!(log_jet(&t(&[2, 0, 1])).unwrap_err(), Error::NotUnipotent);
    }

    #[test]
    fn section_examples() {
        let id = JetDiffeo::<Rational>::identity(2, 3).unwrap();
        assert!(section_sk(&id).unwrap().is_identity());
        let lin = JetDiffeo::linear(&Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(3, 1)]]).unwrap(), 2).unwrap();
        let s = section_sk(&lin).unwrap();
        assert_eq!(s.k(), 3);
        assert_eq!(s.map().num_terms(), lin.map().num_terms());
        assert_eq!(s.linear_part(), lin.linear_part());
        assert_eq!(section_sk(&t(&[1, 1])).unwrap(), t(&[1, 1, 1]));
    }

    #[test]
    fn cocycle_vanishes_on_identity() {
        let id = t(&[1, 0, 0]);
        let g = t(&[3, -1, 2]);
        assert!(alpha_cocycle(&id, &g).unwrap().is_zero());
        assert!(alpha_cocycle(&g, &id).unwrap().is_zero());
    }

    #[test]
    fn dilation_examples() {
        let g = t(&[1, 1]);
        assert_eq!(dilation_homotopy(&q(1, 1), &g).unwrap(), g);
        assert!(dilation_homotopy(&q(0, 1), &g).unwrap().is_identity());
        assert!(dilation_homotopy(&q(-1, 1), &g).is_err());
        let x = field_1d(&[(2, q(1, 1))], 2);
        let half = field_1d(&[(2, q(1, 2))], 2);
        let lhs = dilation_homotopy(&q(1, 2), &exp_jet(&x, 2).unwrap()).unwrap();
        assert_eq!(lhs, exp_jet(&half, 2).unwrap());
        let g = t(&[3, 2, -1]);
        assert_eq!(dilation_homotopy(&q(2, 5), &g).unwrap(), dilation_conjugate(&q(2, 5), &g).unwrap());
    }
}
