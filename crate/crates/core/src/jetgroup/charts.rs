//! Explicit coordinates on `G_{3,1}` and `G_{2,l}`.
//!
//! `G_{3,1}`: an element is `exp(x1 t²∂t + x2 t³∂t) ∘ (t ↦ a0 t)` and its
//! chart is `(a1, a2, a0) = (x1, -x2, a0)`. In these coordinates the product
//! is `(a1 + b1/a0, a2 + b2/a0², a0 b0)`. The orientation of `a2` is fixed
//! so that the extension cocycle reads `½(a1 b2/a0² - b1 a2/a0)`.

use crate::error::{Error, Result};
use crate::jetcore::linalg::Matrix;
use crate::jetcore::monomial::MultiIndex;
use crate::jetcore::scalar::Scalar;
use crate::jetcore::JetDiffeo;
use crate::jetgroup::levy::LevyCoords;
use crate::jetgroup::polyvector::PolyVector;

/// Coordinates `(a1, a2, a0)` on `G_{3,1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct G31<F> {
    pub a1: F,
    pub a2: F,
    pub a0: F,
}

impl<F: Scalar> G31<F> {
    pub fn new(a1: F, a2: F, a0: F) -> Result<Self> {
        if a0.is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(G31 { a1, a2, a0 })
    }

    pub fn identity() -> Self {
        G31 {
            a1: F::zero(),
            a2: F::zero(),
            a0: F::one(),
        }
    }

    pub fn from_array(v: [F; 3]) -> Result<Self> {
        let [a1, a2, a0] = v;
        Self::new(a1, a2, a0)
    }

    pub fn to_array(&self) -> [F; 3] {
        [self.a1.clone(), self.a2.clone(), self.a0.clone()]
    }

    /// Product law in chart coordinates.
    pub fn mul(&self, b: &G31<F>) -> G31<F> {
        let inv = self.a0.recip();
        G31 {
            a1: self.a1.add(&inv.mul(&b.a1)),
            a2: self.a2.add(&inv.mul(&inv).mul(&b.a2)),
            a0: self.a0.mul(&b.a0),
        }
    }

    /// `(a1, a2, a0)⁻¹ = (-a0 a1, -a0² a2, 1/a0)`.
    pub fn inverse(&self) -> G31<F> {
        G31 {
            a1: -self.a0.mul(&self.a1),
            a2: -self.a0.mul(&self.a0).mul(&self.a2),
            a0: self.a0.recip(),
        }
    }

    /// The group element as a 3-jet in one variable.
    pub fn to_jet(&self) -> Result<JetDiffeo<F>> {
        LevyCoords {
            linear: Matrix::scalar(1, self.a0.clone()),
            nilpotent: PolyVector::from_terms(
                1,
                2,
                3,
                [
                    (0, MultiIndex::new(vec![2]).unwrap(), self.a1.clone()),
                    (0, MultiIndex::new(vec![3]).unwrap(), -self.a2.clone()),
                ],
            )?,
        }
        .recompose(3)
    }
}

/// Reads `(a1, a2, a0)` off an element of `G_{3,1}`.
pub fn chart_g31<F: Scalar>(g: &JetDiffeo<F>) -> Result<G31<F>> {
    if g.l() != 1 {
        return Err(Error::dim("codimension", 1, g.l()));
    }
    if g.k() != 3 {
        return Err(Error::dim("jet order", 3, g.k()));
    }
    let c = LevyCoords::decompose(g)?;
    let t2 = MultiIndex::new(vec![2]).unwrap();
    let t3 = MultiIndex::new(vec![3]).unwrap();
    Ok(G31 {
        a1: c.nilpotent.coeff(0, &t2),
        a2: -c.nilpotent.coeff(0, &t3),
        a0: c.linear.get(0, 0).clone(),
    })
}

/// Coordinates `(K, A)` on `G_{2,l}`: the element `x ↦ A x + K(A x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct G2l<F: Scalar> {
    pub quadratic: PolyVector<F>,
    pub linear: Matrix<F>,
}

impl<F: Scalar> G2l<F> {
    pub fn identity(l: usize) -> Result<Self> {
        Ok(G2l {
            quadratic: PolyVector::zero(l, 2, 2)?,
            linear: Matrix::identity(l),
        })
    }

    /// `(K1, A1)(K2, A2) = (K1 + A1(K2), A1 A2)`.
    pub fn mul(&self, b: &G2l<F>) -> Result<G2l<F>> {
        Ok(G2l {
            quadratic: self
                .quadratic
                .add(&b.quadratic.gl_action(&self.linear)?)?
                .rebound(2, 2)?,
            linear: self.linear.mul(&b.linear)?,
        })
    }

    pub fn to_jet(&self) -> Result<JetDiffeo<F>> {
        LevyCoords {
            linear: self.linear.clone(),
            nilpotent: self.quadratic.rebound(2, 2)?,
        }
        .recompose(2)
    }
}

pub fn chart_g2l<F: Scalar>(g: &JetDiffeo<F>) -> Result<G2l<F>> {
    if g.k() != 2 {
        return Err(Error::dim("jet order", 2, g.k()));
    }
    let c = LevyCoords::decompose(g)?;
    Ok(G2l {
        quadratic: c.nilpotent.rebound(2, 2)?,
        linear: c.linear,
    })
}

/// Closed form of the `t⁴∂t` coefficient of the extension cocycle of
/// `G_{4,1} → G_{3,1}`: `½(a1 b2 / a0² - b1 a2 / a0)`.
pub fn e41_closed_form<F: Scalar>(a: &G31<F>, b: &G31<F>) -> Result<F> {
    if a.a0.is_zero() || b.a0.is_zero() {
        return Err(Error::SingularLinearPart);
    }
    let inv = a.a0.recip();
    let first = a.a1.mul(&inv).mul(&inv).mul(&b.a2);
    let second = inv.mul(&b.a1).mul(&a.a2);
    Ok(first.sub(&second).mul(&F::from_ratio(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};
    use crate::jetgroup::levy::alpha_cocycle;

    fn g(a1: i64, a2: i64, a0: i64) -> G31<Rational> {
        G31::new(q(a1, 1), q(a2, 1), q(a0, 1)).unwrap()
    }

    #[test]
    fn g31_identity_and_round_trip() {
        let id = JetDiffeo::<Rational>::identity(1, 3).unwrap();
        assert_eq!(chart_g31(&id).unwrap(), G31::identity());
        let x = G31::new(q(2, 3), q(-1, 5), q(7, 2)).unwrap();
        assert_eq!(chart_g31(&x.to_jet().unwrap()).unwrap(), x);
    }

    #[test]
    fn g31_product_examples() {
        assert_eq!(g(1, 0, 2).mul(&g(1, 0, 1)), G31::new(q(3, 2), q(0, 1), q(2, 1)).unwrap());
        let (a, b) = (g(1, 0, 2), g(1, 0, 1));
        let comm = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
        assert_eq!(comm, G31::new(q(-1, 2), q(0, 1), q(1, 1)).unwrap());
        let jet = a.to_jet().unwrap().compose(&b.to_jet().unwrap()).unwrap();
        assert_eq!(chart_g31(&jet).unwrap(), a.mul(&b));
    }

    #[test]
    fn g31_rejects_wrong_shape() {
        assert!(chart_g31(&JetDiffeo::<Rational>::identity(1, 2).unwrap()).is_err());
        assert!(chart_g31(&JetDiffeo::<Rational>::identity(2, 3).unwrap()).is_err());
    }

    #[test]
    fn e41_examples() {
        assert_eq!(e41_closed_form(&g(1, 0, 1), &g(0, 1, 1)).unwrap(), q(1, 2));
        assert_eq!(e41_closed_form(&g(0, 1, 1), &g(1, 0, 1)).unwrap(), q(-1, 2));
        assert_eq!(e41_closed_form(&G31::identity(), &g(3, 4, 5)).unwrap(), q(0, 1));
    }

    #[test]
    fn e41_matches_cocycle() {
        let pairs = [(g(1, 0, 1), g(0, 1, 1)), (g(2, -1, 3), g(-1, 4, 2)), (g(1, 1, -2), g(3, -2, 5))];
        for (a, b) in pairs {
            let alpha = alpha_cocycle(&a.to_jet().unwrap(), &b.to_jet().unwrap()).unwrap();
            let c = alpha.coeff(0, &MultiIndex::new(vec![4]).unwrap());
            assert_eq!(c, e41_closed_form(&a, &b).unwrap(), "{a:?} {b:?}");
        }
    }

    #[test]
    fn g2l_examples() {
        let l = 2;
        let id = JetDiffeo::<Rational>::identity(l, 2).unwrap();
        assert_eq!(chart_g2l(&id).unwrap(), G2l::identity(l).unwrap());
        let k1 = PolyVector::from_terms(2, 2, 2, [(0, MultiIndex::new(vec![1, 1]).unwrap(), q(1, 1))]).unwrap();
        let k2 = PolyVector::from_terms(2, 2, 2, [(1, MultiIndex::new(vec![2, 0]).unwrap(), q(3, 1))]).unwrap();
        let u1 = G2l { quadratic: k1.clone(), linear: Matrix::identity(2) };
        let u2 = G2l { quadratic: k2.clone(), linear: Matrix::identity(2) };
        let prod = u1.to_jet().unwrap().compose(&u2.to_jet().unwrap()).unwrap();
        assert_eq!(chart_g2l(&prod).unwrap().quadratic, k1.add(&k2).unwrap());
        let a = Matrix::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let lin = G2l { quadratic: PolyVector::zero(2, 2, 2).unwrap(), linear: a.clone() };
        let prod = lin.to_jet().unwrap().compose(&u1.to_jet().unwrap()).unwrap();
        let c = chart_g2l(&prod).unwrap();
        assert_eq!(c.linear, a);
        assert_eq!(c.quadratic, k1.gl_action(&a).unwrap());
    }
}
