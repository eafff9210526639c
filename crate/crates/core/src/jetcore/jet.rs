//! Truncated polynomial maps `(R^l, 0) -> (R^l, 0)` and the jet group
//! `G_{k,l}`.
//!
//! Composition follows the usual convention for maps: `f.compose(&g)` is
//! `f ∘ g`, i.e. `g` is applied first. Group products, word evaluation and
//! conjugation throughout the crate use this convention.

use std::any::Any;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jetcore::linalg::Matrix;
use crate::jetcore::monomial::{format_monomial, MonomialTable, MultiIndex};
use crate::jetcore::scalar::{Rational, Scalar};

/// Sparse `k`-jet of a polynomial map fixing the origin.
///
/// Coefficients are keyed by `(component, multi-index)` with weights in
/// `1..=k`; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct JetMap<F> {
    l: usize,
    k: usize,
    coeffs: BTreeMap<(usize, MultiIndex), F>,
}

impl<F: Scalar> JetMap<F> {
    pub fn zero(l: usize, k: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroCodimension);
        }
        if k == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(JetMap {
            l,
            k,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn identity(l: usize, k: usize) -> Result<Self> {
        let mut m = Self::zero(l, k)?;
        for i in 0..l {
            m.coeffs.insert((i, MultiIndex::unit(l, i)), F::one());
        }
        Ok(m)
    }

    /// The linear map `x -> A x` as a `k`-jet.
    pub fn linear(a: &Matrix<F>, k: usize) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dim("square linear part", a.rows(), a.cols()));
        }
        let l = a.rows();
        let mut m = Self::zero(l, k)?;
        for i in 0..l {
            for j in 0..l {
                let v = a.get(i, j);
                if !v.is_zero() {
                    m.coeffs.insert((i, MultiIndex::unit(l, j)), v.clone());
                }
            }
        }
        Ok(m)
    }

    /// Builds a jet from `(component, multi-index, coefficient)` triples.
    /// Repeated keys are summed.
    pub fn from_terms<I>(l: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, MultiIndex, F)>,
    {
        let mut m = Self::zero(l, k)?;
        for (i, j, c) in terms {
            m.add_term(i, j, c)?;
        }
        Ok(m)
    }

    /// Convenience constructor for one variable: `coeffs[d - 1]` is the
    /// coefficient of `t^d`.
    pub fn univariate(coeffs: &[F]) -> Result<Self> {
        let k = coeffs.len();
        Self::from_terms(
            1,
            k,
            coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| (0, MultiIndex::new(vec![d as u32 + 1]).unwrap(), c.clone())),
        )
    }

    fn add_term(&mut self, i: usize, j: MultiIndex, c: F) -> Result<()> {
        if i >= self.l {
            return Err(Error::ComponentOutOfRange(i));
        }
        if j.len() != self.l {
            return Err(Error::dim("multi-index length", self.l, j.len()));
        }
        let w = j.weight();
        if w == 0 || w > self.k {
            return Err(Error::WeightOutOfRange {
                weight: w,
                min: 1,
                max: self.k,
            });
        }
        let key = (i, j);
        let updated = match self.coeffs.get(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if updated.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, updated);
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, i: usize, j: &MultiIndex) -> F {
        self.coeffs
            .get(&(i, j.clone()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, &F)> {
        self.coeffs.iter().map(|((i, j), c)| (*i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The `l x l` matrix of weight-one coefficients; entry `(i, j)` is the
    /// coefficient of `x_j` in component `i`.
    pub fn linear_part(&self) -> Matrix<F> {
        let mut a = Matrix::zeros(self.l, self.l);
        for ((i, j), c) in &self.coeffs {
            if j.weight() == 1 {
                let col = j.exps().iter().position(|&e| e == 1).unwrap();
                a.set(*i, col, c.clone());
            }
        }
        a
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.len() == self.l
            && (0..self.l).all(|i| {
                self.coeffs
                    .get(&(i, MultiIndex::unit(self.l, i)))
                    .is_some_and(|c| *c == F::one())
            })
    }

    /// Terms of `self - id`.
    pub fn minus_identity(&self) -> BTreeMap<(usize, MultiIndex), F> {
        let mut out = self.coeffs.clone();
        for i in 0..self.l {
            let key = (i, MultiIndex::unit(self.l, i));
            let v = out.get(&key).cloned().unwrap_or_else(F::zero).sub(&F::one());
            if v.is_zero() {
                out.remove(&key);
            } else {
                out.insert(key, v);
            }
        }
        out
    }

    fn check_compatible(&self, other: &JetMap<F>) -> Result<()> {
        if self.l != other.l {
            return Err(Error::dim("codimension", self.l, other.l));
        }
        if self.k != other.k {
            return Err(Error::dim("jet order", self.k, other.k));
        }
        Ok(())
    }

    pub(crate) fn to_dense(&self, table: &MonomialTable) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); table.len()]; self.l];
        for ((i, j), c) in &self.coeffs {
            if let Some(idx) = table.index_of(j) {
                out[*i][idx] = c.clone();
            }
        }
        out
    }

    /// Reads dense components, dropping weight 0 and weights above `k`.
    pub(crate) fn from_dense(l: usize, k: usize, table: &MonomialTable, dense: &[Vec<F>]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, comp) in dense.iter().enumerate() {
            for (idx, c) in comp.iter().enumerate() {
                let w = table.weights[idx];
                if w == 0 || w > k || c.is_zero() {
                    continue;
                }
                coeffs.insert((i, table.monos[idx].clone()), c.clone());
            }
        }
        JetMap { l, k, coeffs }
    }

    /// `self ∘ g`, truncated past weight `k`.
    pub fn compose(&self, g: &JetMap<F>) -> Result<JetMap<F>> {
        self.check_compatible(g)?;
        let table = MonomialTable::get(self.l, self.k);
        if let (Some(f), Some(g)) = (
            (self as &dyn Any).downcast_ref::<JetMap<Rational>>(),
            (g as &dyn Any).downcast_ref::<JetMap<Rational>>(),
        ) {
            let dense = super::fast::compose_rational(f, g, &table);
            let out: Box<dyn Any> = Box::new(JetMap::from_dense(self.l, self.k, &table, &dense));
            return Ok(*out.downcast::<JetMap<F>>().expect("F is Rational here"));
        }
        let gd = g.to_dense(&table);
        let powers = table.powers(&gd);
        let n = table.len();
        let mut out = vec![vec![F::zero(); n]; self.l];
        for ((i, j), c) in &self.coeffs {
            let idx = table.index_of(j).expect("weight within order");
            let p = &powers[idx];
            let row = &mut out[*i];
            for (r, pv) in row.iter_mut().zip(p) {
                if !pv.is_zero() {
                    *r += &c.mul(pv);
                }
            }
        }
        Ok(Self::from_dense(self.l, self.k, &table, &out))
    }

    /// Drops all terms of weight greater than `order`.
    pub fn truncate(&self, order: usize) -> Result<JetMap<F>> {
        if order == 0 || order > self.k {
            return Err(Error::OrderOutOfRange {
                order,
                min: 1,
                max: self.k,
            });
        }
        Ok(JetMap {
            l: self.l,
            k: order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((_, j), _)| j.weight() <= order)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        })
    }

    /// Reinterprets the jet at a higher order with zero coefficients in the
    /// new weights.
    pub fn pad_to(&self, order: usize) -> Result<JetMap<F>> {
        if order < self.k {
            return Err(Error::OrderOutOfRange {
                order,
                min: self.k,
                max: usize::MAX,
            });
        }
        Ok(JetMap {
            l: self.l,
            k: order,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Applies the matrix `a` to the output: `x -> a f(x)`.
    pub fn left_matrix(&self, a: &Matrix<F>) -> Result<JetMap<F>> {
        if a.rows() != self.l || a.cols() != self.l {
            return Err(Error::dim("matrix size", self.l, a.rows()));
        }
        let mut terms = Vec::new();
        for ((j, mono), c) in &self.coeffs {
            for i in 0..self.l {
                let aij = a.get(i, *j);
                if !aij.is_zero() {
                    terms.push((i, mono.clone(), aij.mul(c)));
                }
            }
        }
        Self::from_terms(self.l, self.k, terms)
    }

    /// Termwise sum.
    pub fn add(&self, other: &JetMap<F>) -> Result<JetMap<F>> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, j.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &JetMap<F>) -> Result<JetMap<F>> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, j.clone(), -c.clone())?;
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Display for JetMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_components(self.l, self.terms()))
    }
}

impl<F: Scalar> fmt::Debug for JetMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn format_components<'a, F: Scalar>(
    l: usize,
    terms: impl Iterator<Item = (usize, &'a MultiIndex, &'a F)>,
) -> String {
    let mut comps: Vec<Vec<String>> = vec![Vec::new(); l];
    for (i, j, c) in terms {
        let mono = format_monomial(j);
        let s = if *c == F::one() {
            mono
        } else {
            format!("({})*{}", c.to_canonical(), mono)
        };
        comps[i].push(s);
    }
    let comps: Vec<String> = comps
        .into_iter()
        .map(|c| if c.is_empty() { "0".to_string() } else { c.join(" + ") })
        .collect();
    if l == 1 {
        comps[0].clone()
    } else {
        format!("({})", comps.join(", "))
    }
}

/// Element of `G_{k,l}`: a jet whose linear part is invertible.
#[derive(Clone, PartialEq)]
pub struct JetDiffeo<F> {
    map: JetMap<F>,
}

impl<F: Scalar> JetDiffeo<F> {
    pub fn new(map: JetMap<F>) -> Result<Self> {
        if !map.linear_part().is_invertible() {
            return Err(Error::SingularLinearPart);
        }
        Ok(JetDiffeo { map })
    }

    pub fn identity(l: usize, k: usize) -> Result<Self> {
        Ok(JetDiffeo {
            map: JetMap::identity(l, k)?,
        })
    }

    /// `j_k(A)`: the linear diffeomorphism `x -> A x`.
    pub fn linear(a: &Matrix<F>, k: usize) -> Result<Self> {
        Self::new(JetMap::linear(a, k)?)
    }

    /// Scalar dilation `x -> lambda x`.
    pub fn dilation(l: usize, k: usize, lambda: F) -> Result<Self> {
        Self::linear(&Matrix::scalar(l, lambda), k)
    }

    pub fn map(&self) -> &JetMap<F> {
        &self.map
    }

    pub fn into_map(self) -> JetMap<F> {
        self.map
    }

    pub fn l(&self) -> usize {
        self.map.l
    }

    pub fn k(&self) -> usize {
        self.map.k
    }

    pub fn linear_part(&self) -> Matrix<F> {
        self.map.linear_part()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    pub fn compose(&self, other: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
        Ok(JetDiffeo {
            map: self.map.compose(&other.map)?,
        })
    }

    /// Group inverse: invert the linear part, then correct degree by degree.
    pub fn invert(&self) -> Result<JetDiffeo<F>> {
        let a = self.linear_part();
        let a_inv = a.inverse().map_err(|_| Error::SingularLinearPart)?;
        let (l, k) = (self.l(), self.k());
        let mut g = JetMap::linear(&a_inv, k)?;
        for d in 2..=k {
            let r = self.map.compose(&g)?;
            let err: Vec<_> = r
                .minus_identity()
                .into_iter()
                .filter(|((_, j), _)| j.weight() == d)
                .map(|((i, j), c)| (i, j, c))
                .collect();
            debug_assert!(r
                .minus_identity()
                .keys()
                .all(|(_, j)| j.weight() >= d));
            if err.is_empty() {
                continue;
            }
            let e = JetMap::from_terms(l, k, err)?;
            g = g.sub(&e.left_matrix(&a_inv)?)?;
        }
        Ok(JetDiffeo { map: g })
    }

    pub fn truncate(&self, order: usize) -> Result<JetDiffeo<F>> {
        Ok(JetDiffeo {
            map: self.map.truncate(order)?,
        })
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
        self.compose(other)?.compose(&self.invert()?)
    }
}

impl<F: Scalar> fmt::Display for JetDiffeo<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.map, f)
    }
}

impl<F: Scalar> fmt::Debug for JetDiffeo<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.map, f)
    }
}

impl<F: Scalar> TryFrom<JetMap<F>> for JetDiffeo<F> {
    type Error = Error;

    fn try_from(map: JetMap<F>) -> Result<Self> {
        JetDiffeo::new(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};

    fn t(coeffs: &[i64]) -> JetMap<Rational> {
        JetMap::univariate(&coeffs.iter().map(|&c| q(c, 1)).collect::<Vec<_>>()).unwrap()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec()).unwrap()
    }

    #[test]
    fn compose_univariate_truncates() {
        // (t + t^2) ∘ (t + t^3) = t + t^2 + t^3 mod t^4
        assert_eq!(t(&[1, 1, 0]).compose(&t(&[1, 0, 1])).unwrap(), t(&[1, 1, 1]));
    }

    #[test]
    fn identity_is_left_neutral() {
        let g = t(&[2, -1, 5]);
        assert_eq!(JetMap::identity(1, 3).unwrap().compose(&g).unwrap(), g);
    }

    #[test]
    fn swap_after_shear() {
        let swap = JetMap::<Rational>::from_terms(
            2,
            2,
            [(0, mi(&[0, 1]), q(1, 1)), (1, mi(&[1, 0]), q(1, 1))],
        )
        .unwrap();
        let shear = JetMap::from_terms(
            2,
            2,
            [
                (0, mi(&[1, 0]), q(1, 1)),
                (0, mi(&[0, 2]), q(1, 1)),
                (1, mi(&[0, 1]), q(1, 1)),
            ],
        )
        .unwrap();
        let expected = JetMap::from_terms(
            2,
            2,
            [
                (0, mi(&[0, 1]), q(1, 1)),
                (1, mi(&[1, 0]), q(1, 1)),
                (1, mi(&[0, 2]), q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(swap.compose(&shear).unwrap(), expected);
    }

    #[test]
    fn compose_rejects_mismatch() {
        assert!(t(&[1, 1]).compose(&t(&[1, 1, 1])).is_err());
        let two = JetMap::<Rational>::identity(2, 2).unwrap();
        assert!(t(&[1, 1]).compose(&two).is_err());
    }

    #[test]
    fn invert_examples() {
        let f = JetDiffeo::new(t(&[1, 1])).unwrap();
        assert_eq!(f.invert().unwrap().map(), &t(&[1, -1]));
        let lin = JetDiffeo::new(JetMap::univariate(&[q(2, 1)]).unwrap()).unwrap();
        assert_eq!(lin.invert().unwrap().map(), &JetMap::univariate(&[q(1, 2)]).unwrap());
        let id = JetDiffeo::<Rational>::identity(2, 4).unwrap();
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn singular_linear_part_rejected() {
        assert_eq!(JetDiffeo::new(t(&[0, 1])).unwrap_err(), Error::SingularLinearPart);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(t(&[1, 1, 1]).truncate(2).unwrap(), t(&[1, 1]));
        assert_eq!(t(&[1, 1, 1]).truncate(3).unwrap(), t(&[1, 1, 1]));
        assert!(t(&[1, 1, 1]).truncate(0).is_err());
        assert!(t(&[1, 1, 1]).truncate(4).is_err());
        let lhs = t(&[1, 0, 1]).compose(&t(&[1, 1, 0])).unwrap().truncate(2).unwrap();
        let rhs = t(&[1, 0]).compose(&t(&[1, 1])).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, t(&[1, 1]));
    }

    #[test]
    fn zero_codimension_rejected() {
        assert_eq!(JetMap::<Rational>::zero(0, 2).unwrap_err(), Error::ZeroCodimension);
        assert!(MultiIndex::new(vec![]).is_err());
    }

    #[test]
    fn zero_terms_not_stored() {
        let m = JetMap::from_terms(1, 2, [(0, mi(&[2]), q(1, 1)), (0, mi(&[2]), q(-1, 1))]).unwrap();
        assert_eq!(m.num_terms(), 0);
        assert!(JetMap::from_terms(1, 2, [(0, mi(&[3]), q(1, 1))]).is_err());
        assert!(JetMap::from_terms(1, 2, [(0, mi(&[0]), q(1, 1))]).is_err());
    }
}
