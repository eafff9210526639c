//! Polynomial vector fields `Σ p_i(x) ∂/∂x_i` with bounded degrees.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jetcore::jet::format_components;
use crate::jetcore::linalg::Matrix;
use crate::jetcore::monomial::{MonomialTable, MultiIndex};
use crate::jetcore::scalar::Scalar;
use crate::jetcore::JetMap;

/// Polynomial vector field on `R^l` whose coefficients have weights in
/// `min_degree..=max_degree`.
///
/// `max_degree` doubles as the truncation order: brackets drop everything
/// above it.
#[derive(Clone, PartialEq)]
pub struct PolyVector<F> {
    l: usize,
    min_degree: usize,
    max_degree: usize,
    coeffs: BTreeMap<(usize, MultiIndex), F>,
}

impl<F: Scalar> PolyVector<F> {
    pub fn zero(l: usize, min_degree: usize, max_degree: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroCodimension);
        }
        if min_degree > max_degree {
            return Err(Error::InvalidParameter(format!(
                "degree bounds [{min_degree}, {max_degree}] are empty"
            )));
        }
        Ok(PolyVector {
            l,
            min_degree,
            max_degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a field from `(component, multi-index, coefficient)` triples;
    /// repeated keys are summed.
    pub fn from_terms<I>(l: usize, min_degree: usize, max_degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, MultiIndex, F)>,
    {
        let mut v = Self::zero(l, min_degree, max_degree)?;
        for (i, j, c) in terms {
            v.add_term(i, j, c)?;
        }
        Ok(v)
    }

    /// `c t^d ∂t` in one variable, in the container `[d, d]`.
    pub fn monomial_1d(d: usize, c: F) -> Self {
        let mut v = Self::zero(1, d, d).unwrap();
        v.add_term(0, MultiIndex::new(vec![d as u32]).unwrap(), c).unwrap();
        v
    }

    pub fn add_term(&mut self, i: usize, j: MultiIndex, c: F) -> Result<()> {
        if i >= self.l {
            return Err(Error::ComponentOutOfRange(i));
        }
        if j.len() != self.l {
            return Err(Error::dim("multi-index length", self.l, j.len()));
        }
        let w = j.weight();
        if w < self.min_degree || w > self.max_degree {
            return Err(Error::WeightOutOfRange {
                weight: w,
                min: self.min_degree,
                max: self.max_degree,
            });
        }
        let key = (i, j);
        let v = match self.coeffs.get(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if v.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: &MultiIndex) -> F {
        self.coeffs
            .get(&(i, j.clone()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, &F)> {
        self.coeffs.iter().map(|((i, j), c)| (*i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest and highest weight actually present.
    pub fn degree_span(&self) -> Option<(usize, usize)> {
        let ws = self.coeffs.keys().map(|(_, j)| j.weight());
        let lo = ws.clone().min()?;
        Some((lo, ws.max()?))
    }

    /// Same terms in a container with new bounds; terms outside the bounds
    /// are dropped.
    pub fn rebound(&self, min_degree: usize, max_degree: usize) -> Result<Self> {
        let mut v = Self::zero(self.l, min_degree, max_degree)?;
        v.coeffs = self
            .coeffs
            .iter()
            .filter(|((_, j), _)| (min_degree..=max_degree).contains(&j.weight()))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Ok(v)
    }

    /// The homogeneous part of weight `d`, in the container `[d, d]`.
    pub fn degree_part(&self, d: usize) -> Self {
        let mut v = Self::zero(self.l, d, d).unwrap();
        v.coeffs = self
            .coeffs
            .iter()
            .filter(|((_, j), _)| j.weight() == d)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        v
    }

    fn check_l(&self, other: &Self) -> Result<()> {
        if self.l != other.l {
            return Err(Error::dim("codimension", self.l, other.l));
        }
        Ok(())
    }

    /// Termwise combination `self + c * other` in the union of the bounds.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Result<Self> {
        self.check_l(other)?;
        let mut v = self.rebound(
            self.min_degree.min(other.min_degree),
            self.max_degree.max(other.max_degree),
        )?;
        for ((i, j), x) in &other.coeffs {
            v.add_term(*i, j.clone(), c.mul(x))?;
        }
        Ok(v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut v = self.clone();
        v.coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(k, x)| (k.clone(), x.mul(c))).collect()
        };
        v
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
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

    fn from_dense(
        l: usize,
        min_degree: usize,
        max_degree: usize,
        table: &MonomialTable,
        dense: &[Vec<F>],
    ) -> Self {
        let mut v = Self::zero(l, min_degree, max_degree).unwrap();
        for (i, comp) in dense.iter().enumerate() {
            for (m, c) in comp.iter().enumerate() {
                let w = table.weights[m];
                if !c.is_zero() && (min_degree..=max_degree).contains(&w) {
                    v.coeffs.insert((i, table.monos[m].clone()), c.clone());
                }
            }
        }
        v
    }

    /// Vector field bracket `[X, Y]_i = Σ_j X_j ∂_j Y_i - Y_j ∂_j X_i`,
    /// living in the union of the two containers and truncated past its
    /// `max_degree`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_l(other)?;
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree.max(other.max_degree);
        let table = MonomialTable::get(self.l, hi);
        let x = self.to_dense(&table);
        let y = other.to_dense(&table);
        let out: Vec<Vec<F>> = (0..self.l)
            .map(|i| {
                let a = table.derive(&x, &y[i]);
                let b = table.derive(&y, &x[i]);
                a.iter().zip(&b).map(|(p, q)| p.sub(q)).collect()
            })
            .collect();
        Ok(Self::from_dense(self.l, lo, hi, &table, &out))
    }

    /// `x ↦ A v(A⁻¹ x)`: the action of `GL(l)` by conjugation with linear
    /// jets. Preserves every homogeneous layer.
    pub fn gl_action(&self, a: &Matrix<F>) -> Result<Self> {
        if a.rows() != self.l || a.cols() != self.l {
            return Err(Error::dim("matrix size", self.l, a.rows()));
        }
        let a_inv = a.inverse().map_err(|_| Error::SingularLinearPart)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let table = MonomialTable::get(self.l, self.max_degree);
        let sub: Vec<Vec<F>> = (0..self.l)
            .map(|i| {
                let mut p = vec![F::zero(); table.len()];
                for j in 0..self.l {
                    p[table.index_of(&MultiIndex::unit(self.l, j)).unwrap()] = a_inv.get(i, j).clone();
                }
                p
            })
            .collect();
        let powers = table.powers(&sub);
        let mut inner = vec![vec![F::zero(); table.len()]; self.l];
        for ((i, j), c) in &self.coeffs {
            let p = &powers[table.index_of(j).unwrap()];
            for (o, v) in inner[*i].iter_mut().zip(p) {
                if !v.is_zero() {
                    *o += &c.mul(v);
                }
            }
        }
        let out: Vec<Vec<F>> = (0..self.l)
            .map(|i| {
                let mut row = vec![F::zero(); table.len()];
                for (j, comp) in inner.iter().enumerate() {
                    let aij = a.get(i, j);
                    if aij.is_zero() {
                        continue;
                    }
                    for (o, v) in row.iter_mut().zip(comp) {
                        if !v.is_zero() {
                            *o += &aij.mul(v);
                        }
                    }
                }
                row
            })
            .collect();
        Ok(Self::from_dense(self.l, self.min_degree, self.max_degree, &table, &out))
    }

    /// Reads the field as the nonlinear part of the jet `x + v(x)` of order
    /// `k`.
    pub fn to_jet_perturbation(&self, k: usize) -> Result<JetMap<F>> {
        let mut terms: Vec<(usize, MultiIndex, F)> = (0..self.l)
            .map(|i| (i, MultiIndex::unit(self.l, i), F::one()))
            .collect();
        for ((i, j), c) in &self.coeffs {
            terms.push((*i, j.clone(), c.clone()));
        }
        JetMap::from_terms(self.l, k, terms)
    }

    /// Coordinates of the weight-`d` layer in [`layer_basis`] order.
    pub fn layer_vector(&self, d: usize) -> Vec<F> {
        layer_basis(self.l, d)
            .iter()
            .map(|(i, j)| self.coeff(*i, j))
            .collect()
    }

    /// Inverse of [`PolyVector::layer_vector`], in the container `[d, d]`.
    pub fn from_layer_vector(l: usize, d: usize, v: &[F]) -> Result<Self> {
        let basis = layer_basis(l, d);
        if basis.len() != v.len() {
            return Err(Error::dim("layer vector length", basis.len(), v.len()));
        }
        Self::from_terms(
            l,
            d,
            d,
            basis.into_iter().zip(v).map(|((i, j), c)| (i, j, c.clone())),
        )
    }
}

/// Basis `x^J ∂/∂x_i` of the weight-`d` layer, ordered by component and then
/// lexicographically in `J`.
pub fn layer_basis(l: usize, d: usize) -> Vec<(usize, MultiIndex)> {
    let monos = MultiIndex::of_weight(l, d);
    (0..l)
        .flat_map(|i| monos.iter().map(move |j| (i, j.clone())))
        .collect()
}

/// Components only; `Debug` adds the degree bounds.
impl<F: Scalar> fmt::Display for PolyVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_components(self.l, self.terms()))
    }
}

impl<F: Scalar> fmt::Debug for PolyVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}..{}] {}",
            self.min_degree,
            self.max_degree,
            format_components(self.l, self.terms())
        )
    }
}
