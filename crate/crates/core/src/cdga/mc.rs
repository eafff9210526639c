//! Maurer–Cartan equations and extension classes in a finite cdga.
//!
//! An η-coefficient is a vector field on `R^l` whose coefficients are forms
//! of the model: `Σ ω_{i,J} ⊗ x^J ∂_i`. In rank one, `η_r` is the
//! coefficient of `t^{r+1} ∂t`, so `[η_i, η_j] = (j - i) η_i ∧ η_j`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cdga::model::{CdgaModel, Element};
use crate::error::{Error, Result};
use crate::jetcore::linalg::{is_zero_vec, Matrix};
use crate::jetcore::monomial::{format_monomial, MultiIndex};
use crate::jetcore::scalar::Scalar;

/// Form-valued polynomial vector field, homogeneous of a fixed polynomial
/// degree.
#[derive(Clone, PartialEq)]
pub struct FormField<F> {
    l: usize,
    degree: usize,
    coeffs: BTreeMap<(usize, MultiIndex), Element<F>>,
}

impl<F: Scalar> FormField<F> {
    pub fn zero(l: usize, degree: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroCodimension);
        }
        Ok(FormField {
            l,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// `ω ⊗ t^{r+1} ∂t`: the rank-one coefficient of order `r`.
    pub fn rank1(r: usize, form: Element<F>) -> Self {
        let mut f = Self::zero(1, r + 1).unwrap();
        f.add_term(0, MultiIndex::new(vec![r as u32 + 1]).unwrap(), &form).unwrap();
        f
    }

    pub fn add_term(&mut self, i: usize, j: MultiIndex, form: &[F]) -> Result<()> {
        if i >= self.l {
            return Err(Error::ComponentOutOfRange(i));
        }
        if j.len() != self.l {
            return Err(Error::dim("multi-index length", self.l, j.len()));
        }
        if j.weight() != self.degree {
            return Err(Error::WeightOutOfRange {
                weight: j.weight(),
                min: self.degree,
                max: self.degree,
            });
        }
        let key = (i, j);
        let v: Element<F> = match self.coeffs.get(&key) {
            Some(old) => old.iter().zip(form).map(|(a, b)| a.add(b)).collect(),
            None => form.to_vec(),
        };
        if is_zero_vec(&v) {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: &MultiIndex) -> Option<&Element<F>> {
        self.coeffs.get(&(i, j.clone()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, &Element<F>)> {
        self.coeffs.iter().map(|((i, j), c)| (*i, j, c))
    }

    /// In rank one: the form multiplying the single monomial.
    pub fn rank1_form(&self, model: &CdgaModel<F>) -> Element<F> {
        self.coeffs.values().next().cloned().unwrap_or_else(|| model.zero())
    }

    pub fn map_forms(&self, f: impl Fn(&[F]) -> Element<F>) -> Result<Self> {
        let mut out = Self::zero(self.l, self.degree)?;
        for ((i, j), c) in &self.coeffs {
            out.add_term(*i, j.clone(), &f(c))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.l, self.degree) != (other.l, other.degree) {
            return Err(Error::McDataMismatch("adding fields of different shape".into()));
        }
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, j.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map_forms(|c| c.iter().map(|x| x.mul(s)).collect()).unwrap()
    }

    /// `[ω ⊗ X, ω' ⊗ Y] = ω ∧ ω' ⊗ [X, Y]`, extended bilinearly.
    pub fn bracket(&self, other: &Self, model: &CdgaModel<F>) -> Result<Self> {
        if self.l != other.l {
            return Err(Error::dim("codimension", self.l, other.l));
        }
        let mut out = Self::zero(self.l, self.degree + other.degree - 1)?;
        for ((i, jx), wx) in &self.coeffs {
            for ((k, jy), wy) in &other.coeffs {
                let w = model.mul(wx, wy);
                if is_zero_vec(&w) {
                    continue;
                }
                // x^J ∂_i (x^K) ∂_k
                if let Some(low) = jy.lower(*i) {
                    let c = F::from_i64(jy.exps()[*i] as i64);
                    out.add_term(*k, jx.add(&low), &w.iter().map(|x| x.mul(&c)).collect::<Vec<_>>())?;
                }
                // - x^K ∂_k (x^J) ∂_i
                if let Some(low) = jx.lower(*k) {
                    let c = -F::from_i64(jx.exps()[*k] as i64);
                    out.add_term(*i, jy.add(&low), &w.iter().map(|x| x.mul(&c)).collect::<Vec<_>>())?;
                }
            }
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, model: &'a CdgaModel<F>) -> impl fmt::Display + 'a {
        FieldDisplay { field: self, model }
    }
}

struct FieldDisplay<'a, F: Scalar> {
    field: &'a FormField<F>,
    model: &'a CdgaModel<F>,
}

impl<F: Scalar> fmt::Display for FieldDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_zero() {
            return write!(f, "0");
        }
        let l = self.field.l;
        let parts: Vec<String> = self
            .field
            .terms()
            .map(|(i, j, w)| {
                let var = crate::jetcore::monomial::variable_name(l, i);
                format!("({}) {} d{}", self.model.format(w), format_monomial(j), var)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> fmt::Debug for FormField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|((i, j), c)| ((i, j), c)))
            .finish()
    }
}

/// The tuple `(η_1, …, η_{k-1})` of a `k`-th order structure.
#[derive(Clone, Debug, PartialEq)]
pub struct McData<F: Scalar> {
    pub k: usize,
    pub eta: Vec<FormField<F>>,
}

impl<F: Scalar> McData<F> {
    /// Rank-one data from the forms multiplying `t^{r+1} ∂t`.
    pub fn rank1(forms: Vec<Element<F>>) -> Self {
        let k = forms.len() + 1;
        McData {
            k,
            eta: forms
                .into_iter()
                .enumerate()
                .map(|(i, f)| FormField::rank1(i + 1, f))
                .collect(),
        }
    }

    /// Checks shapes, degrees and weights against the model.
    pub fn check(&self, model: &CdgaModel<F>) -> Result<()> {
        if self.k < 2 || self.eta.len() != self.k - 1 {
            return Err(Error::McDataMismatch(format!(
                "order {} needs {} eta terms, found {}",
                self.k,
                self.k.saturating_sub(1),
                self.eta.len()
            )));
        }
        let rank = model.coefficient_rank();
        for (idx, eta) in self.eta.iter().enumerate() {
            let r = idx + 1;
            if eta.l() != rank {
                return Err(Error::McDataMismatch(format!(
                    "eta{r} has rank {}, model expects {rank}",
                    eta.l()
                )));
            }
            if eta.degree() != r + 1 {
                return Err(Error::McDataMismatch(format!(
                    "eta{r} must have polynomial degree {}, found {}",
                    r + 1,
                    eta.degree()
                )));
            }
            for (_, _, w) in eta.terms() {
                if w.len() != model.dim() {
                    return Err(Error::dim("form length", model.dim(), w.len()));
                }
                for (c, b) in w.iter().zip(model.basis()) {
                    if c.is_zero() {
                        continue;
                    }
                    if b.degree != 1 {
                        return Err(Error::McDataMismatch(format!(
                            "eta{r} uses {} of degree {}",
                            b.name, b.degree
                        )));
                    }
                    let ok = if model.twist().is_some() {
                        b.weight == -(r as i32)
                    } else {
                        b.weight == 0 || b.weight == -(r as i32)
                    };
                    if !ok {
                        return Err(Error::McDataMismatch(format!(
                            "eta{r} uses {} of weight {}",
                            b.name, b.weight
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `D_r` on a coefficient of order `r`: twisted by weight `-r` in rank one.
fn d_order<F: Scalar>(model: &CdgaModel<F>, field: &FormField<F>, r: usize) -> Result<FormField<F>> {
    field.map_forms(|w| model.d_twisted(w, -(r as i32)))
}

/// `½ Σ_{i+j=r} [η_i, η_j]`.
fn half_bracket_sum<F: Scalar>(model: &CdgaModel<F>, data: &McData<F>, r: usize) -> Result<FormField<F>> {
    let mut acc = FormField::zero(model.coefficient_rank(), r + 1)?;
    for i in 1..r {
        let j = r - i;
        if i > data.eta.len() || j > data.eta.len() {
            continue;
        }
        acc = acc.add(&data.eta[i - 1].bracket(&data.eta[j - 1], model)?)?;
    }
    Ok(acc.scale(&F::from_ratio(1, 2)))
}

/// Residuals `D η_r + ½ Σ_{i+j=r} [η_i, η_j]` for `r = 1..k-1`.
pub fn mc_check<F: Scalar>(model: &CdgaModel<F>, data: &McData<F>) -> Result<Vec<FormField<F>>> {
    data.check(model)?;
    (1..data.k)
        .map(|r| d_order(model, &data.eta[r - 1], r)?.add(&half_bracket_sum(model, data, r)?))
        .collect()
}

/// Representative `½ Σ_{i+j=k} [η_i, η_j]` of the obstruction to extending
/// one order further.
pub fn ext_class_rep<F: Scalar>(model: &CdgaModel<F>, data: &McData<F>) -> Result<FormField<F>> {
    for (idx, res) in mc_check(model, data)?.iter().enumerate() {
        if !res.is_zero() {
            return Err(Error::MaurerCartanFailure(idx + 1));
        }
    }
    let e = half_bracket_sum(model, data, data.k)?;
    assert!(
        d_order(model, &e, data.k)?.is_zero(),
        "extension class representative is not closed"
    );
    Ok(e)
}

/// Result of an exactness test.
#[derive(Clone, Debug, PartialEq)]
pub struct Exactness<F> {
    pub exact: bool,
    /// `x` with `dx = e`.
    pub primitive: Option<Element<F>>,
    /// Functional on the target block vanishing on `im d` but not on `e`.
    pub certificate: Option<Element<F>>,
}

/// Decides whether a closed element of an untwisted model is exact.
pub fn is_exact<F: Scalar>(model: &CdgaModel<F>, e: &[F], degree: usize, weight: i32) -> Result<Exactness<F>> {
    if model.twist().is_some() {
        return Err(Error::TwistedExactnessUndecided);
    }
    if e.len() != model.dim() {
        return Err(Error::dim("element length", model.dim(), e.len()));
    }
    let target = model.block(degree, weight);
    if e
        .iter()
        .enumerate()
        .any(|(i, c)| !c.is_zero() && !target.contains(&i))
    {
        return Err(Error::InvalidModel(format!(
            "element is not homogeneous of degree {degree} and weight {weight}"
        )));
    }
    if !is_zero_vec(&model.d(e)) {
        return Err(Error::NotClosed);
    }
    let b: Vec<F> = target.iter().map(|&i| e[i].clone()).collect();
    if degree == 0 {
        let exact = is_zero_vec(&b);
        return Ok(Exactness {
            exact,
            primitive: exact.then(|| model.zero()),
            certificate: (!exact).then(|| embed(model, &target, &b)),
        });
    }
    let m: Matrix<F> = model.differential_block(degree - 1, weight)?;
    let source = model.block(degree - 1, weight);
    match m.solve_affine(&b)? {
        Some(sol) => Ok(Exactness {
            exact: true,
            primitive: Some(embed(model, &source, &sol.particular)),
            certificate: None,
        }),
        None => Ok(Exactness {
            exact: false,
            primitive: None,
            certificate: m.infeasibility_certificate(&b)?.map(|y| embed(model, &target, &y)),
        }),
    }
}

fn embed<F: Scalar>(model: &CdgaModel<F>, idx: &[usize], v: &[F]) -> Element<F> {
    let mut out = model.zero();
    for (&i, c) in idx.iter().zip(v) {
        out[i] = c.clone();
    }
    out
}

/// Exactness of a form-valued field with trivial coefficients: every form
/// coefficient must be exact.
pub fn is_exact_field<F: Scalar>(model: &CdgaModel<F>, e: &FormField<F>, degree: usize) -> Result<bool> {
    for (_, _, w) in e.terms() {
        if !is_exact(model, w, degree, 0)?.exact {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::model::{heisenberg, mapping_torus, surface, trivial_rank2};
    use crate::jetcore::scalar::{q, Rational};

    #[test]
    fn heisenberg_mc_and_class() {
        let m = heisenberg::<Rational>();
        let data = McData::rank1(vec![
            m.symbol("a").unwrap(),
            m.symbol("b").unwrap(),
            m.combination(&[("c", q(-1, 1))]).unwrap(),
        ]);
        assert!(mc_check(&m, &data).unwrap().iter().all(FormField::is_zero));
        let e = ext_class_rep(&m, &data).unwrap();
        assert_eq!(e.rank1_form(&m), m.combination(&[("a^c", q(-2, 1))]).unwrap());
        let ex = is_exact(&m, &e.rank1_form(&m), 2, 0).unwrap();
        assert!(!ex.exact);
        assert!(ex.certificate.is_some());
        let ab = is_exact(&m, &m.symbol("a^b").unwrap(), 2, 0).unwrap();
        assert_eq!(ab.primitive, Some(m.symbol("c").unwrap()));
        let zero = is_exact(&m, &m.zero(), 2, 0).unwrap();
        assert_eq!(zero.primitive, Some(m.zero()));
        assert_eq!(is_exact(&m, &m.symbol("c").unwrap(), 1, 0).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn zero_data_has_zero_residuals() {
        let m = heisenberg::<Rational>();
        let data = McData::rank1(vec![m.zero(); 3]);
        assert!(mc_check(&m, &data).unwrap().iter().all(FormField::is_zero));
    }

    #[test]
    fn wrong_mc_data_rejected() {
        let m = heisenberg::<Rational>();
        let data = McData::rank1(vec![m.symbol("a^b").unwrap()]);
        assert!(matches!(mc_check(&m, &data), Err(Error::McDataMismatch(_))));
        let fails = McData::rank1(vec![m.zero(), m.zero(), m.symbol("c").unwrap()]);
        assert_eq!(ext_class_rep(&m, &fails).unwrap_err(), Error::MaurerCartanFailure(3));
    }

    #[test]
    fn surface_quadric() {
        let m = surface::<Rational>(2).unwrap();
        let (x, y, w, z) = ([q(1, 1), q(2, 1)], [q(3, 1), q(-1, 1)], [q(1, 2), q(0, 1)], [q(5, 1), q(7, 1)]);
        let eta1 = m.combination(&[("alpha1", x[0].clone()), ("beta1", y[0].clone()), ("alpha2", x[1].clone()), ("beta2", y[1].clone())]).unwrap();
        let eta2 = m.combination(&[("alpha1", w[0].clone()), ("beta1", z[0].clone()), ("alpha2", w[1].clone()), ("beta2", z[1].clone())]).unwrap();
        let data = McData::rank1(vec![eta1, eta2]);
        assert!(mc_check(&m, &data).unwrap().iter().all(FormField::is_zero));
        let e = ext_class_rep(&m, &data).unwrap().rank1_form(&m);
        let quad = (0..2).fold(q(0, 1), |acc, i| acc + &x[i] * &z[i] - &y[i] * &w[i]);
        assert_eq!(e, m.combination(&[("omega", quad)]).unwrap());
    }

    #[test]
    fn mapping_torus_class() {
        let m = mapping_torus(q(2, 1)).unwrap();
        let data = McData::rank1(vec![m.symbol("eta1").unwrap(), m.symbol("eta2").unwrap()]);
        assert!(mc_check(&m, &data).unwrap().iter().all(FormField::is_zero));
        let e = ext_class_rep(&m, &data).unwrap();
        assert_eq!(e.rank1_form(&m), m.symbol("eta1^eta2").unwrap());
        assert_eq!(is_exact(&m, &e.rank1_form(&m), 2, -3).unwrap_err(), Error::TwistedExactnessUndecided);
        let bad = McData::rank1(vec![m.symbol("eta2").unwrap(), m.zero()]);
        assert!(mc_check(&m, &bad).is_err());
    }

    #[test]
    fn codimension_two_pattern() {
        let m = trivial_rank2::<Rational>();
        let mi = |e: [u32; 2]| MultiIndex::new(e.to_vec()).unwrap();
        let mut eta = FormField::zero(2, 2).unwrap();
        eta.add_term(1, mi([2, 0]), &m.symbol("alpha").unwrap()).unwrap();
        eta.add_term(1, mi([1, 1]), &m.symbol("beta").unwrap()).unwrap();
        eta.add_term(1, mi([0, 2]), &m.symbol("gamma").unwrap()).unwrap();
        let data = McData { k: 2, eta: vec![eta] };
        let e = ext_class_rep(&m, &data).unwrap();
        assert_eq!(e.coeff(1, &mi([3, 0])), Some(&m.symbol("alpha^beta").unwrap()));
        assert_eq!(e.coeff(1, &mi([2, 1])), Some(&m.combination(&[("alpha^gamma", q(2, 1))]).unwrap()));
        assert_eq!(e.coeff(1, &mi([1, 2])), Some(&m.symbol("beta^gamma").unwrap()));
        assert_eq!(e.terms().count(), 3);
    }

    #[test]
    fn rank1_bracket_antisymmetry() {
        let m = heisenberg::<Rational>();
        let x = FormField::rank1(1, m.symbol("a").unwrap());
        let y = FormField::rank1(2, m.symbol("b").unwrap());
        let xy = x.bracket(&y, &m).unwrap();
        let yx = y.bracket(&x, &m).unwrap();
        assert_eq!(xy.rank1_form(&m), m.symbol("a^b").unwrap());
        assert_eq!(yx, xy);
        assert!(x.bracket(&x, &m).unwrap().is_zero());
    }
}
