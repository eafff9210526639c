//! Finite-dimensional weighted commutative differential graded algebras.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::jetcore::linalg::{is_zero_vec, Matrix};
use crate::jetcore::scalar::Scalar;

/// Dense coordinates over the model's basis.
pub type Element<F> = Vec<F>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSymbol {
    pub name: String,
    pub degree: usize,
    /// Power of the line bundle the symbol is a section of; 0 for ordinary
    /// forms.
    pub weight: i32,
}

impl BasisSymbol {
    pub fn new(name: impl Into<String>, degree: usize, weight: i32) -> Self {
        BasisSymbol {
            name: name.into(),
            degree,
            weight,
        }
    }
}

/// Twist of the differential on weighted elements:
/// `D x = dx - w λ α ∧ x` for `x` of weight `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist<F> {
    pub alpha: Element<F>,
    pub lambda: F,
}

/// A weighted cdga with a distinguished unit `1`.
///
/// Products are stored for all ordered pairs of basis symbols; entries not
/// given explicitly are filled in by graded commutativity or are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CdgaModel<F> {
    name: String,
    basis: Vec<BasisSymbol>,
    index: HashMap<String, usize>,
    unit: usize,
    product: Vec<Vec<Element<F>>>,
    d: Vec<Element<F>>,
    twist: Option<Twist<F>>,
    coefficient_rank: usize,
}

fn graded_sign(p: usize, q: usize) -> bool {
    p % 2 == 1 && q % 2 == 1
}

impl<F: Scalar> CdgaModel<F> {
    /// Builds and validates a model.
    ///
    /// `products` lists `(x, y, x·y)` for pairs of basis indices; the
    /// reversed order is derived. `differential[i]` is `d` of basis symbol
    /// `i`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<BasisSymbol>,
        products: Vec<(usize, usize, Element<F>)>,
        differential: Vec<Element<F>>,
        twist: Option<Twist<F>>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("duplicate symbol {:?}", b.name)));
            }
        }
        let unit = *index
            .get("1")
            .ok_or_else(|| Error::InvalidModel("basis has no unit symbol \"1\"".into()))?;
        if basis[unit].degree != 0 || basis[unit].weight != 0 {
            return Err(Error::InvalidModel("unit must have degree 0 and weight 0".into()));
        }
        if differential.len() != n {
            return Err(Error::dim("differential entries", n, differential.len()));
        }
        let mut product: Vec<Vec<Option<Element<F>>>> = vec![vec![None; n]; n];
        for i in 0..n {
            let mut e = vec![F::zero(); n];
            e[i] = F::one();
            product[unit][i] = Some(e.clone());
            product[i][unit] = Some(e);
        }
        for (i, j, v) in products {
            if i >= n || j >= n {
                return Err(Error::InvalidModel(format!("product index ({i}, {j}) out of range")));
            }
            if v.len() != n {
                return Err(Error::dim("product value length", n, v.len()));
            }
            let swapped: Element<F> = if graded_sign(basis[i].degree, basis[j].degree) {
                v.iter().map(|x| -x.clone()).collect()
            } else {
                v.clone()
            };
            for (a, b, val) in [(i, j, v), (j, i, swapped)] {
                match &product[a][b] {
                    Some(old) if *old != val => {
                        return Err(Error::InvalidModel(format!(
                            "product {} * {} is not graded commutative",
                            basis[a].name, basis[b].name
                        )))
                    }
                    _ => product[a][b] = Some(val),
                }
            }
        }
        let product = product
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.unwrap_or_else(|| vec![F::zero(); n])).collect())
            .collect();
        let model = CdgaModel {
            name: name.into(),
            basis,
            index,
            unit,
            product,
            d: differential,
            twist,
            coefficient_rank: 1,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if self.d[i].len() != n {
                return Err(Error::dim("differential value length", n, self.d[i].len()));
            }
            let (deg, w) = (self.basis[i].degree + 1, self.basis[i].weight);
            if !self.is_homogeneous(&self.d[i], deg, w) {
                return Err(Error::InvalidModel(format!(
                    "d({}) is not of degree {deg} and weight {w}",
                    self.basis[i].name
                )));
            }
            for j in 0..n {
                let deg = self.basis[i].degree + self.basis[j].degree;
                let w = self.basis[i].weight + self.basis[j].weight;
                if !self.is_homogeneous(&self.product[i][j], deg, w) {
                    return Err(Error::InvalidModel(format!(
                        "{} * {} is not homogeneous of degree {deg} and weight {w}",
                        self.basis[i].name, self.basis[j].name
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&self.product[i][j], &self.unit_vec(k));
                    let rhs = self.mul(&self.unit_vec(i), &self.product[j][k]);
                    if lhs != rhs {
                        return Err(Error::InvalidModel(format!(
                            "product is not associative on ({}, {}, {})",
                            self.basis[i].name, self.basis[j].name, self.basis[k].name
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            if !is_zero_vec(&self.d(&self.d[i])) {
                return Err(Error::InvalidModel(format!("d² ≠ 0 on {}", self.basis[i].name)));
            }
            for j in 0..n {
                let (x, y) = (self.unit_vec(i), self.unit_vec(j));
                let lhs = self.d(&self.product[i][j]);
                let mut rhs = self.mul(&self.d[i], &y);
                let second = self.mul(&x, &self.d[j]);
                let odd = self.basis[i].degree % 2 == 1;
                for (r, s) in rhs.iter_mut().zip(&second) {
                    if odd {
                        *r -= s;
                    } else {
                        *r += s;
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModel(format!(
                        "Leibniz rule fails on {} * {}",
                        self.basis[i].name, self.basis[j].name
                    )));
                }
            }
        }
        if let Some(t) = &self.twist {
            if t.alpha.len() != n || !self.is_homogeneous(&t.alpha, 1, 0) {
                return Err(Error::InvalidModel("twist form must have degree 1 and weight 0".into()));
            }
            if !is_zero_vec(&self.d(&t.alpha)) {
                return Err(Error::InvalidModel("twist form is not closed".into()));
            }
        }
        Ok(())
    }

    fn is_homogeneous(&self, x: &[F], degree: usize, weight: i32) -> bool {
        x.iter()
            .zip(&self.basis)
            .all(|(c, b)| c.is_zero() || (b.degree == degree && b.weight == weight))
    }

    /// Declares that η-coefficients live in vector fields on `R^rank` with
    /// a trivial connection.
    pub fn with_coefficient_rank(mut self, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroCodimension);
        }
        if rank > 1 && self.twist.is_some() {
            return Err(Error::InvalidModel("twisted models only support rank-1 coefficients".into()));
        }
        self.coefficient_rank = rank;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn twist(&self) -> Option<&Twist<F>> {
        self.twist.as_ref()
    }

    pub fn coefficient_rank(&self) -> usize {
        self.coefficient_rank
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidModel(format!("unknown symbol {name:?}")))
    }

    pub fn zero(&self) -> Element<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn unit_vec(&self, i: usize) -> Element<F> {
        let mut e = self.zero();
        e[i] = F::one();
        e
    }

    pub fn one(&self) -> Element<F> {
        self.unit_vec(self.unit)
    }

    /// The basis symbol with the given name as an element.
    pub fn symbol(&self, name: &str) -> Result<Element<F>> {
        Ok(self.unit_vec(self.symbol_index(name)?))
    }

    /// `Σ c_i x_i` from `(name, coefficient)` pairs.
    pub fn combination(&self, terms: &[(&str, F)]) -> Result<Element<F>> {
        let mut e = self.zero();
        for (name, c) in terms {
            e[self.symbol_index(name)?] += c;
        }
        Ok(e)
    }

    /// Product of two basis symbols.
    pub fn product_of(&self, i: usize, j: usize) -> &Element<F> {
        &self.product[i][j]
    }

    /// `d` of a basis symbol.
    pub fn differential_of(&self, i: usize) -> &Element<F> {
        &self.d[i]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Element<F> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (o, p) in out.iter_mut().zip(&self.product[i][j]) {
                    if !p.is_zero() {
                        *o += &ab.mul(p);
                    }
                }
            }
        }
        out
    }

    /// The untwisted differential.
    pub fn d(&self, x: &[F]) -> Element<F> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.d[i]) {
                if !p.is_zero() {
                    *o += &a.mul(p);
                }
            }
        }
        out
    }

    /// `D_w x = dx - w λ α ∧ x`, the differential on sections of weight `w`.
    pub fn d_twisted(&self, x: &[F], weight: i32) -> Element<F> {
        let mut out = self.d(x);
        if let Some(t) = &self.twist {
            if weight != 0 {
                let c = t.lambda.mul(&F::from_i64(weight as i64));
                for (o, v) in out.iter_mut().zip(self.mul(&t.alpha, x)) {
                    *o -= &c.mul(&v);
                }
            }
        }
        out
    }

    /// Indices of basis symbols of the given degree and weight.
    pub fn block(&self, degree: usize, weight: i32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].degree == degree && self.basis[i].weight == weight)
            .collect()
    }

    /// Matrix of `d` from the `(degree, weight)` block to the next degree.
    pub fn differential_block(&self, degree: usize, weight: i32) -> Result<Matrix<F>> {
        let src = self.block(degree, weight);
        let dst = self.block(degree + 1, weight);
        let cols: Vec<Vec<F>> = src
            .iter()
            .map(|&i| dst.iter().map(|&j| self.d[i][j].clone()).collect())
            .collect();
        Matrix::from_columns(dst.len(), &cols)
    }

    /// Degree and weight of a nonzero homogeneous element.
    pub fn homogeneous_type(&self, x: &[F]) -> Option<(usize, i32)> {
        let mut found = None;
        for (c, b) in x.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some((b.degree, b.weight)),
                Some(t) if t != (b.degree, b.weight) => return None,
                _ => {}
            }
        }
        found
    }

    /// Human-readable form, e.g. `-2*a^c + 1/2*b`.
    pub fn format(&self, x: &[F]) -> String {
        let parts: Vec<String> = x
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| format!("{}*{}", c.to_canonical(), b.name))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Exterior algebra on degree-one generators `(name, weight)`, with `d`
/// prescribed on generators and extended by the Leibniz rule. Products are
/// named by joining generator names with `^`.
pub fn exterior_model<F: Scalar>(
    name: &str,
    generators: &[(&str, i32)],
    d_generators: impl Fn(usize, &dyn Fn(&[usize]) -> usize) -> Vec<(Vec<usize>, F)>,
    twist: Option<(Vec<usize>, F)>,
) -> Result<CdgaModel<F>> {
    let g = generators.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << g)
        .map(|mask| (0..g).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let pos: HashMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let n = subsets.len();
    let basis: Vec<BasisSymbol> = subsets
        .iter()
        .map(|s| {
            let nm = if s.is_empty() {
                "1".to_string()
            } else {
                s.iter().map(|&i| generators[i].0).collect::<Vec<_>>().join("^")
            };
            BasisSymbol::new(nm, s.len(), s.iter().map(|&i| generators[i].1).sum())
        })
        .collect();
    // Sign of concatenating two sorted subsets, or None if they meet.
    let wedge = |a: &[usize], b: &[usize]| -> Option<(usize, bool)> {
        let mut inversions = 0;
        for x in a {
            for y in b {
                if x == y {
                    return None;
                }
                if x > y {
                    inversions += 1;
                }
            }
        }
        let mut s: Vec<usize> = a.iter().chain(b).copied().collect();
        s.sort();
        Some((pos[&s], inversions % 2 == 1))
    };
    let mut products = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = vec![F::zero(); n];
            if let Some((k, neg)) = wedge(&subsets[i], &subsets[j]) {
                v[k] = if neg { -F::one() } else { F::one() };
            }
            products.push((i, j, v));
        }
    }
    let lookup = |s: &[usize]| {
        let mut s = s.to_vec();
        s.sort();
        pos[&s]
    };
    let d_gen: Vec<Element<F>> = (0..g)
        .map(|i| {
            let mut v = vec![F::zero(); n];
            for (s, c) in d_generators(i, &lookup) {
                v[lookup(&s)] += &c;
            }
            v
        })
        .collect();
    // Leibniz on monomials x_{s1} ... x_{sm}: Σ_p (-1)^p x_{s1..s(p-1)} d(x_sp) x_{s(p+1)..}.
    let mul_monomial = |left: &[usize], v: &Element<F>, right: &[usize]| -> Element<F> {
        let mut out = vec![F::zero(); n];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((lk, s1)) = wedge(left, &subsets[k]) {
                if let Some((rk, s2)) = wedge(&subsets[lk], right) {
                    let neg = s1 ^ s2;
                    if neg {
                        out[rk] -= c;
                    } else {
                        out[rk] += c;
                    }
                }
            }
        }
        out
    };
    let differential: Vec<Element<F>> = subsets
        .iter()
        .map(|s| {
            let mut out = vec![F::zero(); n];
            for p in 0..s.len() {
                let term = mul_monomial(&s[..p], &d_gen[s[p]], &s[p + 1..]);
                for (o, t) in out.iter_mut().zip(term) {
                    if p % 2 == 1 {
                        *o -= &t;
                    } else {
                        *o += &t;
                    }
                }
            }
            out
        })
        .collect();
    let twist = twist.map(|(gens, lambda)| {
        let mut alpha = vec![F::zero(); n];
        for i in gens {
            alpha[pos[&vec![i]]] = F::one();
        }
        Twist { alpha, lambda }
    });
    CdgaModel::new(name, basis, products, differential, twist)
}

/// Free exterior algebra on `names`, all closed, weight 0.
pub fn exterior<F: Scalar>(names: &[&str]) -> Result<CdgaModel<F>> {
    let gens: Vec<(&str, i32)> = names.iter().map(|n| (*n, 0)).collect();
    exterior_model(&format!("exterior({})", names.len()), &gens, |_, _| Vec::new(), None)
}

/// Forms `1, a, b, c` with `dc = a ∧ b` and all their products.
pub fn heisenberg<F: Scalar>() -> CdgaModel<F> {
    exterior_model(
        "heisenberg",
        &[("a", 0), ("b", 0), ("c", 0)],
        |i, _| if i == 2 { vec![(vec![0, 1], F::one())] } else { Vec::new() },
        None,
    )
    .expect("heisenberg model is valid")
}

/// Weighted symbols `alpha` (weight 0) and `eta1`, `eta2` (weights -1, -2)
/// with `d eta_i = -i λ alpha ∧ eta_i`, twisted by `(alpha, λ)`.
pub fn mapping_torus<F: Scalar>(lambda: F) -> Result<CdgaModel<F>> {
    let l2 = lambda.clone();
    exterior_model(
        "mapping_torus",
        &[("alpha", 0), ("eta1", -1), ("eta2", -2)],
        move |i, _| {
            if i == 0 {
                Vec::new()
            } else {
                vec![(vec![0, i], -l2.mul(&F::from_i64(i as i64)))]
            }
        },
        Some((vec![0], lambda)),
    )
}

/// Cohomology ring of a closed genus-`g` surface with `d = 0`:
/// `alpha_i beta_j = δ_ij omega`, `alpha_i alpha_j = beta_i beta_j = 0`.
pub fn surface<F: Scalar>(genus: usize) -> Result<CdgaModel<F>> {
    if genus == 0 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    let mut basis = vec![BasisSymbol::new("1", 0, 0)];
    for i in 1..=genus {
        basis.push(BasisSymbol::new(format!("alpha{i}"), 1, 0));
        basis.push(BasisSymbol::new(format!("beta{i}"), 1, 0));
    }
    basis.push(BasisSymbol::new("omega", 2, 0));
    let n = basis.len();
    let omega = n - 1;
    let mut products = Vec::new();
    for i in 0..genus {
        let mut v = vec![F::zero(); n];
        v[omega] = F::one();
        products.push((1 + 2 * i, 2 + 2 * i, v));
    }
    CdgaModel::new(format!("surface({genus})"), basis, products, vec![vec![F::zero(); n]; n], None)
}

/// Exterior algebra on the closed forms `alpha, beta, gamma` with
/// coefficients in vector fields on `R^2` (trivial connection).
pub fn trivial_rank2<F: Scalar>() -> CdgaModel<F> {
    exterior::<F>(&["alpha", "beta", "gamma"])
        .and_then(|m| m.with_coefficient_rank(2))
        .expect("rank-2 model is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};

    #[test]
    fn heisenberg_structure() {
        let m = heisenberg::<Rational>();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.d(&m.symbol("c").unwrap()), m.symbol("a^b").unwrap());
        assert!(is_zero_vec(&m.d(&m.symbol("a^c").unwrap())));
        let ac = m.mul(&m.symbol("a").unwrap(), &m.symbol("c").unwrap());
        assert_eq!(ac, m.symbol("a^c").unwrap());
        let ca = m.mul(&m.symbol("c").unwrap(), &m.symbol("a").unwrap());
        assert_eq!(ca, m.combination(&[("a^c", q(-1, 1))]).unwrap());
    }

    #[test]
    fn surface_structure() {
        let m = surface::<Rational>(2).unwrap();
        assert_eq!(m.dim(), 6);
        let p = |a: &str, b: &str| m.mul(&m.symbol(a).unwrap(), &m.symbol(b).unwrap());
        assert_eq!(p("alpha1", "beta1"), m.symbol("omega").unwrap());
        assert_eq!(p("beta1", "alpha1"), m.combination(&[("omega", q(-1, 1))]).unwrap());
        assert!(is_zero_vec(&p("alpha1", "beta2")));
        assert!(is_zero_vec(&p("alpha1", "alpha2")));
    }

    #[test]
    fn mapping_torus_structure() {
        let lam = q(3, 2);
        let m = mapping_torus(lam.clone()).unwrap();
        let eta1 = m.symbol("eta1").unwrap();
        let expected = m.combination(&[("alpha^eta1", -lam.clone())]).unwrap();
        assert_eq!(m.d(&eta1), expected);
        assert!(is_zero_vec(&m.d_twisted(&eta1, -1)));
        assert!(is_zero_vec(&m.d_twisted(&m.symbol("eta2").unwrap(), -2)));
        let e = m.symbol("eta1^eta2").unwrap();
        assert_eq!(m.d(&e), m.combination(&[("alpha^eta1^eta2", q(-9, 2))]).unwrap());
        assert!(is_zero_vec(&m.d_twisted(&e, -3)));
    }

    #[test]
    fn invalid_models_rejected() {
        let basis = vec![BasisSymbol::new("1", 0, 0), BasisSymbol::new("x", 1, 0), BasisSymbol::new("y", 2, 0)];
        // x*x = y for odd x breaks graded commutativity.
        let bad_product = CdgaModel::<Rational>::new(
            "bad",
            basis.clone(),
            vec![(1, 1, vec![q(0, 1), q(0, 1), q(1, 1)])],
            vec![vec![q(0, 1); 3]; 3],
            None,
        );
        assert!(bad_product.is_err());
        let bad_degree = CdgaModel::<Rational>::new(
            "bad",
            basis,
            vec![],
            vec![vec![q(0, 1); 3], vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(0, 1); 3]],
            None,
        );
        assert!(bad_degree.is_err());
    }

    #[test]
    fn leibniz_violation_rejected() {
        // xy = z, yz = w, dx = z: d(xy) = 0 but dx·y - x·dy = zy = w.
        let basis = vec![
            BasisSymbol::new("1", 0, 0),
            BasisSymbol::new("x", 1, 0),
            BasisSymbol::new("y", 1, 0),
            BasisSymbol::new("z", 2, 0),
            BasisSymbol::new("w", 3, 0),
        ];
        let e = |i: usize| {
            let mut v = vec![q(0, 1); 5];
            v[i] = q(1, 1);
            v
        };
        let r = CdgaModel::<Rational>::new(
            "bad",
            basis,
            vec![(1, 2, e(3)), (2, 3, e(4))],
            vec![vec![q(0, 1); 5], e(3), vec![q(0, 1); 5], vec![q(0, 1); 5], vec![q(0, 1); 5]],
            None,
        );
        assert!(matches!(r, Err(Error::InvalidModel(_))));
    }
}
