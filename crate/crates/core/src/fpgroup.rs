//! Finitely presented groups, their words, and the low-degree differentials
//! of the presentation complex with twisted coefficients.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jetcore::linalg::Matrix;
use crate::jetcore::scalar::Scalar;
use crate::jetcore::JetDiffeo;
use crate::jetgroup::polyvector::{layer_basis, PolyVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A word in the generators; not reduced unless [`Word::free_reduce`] is
/// called.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Cancels adjacent `g g⁻¹` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }
}

/// `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    index: HashMap<String, usize>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.ends_with("^-1") {
                return Err(Error::InvalidPresentation(format!("bad generator name {g:?}")));
            }
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator {g:?}")));
            }
        }
        for (r, w) in relators.iter().enumerate() {
            if let Some(m) = w.max_generator() {
                if m >= generators.len() {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {r} uses generator index {m}, only {} declared",
                        generators.len()
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
            index,
        })
    }

    /// Builds a presentation from names, with relators written as lists of
    /// tokens such as `"a"` and `"a^-1"`.
    pub fn from_names(generators: &[&str], relators: &[&[&str]]) -> Result<Self> {
        let p = Presentation::new(generators.iter().map(|s| s.to_string()).collect(), vec![])?;
        let relators = relators
            .iter()
            .map(|r| p.parse_word(r.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(p.generators, relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        match token.strip_suffix("^-1") {
            Some(name) => Ok(Letter::neg(self.generator_index(name)?)),
            None => Ok(Letter::pos(self.generator_index(token)?)),
        }
    }

    pub fn parse_word<'a>(&self, tokens: impl IntoIterator<Item = &'a str>) -> Result<Word> {
        Ok(Word::new(
            tokens
                .into_iter()
                .map(|t| self.parse_letter(t))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn word_tokens(&self, w: &Word) -> Vec<String> {
        w.letters
            .iter()
            .map(|l| {
                let name = &self.generators[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }

    /// `⟨t | ⟩`.
    pub fn circle() -> Self {
        Presentation::from_names(&["t"], &[]).unwrap()
    }

    /// `⟨x, y | x y x⁻¹ y⁻¹⟩`.
    pub fn torus() -> Self {
        Presentation::from_names(&["x", "y"], &[&["x", "y", "x^-1", "y^-1"]]).unwrap()
    }

    /// `⟨a1, b1, …, ag, bg | Π [ai, bi]⟩`.
    pub fn surface(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Presentation::new(vec![], vec![]);
        }
        let mut gens = Vec::new();
        let mut rel = Word::empty();
        for i in 0..genus {
            gens.push(format!("a{}", i + 1));
            gens.push(format!("b{}", i + 1));
            let a = Word::new(vec![Letter::pos(2 * i)]);
            let b = Word::new(vec![Letter::pos(2 * i + 1)]);
            rel = rel.concat(&Word::commutator(&a, &b));
        }
        Presentation::new(gens, vec![rel])
    }

    /// `⟨x, y, z | [x, y] z⁻¹, [x, z], [y, z]⟩`.
    pub fn heisenberg() -> Self {
        Presentation::from_names(
            &["x", "y", "z"],
            &[
                &["x", "y", "x^-1", "y^-1", "z^-1"],
                &["x", "z", "x^-1", "z^-1"],
                &["y", "z", "y^-1", "z^-1"],
            ],
        )
        .unwrap()
    }

    /// Built-in presentations by name: `circle`, `torus`, `heisenberg`,
    /// `surface<g>` (also `surface-<g>` and `genus<g>`).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "circle" => Ok(Self::circle()),
            "torus" => Ok(Self::torus()),
            "heisenberg" => Ok(Self::heisenberg()),
            _ => {
                let rest = name
                    .strip_prefix("surface")
                    .or_else(|| name.strip_prefix("genus"))
                    .map(|r| r.trim_start_matches(['-', '_', ':']));
                match rest.and_then(|r| r.parse::<usize>().ok()) {
                    Some(g) if g >= 1 => Self::surface(g),
                    _ => Err(Error::InvalidPresentation(format!("unknown builtin {name:?}"))),
                }
            }
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                let t = self.word_tokens(r);
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.join(" ")
                }
            })
            .collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Evaluates a word left to right in any group given by `mul` and `one`,
/// with generator images and their inverses supplied.
pub fn evaluate_in<T: Clone>(
    w: &Word,
    images: &[T],
    inverses: &[T],
    one: T,
    mut mul: impl FnMut(&T, &T) -> Result<T>,
) -> Result<T> {
    let mut acc = one;
    for l in &w.letters {
        let x = if l.inverse {
            inverses.get(l.generator)
        } else {
            images.get(l.generator)
        }
        .ok_or_else(|| Error::UnassignedGenerator(format!("#{}", l.generator)))?;
        acc = mul(&acc, x)?;
    }
    Ok(acc)
}

/// Product of the jet images along `w`; inverse letters use the group
/// inverse.
pub fn evaluate_word<F: Scalar>(w: &Word, images: &[JetDiffeo<F>]) -> Result<JetDiffeo<F>> {
    let first = images
        .first()
        .ok_or_else(|| Error::UnassignedGenerator("#0".into()))?;
    let inverses = images.iter().map(JetDiffeo::invert).collect::<Result<Vec<_>>>()?;
    evaluate_word_with_inverses(w, images, &inverses, first.l(), first.k())
}

pub(crate) fn evaluate_word_with_inverses<F: Scalar>(
    w: &Word,
    images: &[JetDiffeo<F>],
    inverses: &[JetDiffeo<F>],
    l: usize,
    k: usize,
) -> Result<JetDiffeo<F>> {
    evaluate_in(w, images, inverses, JetDiffeo::identity(l, k)?, |a, b| a.compose(b))
}

/// Linear action of the free group on `F^dim`, given by one invertible
/// matrix per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleAction<F: Scalar> {
    dim: usize,
    matrices: Vec<Matrix<F>>,
    inverses: Vec<Matrix<F>>,
}

impl<F: Scalar> ModuleAction<F> {
    pub fn new(dim: usize, matrices: Vec<Matrix<F>>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(matrices.len());
        for m in &matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::dim("module action matrix size", dim, m.rows()));
            }
            inverses.push(m.inverse()?);
        }
        Ok(ModuleAction {
            dim,
            matrices,
            inverses,
        })
    }

    pub fn trivial(generators: usize, dim: usize) -> Self {
        Self::new(dim, vec![Matrix::identity(dim); generators]).unwrap()
    }

    /// One-dimensional action by the given scalars.
    pub fn scalars(values: &[F]) -> Result<Self> {
        Self::new(1, values.iter().map(|v| Matrix::scalar(1, v.clone())).collect())
    }

    /// Action on the weight-`degree` layer of vector fields induced by the
    /// linear parts `A_g` via `v ↦ A v(A⁻¹ x)`, in [`layer_basis`] order.
    pub fn on_layer(linear_parts: &[Matrix<F>], degree: usize) -> Result<Self> {
        let l = match linear_parts.first() {
            Some(a) => a.rows(),
            None => return Ok(Self::trivial(0, 0)),
        };
        let basis = layer_basis(l, degree);
        let dim = basis.len();
        let mats = linear_parts
            .iter()
            .map(|a| {
                let cols = (0..dim)
                    .map(|c| {
                        let mut e = vec![F::zero(); dim];
                        e[c] = F::one();
                        let v = PolyVector::from_layer_vector(l, degree, &e)?;
                        Ok(v.gl_action(a)?.layer_vector(degree))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_columns(dim, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, mats)
    }

    /// The module `A_{k+1,l}` acted on through the linear parts of the jets.
    pub fn for_representation(images: &[JetDiffeo<F>], top_degree: usize) -> Result<Self> {
        let parts: Vec<Matrix<F>> = images.iter().map(JetDiffeo::linear_part).collect();
        Self::on_layer(&parts, top_degree)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, g: usize) -> &Matrix<F> {
        &self.matrices[g]
    }

    pub fn inverse_matrix(&self, g: usize) -> &Matrix<F> {
        &self.inverses[g]
    }

    fn check_generators(&self, p: &Presentation) -> Result<()> {
        if p.num_generators() != self.matrices.len() {
            return Err(Error::dim(
                "module action generators",
                p.num_generators(),
                self.matrices.len(),
            ));
        }
        Ok(())
    }

    /// `ρ(w)`.
    pub fn word_matrix(&self, w: &Word) -> Result<Matrix<F>> {
        evaluate_in(w, &self.matrices, &self.inverses, Matrix::identity(self.dim), |a, b| a.mul(b))
    }

    /// Acts by `ρ(w)` on a vector.
    pub fn act(&self, w: &Word, v: &[F]) -> Result<Vec<F>> {
        self.word_matrix(w)?.mul_vec(v)
    }
}

/// Extends a 1-cochain on generators to a word by
/// `c(w1 w2) = c(w1) + ρ(w1) c(w2)` and `c(g⁻¹) = -ρ(g)⁻¹ c(g)`.
pub fn crossed_extend<F: Scalar>(c: &[Vec<F>], w: &Word, act: &ModuleAction<F>) -> Result<Vec<F>> {
    if c.len() != act.num_generators() {
        return Err(Error::dim("cochain generators", act.num_generators(), c.len()));
    }
    let dim = act.dim();
    if let Some(v) = c.iter().find(|v| v.len() != dim) {
        return Err(Error::dim("cochain value length", dim, v.len()));
    }
    let mut acc = vec![F::zero(); dim];
    let mut prefix = Matrix::identity(dim);
    for l in &w.letters {
        let g = l.generator;
        if g >= c.len() {
            return Err(Error::UnassignedGenerator(format!("#{g}")));
        }
        let own = if l.inverse {
            act.inverse_matrix(g).mul_vec(&c[g])?.into_iter().map(|x| -x).collect()
        } else {
            c[g].clone()
        };
        for (a, x) in acc.iter_mut().zip(prefix.mul_vec(&own)?) {
            *a += &x;
        }
        prefix = prefix.mul(if l.inverse {
            act.inverse_matrix(g)
        } else {
            act.matrix(g)
        })?;
    }
    Ok(acc)
}

/// Flattens a per-generator cochain into one column vector.
pub fn flatten_cochain<F: Scalar>(c: &[Vec<F>]) -> Vec<F> {
    c.iter().flat_map(|v| v.iter().cloned()).collect()
}

/// Splits a column vector into per-generator blocks of length `dim`.
pub fn split_cochain<F: Scalar>(v: &[F], dim: usize) -> Vec<Vec<F>> {
    if dim == 0 {
        return Vec::new();
    }
    v.chunks(dim).map(<[F]>::to_vec).collect()
}

/// Matrix of `c ↦ (crossed_extend(c, r))_r`: rows are (relator, coordinate),
/// columns are (generator, coordinate). Assembled from Fox derivatives.
pub fn d1_matrix<F: Scalar>(p: &Presentation, act: &ModuleAction<F>) -> Result<Matrix<F>> {
    act.check_generators(p)?;
    let dim = act.dim();
    let n = p.num_generators();
    let mut m: Matrix<F> = Matrix::zeros(p.relators().len() * dim, n * dim);
    for (r, w) in p.relators().iter().enumerate() {
        let mut prefix = Matrix::identity(dim);
        for l in &w.letters {
            let g = l.generator;
            let block = if l.inverse {
                prefix.mul(act.inverse_matrix(g))?.scale(&-F::one())
            } else {
                prefix.clone()
            };
            for i in 0..dim {
                for j in 0..dim {
                    let (row, col) = (r * dim + i, g * dim + j);
                    let v = m.get(row, col).add(block.get(i, j));
                    m.set(row, col, v);
                }
            }
            prefix = prefix.mul(if l.inverse {
                act.inverse_matrix(g)
            } else {
                act.matrix(g)
            })?;
        }
    }
    Ok(m)
}

/// Matrix of the coboundary `v ↦ (ρ(g) v - v)_g`.
pub fn d0_matrix<F: Scalar>(p: &Presentation, act: &ModuleAction<F>) -> Result<Matrix<F>> {
    act.check_generators(p)?;
    let dim = act.dim();
    let blocks = (0..p.num_generators())
        .map(|g| act.matrix(g).sub(&Matrix::identity(dim)))
        .collect::<Result<Vec<_>>>()?;

    blocks
        .iter()
        .try_fold(Matrix::zeros(0, dim), |acc, b| acc.vstack(b))
}
