//! Multi-indices and dense truncated polynomial arithmetic.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::jetcore::scalar::Scalar;

/// Exponent vector `J = (j_1, ..., j_l)` of the monomial `x^J`.
///
/// Ordering is lexicographic on the exponent tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::ZeroCodimension);
        }
        Ok(MultiIndex { exps })
    }

    pub fn zero(l: usize) -> Self {
        MultiIndex { exps: vec![0; l] }
    }

    /// The coordinate monomial `x_i`.
    pub fn unit(l: usize, i: usize) -> Self {
        let mut exps = vec![0; l];
        exps[i] = 1;
        MultiIndex { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `J - e_i`, if `j_i > 0`.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(MultiIndex { exps })
    }

    pub fn raise(&self, i: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        MultiIndex { exps }
    }

    /// All multi-indices in `l` variables of exactly the given weight, in
    /// lexicographic order.
    pub fn of_weight(l: usize, weight: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; l];
        fill(&mut out, &mut cur, 0, weight);
        out.sort();
        out
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, remaining: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u32;
        out.push(MultiIndex { exps: cur.clone() });
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e as u32;
        fill(out, cur, pos + 1, remaining - e);
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Writes `x^J` using `t` for one variable and `x, y, z` (then `x1, x2, ...`)
/// otherwise.
pub fn format_monomial(j: &MultiIndex) -> String {
    let l = j.len();
    let mut parts = Vec::new();
    for (i, &e) in j.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = variable_name(l, i);
        if e == 1 {
            parts.push(v);
        } else {
            parts.push(format!("{v}^{e}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn variable_name(l: usize, i: usize) -> String {
    match l {
        1 => "t".to_string(),
        2 | 3 => ["x", "y", "z"][i].to_string(),
        _ => format!("x{}", i + 1),
    }
}

/// Dense indexing of all monomials of weight `0..=k` in `l` variables,
/// ordered by weight and then lexicographically, with a truncated
/// multiplication table.
pub(crate) struct MonomialTable {
    pub l: usize,
    pub k: usize,
    pub monos: Vec<MultiIndex>,
    pub weights: Vec<usize>,
    index: HashMap<MultiIndex, usize>,
    /// `mul[a * n + b]`: index of `x^a * x^b`, or `usize::MAX` past degree `k`.
    mul: Vec<usize>,
    /// For each monomial of weight >= 1: a variable `i` and the index of `J - e_i`.
    pub split: Vec<(usize, usize)>,
    /// `lower[m * l + i]`: index of `J - e_i`, or `NONE` when `j_i == 0`.
    lower: Vec<usize>,
}

pub(crate) const NONE: usize = usize::MAX;

impl MonomialTable {
    fn build(l: usize, k: usize) -> Self {
        let mut monos = Vec::new();
        for w in 0..=k {
            monos.extend(MultiIndex::of_weight(l, w));
        }
        let n = monos.len();
        let weights: Vec<usize> = monos.iter().map(MultiIndex::weight).collect();
        let index: HashMap<MultiIndex, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mul = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if weights[a] + weights[b] <= k {
                    mul[a * n + b] = index[&monos[a].add(&monos[b])];
                }
            }
        }
        let split = monos
            .iter()
            .map(|m| {
                match (0..l).find(|&i| m.exps()[i] > 0) {
                    Some(i) => (i, index[&m.lower(i).unwrap()]),
                    None => (NONE, NONE),
                }
            })
            .collect();
        let mut lower = vec![NONE; n * l];
        for (m, mono) in monos.iter().enumerate() {
            for i in 0..l {
                if let Some(low) = mono.lower(i) {
                    lower[m * l + i] = index[&low];
                }
            }
        }
        MonomialTable {
            l,
            k,
            monos,
            weights,
            index,
            mul,
            split,
            lower,
        }
    }

    /// Shared table for `(l, k)`, memoized per thread.
    pub fn get(l: usize, k: usize) -> Rc<MonomialTable> {
        thread_local! {
            static CACHE: RefCell<HashMap<(usize, usize), Rc<MonomialTable>>> =
                RefCell::new(HashMap::new());
        }
        CACHE.with(|c| {
            c.borrow_mut()
                .entry((l, k))
                .or_insert_with(|| Rc::new(MonomialTable::build(l, k)))
                .clone()
        })
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn index_of(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }

    #[inline]
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.monos.len() + b]
    }

    pub fn lower_index(&self, m: usize, i: usize) -> usize {
        self.lower[m * self.l + i]
    }

    /// `∂f/∂x_i` of a dense polynomial.
    pub fn partial<F: Scalar>(&self, f: &[F], i: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.len()];
        for (m, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let low = self.lower_index(m, i);
            if low != NONE {
                out[low] += &c.mul(&F::from_i64(self.monos[m].exps()[i] as i64));
            }
        }
        out
    }

    /// Applies the vector field with dense components `x` as a derivation:
    /// `Σ_i x_i ∂f/∂x_i`, truncated.
    pub fn derive<F: Scalar>(&self, x: &[Vec<F>], f: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.len()];
        for (i, xi) in x.iter().enumerate() {
            let d = self.partial(f, i);
            for (o, v) in out.iter_mut().zip(self.mul_poly(xi, &d)) {
                *o += &v;
            }
        }
        out
    }

    /// Truncated product of two dense polynomials.
    pub fn mul_poly<F: Scalar>(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.len();
        let mut out = vec![F::zero(); n];
        let bnz: Vec<usize> = (0..n).filter(|&j| !b[j].is_zero()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let wi = self.weights[i];
            for &j in &bnz {
                if wi + self.weights[j] > self.k {
                    // bnz is sorted by weight.
                    break;
                }
                let r = self.product_index(i, j);
                out[r] += &ai.mul(&b[j]);
            }
        }
        out
    }

    /// Dense polynomials `g^J` for every monomial `J`, given the dense
    /// components `g_i`, all with zero constant term.
    pub fn powers<F: Scalar>(&self, g: &[Vec<F>]) -> Vec<Vec<F>> {
        let n = self.len();
        let mut pw: Vec<Vec<F>> = Vec::with_capacity(n);
        let mut one = vec![F::zero(); n];
        one[0] = F::one();
        pw.push(one);
        for m in 1..n {
            let (i, prev) = self.split[m];
            let p = self.mul_poly(&pw[prev], &g[i]);
            pw.push(p);
        }
        pw
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_counts() {
        assert_eq!(MultiIndex::of_weight(3, 2).len(), 6);
        assert_eq!(MultiIndex::of_weight(2, 3).len(), 4);
        let t = MonomialTable::get(3, 5);
        assert_eq!(t.len(), 56);
        let counts: Vec<usize> = (0..=5).map(|w| t.weights.iter().filter(|&&x| x == w).count()).collect();
        assert_eq!(counts, vec![1, 3, 6, 10, 15, 21]);
        assert!(t.weights.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn lexicographic_order_within_weight() {
        let w = MultiIndex::of_weight(2, 2);
        let e: Vec<_> = w.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(e, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_monomial(&MultiIndex::new(vec![2, 1]).unwrap()), "x^2*y");
        assert_eq!(format_monomial(&MultiIndex::new(vec![3]).unwrap()), "t^3");
    }
}
