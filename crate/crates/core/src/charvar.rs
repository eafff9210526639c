//! Codimension-one classification for jet order at most three.
//!
//! A representation into `G_{3,1}` with linear part `ρ₀` is a pair of
//! cocycles in the weight `-1` and `-2` modules. Up to conjugation the
//! non-linearizable classes form a sphere of dimension `b₁(-1) + b₁(-2) - 1`
//! and the linear point lies in the closure of every class.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fpgroup::{evaluate_in, ModuleAction, Presentation};
use crate::jetcore::scalar::Scalar;
use crate::obstruction::twisted_h1;

/// Dimensions of `H¹` for the modules `ρ₀⁻¹` and `ρ₀⁻²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiPair {
    pub w1: usize,
    pub w2: usize,
}

/// Checks that `ρ₀` is a character of the presented group.
pub fn check_character<F: Scalar>(p: &Presentation, rho0: &[F]) -> Result<()> {
    if rho0.len() != p.num_generators() {
        let missing = p.generators().get(rho0.len()).cloned();
        return Err(match missing {
            Some(name) => Error::UnassignedGenerator(name),
            None => Error::dim("character values", p.num_generators(), rho0.len()),
        });
    }
    if let Some(i) = rho0.iter().position(Scalar::is_zero) {
        return Err(Error::InvalidParameter(format!(
            "character value of {} is zero",
            p.generators()[i]
        )));
    }
    let inverses: Vec<F> = rho0.iter().map(Scalar::recip).collect();
    for (i, r) in p.relators().iter().enumerate() {
        let v = evaluate_in(r, rho0, &inverses, F::one(), |a, b| Ok(a.mul(b)))?;
        if !v.sub(&F::one()).negligible(1.0) {
            return Err(Error::RelatorViolated { relator: i });
        }
    }
    Ok(())
}

pub fn betti_pair<F: Scalar>(p: &Presentation, rho0: &[F]) -> Result<BettiPair> {
    check_character(p, rho0)?;
    let weight = |e: i32| -> Result<usize> {
        let values: Vec<F> = rho0.iter().map(|v| v.pow(e)).collect();
        Ok(twisted_h1(p, &ModuleAction::scalars(&values)?)?.h1_dim)
    };
    Ok(BettiPair {
        w1: weight(-1)?,
        w2: weight(-2)?,
    })
}

/// Representative of an `ℝ_{>0}`-orbit under `t·(u, v) = (t⁻¹u, t⁻²v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRep {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// The scale applied: `(√s·u, s·v)`.
    pub s: f64,
}

fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum()
}

/// Unique point of the orbit on the unit sphere.
pub fn normalize_orbit(u: &[f64], v: &[f64]) -> Result<OrbitRep> {
    let a = norm_sq(u);
    let b = norm_sq(v);
    if a == 0.0 && b == 0.0 {
        return Err(Error::ZeroOrbit);
    }
    let s = if b == 0.0 {
        1.0 / a
    } else {
        // Root of b s² + a s - 1, written to avoid cancellation when a ≫ b.
        2.0 / (a + (a * a + 4.0 * b).sqrt())
    };
    let r = s.sqrt();
    Ok(OrbitRep {
        u: u.iter().map(|x| r * x).collect(),
        v: v.iter().map(|x| s * x).collect(),
        s,
    })
}

/// Coefficients `(‖v‖², ‖u‖², -1)` of the quadratic the scale `s` solves,
/// for fields without square roots.
pub fn orbit_equation<F: Scalar>(u: &[F], v: &[F]) -> Result<[F; 3]> {
    let sq = |x: &[F]| x.iter().fold(F::zero(), |acc, c| acc.add(&c.mul(c)));
    let (a, b) = (sq(u), sq(v));
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroOrbit);
    }
    Ok([b, a, -F::one()])
}

/// The residual `ℤ/2`: `(u, v) ↦ (-u, v)`.
pub fn z2_action(u: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (u.iter().map(|x| -x).collect(), v.to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    Sphere(usize),
    /// Only the linear class exists.
    Point,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Sphere(d) => write!(f, "S^{d}"),
            Stratum::Point => f.write_str("point"),
        }
    }
}

const ZERO_POINT_NOTE: &str =
    "the linear class (0, 0) lies in the closure of every other class; the orbit space is not Hausdorff there";

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyReport {
    pub presentation: String,
    pub betti: BettiPair,
    pub stratum: Stratum,
    pub zero_point_note: &'static str,
}

impl ClassifyReport {
    pub fn sphere_dim(&self) -> Option<usize> {
        match self.stratum {
            Stratum::Sphere(d) => Some(d),
            Stratum::Point => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "presentation": self.presentation,
            "b1_w1": self.betti.w1,
            "b1_w2": self.betti.w2,
            "sphere_dim": match self.stratum {
                Stratum::Sphere(d) => json!(d),
                Stratum::Point => json!("point"),
            },
            "zero_point_note": self.zero_point_note,
        })
    }

    pub fn table(&self) -> String {
        let rows = [
            ("presentation", self.presentation.clone()),
            ("b1(weight -1)", self.betti.w1.to_string()),
            ("b1(weight -2)", self.betti.w2.to_string()),
            ("classes", format!("{} and the linear point", self.stratum)),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out.push_str(&format!("note: {}\n", self.zero_point_note));
        out
    }
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table())
    }
}

/// Classification of order-3 codimension-one structures with linear part
/// `ρ₀`, up to conjugation.
pub fn classify_b4<F: Scalar>(p: &Presentation, rho0: &[F]) -> Result<ClassifyReport> {
    let betti = betti_pair(p, rho0)?;
    let total = betti.w1 + betti.w2;
    Ok(ClassifyReport {
        presentation: p.to_string(),
        betti,
        stratum: if total == 0 {
            Stratum::Point
        } else {
            Stratum::Sphere(total - 1)
        },
        zero_point_note: ZERO_POINT_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};

    fn ones(n: usize) -> Vec<Rational> {
        vec![q(1, 1); n]
    }

    #[test]
    fn betti_examples() {
        for g in 1..=3 {
            let p = Presentation::surface(g).unwrap();
            assert_eq!(betti_pair(&p, &ones(2 * g)).unwrap(), BettiPair { w1: 2 * g, w2: 2 * g });
        }
        let c = Presentation::circle();
        assert_eq!(betti_pair(&c, &[q(2, 1)]).unwrap(), BettiPair { w1: 0, w2: 0 });
        assert_eq!(betti_pair(&c, &[q(-1, 1)]).unwrap(), BettiPair { w1: 0, w2: 1 });
    }

    #[test]
    fn bad_characters() {
        let c = Presentation::circle();
        assert!(matches!(betti_pair(&c, &[q(0, 1)]), Err(Error::InvalidParameter(_))));
        let p = Presentation::from_names(&["t"], &[&["t", "t"]]).unwrap();
        assert_eq!(betti_pair(&p, &[q(2, 1)]).unwrap_err(), Error::RelatorViolated { relator: 0 });
        // Finite groups have no rational H¹.
        assert_eq!(betti_pair(&p, &[q(-1, 1)]).unwrap(), BettiPair { w1: 0, w2: 0 });
    }

    #[test]
    fn classify_examples() {
        for (g, dim) in [(1, 3), (2, 7), (3, 11)] {
            let r = classify_b4(&Presentation::surface(g).unwrap(), &ones(2 * g)).unwrap();
            assert_eq!(r.sphere_dim(), Some(dim));
        }
        let c = Presentation::circle();
        assert_eq!(classify_b4(&c, &[q(2, 1)]).unwrap().stratum, Stratum::Point);
        let r = classify_b4(&c, &[q(-1, 1)]).unwrap();
        assert_eq!(r.sphere_dim(), Some(0));
        assert_eq!(r.to_json()["sphere_dim"], json!(0));
        assert!(r.table().contains("S^0"));
    }

    #[test]
    fn normalization_examples() {
        let r = normalize_orbit(&[3.0, 4.0], &[]).unwrap();
        assert!((r.u[0] - 0.6).abs() < 1e-15 && (r.u[1] - 0.8).abs() < 1e-15);
        let r = normalize_orbit(&[0.0], &[2.0]).unwrap();
        assert!((r.v[0] - 1.0).abs() < 1e-15);
        let r = normalize_orbit(&[1.0], &[1.0]).unwrap();
        let s = (5f64.sqrt() - 1.0) / 2.0;
        assert!((r.s - s).abs() < 1e-15);
        assert!((r.u[0] - s.sqrt()).abs() < 1e-15 && (r.v[0] - s).abs() < 1e-15);
        assert_eq!(normalize_orbit(&[0.0], &[0.0]).unwrap_err(), Error::ZeroOrbit);
        assert_eq!(orbit_equation(&[q(1, 1)], &[q(2, 1)]).unwrap(), [q(4, 1), q(1, 1), q(-1, 1)]);
    }

    #[test]
    fn z2_commutes_with_normalization() {
        let (u, v) = (vec![0.3, -2.0], vec![1.5]);
        let (nu, nv) = z2_action(&u, &v);
        let a = normalize_orbit(&nu, &nv).unwrap();
        let b = normalize_orbit(&u, &v).unwrap();
        let (bu, bv) = z2_action(&b.u, &b.v);
        assert_eq!((a.u, a.v), (bu, bv));
    }
}
