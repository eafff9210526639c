//! Whether a representation into `G_{k,l}` lifts to `G_{k+1,l}`, and the
//! space of lifts when it does.
//!
//! Generators are lifted with a section, each relator is evaluated at order
//! `k + 1`, and its deviation from the identity (the defect) lies in the
//! kernel layer `A_{k+1,l}` of weight `k + 1`. Multiplying the lift of `g` by
//! `x ↦ x + c_g` shifts the defects by `d1 · c`, so the representation lifts
//! exactly when `d1 · c = -defect` is solvable.

use crate::error::{Error, Result};
use crate::fpgroup::{
    d0_matrix, d1_matrix, evaluate_word_with_inverses, flatten_cochain, split_cochain,
    ModuleAction, Presentation,
};
use crate::jetcore::linalg::{add_vec, Matrix};
use crate::jetcore::scalar::Scalar;
use crate::jetcore::JetDiffeo;
use crate::jetgroup::levy::top_layer;
use crate::jetgroup::{section_sk, PolyVector};
use crate::obstruction::representation::Representation;

/// Dimensions and bases of twisted `Z¹`, `B¹` and `H¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct H1Data<F> {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    /// Kernel of `d1`, flattened by generator.
    pub z1_basis: Vec<Vec<F>>,
    /// Independent columns of `d0`.
    pub b1_basis: Vec<Vec<F>>,
}

pub fn twisted_h1<F: Scalar>(p: &Presentation, act: &ModuleAction<F>) -> Result<H1Data<F>> {
    let d1 = d1_matrix(p, act)?;
    let d0 = d0_matrix(p, act)?;
    let z1_basis = d1.kernel_basis();
    let (_, pivots) = d0.rref();
    let d0t = d0.transpose();
    let b1_basis: Vec<Vec<F>> = pivots.iter().map(|&c| d0t.row(c).to_vec()).collect();
    Ok(H1Data {
        z1_dim: z1_basis.len(),
        b1_dim: b1_basis.len(),
        h1_dim: z1_basis.len() - b1_basis.len(),
        z1_basis,
        b1_basis,
    })
}

/// Which set-theoretic splitting `G_{k,l} → G_{k+1,l}` lifts generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Section {
    /// Zero-padding in exponential coordinates.
    #[default]
    Levy,
    /// Zero-padding of polynomial coefficients.
    Polynomial,
}

impl Section {
    pub fn lift<F: Scalar>(self, g: &JetDiffeo<F>) -> Result<JetDiffeo<F>> {
        match self {
            Section::Levy => section_sk(g),
            Section::Polynomial => JetDiffeo::new(g.map().pad_to(g.k() + 1)?),
        }
    }
}

/// Outcome of the lifting test.
#[derive(Clone, Debug)]
pub struct LiftReport<F: Scalar> {
    pub liftable: bool,
    /// Defect of each relator, a field of weight `k + 1`.
    pub defects: Vec<PolyVector<F>>,
    /// Defects stacked in relator order, in layer coordinates.
    pub defect_vector: Vec<F>,
    /// The section lifts of the generators, at order `k + 1`.
    pub section_lifts: Vec<JetDiffeo<F>>,
    pub module: ModuleAction<F>,
    pub d1: Matrix<F>,
    /// Per-generator correction `c` with `d1 · c = -defect`.
    pub correction: Option<Vec<Vec<F>>>,
    /// Lift of order `k + 1` built from the correction.
    pub witness: Option<Representation<F>>,
    /// Row vector `y` with `y d1 = 0` and `y · defect ≠ 0`.
    pub certificate: Option<Vec<F>>,
}

/// Multiplies each generator image on the left by `x ↦ x + c_g`, where `c_g`
/// is a weight-`k` field given in layer coordinates.
pub fn adjust_images<F: Scalar>(images: &[JetDiffeo<F>], c: &[Vec<F>]) -> Result<Vec<JetDiffeo<F>>> {
    if images.len() != c.len() {
        return Err(Error::dim("cochain generators", images.len(), c.len()));
    }
    images
        .iter()
        .zip(c)
        .map(|(g, cg)| {
            let (l, k) = (g.l(), g.k());
            let kernel = JetDiffeo::new(PolyVector::from_layer_vector(l, k, cg)?.to_jet_perturbation(k)?)?;
            kernel.compose(g)
        })
        .collect()
}

/// Top-layer defects of the relators on images whose truncation is a
/// representation.
pub fn relator_defects<F: Scalar>(
    p: &Presentation,
    images: &[JetDiffeo<F>],
) -> Result<Vec<PolyVector<F>>> {
    let Some(first) = images.first() else {
        return Ok(Vec::new());
    };
    let (l, k) = (first.l(), first.k());
    let inverses = images.iter().map(JetDiffeo::invert).collect::<Result<Vec<_>>>()?;
    p.relators()
        .iter()
        .map(|r| top_layer(&evaluate_word_with_inverses(r, images, &inverses, l, k)?))
        .collect()
}

pub fn lift_obstruction<F: Scalar>(r: &Representation<F>) -> Result<LiftReport<F>> {
    lift_obstruction_with(r, Section::Levy)
}

pub fn lift_obstruction_with<F: Scalar>(r: &Representation<F>, section: Section) -> Result<LiftReport<F>> {
    let p = r.presentation();
    let (l, k) = (r.l(), r.k());
    let top = k + 1;
    let lifts = r
        .images()
        .iter()
        .map(|g| section.lift(g))
        .collect::<Result<Vec<_>>>()?;
    let module = if lifts.is_empty() {
        ModuleAction::on_layer(&[], top)?
    } else {
        ModuleAction::for_representation(r.images(), top)?
    };
    let defects = relator_defects(p, &lifts)?;
    let defect_vector: Vec<F> = defects.iter().flat_map(|d| d.layer_vector(top)).collect();
    let d1 = d1_matrix(p, &module)?;
    let rhs: Vec<F> = defect_vector.iter().map(|x| -x.clone()).collect();
    let dim = crate::jetgroup::layer_basis(l, top).len();
    let mut report = LiftReport {
        liftable: false,
        defects,
        defect_vector,
        section_lifts: lifts,
        module,
        d1,
        correction: None,
        witness: None,
        certificate: None,
    };
    match report.d1.solve_affine(&rhs)? {
        Some(sol) => {
            let c = split_cochain(&sol.particular, dim);
            let images = adjust_images(&report.section_lifts, &c)?;
            report.witness = Some(Representation::new(p.clone(), l, top, images)?);
            report.correction = Some(c);
            report.liftable = true;
        }
        None => {
            report.certificate = report.d1.infeasibility_certificate(&rhs)?;
        }
    }
    Ok(report)
}

/// Lifts of a liftable representation: a torsor over `Z¹`, and modulo
/// conjugation by the kernel `A_{k+1,l}` a torsor over `H¹`.
#[derive(Clone, Debug)]
pub struct ExtensionSpace<F: Scalar> {
    pub base_lift: Representation<F>,
    pub module: ModuleAction<F>,
    pub z1_basis: Vec<Vec<F>>,
    pub b1_basis: Vec<Vec<F>>,
    pub h1_dim: usize,
}

impl<F: Scalar> ExtensionSpace<F> {
    /// The lift obtained by shifting the base lift by the flattened cochain
    /// `z`. Fails with a relator violation when `z` is not a cocycle.
    pub fn lift_with(&self, z: &[F]) -> Result<Representation<F>> {
        let c = split_cochain(z, self.module.dim());
        let images = adjust_images(self.base_lift.images(), &c)?;
        let b = &self.base_lift;
        Representation::new(b.presentation().clone(), b.l(), b.k(), images)
    }

    /// Flattened cochain separating two lifts of the same representation.
    pub fn difference(&self, other: &Representation<F>) -> Result<Vec<F>> {
        lift_difference(&self.base_lift, other)
    }
}

/// For lifts `g' = (x + c_g) ∘ g` of the same representation, returns the
/// flattened `c`.
pub fn lift_difference<F: Scalar>(base: &Representation<F>, other: &Representation<F>) -> Result<Vec<F>> {
    let c = base
        .images()
        .iter()
        .zip(other.images())
        .map(|(g, h)| Ok(top_layer(&h.compose(&g.invert()?)?)?.layer_vector(g.k())))
        .collect::<Result<Vec<_>>>()?;
    Ok(flatten_cochain(&c))
}

pub fn enumerate_lifts<F: Scalar>(r: &Representation<F>) -> Result<ExtensionSpace<F>> {
    let report = lift_obstruction(r)?;
    let base_lift = report.witness.ok_or(Error::NotLiftable)?;
    let h1 = twisted_h1(r.presentation(), &report.module)?;
    Ok(ExtensionSpace {
        base_lift,
        module: report.module,
        z1_basis: h1.z1_basis,
        b1_basis: h1.b1_basis,
        h1_dim: h1.h1_dim,
    })
}

/// `x ↦ x + a` for a weight-`k` field given in layer coordinates.
pub fn kernel_element<F: Scalar>(l: usize, k: usize, a: &[F]) -> Result<JetDiffeo<F>> {
    JetDiffeo::new(PolyVector::from_layer_vector(l, k, a)?.to_jet_perturbation(k)?)
}

/// `c + d`, elementwise on flattened cochains.
pub fn add_cochains<F: Scalar>(c: &[F], d: &[F]) -> Vec<F> {
    add_vec(c, d)
}
