//! Surface periods on both sides: a representation into `G_{3,1}` and the
//! matching Maurer–Cartan data in the harmonic surface model.

use crate::cdga::mc::McData;
use crate::cdga::model::CdgaModel;
use crate::error::{Error, Result};
use crate::fpgroup::Presentation;
use crate::jetcore::scalar::Scalar;
use crate::obstruction::Representation;

/// Periods `(x_i, y_i, w_i, z_i)` of one handle: `η₁` integrates to `x_i`
/// on `a_i` and `y_i` on `b_i`, `η₂` to `w_i` and `z_i`.
pub type Periods<F> = [F; 4];

/// `a_i ↦ (x_i, w_i, 1)`, `b_i ↦ (y_i, z_i, 1)` in the `G_{3,1}` chart over
/// the genus-`g` surface group.
pub fn surface_rep_bridge<F: Scalar>(genus: usize, periods: &[Periods<F>]) -> Result<Representation<F>> {
    if genus == 0 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    if periods.len() != genus {
        return Err(Error::dim("period tuples", genus, periods.len()));
    }
    let charts: Vec<[F; 3]> = periods
        .iter()
        .flat_map(|[x, y, w, z]| {
            [
                [x.clone(), w.clone(), F::one()],
                [y.clone(), z.clone(), F::one()],
            ]
        })
        .collect();
    Representation::from_g31_charts(Presentation::surface(genus)?, 3, &charts)
}

/// `η₁ = Σ x_i α_i + y_i β_i`, `η₂ = Σ w_i α_i + z_i β_i` in `surface(g)`.
pub fn surface_mc_data<F: Scalar>(model: &CdgaModel<F>, periods: &[Periods<F>]) -> Result<McData<F>> {
    let mut eta1 = model.zero();
    let mut eta2 = model.zero();
    for (i, [x, y, w, z]) in periods.iter().enumerate() {
        let a = model.symbol_index(&format!("alpha{}", i + 1))?;
        let b = model.symbol_index(&format!("beta{}", i + 1))?;
        eta1[a] = x.clone();
        eta1[b] = y.clone();
        eta2[a] = w.clone();
        eta2[b] = z.clone();
    }
    Ok(McData::rank1(vec![eta1, eta2]))
}

/// `Σ (x_i z_i - y_i w_i)`.
pub fn surface_quadric<F: Scalar>(periods: &[Periods<F>]) -> F {
    periods.iter().fold(F::zero(), |acc, [x, y, w, z]| {
        acc.add(&x.mul(z)).sub(&y.mul(w))
    })
}
