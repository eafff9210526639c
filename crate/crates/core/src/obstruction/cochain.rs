//! Pointwise group-cochain differentials.

use crate::error::Result;
use crate::jetcore::linalg::{add_vec, sub_vec};
use crate::jetcore::scalar::Scalar;
use crate::jetcore::JetDiffeo;
use crate::jetgroup::PolyVector;

/// `δα(c1, c2, c3) = c1·α(c2, c3) - α(c1 c2, c3) + α(c1, c2 c3) - α(c1, c2)`.
pub fn cochain_delta_eval<G, F: Scalar>(
    alpha: impl Fn(&G, &G) -> Result<Vec<F>>,
    act: impl Fn(&G, &[F]) -> Result<Vec<F>>,
    mul: impl Fn(&G, &G) -> Result<G>,
    c1: &G,
    c2: &G,
    c3: &G,
) -> Result<Vec<F>> {
    let first = act(c1, &alpha(c2, c3)?)?;
    let second = alpha(&mul(c1, c2)?, c3)?;
    let third = alpha(c1, &mul(c2, c3)?)?;
    let fourth = alpha(c1, c2)?;
    Ok(sub_vec(&add_vec(&sub_vec(&first, &second), &third), &fourth))
}

/// `δc(g1, g2) = g1·c(g2) - c(g1 g2) + c(g1)`.
pub fn cochain_delta1<G, F: Scalar>(
    c: impl Fn(&G) -> Result<Vec<F>>,
    act: impl Fn(&G, &[F]) -> Result<Vec<F>>,
    mul: impl Fn(&G, &G) -> Result<G>,
    g1: &G,
    g2: &G,
) -> Result<Vec<F>> {
    let first = act(g1, &c(g2)?)?;
    Ok(add_vec(&sub_vec(&first, &c(&mul(g1, g2)?)?), &c(g1)?))
}

/// Action of `G_{k,l}` on the weight-`(k + 1)` layer through its linear
/// part, in layer coordinates.
pub fn layer_act<F: Scalar>(g: &JetDiffeo<F>, v: &[F]) -> Result<Vec<F>> {
    let d = g.k() + 1;
    Ok(PolyVector::from_layer_vector(g.l(), d, v)?
        .gl_action(&g.linear_part())?
        .layer_vector(d))
}
