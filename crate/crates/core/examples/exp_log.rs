//! Exponential coordinates on the unipotent part and the vector field bracket.

use jetfol::jetcore::{q, MultiIndex};
use jetfol::jetgroup::{exp_jet, log_jet, PolyVector};

fn main() -> jetfol::Result<()> {
    let mi = |e: &[u32]| MultiIndex::new(e.to_vec()).unwrap();
    let k = 4;
    // X = x² ∂x, Y = x y² ∂y, truncated at order 4.
    let x = PolyVector::from_terms(2, 2, k, [(0, mi(&[2, 0]), q(1, 1))])?;
    let y = PolyVector::from_terms(2, 2, k, [(1, mi(&[1, 2]), q(1, 1))])?;

    let ex = exp_jet(&x, k)?;
    println!("exp(X) = {ex}");
    println!("log(exp(X)) == X: {}", log_jet(&ex)? == x);

    let ey = exp_jet(&y, k)?;
    let comm = ex.compose(&ey)?.compose(&ex.invert()?)?.compose(&ey.invert()?)?;
    println!("[X, Y]                      = {}", x.bracket(&y)?);
    println!("log of the group commutator = {}", log_jet(&comm)?);
    println!("(composition reverses the sign of the bracket)");

    // In one variable at order 3 the unipotent part is abelian.
    let u = PolyVector::from_terms(1, 2, 3, [(0, mi(&[2]), q(1, 1)), (0, mi(&[3]), q(-1, 2))])?;
    let v = PolyVector::from_terms(1, 2, 3, [(0, mi(&[2]), q(3, 1))])?;
    let additive = exp_jet(&u.add(&v)?, 3)? == exp_jet(&u, 3)?.compose(&exp_jet(&v, 3)?)?;
    println!("exp(U + V) == exp(U)∘exp(V) in G_(3,1): {additive}");
    Ok(())
}
