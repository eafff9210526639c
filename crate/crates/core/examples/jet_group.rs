//! Composition, inversion and truncation in the jet group `G_{k,l}`.

use jetfol::jetcore::{q, JetDiffeo, JetMap, MultiIndex};

fn main() -> jetfol::Result<()> {
    let mi = |e: &[u32]| MultiIndex::new(e.to_vec()).unwrap();
    // f(x, y) = (2x + y², y - x + x³), g(x, y) = (x - 2xy, 3y + x²/2)
    let f = JetDiffeo::new(JetMap::from_terms(
        2,
        3,
        [
            (0, mi(&[1, 0]), q(2, 1)),
            (0, mi(&[0, 2]), q(1, 1)),
            (1, mi(&[0, 1]), q(1, 1)),
            (1, mi(&[1, 0]), q(-1, 1)),
            (1, mi(&[3, 0]), q(1, 1)),
        ],
    )?)?;
    let g = JetDiffeo::new(JetMap::from_terms(
        2,
        3,
        [
            (0, mi(&[1, 0]), q(1, 1)),
            (0, mi(&[1, 1]), q(-2, 1)),
            (1, mi(&[0, 1]), q(3, 1)),
            (1, mi(&[2, 0]), q(1, 2)),
        ],
    )?)?;

    let fg = f.compose(&g)?;
    println!("f     = {f}");
    println!("g     = {g}");
    println!("f∘g   = {fg}");

    let inv = f.invert()?;
    println!("f⁻¹   = {inv}");
    println!("f∘f⁻¹ is the identity: {}", f.compose(&inv)?.is_identity());

    for order in 1..3 {
        let lhs = fg.truncate(order)?;
        let rhs = f.truncate(order)?.compose(&g.truncate(order)?)?;
        println!("order {order}: truncation commutes with composition: {}", lhs == rhs);
    }
    Ok(())
}
