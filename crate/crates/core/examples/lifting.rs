//! Deciding whether a torus representation into `G_{3,1}` lifts to order 4.

use jetfol::fpgroup::Presentation;
use jetfol::jetcore::q;
use jetfol::obstruction::{enumerate_lifts, lift_obstruction, Representation};

fn main() -> jetfol::Result<()> {
    let blocked = Representation::from_g31_charts(
        Presentation::torus(),
        3,
        &[[q(1, 1), q(0, 1), q(1, 1)], [q(0, 1), q(1, 1), q(1, 1)]],
    )?;
    let report = lift_obstruction(&blocked)?;
    println!("x = (1, 0, 1), y = (0, 1, 1)");
    println!("  liftable: {}", report.liftable);
    println!("  relator defect: {}", report.defects[0]);
    if let Some(y) = &report.certificate {
        println!("  certificate: {}", y.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }

    let free = Representation::from_g31_charts(
        Presentation::torus(),
        3,
        &[[q(1, 1), q(2, 1), q(1, 1)], [q(2, 1), q(4, 1), q(1, 1)]],
    )?;
    let space = enumerate_lifts(&free)?;
    println!("x = (1, 2, 1), y = (2, 4, 1)");
    println!("  lifts form an affine space over Z¹ of dimension {}", space.z1_basis.len());
    println!("  modulo conjugation: H¹ of dimension {}", space.h1_dim);
    for z in &space.z1_basis {
        let other = space.lift_with(z)?;
        println!("  shifted lift: x ↦ {}", other.images()[0]);
    }
    Ok(())
}
