//! The dilation homotopy from a representation to its linear part.

use jetfol::fpgroup::Presentation;
use jetfol::jetcore::{q, JetDiffeo, Scalar};
use jetfol::obstruction::{transport_rep, Representation, Transport};

fn main() -> jetfol::Result<()> {
    let r = Representation::from_g31_charts(
        Presentation::torus(),
        3,
        &[[q(1, 1), q(2, 1), q(1, 1)], [q(2, 1), q(4, 1), q(1, 1)]],
    )?;
    for t in [q(1, 1), q(1, 2), q(1, 10), q(0, 1)] {
        let h = transport_rep(&r, &Transport::Dilate(t.clone()))?;
        print!("t = {t:<5} x ↦ {}", h.images()[0]);
        if !t.is_zero() {
            let conj = r.conjugate(&JetDiffeo::dilation(1, 3, t.recip())?)?;
            print!("   (conjugate by x ↦ x/t: {})", h == conj);
        }
        println!();
    }
    Ok(())
}
