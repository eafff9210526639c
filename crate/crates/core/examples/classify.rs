//! Codimension-one structures at order 3 up to conjugation, and the
//! weighted-sphere normal form of an orbit.

use jetfol::charvar::{classify_b4, normalize_orbit, orbit_equation, z2_action};
use jetfol::fpgroup::Presentation;
use jetfol::jetcore::{q, Rational};

fn main() -> jetfol::Result<()> {
    for g in 1..=3 {
        let report = classify_b4(&Presentation::surface(g)?, &vec![q(1, 1); 2 * g])?;
        println!("genus {g}: b1 pair ({}, {}), classes {}", report.betti.w1, report.betti.w2, report.stratum);
    }
    let flip = classify_b4::<Rational>(&Presentation::circle(), &[q(-1, 1)])?;
    println!("\n{flip}");

    let (u, v) = ([3.0, -1.0], [2.0]);
    let rep = normalize_orbit(&u, &v)?;
    println!("orbit of u = {u:?}, v = {v:?}");
    println!("  representative u = {:?}, v = {:?} (scale {})", rep.u, rep.v, rep.s);
    let (fu, fv) = z2_action(&rep.u, &rep.v);
    println!("  its ℤ/2 partner u = {fu:?}, v = {fv:?}");
    let eq = orbit_equation(&[q(3, 1), q(-1, 1)], &[q(2, 1)])?;
    println!("  over ℚ the scale solves {} s² + {} s + {} = 0", eq[0], eq[1], eq[2]);
    Ok(())
}
