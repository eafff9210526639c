//! First cohomology of standard groups with twisted coefficients.

use jetfol::fpgroup::{ModuleAction, Presentation};
use jetfol::jetcore::{q, Rational};
use jetfol::obstruction::twisted_h1;

fn main() -> jetfol::Result<()> {
    let klein = Presentation::from_names(&["a", "b"], &[&["a", "b", "a^-1", "b"]])?;
    let cases: Vec<(&str, Presentation, ModuleAction<Rational>)> = vec![
        ("circle, trivial", Presentation::circle(), ModuleAction::trivial(1, 1)),
        ("circle, t acts by 2", Presentation::circle(), ModuleAction::scalars(&[q(2, 1)])?),
        ("torus, trivial", Presentation::torus(), ModuleAction::trivial(2, 1)),
        ("genus 2, trivial", Presentation::surface(2)?, ModuleAction::trivial(4, 1)),
        ("heisenberg, trivial", Presentation::heisenberg(), ModuleAction::trivial(3, 1)),
        ("klein bottle, trivial", klein.clone(), ModuleAction::trivial(2, 1)),
        ("klein bottle, b acts by -1", klein, ModuleAction::scalars(&[q(1, 1), q(-1, 1)])?),
    ];
    for (name, p, act) in cases {
        let h = twisted_h1(&p, &act)?;
        println!("{name:<28} Z¹ {}  B¹ {}  H¹ {}", h.z1_dim, h.b1_dim, h.h1_dim);
    }
    Ok(())
}
