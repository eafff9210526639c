//! The extension cocycle of `G_{4,1} → G_{3,1}` against its closed form.

use jetfol::jetcore::{q, MultiIndex};
use jetfol::jetgroup::{alpha_cocycle, e41_closed_form, section_sk, G31};

fn main() -> jetfol::Result<()> {
    let a = G31::new(q(1, 1), q(2, 1), q(3, 1))?;
    let b = G31::new(q(-1, 2), q(0, 1), q(2, 1))?;
    let (ja, jb) = (a.to_jet()?, b.to_jet()?);

    let s = section_sk(&ja)?;
    println!("s(a) = {s}");
    println!("s(a) truncates back to a: {}", s.truncate(3)? == ja);

    let alpha = alpha_cocycle(&ja, &jb)?;
    let t4 = MultiIndex::new(vec![4]).unwrap();
    println!("alpha(a, b) = {alpha}");
    println!("t⁴ coefficient {}, closed form {}", alpha.coeff(0, &t4), e41_closed_form(&a, &b)?);
    Ok(())
}
