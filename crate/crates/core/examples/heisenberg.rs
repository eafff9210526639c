//! Maurer–Cartan data on the Heisenberg nilmanifold and its extension class.

use jetfol::cdga::{ext_class_rep, heisenberg, is_exact, mc_check, McData};
use jetfol::jetcore::{q, Rational};

fn main() -> jetfol::Result<()> {
    let m = heisenberg::<Rational>();
    let data = McData::rank1(vec![m.symbol("a")?, m.symbol("b")?, m.combination(&[("c", q(-1, 1))])?]);
    for (r, res) in mc_check(&m, &data)?.iter().enumerate() {
        println!("residual at order {}: {}", r + 1, res.display(&m));
    }
    let class = ext_class_rep(&m, &data)?.rank1_form(&m);
    println!("extension class representative: {}", m.format(&class));
    let verdict = is_exact(&m, &class, 2, 0)?;
    println!("exact: {}", verdict.exact);
    if let Some(cert) = verdict.certificate {
        let shown: Vec<String> = cert.iter().map(ToString::to_string).collect();
        println!("certificate: [{}]", shown.join(", "));
    }
    // a∧b = dc, so it is exact.
    let ab = is_exact(&m, &m.symbol("a^b")?, 2, 0)?;
    println!("a^b is exact with primitive {}", m.format(&ab.primitive.unwrap()));
    Ok(())
}
