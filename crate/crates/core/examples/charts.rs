//! The coordinate charts on `G_{3,1}` and `G_{2,l}` and their product laws.

use jetfol::jetcore::{q, Matrix, MultiIndex};
use jetfol::jetcore::Rational;
use jetfol::jetgroup::{chart_g2l, chart_g31, PolyVector, G2l, G31};

fn show(c: &G31<Rational>) -> String {
    let [a1, a2, a0] = c.to_array();
    format!("({a1}, {a2}, {a0})")
}

fn main() -> jetfol::Result<()> {
    let a = G31::new(q(1, 2), q(-1, 1), q(2, 1))?;
    let b = G31::new(q(3, 1), q(1, 3), q(-1, 1))?;
    let (ja, jb) = (a.to_jet()?, b.to_jet()?);
    println!("a = {} is the jet {ja}", show(&a));
    println!("b = {} is the jet {jb}", show(&b));
    let read_back = chart_g31(&ja.compose(&jb)?)?;
    println!("chart(a∘b)                       = {}", show(&read_back));
    println!("(a1 + b1/a0, a2 + b2/a0², a0 b0) = {}", show(&a.mul(&b)));

    let mi = |e: &[u32]| MultiIndex::new(e.to_vec()).unwrap();
    let k1 = PolyVector::from_terms(2, 2, 2, [(0, mi(&[1, 1]), q(1, 1)), (1, mi(&[2, 0]), q(-2, 1))])?;
    let k2 = PolyVector::from_terms(2, 2, 2, [(1, mi(&[0, 2]), q(1, 3))])?;
    let a = G2l {
        quadratic: k1,
        linear: Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(2, 1)]])?,
    };
    let b = G2l {
        quadratic: k2,
        linear: Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]])?,
    };
    let via_jets = chart_g2l(&a.to_jet()?.compose(&b.to_jet()?)?)?;
    println!("G_(2,2) law holds: {}", via_jets == a.mul(&b)?);
    println!("product quadratic part: {}", via_jets.quadratic);
    Ok(())
}
