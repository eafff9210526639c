//! A codimension-two Maurer–Cartan element and the pattern of its class.

use jetfol::cdga::{ext_class_rep, trivial_rank2, FormField, McData};
use jetfol::jetcore::{MultiIndex, Rational};

fn main() -> jetfol::Result<()> {
    let m = trivial_rank2::<Rational>();
    let mi = |e: [u32; 2]| MultiIndex::new(e.to_vec()).unwrap();
    // η = (α x² + β x y + γ y²) ∂y
    let mut eta = FormField::zero(2, 2)?;
    eta.add_term(1, mi([2, 0]), &m.symbol("alpha")?)?;
    eta.add_term(1, mi([1, 1]), &m.symbol("beta")?)?;
    eta.add_term(1, mi([0, 2]), &m.symbol("gamma")?)?;
    let data = McData { k: 2, eta: vec![eta] };
    println!("eta   = {}", data.eta[0].display(&m));
    let class = ext_class_rep(&m, &data)?;
    println!("class = {}", class.display(&m));
    Ok(())
}
