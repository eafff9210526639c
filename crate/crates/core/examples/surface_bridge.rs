//! Surface groups from periods: group-side liftability against the de Rham
//! class and the quadric `Σ (x z - y w)`.

use jetfol::cdga::{ext_class_rep, is_exact, surface, surface_mc_data, surface_quadric, surface_rep_bridge};
use jetfol::jetcore::{q, Rational};
use jetfol::obstruction::lift_obstruction;

fn main() -> jetfol::Result<()> {
    let genus = 2;
    let model = surface::<Rational>(genus)?;
    let samples = [
        vec![[q(1, 1), q(0, 1), q(0, 1), q(1, 1)], [q(0, 1), q(1, 1), q(1, 1), q(0, 1)]],
        vec![[q(1, 1), q(2, 1), q(3, 1), q(4, 1)], [q(0, 1), q(0, 1), q(0, 1), q(0, 1)]],
        vec![[q(1, 2), q(1, 3), q(2, 1), q(-1, 1)], [q(1, 1), q(1, 1), q(1, 1), q(5, 3)]],
    ];
    println!("{:>8} {:>10} {:>10} {:>10}", "quadric", "liftable", "exact", "defect");
    for periods in samples {
        let quad = surface_quadric(&periods);
        let report = lift_obstruction(&surface_rep_bridge(genus, &periods)?)?;
        let class = ext_class_rep(&model, &surface_mc_data(&model, &periods)?)?.rank1_form(&model);
        let exact = is_exact(&model, &class, 2, 0)?.exact;
        println!(
            "{:>8} {:>10} {:>10} {:>10}",
            quad.to_string(),
            report.liftable,
            exact,
            report.defect_vector[0].to_string()
        );
    }
    Ok(())
}
