//! Liftability of genus-one period tuples on a small integer grid, in
//! parallel. The liftable tuples are exactly the zeros of `x z - y w`.

use rayon::prelude::*;

use jetfol::cdga::{surface_quadric, surface_rep_bridge};
use jetfol::jetcore::{q, Scalar};
use jetfol::obstruction::lift_obstruction;

fn main() {
    let n: i64 = 2;
    let side = 2 * n + 1;
    let points: Vec<[i64; 4]> = (0..side.pow(4))
        .map(|i| [i % side, (i / side) % side, (i / side.pow(2)) % side, i / side.pow(3)].map(|c| c - n))
        .collect();
    let mismatches: usize = points
        .par_iter()
        .map(|p| {
            let periods = [p.map(|c| q(c, 1))];
            let liftable = lift_obstruction(&surface_rep_bridge(1, &periods).unwrap()).unwrap().liftable;
            usize::from(liftable != surface_quadric(&periods).is_zero())
        })
        .sum();
    let on_quadric = points.iter().filter(|[x, y, w, z]| x * z == y * w).count();
    println!("{} tuples, {on_quadric} on the quadric, {mismatches} disagreements", points.len());
}
