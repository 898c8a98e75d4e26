//! Composite of two Jacquet functors against the direct one.

use jacquet::jacquet::chain_check;
use jacquet::lie::LieAlgebra;
use jacquet::module::{format_weight, parse_module};
use jacquet::roots::Theta;

fn main() -> jacquet::Result<()> {
    let g = LieAlgebra::sl(3)?;
    let v = parse_module("gverma:a:1,0", &g, 6)?;
    let r = chain_check(&v, &Theta::empty(), &Theta::from_indices([0]), &Theta::all(2))?;
    println!("{}: k1 = {}, k2 = {}, equal = {}", r.module, r.k1, r.k2, r.equal);
    for row in &r.rows {
        println!("  {:>10} direct {} composite {} mixed {}", format_weight(&row.weight), row.direct, row.composite, row.mixed);
    }
    Ok(())
}
