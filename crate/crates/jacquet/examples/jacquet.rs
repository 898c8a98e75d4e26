//! Jacquet module dimensions with their stabilization certificates.

use jacquet::jacquet::{jacquet, module_dims, JacquetOptions};
use jacquet::lie::LieAlgebra;
use jacquet::module::{format_weight, parse_module};
use jacquet::roots::Theta;

fn main() -> jacquet::Result<()> {
    let g = LieAlgebra::sl(3)?;
    let v = parse_module("gverma:a:1,0", &g, 8)?;
    let j = jacquet(&v, &Theta::all(2), &Theta::from_indices([0]), &JacquetOptions::default())?;
    let own = module_dims(&v);
    println!("{} with k_max = {}", j.module, j.k_max);
    for w in j.weights.iter().take(10) {
        println!(
            "  {:>10} dim {} (module {}) k* {} k_cone {} tower {:?}",
            format_weight(&w.weight),
            w.dim,
            own[&w.weight],
            w.k_star,
            w.k_cone,
            w.tower
        );
    }
    Ok(())
}
