//! Graded pieces of the cocharacter filtration next to Jacquet weight sums.

use jacquet::filtration::{filtration_graded, v_filtration_pieces};
use jacquet::lie::LieAlgebra;
use jacquet::module::parse_module;

fn main() -> jacquet::Result<()> {
    let g = LieAlgebra::sl(2)?;
    let v = parse_module("verma:3", &g, 8)?;
    let r = filtration_graded(&v, &[1], 8)?;
    println!("{} H = {:?}: equal = {}", r.module, r.h.iter().map(|x| x.to_string()).collect::<Vec<_>>(), r.equal);
    for row in &r.rows {
        println!("  e={:>3} dim F {:>2} graded {} jacquet {}", row.e, row.dim_f, row.graded, row.jacquet);
    }

    let vf = v_filtration_pieces(&v, &[1], 3, 1)?;
    println!("V-filtration stable = {}, generation from {:?}", vf.stable, vf.generation_from);
    Ok(())
}
