//! Jacquet dimensions are additive along short exact sequences.

use jacquet::jacquet::{exactness_check, parse_sequence, JacquetOptions};
use jacquet::lie::LieAlgebra;
use jacquet::module::format_weight;
use jacquet::roots::Theta;

fn main() -> jacquet::Result<()> {
    let g = LieAlgebra::sl(2)?;
    for spec in ["bgg:3", "ps:1:0"] {
        let seq = parse_sequence(spec, &g, 10)?;
        let opts = JacquetOptions { height: 4, ..Default::default() };
        let r = exactness_check(&seq, &Theta::all(1), &Theta::empty(), &opts)?;
        println!("{} additive = {}", r.sequence, r.additive);
        for row in &r.rows {
            println!("  {:>6}  {} = {} + {}", format_weight(&row.weight), row.b, row.a, row.c);
        }
    }
    Ok(())
}
