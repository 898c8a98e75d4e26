//! Weight multiplicities of truncated Verma and generalized Verma modules of sl3.

use jacquet::lie::LieAlgebra;
use jacquet::module::{format_weight, generalized_verma, verma};
use jacquet::q;
use jacquet::roots::Theta;

fn main() -> jacquet::Result<()> {
    let g = LieAlgebra::sl(3)?;
    let m = verma(&g, &[q(1), q(1)], 4)?;
    println!("{}: dim {} in the window, module axioms hold: {}", m.name, m.dim(), m.bracket_violation().is_none());
    for (w, idx) in m.weight_spaces().iter().rev().take(8) {
        println!("  {:>10}  {}", format_weight(w), idx.len());
    }
    // Θ = all gives the finite-dimensional quotient
    let l = generalized_verma(&g, &Theta::all(2), &[q(2), q(1)], 10)?;
    println!("{}: dim {}", l.name, l.dim());
    Ok(())
}
