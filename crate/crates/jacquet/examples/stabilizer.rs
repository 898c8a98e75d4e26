//! Limits of stabilizers along the chart, compared with k_Θ + n_Θ.

use jacquet::lie::{all_thetas, stabilizer_report, LieAlgebra};

fn main() -> jacquet::Result<()> {
    for n in 2..=4 {
        let g = LieAlgebra::sl(n)?;
        for theta in all_thetas(g.rank()) {
            let r = stabilizer_report(&g, &theta)?;
            println!(
                "sl{n} Θ={:<8} dim stab = {:>2}  k_Θ = {:>2}  n_Θ = {:>2}  {}",
                theta.label(g.rank()),
                r.dim_stabilizer,
                r.dim_k_theta,
                r.dim_n_theta,
                if r.equal { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
