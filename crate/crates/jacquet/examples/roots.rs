//! Positive roots of a few types and the parabolic data for one Θ in A3.

use jacquet::roots::{RootSystem, Theta};

fn main() -> jacquet::Result<()> {
    for t in ["A2", "B2", "G2", "D4"] {
        let rs = RootSystem::from_type(t)?;
        println!("{t}: {} positive roots, Cartan {:?}", rs.num_positive(), rs.cartan_matrix);
    }
    let rs = RootSystem::from_type("A3")?;
    let theta = Theta::parse("a,c", rs.rank)?;
    let p = rs.parabolic(&theta)?;
    println!("A3, Θ = {}: dim a_Θ = {}", theta.label(rs.rank), p.dim_a_theta());
    println!("  roots of l_Θ: {:?}", p.sigma_theta_pos);
    println!("  roots of n_Θ: {:?}", p.n_theta_roots);
    let nu = rs.cocharacter(&Theta::all(rs.rank), &theta, &[(1, 1)])?;
    println!("  H = {:?}, vanishing on {}", nu.h.iter().map(|x| x.to_string()).collect::<Vec<_>>(), nu.vanishing_set(&rs).label(rs.rank));
    Ok(())
}
