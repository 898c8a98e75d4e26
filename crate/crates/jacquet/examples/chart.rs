//! Torus equivariance of the deformation chart, symbolically in Laurent polynomials.

use jacquet::symbolic::{a_action_check, equivariance_sweep};

fn main() -> jacquet::Result<()> {
    let sweep = equivariance_sweep(3, 2)?;
    println!("{} characters checked, all equal = {}", sweep.cases, sweep.all_equal);
    for rank in 1..=3 {
        let a = a_action_check(rank)?;
        println!("l={rank}: a·(x, t) = ({})  matches = {}", a.action_on_generic.join(", "), a.matches);
    }
    Ok(())
}
