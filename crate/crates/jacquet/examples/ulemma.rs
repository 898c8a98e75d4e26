//! Smallest n with cⁿ ⊂ c₁^{k₁}U(c) + c₂^{k₂}U(c) on the Heisenberg split of n̄ ⊂ sl3.

use jacquet::pbw::{default_degree_cap, heisenberg_split, ulemma_minimal_n};

fn main() -> jacquet::Result<()> {
    let (lie, c1, c2) = heisenberg_split()?;
    println!("c = {:?}, c1 = {:?}, c2 = {:?}", lie.labels, c1, c2);
    for k1 in 1..=3 {
        for k2 in 1..=3 {
            let cap = default_degree_cap(lie.dim(), k1, k2);
            let r = ulemma_minimal_n(&lie, &c1, &c2, k1, k2, cap)?;
            println!(
                "k1={k1} k2={k2}: n={} witness={} (ordered: {})",
                r.n,
                r.witness.word.join(" "),
                r.witness.ordered_monomial
            );
        }
    }
    Ok(())
}
