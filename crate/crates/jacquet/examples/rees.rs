//! Multigraded Rees pieces and the fiber/normal-cone comparison.

use jacquet::rees::{compare_fiber_to_cone, labeling_independence_check, MonomialIdealFamily};

fn main() -> jacquet::Result<()> {
    let fam = MonomialIdealFamily::parse("x^2,y;y^3", None)?;
    print!("{}", fam.hilbert_table(-1, 3, 5)?.to_csv());

    let lab = labeling_independence_check(&fam, 4)?;
    println!("relabelings checked: {} entries, invariant = {}", lab.entries_checked, lab.invariant);

    let coord = MonomialIdealFamily::coordinate(3, 2)?;
    let cmp = compare_fiber_to_cone(&coord, 5, 5)?;
    println!("{}:", cmp.family);
    for r in &cmp.rows {
        println!("  k={} fiber sum {} cone {}", r.k, r.fiber_sum, r.cone);
    }
    Ok(())
}
