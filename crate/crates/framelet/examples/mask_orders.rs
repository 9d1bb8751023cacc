//! Sum rules of B-spline refinement masks and vanishing moments of
//! difference symbols.
//!
//! ```bash
//! cargo run --example mask_orders
//! ```

use framelet::{
    bspline_mask, difference_mask, sum_rules, vanishing_moments, CosetSet, TrigPolynomial,
};

fn main() -> framelet::Result<()> {
    let cosets = CosetSet::dyadic(1)?;
    println!("B-spline lowpass masks ((1+e^-ix)/2)^n:");
    for n in 1..=4 {
        let a = bspline_mask(n);
        println!("  order {n}: sum rules = {}", sum_rules(&a, &cosets, 1e-8)?);
    }

    println!("difference symbols ((1-e^-ix)/2)^r:");
    for r in 1..=4 {
        let b = difference_mask(r);
        println!(
            "  order {r}: vanishing moments = {}",
            vanishing_moments(&b, 1e-8)?
        );
    }

    let cosets2 = CosetSet::dyadic(2)?;
    let tensor = TrigPolynomial::tensor(&bspline_mask(3), &bspline_mask(3))?;
    println!(
        "tensor B3 x B3 mask: sum rules = {} (min over the three nonzero cosets)",
        sum_rules(&tensor, &cosets2, 1e-8)?
    );
    Ok(())
}
