//! Check the two-scale refinement identity and the partition of unity for
//! B-spline generators.
//!
//! ```bash
//! cargo run --example refinement_check
//! ```

use framelet::mask::bspline_mask;
use framelet::{check_partition_of_unity, check_refinement, RefinableFunction};
use framelet::bspline::check_refinement_with;

fn main() -> framelet::Result<()> {
    for order in [1u32, 2, 3, 4] {
        let phi = RefinableFunction::bspline(order);
        let residual = check_refinement(&phi, 256)?;
        println!("B{order}: refinement residual {residual:.3e}");
    }

    let b3 = RefinableFunction::bspline(3);
    let wrong = bspline_mask(2);
    println!(
        "B3 against the B2 mask (must fail): residual {:.3e}",
        check_refinement_with(&b3, &wrong, 256)?
    );

    let tensor = RefinableFunction::tensor_bspline(3, 3);
    println!(
        "B3 x B3: refinement residual {:.3e}",
        check_refinement(&tensor, 128)?
    );

    let pts_1d = [[0.1f64], [0.7], [2.3]];
    let refs: Vec<&[f64]> = pts_1d.iter().map(|p| &p[..]).collect();
    println!(
        "B3 partition of unity deviation: {:.3e}",
        check_partition_of_unity(&b3, &refs)
    );

    let pts_2d = [[0.3f64, 1.9], [-5.2, 0.4]];
    let refs: Vec<&[f64]> = pts_2d.iter().map(|p| &p[..]).collect();
    println!(
        "B3 x B3 partition of unity deviation: {:.3e}",
        check_partition_of_unity(&tensor, &refs)
    );
    Ok(())
}
