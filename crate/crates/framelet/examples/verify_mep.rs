//! Verify the duality identities for the Haar mask family, then watch them
//! fail when the highpass masks are dropped.
//!
//! ```bash
//! cargo run --example verify_mep
//! ```

use framelet::{bspline_mask, difference_mask, verify_mep, CosetSet, TrigPolynomial};
use num_complex::Complex64;

fn main() -> framelet::Result<()> {
    let a = bspline_mask(1);
    let b = difference_mask(1);
    let cosets = CosetSet::dyadic(1)?;

    println!("Haar family: a = a~ = (1+e^-ix)/2, b = b~ = (1-e^-ix)/2");
    let report = verify_mep(
        &a,
        &a,
        std::slice::from_ref(&b),
        std::slice::from_ref(&b),
        &cosets,
        256,
    )?;
    println!("  lowpass residual:        {:.3e}", report.lowpass_residual);
    println!(
        "  coset, dual in place:    {:.3e}   <- the standard cancellation",
        report.max_dual_unshifted()
    );
    println!(
        "  coset, dual shifted too: {:.3e}   <- does not vanish for Haar",
        report.max_dual_shifted()
    );
    println!("  passes(1e-12): {}", report.passes(1e-12));

    println!();
    println!("Same lowpass pair with b = b~ = 0: the identities must fail");
    let zero = TrigPolynomial::constant(1, Complex64::new(0.0, 0.0))?;
    let report = verify_mep(
        &a,
        &a,
        std::slice::from_ref(&zero),
        std::slice::from_ref(&zero),
        &cosets,
        256,
    )?;
    println!("  lowpass residual:        {:.3e}", report.lowpass_residual);
    println!("  passes(1e-12): {}", report.passes(1e-12));
    Ok(())
}
