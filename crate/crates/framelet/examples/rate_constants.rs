//! The explicit rate machinery: decay exponents, lattice tail bounds with
//! their brute-force oracle, and the two printed operator constants.
//!
//! ```bash
//! cargo run --release --example rate_constants
//! ```

use framelet::{
    analysis_operator_bound, coefficient_decay_constant, decay_exponent, lattice_tail_bound,
    lattice_tail_oracle, moment_envelope, reconstruction_rate_factor, sup_bracket, RateParams,
    RefinableFunction, SpectralFunction,
};
use framelet::mask::difference_mask;

fn main() -> framelet::Result<()> {
    println!("decay exponent zeta = min(1, sigma - s, jitter term):");
    for (s, sigma, alpha) in [(0.75, 1.25, 0.5), (1.0, 3.0, 0.5), (1.5, 11.5, 0.5)] {
        let p = RateParams::new(s, sigma, alpha, 1, 2.0, 4)?;
        println!("  s={s}, sigma={sigma}, alpha={alpha}: zeta = {:.6}", decay_exponent(&p));
    }

    println!();
    println!("lattice tail sums vs the printed bound (d=1, m=2):");
    println!("  s    J   oracle       bound        ratio");
    for s in [1.0, 1.5] {
        for level in 1..=4 {
            let oracle = lattice_tail_oracle(s, 1, 2.0, level as f64, 100_000)?;
            let bound = lattice_tail_bound(s, 1, 2.0, level as f64)?;
            println!(
                "  {s:<4} {level}   {:.6}    {bound:.6}    {:.4}",
                oracle.value,
                oracle.value / bound
            );
        }
    }

    println!();
    let p = RateParams::new(1.0, 2.0, 0.5, 1, 2.0, 4)?;
    let b3 = SpectralFunction::from_refinable(&RefinableFunction::bspline(3));
    let bracket = sup_bracket(&b3, 2.0, 128, 40)?;
    let h = analysis_operator_bound(&p, bracket, 1.0, 1)?;
    println!("analysis operator bound for B3, s=1, sigma=2: h = {h:.4}");
    println!("  (bracket sup ||[B3^,B3^]_2|| = {bracket:.4}, unit highpass sup)");

    // Delta-dual wavelet psi~(xi) = b~(xi/2) with b~ the difference symbol:
    // envelope constant for two vanishing moments.
    let p2 = RateParams::new(1.0, 1.5, 0.5, 1, 2.0, 2)?;
    let one = SpectralFunction::new(1, |_| num_complex::Complex64::new(1.0, 0.0));
    let psi = SpectralFunction::from_mask_and_parent(&difference_mask(2), one);
    let envelope = moment_envelope(&psi, 1, 256)?;
    let bracket_neg = sup_bracket(&psi, -1.5, 128, 40)?;
    let cap = coefficient_decay_constant(&p2, envelope, bracket_neg)?;
    println!("coefficient decay constant for the order-2 difference wavelet: H = {cap:.4}");
    println!("  (envelope g = {envelope:.4}, bracket sup = {bracket_neg:.4})");

    println!();
    println!("rate factor at s=0.75, sigma=1.25, alpha=0.5, lambda=1:");
    let p3 = RateParams::new(0.75, 1.25, 0.5, 1, 2.0, 4)?;
    for scale in [0u32, 2, 4, 6, 8] {
        let factor = reconstruction_rate_factor(&p3, scale, &[1.0], 0.0);
        println!("  N={scale}: {:.6e}", factor.value);
    }
    Ok(())
}
