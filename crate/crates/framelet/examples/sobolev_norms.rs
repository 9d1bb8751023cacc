//! Sobolev norms and bracket products of B-spline spectra by Fourier
//! quadrature.
//!
//! ```bash
//! cargo run --example sobolev_norms
//! ```

use framelet::{
    bracket_product, sobolev_norm, sup_bracket, QuadratureSpec, RefinableFunction,
    SpectralFunction,
};

fn main() -> framelet::Result<()> {
    let quad = QuadratureSpec::default_for_dim(1);
    for order in [1u32, 2, 3] {
        let spectrum = SpectralFunction::from_refinable(&RefinableFunction::bspline(order));
        print!("B{order}:");
        for varsigma in [0.0, 0.5, 1.0] {
            let est = sobolev_norm(&spectrum, varsigma, &quad)?;
            print!("  H^{varsigma} norm {:.6}", est.value);
            if let Some(tail) = est.tail_bound {
                print!(" (tail <= {tail:.1e})");
            }
        }
        println!();
    }

    let b2 = SpectralFunction::from_refinable(&RefinableFunction::bspline(2));
    let at_pi = bracket_product(&b2, &b2, 0.0, &[std::f64::consts::PI], 200);
    println!(
        "[B2^, B2^]_0 at pi: {:.8} (closed form (2+cos pi)/3 = 1/3)",
        at_pi.value.re
    );
    println!(
        "sup of [B2^, B2^]_0 over the torus: {:.6} (attained at 0)",
        sup_bracket(&b2, 0.0, 256, 60)?
    );
    Ok(())
}
