//! Generate a jitter sequence, compute its norms, and dump it in the CSV
//! replay format.
//!
//! ```bash
//! cargo run --example jitter_sequences
//! ```

use framelet::{lalpha_norm, norm_max, IndexBox, JitterDistribution, PerturbationModel};

fn main() -> framelet::Result<()> {
    let model = PerturbationModel::new(
        vec![1.0],
        0.5,
        JitterDistribution::Gaussian { sigma: 1.0 },
        42,
    )?;
    let indices = IndexBox::new(1, [-8, 0], [8, 0])?;
    let seq = model.generate(&indices)?;

    println!("# epsilon_k = 1 + theta_k, theta ~ N(0,1), seed 42");
    let mut out = Vec::new();
    seq.write_csv(&mut out)?;
    print!("{}", String::from_utf8(out).expect("csv is ascii"));

    println!(
        "# l2 norm about the offset:        {:.6}",
        lalpha_norm(&seq, &[1.0], 2.0)?
    );
    println!(
        "# l^0.5 norm about the offset:     {:.6}",
        lalpha_norm(&seq, &[1.0], 0.5)?
    );
    println!(
        "# max-norm (enters the bounds):    {:.6}",
        norm_max(&seq, &[1.0], 0.5)?
    );
    Ok(())
}
