//! Reconstruct the builtin 1D target from uniform and jittered samples and
//! compare relative errors across scales.
//!
//! ```bash
//! cargo run --release --example reconstruct_1d
//! ```

use framelet::{
    builtin_target_1d, perturbed_reconstruct, relative_error, uniform_reconstruct, DomainBox,
    JitterDistribution, PerturbationModel, PointGrid, ReconstructionConfig, RefinableFunction,
};

fn main() -> framelet::Result<()> {
    let target = builtin_target_1d();
    let domain = DomainBox::interval(-100.0, 100.0);
    let grid = PointGrid::uniform_1d(-100.0, 0.01, 20_001);
    let model = PerturbationModel::new(
        vec![1.0],
        0.5,
        JitterDistribution::Gaussian { sigma: 1.0 },
        42,
    )?;

    println!("N   uniform-sampling error   jittered-sampling error");
    for scale in 1..=8 {
        let cfg =
            ReconstructionConfig::new(RefinableFunction::bspline(3), domain.clone(), scale)?;
        let uniform = relative_error(&target, |x| uniform_reconstruct(&target, &cfg, x), &grid)?;
        let eps = model.generate(&cfg.index_box())?;
        let jittered = relative_error(
            &target,
            |x| perturbed_reconstruct(&target, &cfg, &eps, x).expect("sequence covers the box"),
            &grid,
        )?;
        println!("{scale}   {uniform:.6e}             {jittered:.6e}");
    }
    Ok(())
}
