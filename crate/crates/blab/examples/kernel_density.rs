//! Density of kernel translates: the best L^2(w) approximation of w^2 from
//! k kernel sections improves strictly as the centers fill out.

use blab::config::ring_centers;
use blab::kernel::{MomentSeq, RadialKernel};
use blab::lognum::LogComplex;
use blab::projection::{kernel_density_error, Projector};
use blab::quad::{PolarRule, RuleSpec};
use blab::weights::WeightSpec;

fn main() -> blab::Result<()> {
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let rule = PolarRule::build(RuleSpec { r_max: 0.97, panels: 20, gl_order: 8, angular: 64 })?;
    let proj = Projector::new(&rule, &w, 16)?;
    let k = RadialKernel::new(MomentSeq::compute(&rule, &w, 160)?, 1e-10)?;
    let f = |z: blab::Point| LogComplex::from_complex(z * z);

    println!("relative L2(w) error approximating w^2 from k kernel sections");
    let mut prev = f64::INFINITY;
    let mut strict = true;
    for count in [1usize, 4, 9, 16] {
        let centers = ring_centers(count, 0.55);
        let err = kernel_density_error(&proj, &k, &centers, f)?;
        println!("  k = {count:>2}: {err:.6e}");
        strict &= err < prev;
        prev = err;
    }
    println!(
        "strictly decreasing: {}",
        if strict { "yes (density of translates in action)" } else { "NO" }
    );
    Ok(())
}
