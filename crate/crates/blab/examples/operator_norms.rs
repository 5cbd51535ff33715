//! Empirical operator norms of the projection: exact isometry defect at
//! p = 2 on analytic inputs, bounded ratios on rough inputs across p, and
//! the drift of those ratios under one quadrature refinement.

use blab::analytic::{FnContext, FnSpec};
use blab::projection::Projector;
use blab::quad::{PolarRule, RuleSpec};
use blab::weights::WeightSpec;

fn main() -> blab::Result<()> {
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let coarse = PolarRule::build(RuleSpec { r_max: 0.97, panels: 16, gl_order: 8, angular: 96 })?;
    let fine = coarse.refine()?;
    let ctx = FnContext::default();

    // analytic input: P f = f, so every p-norm ratio is 1 up to quadrature
    let poly = FnSpec::RandomPoly { degree: 9, seed: 5 }.resolve(&ctx)?;
    let proj = Projector::new(&coarse, &w, 40)?;
    let two = proj.norm_ratio(&poly, 2.0)?;
    println!("analytic input, p = 2: ratio - 1 = {:+.3e}", two.ratio - 1.0);
    println!();

    // rough inputs: the plateau has mass the projection must redistribute;
    // the claim is bounded ratios, stable under refinement
    let plateau = FnSpec::Plateau { center: (0.1, 0.0), inner: 0.25, outer: 0.5 };
    let refined = Projector::new(&fine, &w, 40)?;
    println!(
        "{:>6}  {:>12}  {:>12}  {:>9}",
        "p", "coarse", "refined", "drift"
    );
    for p in [1.0, 4.0 / 3.0, 2.0, 4.0, f64::INFINITY] {
        let f = plateau.resolve(&ctx)?;
        let a = proj.norm_ratio(&f, p)?.ratio;
        let b = refined.norm_ratio(&f, p)?.ratio;
        let drift = (a - b).abs() / b;
        println!("{p:>6.3}  {a:>12.6}  {b:>12.6}  {drift:>8.2}%", drift = 100.0 * drift);
    }
    println!();

    // several seeded rough inputs at p = 4: the max ratio is the empirical
    // operator norm on this family
    let mut max_ratio = 0.0f64;
    for seed in 0..6u64 {
        let c = 0.1 + 0.05 * seed as f64;
        let f = FnSpec::Bump { center: (c, -0.1), radius: 0.4 }.resolve(&ctx)?;
        max_ratio = max_ratio.max(proj.norm_ratio(&f, 4.0)?.ratio);
    }
    println!("max p = 4 ratio over 6 bump inputs: {max_ratio:.6}");
    Ok(())
}
