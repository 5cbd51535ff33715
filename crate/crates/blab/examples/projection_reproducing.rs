//! The projection reproduces analytic targets: monomials through degree 8,
//! a geometric series, and a kernel section, all to small relative error on
//! |z| <= 0.9.

use blab::analytic::{FnContext, FnSpec};
use blab::kernel::{MomentSeq, RadialKernel};
use blab::lognum::LogComplex;
use blab::projection::Projector;
use blab::quad::{PolarRule, RuleSpec};
use blab::weights::WeightSpec;
use blab::Point;

fn probe_grid() -> Vec<Point> {
    let mut pts = Vec::new();
    for &r in &[0.0, 0.3, 0.6, 0.8, 0.9] {
        for q in 0..8 {
            pts.push(Point::from_polar(r, 0.785_398 * q as f64 + 0.21));
        }
    }
    pts
}

fn main() -> blab::Result<()> {
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let rule = PolarRule::build(RuleSpec { r_max: 0.99, panels: 28, gl_order: 10, angular: 128 })?;
    let proj = Projector::new(&rule, &w, 48)?;
    let pts = probe_grid();

    println!("max relative error of P f against f on |z| <= 0.9");
    for deg in 0..=8u32 {
        let f = FnSpec::Monomial { degree: deg }.resolve(&FnContext::default())?;
        let err = proj.reproduce_check(&f, &pts)?;
        println!("  z^{deg}: {err:.3e}");
    }

    // geometric series 1/(1 - z/2); its coefficient tail beyond the window
    // is far below the reported error
    let geo = |z: Point| LogComplex::from_complex(Point::new(1.0, 0.0) / (Point::new(1.0, 0.0) - 0.5 * z));
    let err = proj.reproduce_check(geo, &pts)?;
    println!("  1/(1 - z/2): {err:.3e}");

    // kernel section K(. , 0.3), resolved against the moment-series kernel
    let k = RadialKernel::new(MomentSeq::compute(&rule, &w, 220)?, 1e-10)?;
    let ctx = FnContext { kernel: Some(&k) };
    let sect = FnSpec::Kernel { at: (0.3, 0.0) }.resolve(&ctx)?;
    let err = proj.reproduce_check(&sect, &pts)?;
    println!("  K(., 0.3): {err:.3e}");
    Ok(())
}
