//! Solves `dbar u = f` for a smooth compactly supported datum, measures the
//! weighted residual, extracts minimal-norm solutions in associated spaces,
//! and samples the solution kernel integral that transports norm estimates.

use blab::analytic::smoothstep;
use blab::covering::Covering;
use blab::dbar::{check_kernel_integral, minimalize, residual_report, DbarSolver};
use blab::lognum::LogComplex;
use blab::projection::Projector;
use blab::quad::{PolarRule, RuleSpec};
use blab::weights::{build_associated, estimate_class_constants, WeightSpec};
use blab::Point;

fn main() -> blab::Result<()> {
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let tau = estimate_class_constants(&w, 0.95, 48, 16)?;
    let cov = Covering::build(&tau, 0.55, 0.024)?;
    let solver = DbarSolver::assemble(&cov, &tau, 0.3, (5, 5, 40), (6, 5, 48))?;
    println!(
        "solver assembled: {} active patches out of {} covering centers",
        solver.active(),
        cov.len()
    );

    // datum: 1 on a small disc, quintic ramp to 0, supported well inside the
    // assembled region
    let f = |z: Point| Point::new(1.0 - smoothstep((z.norm() - 0.15) / 0.13), 0.0);
    let sol = solver.solve(&f)?;

    let pts: Vec<Point> = [0.05, 0.13, 0.21, 0.3, 0.42]
        .iter()
        .flat_map(|&r| (0..6).map(move |q| Point::from_polar(r, 1.047 * q as f64 + 0.1)))
        .collect();
    let rep = residual_report(&|z, h| sol.dbar_at(z, h), &f, &tau, &pts, 0.01)?;
    println!(
        "residual on {} samples: rel L2 {:.3e}, sup {:.3e}",
        rep.n_samples, rep.residual_rel_l2, rep.residual_sup
    );

    // past the support the equation degenerates to dbar u = 0; the solution
    // continues as a nonzero holomorphic tail
    let z_out = Point::new(0.38, 0.1);
    println!(
        "outside the support: |u| = {:.3e} while |dbar u| = {:.3e}",
        sol.eval(z_out).norm(),
        sol.dbar_at(z_out, 0.01 * tau.eval(z_out)).norm()
    );
    println!();

    // minimal solution per associated space w tau^alpha: subtract the
    // holomorphic projection; the pairing defect certifies minimality
    let rule = PolarRule::build(RuleSpec { r_max: 0.55, panels: 6, gl_order: 4, angular: 32 })?;
    let raw: Vec<LogComplex> = rule
        .nodes()
        .iter()
        .map(|&z| LogComplex::from_complex(sol.eval(z)))
        .collect();
    println!("minimal solutions, window degree 8");
    for alpha in [-1.0, 0.0, 2.0] {
        let star = build_associated(&tau, alpha);
        let proj = Projector::new(&rule, &star, 10)?;
        let min = minimalize(&proj, &raw, &f, 8)?;
        let defect = min.orthogonality.iter().fold(0.0f64, |a, &b| a.max(b));
        println!(
            "  alpha = {alpha:>4}: ||u_min|| / ||f tau|| = {:.4}, orthogonality defect {:.3e}",
            min.norm_ratio, defect
        );
    }
    println!();

    // bounded kernel-integral samples are what let the pointwise construction
    // carry weighted L^p estimates
    let zetas = [Point::new(0.1, 0.05), Point::new(0.22, -0.1), Point::new(0.3, 0.18)];
    let grule = PolarRule::build(RuleSpec { r_max: 0.55, panels: 16, gl_order: 6, angular: 96 })?;
    let est = check_kernel_integral(&solver, &grule, &zetas, (5, 4, 32))?;
    println!(
        "kernel integral over tau at {} probes: min {:.4}, max {:.4}",
        zetas.len(),
        est.min,
        est.max
    );
    Ok(())
}
