//! Tour of the weight families: log-weights and the induced radius function
//! `tau = (laplacian phi)^{-1/2}`, empirical class constants, a gate-slope
//! certificate, and the log-flat bump built from it.

use blab::weights::{
    check_condition_e, estimate_class_constants, lfi_bump, ESearch, PairSet, WeightSpec, Weighting,
};
use blab::Point;

fn main() -> blab::Result<()> {
    let radii = [0.0, 0.3, 0.6, 0.8, 0.9, 0.95];
    let families = [
        ("unweighted", WeightSpec::unweighted()),
        ("standard beta=2", WeightSpec::standard(2.0)?),
        ("exponential c=1 a=1", WeightSpec::exponential(1.0, 1.0)?),
        ("exponential c=2 a=1", WeightSpec::exponential(2.0, 1.0)?),
    ];

    for (name, w) in &families {
        println!("{name}");
        println!("  {:>5}  {:>12}  {:>10}", "r", "ln w(r)", "tau(r)");
        for &r in &radii {
            let z = Point::new(r, 0.0);
            println!("  {r:>5.2}  {:>12.5}  {:>10.6}", w.log_weight(z), w.tau(z)?);
        }
        println!();
    }

    // class constants certify tau(z) <= c1 (1 - |z|) and a Lipschitz bound;
    // they set the covering scale m_tau used everywhere downstream
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let tau = estimate_class_constants(&w, 0.95, 48, 16)?;
    tau.certify(96, 32)?;
    println!("class constants for exponential c=1 a=1 (certified on a 96x32 grid)");
    println!("  c1 = {:.7}   c2 = {:.7}   m_tau = {:.7}", tau.c1, tau.c2, tau.m_tau);
    println!();

    // gate-slope search: tau(z) <= tau(xi) + t |z - xi| whenever
    // |z - xi| > b tau(xi), with t < 1/m
    let pairs = PairSet::lattice(tau.r_max, 24, 10);
    let e1 = check_condition_e(&tau, 1, &pairs, &ESearch::default_grid());
    match &e1.feasible {
        Some(f) => println!(
            "slope gate at m=1: b = {:.4}, t = {:.4} over {} gated pairs",
            f.b, f.t, f.gated
        ),
        None => println!("slope gate at m=1: infeasible on this sample"),
    }

    // a feasible certificate unlocks a bump that is flat against
    // laplacian(phi): both certified ratios must stay at most 1
    let bump = lfi_bump(&tau, Point::new(0.4, 0.0), 0.2, 0.25, &e1)?;
    let rep = bump.verify(&tau, 100, tau.r_max);
    println!(
        "bump at a = 0.4 with M = 0.2, eps = 0.25: beta = {:.4}, grad ratio {:.3e}, lap ratio {:.3e}",
        bump.beta, rep.max_grad_ratio, rep.max_lap_ratio
    );
    println!("bump certificate {}", if rep.passed() { "holds" } else { "FAILS" });
    Ok(())
}
