//! Moment tables against their closed forms, then the reproducing kernel
//! built from them: diagonal comparability and off-diagonal decay.

use blab::kernel::{check_norm_comparability, check_off_diagonal_decay, MomentSeq, RadialKernel};
use blab::quad::{PolarRule, RuleSpec};
use blab::special::exp_e2;
use blab::weights::{estimate_class_constants, WeightSpec};
use blab::Point;

fn main() -> blab::Result<()> {
    // unweighted oracle: m_n = 1/(n+1) exactly
    let rule = PolarRule::build(RuleSpec { r_max: 1.0 - 1e-15, panels: 40, gl_order: 12, angular: 8 })?;
    let seq = MomentSeq::compute(&rule, &WeightSpec::unweighted(), 51)?;
    let mut worst = 0.0f64;
    for n in 0..51 {
        let want = 1.0 / (n as f64 + 1.0);
        worst = worst.max((seq.moment(n).value() - want).abs() / want);
    }
    println!("unweighted m_n vs 1/(n+1), n <= 50: max rel error {worst:.3e}");

    // exponential alpha=1: m_0 equals the exponential integral E_2(c)
    for c in [0.5, 1.0, 2.0] {
        let w = WeightSpec::exponential(c, 1.0)?;
        let m0 = MomentSeq::compute(&rule, &w, 2)?.moment(0).value();
        let want = exp_e2(c);
        println!(
            "exponential c={c}: m_0 = {m0:.12e}, E_2(c) = {want:.12e}, rel {:.3e}",
            (m0 - want).abs() / want
        );
    }
    println!();

    // kernel from a deep moment table; diagonal against e^{2 phi} / tau^2
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let tau = estimate_class_constants(&w, 0.95, 48, 16)?;
    let krule = PolarRule::build(RuleSpec { r_max: 0.95, panels: 24, gl_order: 10, angular: 64 })?;
    let k = RadialKernel::new(MomentSeq::compute(&krule, &w, 160)?, 1e-10)?;

    let radii = [0.0, 0.15, 0.3, 0.45, 0.6];
    let comp = check_norm_comparability(&krule, &w, &tau, &k, &radii, 2.0)?;
    println!("||K_z||_2 / (e^phi tau^{{-1}}) along the radius");
    for s in &comp.samples {
        println!("  r = {:>4.2}: ratio {:.6}", s.z.0, s.value);
    }
    println!("  spread {:.4} (bounded spread is the comparability claim)", comp.spread);
    println!();

    // decay at rate M = 3 on separated pairs
    let probes: Vec<Point> = [0.0, 0.25, 0.45, 0.6]
        .iter()
        .flat_map(|&r| (0..6).map(move |q| Point::from_polar(r, 1.047 * q as f64)))
        .collect();
    let pairs: Vec<(Point, Point)> = probes
        .iter()
        .flat_map(|&z| probes.iter().map(move |&xi| (z, xi)))
        .filter(|&(z, xi)| (z - xi).norm() > tau.eval(z))
        .collect();
    let decay = check_off_diagonal_decay(&k, &w, &tau, &pairs, 3.0)?;
    println!(
        "off-diagonal decay at M = 3 over {} separated pairs: max {:.4}, min {:.4}",
        decay.samples.len(),
        decay.max,
        decay.min
    );
    Ok(())
}
