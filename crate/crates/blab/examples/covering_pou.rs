//! Builds a tau-adapted covering of the truncated disk, verifies its four
//! defining conditions on an independent grid, and checks the subordinate
//! partition of unity with its gradient bound.

use blab::covering::{check_partition, verify_covering, Covering, PartitionOfUnity};
use blab::weights::{estimate_class_constants, WeightSpec};
use blab::{svg, Point};

fn main() -> blab::Result<()> {
    let w = WeightSpec::exponential(1.0, 1.0)?;
    let tau = estimate_class_constants(&w, 0.95, 48, 16)?;
    let delta1 = 0.09 * tau.m_tau;
    let cov = Covering::build(&tau, 0.85, delta1)?;
    println!(
        "covering of |z| <= 0.85 at delta1 = {delta1:.5}: {} centers in {} rings",
        cov.len(),
        cov.ring_count()
    );

    let rep = verify_covering(&cov, &tau, 48, 96)?;
    println!("  separation min   {:.4}  (>= 1 required)", rep.separation_min);
    println!("  coverage max     {:.4}  (<= 1 required)", rep.coverage_max);
    println!("  multiplicity max {:>6}  at enlarged scale", rep.multiplicity_max);
    println!("  tau ratio max    {:.4}  over enlarged discs", rep.tau_ratio_max);
    println!(
        "  all four conditions {}",
        if rep.all_hold(300, 1.5) { "hold" } else { "FAIL" }
    );
    println!();

    // partition subordinate to the doubled discs: sums to 1 on the covered
    // region, and tau |dbar chi_j| stays bounded
    let pou = PartitionOfUnity::new(&cov);
    let pts: Vec<Point> = (0..80)
        .map(|i| {
            let r = 0.8 * ((i / 8) as f64 + 0.5) / 10.0;
            Point::from_polar(r, 0.785_398 * (i % 8) as f64 + 0.13)
        })
        .collect();
    let pr = check_partition(&pou, &pts)?;
    println!("partition of unity on {} probe points", pts.len());
    println!("  |sum chi - 1| max       {:.3e}", pr.sum_deviation_max);
    println!("  tau |dbar chi_j| max    {:.4}", pr.dbar_tau_max);
    println!("  tau sum |dbar chi| max  {:.4}", pr.dbar_tau_sum_max);

    // scatter of every 30th center; the rings tighten toward the rim as tau
    // shrinks
    let shown: Vec<Point> = cov.centers().iter().step_by(30).copied().collect();
    let plot = svg::scatter_disk("covering centers (every 30th)", &shown, Some(cov.r_max))?;
    let path = std::env::temp_dir().join("blab_covering_centers.svg");
    std::fs::write(&path, plot)?;
    println!();
    println!("center scatter written to {}", path.display());
    Ok(())
}
