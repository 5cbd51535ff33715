//! Run configuration, the named-check registry, and the report/artifact
//! runner behind the command line.
//!
//! A run is described by one JSON document: weight family, disk-rule shape,
//! the list of checks to execute, and a seed. Parsing is strict; nothing is
//! executed and no file is touched for a malformed document. A successful run
//! yields a `RunReport` whose body is byte-deterministic for a fixed config
//! and seed, plus CSV/SVG artifacts per check.

use crate::covering::{check_partition, verify_covering, Covering, PartitionOfUnity};
use crate::dbar::{check_kernel_integral, residual_report, DbarSolver};
use crate::kernel::{
    check_norm_comparability, check_off_diagonal_decay, cross_check, GramKernel, MomentSeq,
    RadialKernel,
};
use crate::lognum::LogComplex;
use crate::projection::{duality_ratio, kernel_density_error, Projector};
use crate::quad::{PolarRule, RuleSpec};
use crate::report::{CheckOutcome, EstimateReport, RunBody, RunReport, SamplePoint};
use crate::svg;
use crate::weights::{
    check_condition_e, estimate_class_constants, lfi_bump, ESearch, PairSet, TauFn, Weighting,
    WeightFamily, WeightSpec,
};
use crate::{analytic, Error, Point, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::Path;

pub const CHECK_NAMES: [&str; 8] =
    ["weights", "moments", "kernel", "projection", "covering", "dbar", "duality", "density"];

fn default_checks() -> Vec<String> {
    CHECK_NAMES.iter().map(|s| s.to_string()).collect()
}

/// One laboratory run: a weight, a rule shape, and the checks to perform.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub weight: WeightSpec,
    #[serde(default)]
    pub rule: RuleSpec,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    /// Covering separation scale; defaults to a compliant fraction of `m_tau`.
    #[serde(default)]
    pub delta1: Option<f64>,
    #[serde(default)]
    pub label: Option<String>,
}

/// Strict parse: unknown fields, unknown check names, and invalid weight
/// parameters are all schema errors, reported before anything runs.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("config: {e}")))?;
    validate_config(&cfg)?;
    Ok(cfg)
}

pub fn validate_config(cfg: &RunConfig) -> Result<()> {
    // deserialization bypasses the constructor, so re-run its validation
    WeightSpec::new(cfg.weight.family().clone())?;
    if cfg.checks.is_empty() {
        return Err(Error::Schema("empty checks list".into()));
    }
    for name in &cfg.checks {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(Error::Schema(format!(
                "unknown check {name:?}; valid names: {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    if let Some(d) = cfg.delta1 {
        if !(d > 0.0 && d < 0.1) {
            return Err(Error::Schema(format!("delta1 = {d} outside (0, 0.1)")));
        }
    }
    Ok(())
}

/// A named output file produced by a check (CSV, SVG, or JSON content).
#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    pub content: String,
}

pub struct RunOutput {
    pub report: RunReport,
    pub artifacts: Vec<Artifact>,
}

struct Ctx {
    weight: WeightSpec,
    rule_spec: RuleSpec,
    seed: u64,
    delta1: f64,
    tau: TauFn,
}

impl Ctx {
    fn rule(&self, r_max: f64, panels: usize, gl: usize, angular: usize) -> Result<PolarRule> {
        PolarRule::build(RuleSpec {
            r_max: self.rule_spec.r_max.min(r_max),
            panels: panels.min(self.rule_spec.panels.max(8)),
            gl_order: gl.min(self.rule_spec.gl_order.max(6)),
            angular: angular.min(self.rule_spec.angular.max(32)),
        })
    }
}

/// Executes every requested check. Failures of an estimate are reported in
/// the outcome, not as errors; `Err` means the run could not be carried out.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    validate_config(cfg)?;
    let weight = WeightSpec::new(cfg.weight.family().clone())?;
    let tau = estimate_class_constants(&weight, cfg.rule.r_max.min(0.95), 48, 16)?;
    let ctx = Ctx {
        weight,
        rule_spec: cfg.rule,
        seed: cfg.seed,
        delta1: cfg.delta1.unwrap_or(0.09 * tau.m_tau),
        tau,
    };
    let mut checks = Vec::new();
    let mut artifacts = Vec::new();
    let mut seen = Vec::new();
    let mut timings = Vec::new();
    for name in &cfg.checks {
        if seen.contains(name) {
            continue;
        }
        seen.push(name.clone());
        let clock = std::time::Instant::now();
        let (outcome, arts) = dispatch(name, &ctx)?;
        timings.push((name.clone(), clock.elapsed().as_secs_f64()));
        checks.push(outcome);
        artifacts.extend(arts);
    }
    let label = cfg.label.clone().unwrap_or_else(|| ctx.weight.label());
    let precision = crate::lognum::Precision::from_env()?.label().to_string();
    let body =
        RunBody { label, seed: cfg.seed, precision, config: serde_json::to_value(cfg)?, checks };
    let report = RunReport::new(body).with_timings(timings);
    Ok(RunOutput { report, artifacts })
}

/// Writes `report.json` and every artifact under `dir`, creating it first.
pub fn write_outputs(out: &RunOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), out.report.to_json()?)?;
    for a in &out.artifacts {
        std::fs::write(dir.join(&a.name), &a.content)?;
    }
    Ok(())
}

fn dispatch(name: &str, ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    match name {
        "weights" => check_weights(ctx),
        "moments" => check_moments(ctx),
        "kernel" => check_kernel(ctx),
        "projection" => check_projection(ctx),
        "covering" => check_covering(ctx),
        "dbar" => check_dbar(ctx),
        "duality" => check_duality(ctx),
        "density" => check_density(ctx),
        other => Err(Error::Schema(format!("unknown check {other:?}"))),
    }
}

fn outcome(name: &str, passed: bool, details: serde_json::Value) -> CheckOutcome {
    CheckOutcome { name: name.into(), passed, details }
}

fn check_weights(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let certified = ctx.tau.certify(96, 32);
    let pairs = PairSet::lattice(ctx.tau.r_max, 24, 10);
    let e_rep = check_condition_e(&ctx.tau, 1, &pairs, &ESearch::default_grid());
    let mut lfi_detail = json!("skipped: no feasible gate");
    let mut lfi_ok = true;
    if e_rep.feasible.is_some() {
        // m = 1 supports M up to sqrt(eps)/2; stay under it
        let bump = lfi_bump(&ctx.tau, Point::new(0.25, 0.1), 0.2, 0.25, &e_rep)?;
        let rep = bump.verify(&ctx.tau, 100, ctx.tau.r_max.min(0.9));
        lfi_ok = rep.passed();
        lfi_detail = json!({
            "max_grad_ratio": rep.max_grad_ratio,
            "max_lap_ratio": rep.max_lap_ratio,
            "beta": bump.beta,
        });
    }
    let passed = certified.is_ok() && lfi_ok;
    let details = json!({
        "c1": ctx.tau.c1,
        "c2": ctx.tau.c2,
        "m_tau": ctx.tau.m_tau,
        "certified": certified.is_ok(),
        "certify_note": certified.err().map(|e| e.to_string()),
        "slope_gate": e_rep.feasible.as_ref().map(|f| json!({
            "b": f.b, "t": f.t, "gated_pairs": f.gated,
        })),
        "scanned_pairs": e_rep.scanned_pairs,
        "bump": lfi_detail,
    });
    Ok((outcome("weights", passed, details), Vec::new()))
}

fn check_moments(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    // closed forms hold for the full disk, so push the truncation out
    let rule = PolarRule::build(RuleSpec {
        r_max: 1.0 - 1e-15,
        panels: ctx.rule_spec.panels.max(40),
        gl_order: ctx.rule_spec.gl_order.max(12),
        angular: 8,
    })?;
    let count = 51;
    let seq = MomentSeq::compute(&rule, &ctx.weight, count)?;
    let defect = seq.log_convexity_defect();
    let mut oracle_rel: Option<f64> = None;
    match ctx.weight.family() {
        WeightFamily::UnweightedOracle => {
            let mut worst = 0.0f64;
            for n in 0..count {
                let want = 1.0 / (n as f64 + 1.0);
                worst = worst.max((seq.moment(n).value() - want).abs() / want);
            }
            oracle_rel = Some(worst);
        }
        WeightFamily::StandardOracle { beta } => {
            // B(n+1, beta+1) by its exact recurrence
            let mut want = 1.0 / (beta + 1.0);
            let mut worst = (seq.moment(0).value() - want).abs() / want;
            for n in 1..count {
                want *= n as f64 / (n as f64 + beta + 1.0);
                worst = worst.max((seq.moment(n).value() - want).abs() / want);
            }
            oracle_rel = Some(worst);
        }
        WeightFamily::Exponential { c, alpha } if *alpha == 1.0 => {
            let want = crate::special::exp_e2(*c);
            oracle_rel = Some((seq.moment(0).value() - want).abs() / want);
        }
        _ => {}
    }
    let samples: Vec<SamplePoint> = (0..count)
        .map(|n| SamplePoint::one(Point::new(n as f64, 0.0), seq.moment(n).ln()))
        .collect();
    let est = EstimateReport::from_samples("ln moment", samples)?;
    let mut csv = Vec::new();
    est.write_csv(&mut csv)?;
    let passed = defect < 1e-9 && oracle_rel.map_or(true, |r| r < 1e-8);
    let details = json!({
        "count": count,
        "log_convexity_defect": defect,
        "oracle_max_rel": oracle_rel,
    });
    let art = Artifact {
        name: "moments.csv".into(),
        content: String::from_utf8(csv).expect("csv is ascii"),
    };
    Ok((outcome("moments", passed, details), vec![art]))
}

fn check_kernel(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let rule = ctx.rule(0.97, 24, 10, 64)?;
    // products |z conj(xi)| reach 0.6 * r_max; the tail criterion needs a
    // deep moment table there
    let seq = MomentSeq::compute(&rule, &ctx.weight, 160)?;
    let k = RadialKernel::new(seq, 1e-10)?;
    let gram = GramKernel::build(&rule, &ctx.weight, 17)?;
    let probes: Vec<Point> = [0.0, 0.2, 0.4, 0.55]
        .iter()
        .flat_map(|&r| {
            (0..4).map(move |q| {
                let th = std::f64::consts::FRAC_PI_2 * q as f64 + 0.3;
                Point::new(r * th.cos(), r * th.sin())
            })
        })
        .collect();
    let pairs: Vec<(Point, Point)> = probes
        .iter()
        .flat_map(|&z| probes.iter().map(move |&xi| (z, xi)))
        .filter(|&(z, xi)| (z - xi).norm() > ctx.tau.eval(z))
        .collect();
    let two_route = cross_check(&k, &gram, &pairs.iter().take(24).cloned().collect::<Vec<_>>())?;
    let comp = check_norm_comparability(&rule, &ctx.weight, &ctx.tau, &k, &[0.0, 0.2, 0.4, 0.6], 2.0)?;
    let decay = check_off_diagonal_decay(&k, &ctx.weight, &ctx.tau, &pairs, 3.0)?;
    let passed = two_route < 1e-6 && comp.spread < 100.0 && decay.max.is_finite();
    let details = json!({
        "dual_route_max_rel": two_route,
        "norm_ratio": {"min": comp.min, "max": comp.max, "spread": comp.spread},
        "decay_m3": {"min": decay.min, "max": decay.max},
        "pairs": pairs.len(),
    });
    let series = vec![svg::Series::new(
        "K norm ratio, p = 2",
        comp.samples.iter().map(|s| (s.z.0, s.value)).collect(),
    )];
    let plot = svg::line_plot("kernel norm comparability", "radius", "ratio", &series, None)?;
    let art = Artifact { name: "kernel_comparability.svg".into(), content: plot };
    Ok((outcome("kernel", passed, details), vec![art]))
}

fn check_projection(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let rule = ctx.rule(0.99, 24, 10, 128)?;
    let window = 40.min(rule.spec().angular / 2);
    let proj = Projector::new(&rule, &ctx.weight, window)?;
    let spec = analytic::FnSpec::RandomPoly { degree: 9, seed: ctx.seed };
    let f = spec.resolve(&analytic::FnContext::default())?;
    let pts: Vec<Point> = (0..12)
        .map(|k| {
            let th = 0.524 * k as f64;
            Point::new(0.65 * th.cos(), 0.65 * th.sin())
        })
        .collect();
    let reproduce = proj.reproduce_check(&f, &pts)?;
    let two = proj.norm_ratio(&f, 2.0)?;
    let mut sweep = serde_json::Map::new();
    for p in [1.0, 4.0 / 3.0, 4.0, f64::INFINITY] {
        let plateau =
            analytic::FnSpec::Plateau { center: (0.1, 0.0), inner: 0.25, outer: 0.5 };
        let g = plateau.resolve(&analytic::FnContext::default())?;
        let rep = proj.norm_ratio(&g, p)?;
        sweep.insert(format!("p{p}"), json!(rep.ratio));
    }
    let bounded = sweep.values().all(|v| v.as_f64().is_some_and(|x| x.is_finite() && x < 50.0));
    let passed = reproduce < 1e-8 && (two.ratio - 1.0).abs() < 1e-6 && bounded;
    let details = json!({
        "window": window,
        "poly_reproduction_max_rel": reproduce,
        "p2_ratio_analytic": two.ratio,
        "plateau_ratios": sweep,
    });
    Ok((outcome("projection", passed, details), Vec::new()))
}

fn check_covering(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let r_max = ctx.rule_spec.r_max.min(0.85);
    let cov = Covering::build(&ctx.tau, r_max, ctx.delta1)?;
    let rep = verify_covering(&cov, &ctx.tau, 48, 96)?;
    let pou = PartitionOfUnity::new(&cov);
    let pts: Vec<Point> = (0..8)
        .flat_map(|i| {
            (0..10).map(move |k| {
                let r = (r_max - 0.03) * (i as f64 + 0.5) / 8.0;
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.3) / 10.0;
                Point::new(r * th.cos(), r * th.sin())
            })
        })
        .collect();
    let pou_rep = check_partition(&pou, &pts)?;
    let text = serde_json::to_string_pretty(&cov)?;
    let again = serde_json::to_string_pretty(&Covering::build(&ctx.tau, r_max, ctx.delta1)?)?;
    let deterministic = text == again;
    let stride = (cov.len() / 3000).max(1);
    let shown: Vec<Point> = cov.centers().iter().step_by(stride).copied().collect();
    let scatter = svg::scatter_disk(
        &format!("covering centers (every {stride} of {})", cov.len()),
        &shown,
        Some(r_max),
    )?;
    let passed = rep.all_hold(300, 1.5)
        && pou_rep.sum_deviation_max < 1e-9
        && deterministic
        && rep.separation_min >= 1.0;
    let details = json!({
        "n_centers": rep.n_centers,
        "delta1": ctx.delta1,
        "separation_min": rep.separation_min,
        "coverage_max": rep.coverage_max,
        "multiplicity_max": rep.multiplicity_max,
        "tau_ratio_max": rep.tau_ratio_max,
        "pou_sum_deviation": pou_rep.sum_deviation_max,
        "pou_dbar_tau_max": pou_rep.dbar_tau_max,
        "rebuild_identical": deterministic,
    });
    let arts = vec![
        Artifact { name: "covering.json".into(), content: text },
        Artifact { name: "covering_centers.svg".into(), content: scatter },
    ];
    Ok((outcome("covering", passed, details), arts))
}

fn check_dbar(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let cov = Covering::build(&ctx.tau, ctx.rule_spec.r_max.min(0.55), ctx.delta1)?;
    let solver = DbarSolver::assemble(&cov, &ctx.tau, 0.3, (5, 5, 40), (6, 5, 48))?;
    let datum = |z: Point| {
        let s = (z.norm() - 0.15) / 0.13;
        Point::new(1.0 - analytic::smoothstep(s), 0.0)
    };
    let sol = solver.solve(&datum)?;
    let pts: Vec<Point> = [0.08, 0.2, 0.32, 0.42]
        .iter()
        .flat_map(|&r| {
            (0..5).map(move |k| {
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / 5.0;
                Point::new(r * th.cos(), r * th.sin())
            })
        })
        .collect();
    let rep = residual_report(&|z, h| sol.dbar_at(z, h), &datum, solver.tau(), &pts, 0.01)?;
    let rule = ctx.rule(0.55, 16, 6, 96)?;
    let probes = [Point::new(0.1, 0.0), Point::new(0.0, 0.25), Point::new(-0.2, 0.1)];
    let integral = check_kernel_integral(&solver, &rule, &probes, (5, 4, 32))?;
    let passed =
        rep.residual_rel_l2 < 5e-3 && rep.residual_sup < 2e-2 && integral.max < 100.0;
    let details = json!({
        "active_patches": solver.active(),
        "residual_rel_l2": rep.residual_rel_l2,
        "residual_sup": rep.residual_sup,
        "samples": rep.n_samples,
        "kernel_integral": {"min": integral.min, "max": integral.max},
    });
    let mut csv = Vec::new();
    integral.write_csv(&mut csv)?;
    let art = Artifact {
        name: "dbar_kernel_integral.csv".into(),
        content: String::from_utf8(csv).expect("csv is ascii"),
    };
    Ok((outcome("dbar", passed, details), vec![art]))
}

fn check_duality(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let rule = ctx.rule(0.97, 16, 8, 64)?;
    let proj = Projector::new(&rule, &ctx.weight, 12)?;
    let g = |z: Point| {
        LogComplex::from_complex(
            Point::new(1.0, 0.0) + z * 0.5 + z * z / 3.0 + z * z * z / 7.0,
        )
    };
    let mut details = serde_json::Map::new();
    let mut passed = true;
    for p in [4.0 / 3.0, 4.0] {
        let rep = duality_ratio(&proj, g, p, 8, 2, 120, ctx.seed)?;
        passed &= rep.ratio > 0.2 && rep.ratio <= 1.0 + 1e-9;
        details.insert(
            format!("p{p:.4}"),
            json!({"ratio": rep.ratio, "direct_ln": rep.direct_ln, "dual_ln": rep.dual_ln}),
        );
    }
    Ok((outcome("duality", passed, serde_json::Value::Object(details)), Vec::new()))
}

fn check_density(ctx: &Ctx) -> Result<(CheckOutcome, Vec<Artifact>)> {
    let rule = ctx.rule(0.97, 20, 8, 64)?;
    let proj = Projector::new(&rule, &ctx.weight, 16)?;
    let seq = MomentSeq::compute(&rule, &ctx.weight, 48)?;
    let k = RadialKernel::new(seq, 1e-10)?;
    let f = |z: Point| LogComplex::from_complex(z * z);
    let mut errors = Vec::new();
    for count in [1usize, 4, 9] {
        let centers = ring_centers(count, 0.55);
        errors.push(kernel_density_error(&proj, &k, &centers, f)?);
    }
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let series = vec![svg::Series::new(
        "relative fit error",
        errors.iter().enumerate().map(|(i, &e)| ([1.0, 4.0, 9.0][i], e)).collect(),
    )];
    let plot = svg::line_plot("kernel section density", "centers", "error", &series, None)?;
    let details = json!({"errors": errors, "strictly_decreasing": decreasing});
    let art = Artifact { name: "density.svg".into(), content: plot };
    Ok((outcome("density", decreasing, details), vec![art]))
}

/// `count` centers: the origin plus evenly spaced rings, deterministic.
pub fn ring_centers(count: usize, r_out: f64) -> Vec<Point> {
    let mut out = vec![Point::new(0.0, 0.0)];
    let mut ring = 1;
    while out.len() < count {
        let n = 6.min(count - out.len());
        let r = r_out * ring as f64 / (1.0 + ((count as f64 - 1.0) / 6.0).ceil());
        for k in 0..n {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5 * ring as f64) / n as f64;
            out.push(Point::new(r * th.cos(), r * th.sin()));
        }
        ring += 1;
    }
    out.truncate(count);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> String {
        r#"{
            "weight": {"family": "exponential", "c": 1.0, "alpha": 1.0},
            "rule": {"r_max": 0.95, "panels": 16, "gl_order": 8, "angular": 64},
            "checks": ["moments", "projection"],
            "seed": 7
        }"#
        .to_string()
    }

    #[test]
    fn parses_and_validates_a_good_config() {
        let cfg = parse_config(&base_config()).expect("parse");
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.checks, vec!["moments", "projection"]);
        assert_eq!(cfg.rule.panels, 16);
    }

    #[test]
    fn malformed_documents_are_schema_errors() {
        for bad in [
            "{",
            r#"{"weight": {"family": "exponential", "c": 1.0, "alpha": 1.0}, "checks": []}"#,
            r#"{"weight": {"family": "exponential", "c": 1.0, "alpha": 1.0}, "checks": ["nope"]}"#,
            r#"{"weight": {"family": "exponential", "c": -2.0, "alpha": 1.0}}"#,
            r#"{"weight": {"family": "exponential", "c": 1.0, "alpha": 1.0}, "extra": 3}"#,
            r#"{"weight": {"family": "exponential", "c": 1.0, "alpha": 1.0}, "delta1": 0.5}"#,
        ] {
            let err = parse_config(bad).expect_err(bad);
            match err {
                Error::Schema(_) | Error::Weight(_) => {}
                other => panic!("wanted schema-class error for {bad}, got {other:?}"),
            }
        }
    }

    #[test]
    fn defaults_fill_rule_checks_and_seed() {
        let cfg =
            parse_config(r#"{"weight": {"family": "unweighted_oracle"}}"#).expect("parse");
        assert_eq!(cfg.rule, RuleSpec::default());
        assert_eq!(cfg.checks.len(), CHECK_NAMES.len());
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn runs_are_deterministic_for_a_fixed_seed() {
        let cfg = parse_config(&base_config()).expect("parse");
        let a = run(&cfg).expect("run");
        let b = run(&cfg).expect("run");
        assert!(a.report.body.all_passed(), "{}", a.report.body_json().expect("json"));
        assert_eq!(
            a.report.body_json().expect("json"),
            b.report.body_json().expect("json")
        );
        assert_eq!(a.artifacts.len(), b.artifacts.len());
        for (x, y) in a.artifacts.iter().zip(&b.artifacts) {
            assert_eq!(x.content, y.content);
        }
    }

    #[test]
    fn outputs_land_in_the_requested_directory() {
        let cfg = parse_config(&base_config()).expect("parse");
        let out = run(&cfg).expect("run");
        let dir = tempfile::tempdir().expect("tempdir");
        write_outputs(&out, dir.path()).expect("write");
        assert!(dir.path().join("report.json").is_file());
        assert!(dir.path().join("moments.csv").is_file());
        let text = std::fs::read_to_string(dir.path().join("report.json")).expect("read");
        let back: RunReport = serde_json::from_str(&text).expect("parse report");
        assert_eq!(back.body.checks.len(), 2);
    }

    #[test]
    fn unweighted_fast_checks_pass() {
        let cfg = parse_config(
            r#"{
                "weight": {"family": "unweighted_oracle"},
                "rule": {"r_max": 0.95, "panels": 16, "gl_order": 8, "angular": 64},
                "checks": ["moments", "duality", "density"]
            }"#,
        )
        .expect("parse");
        let out = run(&cfg).expect("run");
        assert!(out.report.body.all_passed(), "{}", out.report.body_json().expect("json"));
    }

    #[test]
    fn ring_centers_are_inside_and_distinct() {
        let c = ring_centers(9, 0.5);
        assert_eq!(c.len(), 9);
        for (i, a) in c.iter().enumerate() {
            assert!(a.norm() < 0.6);
            for b in &c[..i] {
                assert!((a - b).norm() > 1e-6);
            }
        }
    }
}
