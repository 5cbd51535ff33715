//! Reproducing kernels, by moments and by Gram inversion.
//!
//! For a radial weight the monomials are orthogonal and the kernel is the
//! moment series `K(z, xi) = sum_n (z conj(xi))^n / m_n` with
//! `m_n = 2 int r^{2n+1} w(r) dr`. The series route evaluates this in the log
//! domain with a certified truncation tail: the moments of a positive measure
//! are log-convex, so the term ratios are monotone and a geometric bound on
//! the remainder is valid the moment the local ratio drops below 1.
//!
//! The Gram route inverts the monomial Gram matrix on a finite degree window
//! instead; it never assumes radiality and serves as the independent
//! cross-check (and as the only route for modulated weights).
//!
//! The `check_*` functions sample the size estimates the kernel is supposed
//! to satisfy (norm comparability, near-diagonal size, off-diagonal decay,
//! the absolute-kernel integral bound, the disc submean bound) and report
//! empirical ratios with their spread.

use crate::lognum::{log_add, LogAccumulator, LogComplex, LogReal};
use crate::quad::{DiscRule, PolarRule};
use crate::report::{EstimateReport, SamplePoint};
use crate::weights::{TauFn, Weighting};
use crate::{Error, Point, Result};
use nalgebra::{Cholesky, DMatrix, DVector};

/// Log-domain moment table `m_0 .. m_{count-1}` of a radial weight.
#[derive(Clone, Debug)]
pub struct MomentSeq {
    ln_m: Vec<f64>,
    r_max: f64,
}

impl MomentSeq {
    /// Computes moments on the rule's radial sub-rule, which keeps kernels
    /// consistent with disk integrals taken on the same rule.
    pub fn compute(rule: &PolarRule, w: &impl Weighting, count: usize) -> Result<MomentSeq> {
        if !w.is_radial() {
            return Err(Error::Precondition(format!(
                "moment route needs a radial weight, got {}",
                w.label()
            )));
        }
        if count < 2 {
            return Err(Error::Precondition("need at least two moments".into()));
        }
        let table = rule.moment_table(count, |r| w.log_weight(Point::new(r, 0.0)));
        let ln_m: Vec<f64> = table.iter().map(|m| m.ln()).collect();
        if ln_m.iter().any(|l| !l.is_finite()) {
            return Err(Error::Weight("moment table left the representable range".into()));
        }
        Ok(MomentSeq { ln_m, r_max: rule.spec().r_max })
    }

    pub fn len(&self) -> usize {
        self.ln_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_m.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn moment(&self, n: usize) -> LogReal {
        LogReal::from_ln(self.ln_m[n])
    }

    /// Max of `2 ln m_{n+1} - ln m_n - ln m_{n+2}`; positive values beyond
    /// rounding noise would break the tail bound's ratio monotonicity.
    pub fn log_convexity_defect(&self) -> f64 {
        self.ln_m
            .windows(3)
            .map(|w| 2.0 * w[1] - w[0] - w[2])
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Moment-series kernel with certified truncation.
#[derive(Clone, Debug)]
pub struct RadialKernel {
    m: MomentSeq,
    pub tol: f64,
}

impl RadialKernel {
    pub fn new(m: MomentSeq, tol: f64) -> Result<RadialKernel> {
        assert!(tol > 0.0 && tol < 1.0);
        let defect = m.log_convexity_defect();
        if defect > 1e-9 {
            return Err(Error::Weight(format!(
                "moment table is not log-convex (defect {defect:.3e}); tail control is invalid"
            )));
        }
        Ok(RadialKernel { m, tol })
    }

    pub fn moments(&self) -> &MomentSeq {
        &self.m
    }

    /// `K(z, xi)` with relative truncation error below `tol`.
    pub fn eval(&self, z: Point, xi: Point) -> Result<LogComplex> {
        let x = z * xi.conj();
        self.series(x.norm().ln(), x.arg())
    }

    /// `K(z, z) = ||K_z||_2^2`, real and positive.
    pub fn diag(&self, z: Point) -> Result<LogReal> {
        let v = self.series(z.norm_sqr().ln(), 0.0)?;
        Ok(v.abs())
    }

    fn series(&self, ln_ax: f64, arg: f64) -> Result<LogComplex> {
        let ln_m = &self.m.ln_m;
        let n_max = ln_m.len() - 2;
        let mut acc = LogAccumulator::new();
        let mut ln_term = -ln_m[0];
        let mut phase = 0.0f64;
        for n in 0..=n_max {
            acc.push(LogComplex::new(ln_term, phase));
            // next term and the geometric tail bound from the next ratio on
            let ln_next = ln_term + ln_ax + (ln_m[n] - ln_m[n + 1]);
            if ln_next == f64::NEG_INFINITY {
                return Ok(acc.total());
            }
            let running = acc.total();
            let ln_q = if n + 2 < ln_m.len() {
                ln_ax + (ln_m[n + 1] - ln_m[n + 2])
            } else {
                ln_ax + (ln_m[n] - ln_m[n + 1])
            };
            if ln_q < 0.0 {
                let ln_tail = ln_next - (-ln_q.exp_m1()).ln();
                if ln_tail <= running.ln_abs + self.tol.ln() {
                    return Ok(running);
                }
            }
            ln_term = ln_next;
            phase += arg;
        }
        Err(Error::Resolution(format!(
            "kernel series not resolved by {} moments at |z conj(xi)| = {:.6}; \
             shrink the evaluation radius or extend the moment table",
            ln_m.len(),
            ln_ax.exp()
        )))
    }
}

/// Degree-windowed kernel by Cholesky inversion of the monomial Gram matrix.
#[derive(Debug)]
pub struct GramKernel {
    chol: Cholesky<Point, nalgebra::Dyn>,
    dim: usize,
}

impl GramKernel {
    /// Builds `G_{jk} = <z^j, z^k>_w` on the rule and factors it. A weight too
    /// degenerate for the requested degree reports the largest degree window
    /// that is numerically positive definite.
    pub fn build(rule: &PolarRule, w: &impl Weighting, degree: usize) -> Result<GramKernel> {
        let dim = degree + 1;
        let mut g = DMatrix::<Point>::zeros(dim, dim);
        let mut pow = vec![Point::new(0.0, 0.0); dim];
        for (&z, &wt) in rule.nodes().iter().zip(rule.weights()) {
            let mass = wt * w.log_weight(z).exp();
            pow[0] = Point::new(1.0, 0.0);
            for j in 1..dim {
                pow[j] = pow[j - 1] * z;
            }
            for j in 0..dim {
                for k in 0..=j {
                    g[(j, k)] += mass * pow[j] * pow[k].conj();
                }
            }
        }
        for j in 0..dim {
            for k in (j + 1)..dim {
                g[(j, k)] = g[(k, j)].conj();
            }
        }
        if let Some(chol) = healthy_cholesky(g.clone()) {
            return Ok(GramKernel { chol, dim });
        }
        // largest leading window whose factorization is numerically trustworthy
        let (mut lo, mut hi) = (1usize, dim);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            let sub = g.view((0, 0), (mid, mid)).into_owned();
            if healthy_cholesky(sub).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::GramSingular { achievable: lo.saturating_sub(1) })
    }

    /// Highest monomial degree in the window.
    pub fn degree(&self) -> usize {
        self.dim - 1
    }

    /// `K(z, xi) = v(xi)^H G^{-1} v(z)` with `v_j = z^j`.
    pub fn eval(&self, z: Point, xi: Point) -> Point {
        let vz = DVector::from_iterator(self.dim, powers(z, self.dim));
        let vxi = DVector::from_iterator(self.dim, powers(xi, self.dim));
        let y = self.chol.solve(&vz);
        vxi.dotc(&y)
    }
}

/// Cholesky without pivoting reports rank-deficient matrices as "factorable"
/// when rounding noise produces tiny positive pivots; reject factors whose
/// pivot range exceeds what double inversion can support.
fn healthy_cholesky(g: DMatrix<Point>) -> Option<Cholesky<Point, nalgebra::Dyn>> {
    let chol = Cholesky::new(g)?;
    let l = chol.l_dirty();
    let d: Vec<f64> = (0..l.nrows()).map(|i| l[(i, i)].norm()).collect();
    let dmax = d.iter().cloned().fold(0.0, f64::max);
    if d.iter().all(|&x| x > 1e-7 * dmax) {
        Some(chol)
    } else {
        None
    }
}

fn powers(z: Point, dim: usize) -> impl Iterator<Item = Point> {
    let mut p = Point::new(1.0, 0.0);
    (0..dim).map(move |j| {
        if j > 0 {
            p *= z;
        }
        p
    })
}

/// Max relative disagreement between the two kernel routes over sample pairs.
/// Meaningful only where the Gram window resolves the series (small `|z xi|`
/// or high degree).
pub fn cross_check(
    radial: &RadialKernel,
    gram: &GramKernel,
    pairs: &[(Point, Point)],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(z, xi) in pairs {
        let a = radial.eval(z, xi)?.to_complex();
        let b = gram.eval(z, xi);
        let denom = a.norm().max(f64::MIN_POSITIVE);
        worst = worst.max((a - b).norm() / denom);
    }
    Ok(worst)
}

/// `||K_z||_p` against `w^{p/2}`: the `p`-th root of
/// `int |K(xi, z)|^p w(xi)^{p/2} dA(xi)`; `p = inf` takes the weighted sup.
pub fn kernel_norm(
    rule: &PolarRule,
    w: &impl Weighting,
    k: &RadialKernel,
    z: Point,
    p: f64,
) -> Result<LogReal> {
    assert!(p >= 1.0);
    if p.is_infinite() {
        let mut best = f64::NEG_INFINITY;
        for &xi in rule.nodes() {
            let v = k.eval(xi, z)?;
            best = best.max(v.ln_abs + 0.5 * w.log_weight(xi));
        }
        return Ok(LogReal::from_ln(best));
    }
    let mut acc = f64::NEG_INFINITY;
    for (&xi, &wt) in rule.nodes().iter().zip(rule.weights()) {
        let v = k.eval(xi, z)?;
        acc = log_add(acc, p * v.ln_abs + 0.5 * p * w.log_weight(xi) + wt.ln());
    }
    Ok(LogReal::from_ln(acc / p))
}

/// Ratio `||K_z||_p / (e^{phi(z)} tau(z)^{2/p - 2})` on radial samples; the
/// comparability claim is that its spread stays bounded as `r` climbs.
pub fn check_norm_comparability(
    rule: &PolarRule,
    w: &impl Weighting,
    tau: &TauFn,
    k: &RadialKernel,
    radii: &[f64],
    p: f64,
) -> Result<EstimateReport> {
    let mut samples = Vec::with_capacity(radii.len());
    for &r in radii {
        let z = Point::new(r, 0.0);
        let phi = -0.5 * w.log_weight(z);
        // 2/p - 2 evaluates to the correct -2 at p = inf
        let target = phi + (2.0 / p - 2.0) * tau.eval(z).ln();
        let ln_norm = kernel_norm(rule, w, k, z, p)?.ln();
        samples.push(SamplePoint::one(z, (ln_norm - target).exp()));
    }
    EstimateReport::from_samples(format!("kernel-norm-ratio-p{p}"), samples)
}

/// `|K(z, xi)|` against `e^{phi(z)+phi(xi)} / (tau(z) tau(xi))` multiplied by
/// the decay factor `(|z-xi|/min(tau))^M`, over pairs separated by at least
/// one `tau(z)`; bounded max is the decay claim at rate `M`.
pub fn check_off_diagonal_decay(
    k: &RadialKernel,
    w: &impl Weighting,
    tau: &TauFn,
    pairs: &[(Point, Point)],
    big_m: f64,
) -> Result<EstimateReport> {
    let mut samples = Vec::new();
    for &(z, xi) in pairs {
        let dist = (z - xi).norm();
        let (tz, txi) = (tau.eval(z), tau.eval(xi));
        if dist <= tz {
            continue;
        }
        let v = k.eval(z, xi)?;
        let phi_sum = -0.5 * (w.log_weight(z) + w.log_weight(xi));
        let ln_ratio = v.ln_abs - phi_sum + tz.ln() + txi.ln()
            + big_m * (dist.ln() - tz.min(txi).ln());
        samples.push(SamplePoint::pair(z, xi, ln_ratio.exp()));
    }
    EstimateReport::from_samples(format!("kernel-decay-M{big_m}"), samples)
}

/// `|K(z, xi)| e^{-phi(z)-phi(xi)} tau(z) tau(xi)` for `xi` on the circle
/// `|xi - z| = delta tau(z)`; min bounded away from zero and max bounded is
/// the near-diagonal size claim.
pub fn check_near_diagonal(
    k: &RadialKernel,
    w: &impl Weighting,
    tau: &TauFn,
    centers: &[Point],
    delta: f64,
    angles: usize,
) -> Result<EstimateReport> {
    assert!(delta > 0.0 && angles >= 1);
    let mut samples = Vec::new();
    for &z in centers {
        let tz = tau.eval(z);
        for a in 0..angles {
            let th = 2.0 * std::f64::consts::PI * a as f64 / angles as f64;
            let xi = z + delta * tz * Point::new(th.cos(), th.sin());
            let v = k.eval(z, xi)?;
            let phi_sum = -0.5 * (w.log_weight(z) + w.log_weight(xi));
            let ln_ratio = v.ln_abs - phi_sum + tz.ln() + tau.eval(xi).ln();
            samples.push(SamplePoint::pair(z, xi, ln_ratio.exp()));
        }
    }
    EstimateReport::from_samples(format!("kernel-near-diagonal-d{delta}"), samples)
}

/// `int |K(z, xi)| e^{-phi(xi)} tau(xi)^s dA(xi)` against
/// `e^{phi(z)} tau(z)^s`; the workhorse integral bound behind projection
/// boundedness.
pub fn check_integral_bound(
    rule: &PolarRule,
    k: &RadialKernel,
    w: &impl Weighting,
    tau: &TauFn,
    zs: &[Point],
    s: f64,
) -> Result<EstimateReport> {
    let mut samples = Vec::with_capacity(zs.len());
    for &z in zs {
        let mut acc = f64::NEG_INFINITY;
        for (&xi, &wt) in rule.nodes().iter().zip(rule.weights()) {
            let v = k.eval(z, xi)?;
            acc = log_add(acc, v.ln_abs + 0.5 * w.log_weight(xi) + s * tau.eval(xi).ln() + wt.ln());
        }
        let target = -0.5 * w.log_weight(z) + s * tau.eval(z).ln();
        samples.push(SamplePoint::one(z, (acc - target).exp()));
    }
    EstimateReport::from_samples(format!("kernel-integral-bound-s{s}"), samples)
}

/// `|f(z)|^p e^{-p phi(z)}` against its mean over `D(z, delta tau(z))`; the
/// submean bound every analytic probe must satisfy.
pub fn check_submean(
    w: &impl Weighting,
    tau: &TauFn,
    probe: impl Fn(Point) -> LogComplex,
    p: f64,
    centers: &[Point],
    delta: f64,
) -> Result<EstimateReport> {
    assert!(p > 0.0 && delta > 0.0);
    let mut samples = Vec::with_capacity(centers.len());
    for &z in centers {
        let radius = delta * tau.eval(z);
        let disc = DiscRule::build(z, radius, 6, 6, 48)?;
        let mut acc = f64::NEG_INFINITY;
        for (&xi, &wt) in disc.nodes().iter().zip(disc.weights()) {
            let v = probe(xi);
            acc = log_add(acc, p * v.ln_abs + 0.5 * p * w.log_weight(xi) + wt.ln());
        }
        // normalized disc area is radius^2
        let mean_ln = acc - 2.0 * radius.ln();
        let here = probe(z);
        let num_ln = p * here.ln_abs + 0.5 * p * w.log_weight(z);
        samples.push(SamplePoint::one(z, (num_ln - mean_ln).exp()));
    }
    EstimateReport::from_samples(format!("submean-p{p}-d{delta}"), samples)
}
