//! The weighted Bergman projection and empirical operator norms.
//!
//! `P f(z) = int f(xi) conj(K_z(xi)) w(xi) dA(xi)` is evaluated through its
//! monomial coefficients: `c_n = <f, z^n>_w / m_n`. On an equispaced angular
//! grid the discrete monomials are exactly orthogonal as long as the degree
//! window stays below half the angular count, and the diagonal of the
//! discrete Gram is the moment table computed from the same radial sub-rule.
//! The evaluated projection is therefore the exact orthogonal projection of
//! the sampled function in the discrete `L^2(w)` geometry: idempotence,
//! self-adjointness and the `p = 2` contraction hold to rounding, not merely
//! to quadrature error.
//!
//! The same node data drives `p`-norm ratio sweeps, the duality lower bound
//! (gradient ascent over a polynomial subspace, seeded by the pointwise
//! Holder extremizer), least-squares approximation by kernel sections, and
//! coefficient truncation errors.

use crate::kernel::{MomentSeq, RadialKernel};
use crate::lognum::{log_add, LogAccumulator, LogComplex, LogReal};
use crate::quad::PolarRule;
use crate::weights::Weighting;
use crate::{Error, Point, Result};
use nalgebra::{Cholesky, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bergman projection onto the degree window `0 .. window-1`, discretized on
/// one fixed rule.
pub struct Projector<'a, W: Weighting> {
    rule: &'a PolarRule,
    w: &'a W,
    window: usize,
    /// `ln(w_i w(z_i))` per node.
    ln_mass: Vec<f64>,
    /// `ln r_i` and `theta_i` per node, for log-domain coefficient sweeps.
    ln_r: Vec<f64>,
    theta: Vec<f64>,
    moments: MomentSeq,
}

impl<'a, W: Weighting> Projector<'a, W> {
    pub fn new(rule: &'a PolarRule, w: &'a W, window: usize) -> Result<Self> {
        if window < 1 {
            return Err(Error::Precondition("empty degree window".into()));
        }
        if 2 * window > rule.spec().angular {
            return Err(Error::Precondition(format!(
                "window {} needs angular resolution at least {}, rule has {}",
                window,
                2 * window,
                rule.spec().angular
            )));
        }
        let moments = MomentSeq::compute(rule, w, window + 1)?;
        let ln_mass: Vec<f64> = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&z, &wt)| wt.ln() + w.log_weight(z))
            .collect();
        let ln_r: Vec<f64> = rule.nodes().iter().map(|z| z.norm().ln()).collect();
        let theta: Vec<f64> = rule.nodes().iter().map(|z| z.im.atan2(z.re)).collect();
        Ok(Projector { rule, w, window, ln_mass, ln_r, theta, moments })
    }

    pub fn rule(&self) -> &PolarRule {
        self.rule
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn weighting(&self) -> &W {
        self.w
    }

    /// Samples a probe on the rule's nodes.
    pub fn sample(&self, f: impl Fn(Point) -> LogComplex) -> Vec<LogComplex> {
        self.rule.nodes().iter().map(|&z| f(z)).collect()
    }

    /// Monomial coefficients of the projection: `c_n = <f, z^n>_w / m_n`.
    pub fn coefficients(&self, vals: &[LogComplex]) -> Result<Vec<Point>> {
        assert_eq!(vals.len(), self.rule.len());
        let mut coeffs = Vec::with_capacity(self.window);
        for n in 0..self.window {
            let mut acc = LogAccumulator::new();
            for (i, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                acc.push(LogComplex::new(
                    v.ln_abs + self.ln_mass[i] + n as f64 * self.ln_r[i],
                    v.phase - n as f64 * self.theta[i],
                ));
            }
            let inner = acc.total();
            let c = inner.scale_ln(-self.moments.moment(n).ln()).to_complex();
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite { re: c.re, im: c.im });
            }
            coeffs.push(c);
        }
        Ok(coeffs)
    }

    /// Projects a probe and returns it as an evaluable polynomial.
    pub fn project(&self, f: impl Fn(Point) -> LogComplex) -> Result<ProjectedFn> {
        let vals = self.sample(f);
        Ok(ProjectedFn { coeffs: self.coefficients(&vals)? })
    }

    /// `||.||_p` against `w^{p/2}` of sampled values; `p = inf` is the
    /// weighted sup norm.
    pub fn norm(&self, vals: &[LogComplex], p: f64) -> LogReal {
        assert!(p >= 1.0);
        assert_eq!(vals.len(), self.rule.len());
        if p.is_infinite() {
            let mut best = f64::NEG_INFINITY;
            for (i, v) in vals.iter().enumerate() {
                best = best.max(v.ln_abs + 0.5 * self.w.log_weight(self.rule.nodes()[i]));
            }
            return LogReal::from_ln(best);
        }
        let mut acc = f64::NEG_INFINITY;
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // w_i w(z_i)^{p/2} = exp(ln_mass - (1 - p/2) log w)
            let ln_wt = self.ln_mass[i] + (0.5 * p - 1.0) * self.w.log_weight(self.rule.nodes()[i]);
            acc = log_add(acc, p * v.ln_abs + ln_wt);
        }
        LogReal::from_ln(acc / p)
    }

    /// `<f, g>_w` on the rule.
    pub fn pairing(&self, f: &[LogComplex], g: &[LogComplex]) -> Point {
        let mut acc = LogAccumulator::new();
        for i in 0..f.len() {
            if f[i].is_zero() || g[i].is_zero() {
                continue;
            }
            acc.push(LogComplex::new(
                f[i].ln_abs + g[i].ln_abs + self.ln_mass[i],
                f[i].phase - g[i].phase,
            ));
        }
        acc.total().to_complex()
    }

    /// `||P f||_p / ||f||_p` for one probe.
    pub fn norm_ratio(&self, f: impl Fn(Point) -> LogComplex, p: f64) -> Result<NormReport> {
        let vals = self.sample(f);
        let in_ln = self.norm(&vals, p).ln();
        let proj = ProjectedFn { coeffs: self.coefficients(&vals)? };
        let pvals = self.sample(|z| proj.eval(z));
        let out_ln = self.norm(&pvals, p).ln();
        Ok(NormReport { p, input_ln: in_ln, output_ln: out_ln, ratio: (out_ln - in_ln).exp() })
    }

    /// Max relative error of `P f` against `f` on sample points; meaningful
    /// for analytic probes inside the degree window.
    pub fn reproduce_check(
        &self,
        f: impl Fn(Point) -> LogComplex,
        pts: &[Point],
    ) -> Result<f64> {
        let proj = self.project(&f)?;
        // exact zeros of f are measured against the probe-set scale instead
        // of blowing up a pointwise quotient
        let sup = pts.iter().map(|&z| f(z).to_complex().norm()).fold(0.0f64, f64::max);
        let mut worst = 0.0f64;
        for &z in pts {
            let want = f(z).to_complex();
            let got = proj.eval(z).to_complex();
            let scale = want.norm().max(0.01 * sup).max(1e-300);
            worst = worst.max((want - got).norm() / scale);
        }
        Ok(worst)
    }

    /// Relative `p`-norm error after keeping only coefficients below
    /// `n_keep`.
    pub fn truncation_error(
        &self,
        f: impl Fn(Point) -> LogComplex,
        n_keep: usize,
        p: f64,
    ) -> Result<f64> {
        let vals = self.sample(&f);
        let full = self.coefficients(&vals)?;
        let kept = ProjectedFn { coeffs: full.iter().copied().take(n_keep).collect() };
        let diff: Vec<LogComplex> = self
            .rule
            .nodes()
            .iter()
            .zip(&vals)
            .map(|(&z, v)| LogComplex::from_complex(v.to_complex() - kept.eval(z).to_complex()))
            .collect();
        let num = self.norm(&diff, p).ln();
        let den = self.norm(&vals, p).ln();
        Ok((num - den).exp())
    }
}

/// Outcome of one norm-ratio measurement.
#[derive(Clone, Copy, Debug)]
pub struct NormReport {
    pub p: f64,
    pub input_ln: f64,
    pub output_ln: f64,
    pub ratio: f64,
}

/// Projection output as a monomial polynomial.
#[derive(Clone, Debug)]
pub struct ProjectedFn {
    pub coeffs: Vec<Point>,
}

impl ProjectedFn {
    pub fn eval(&self, z: Point) -> LogComplex {
        let mut acc = Point::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        LogComplex::from_complex(acc)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Duality lower bound: `sup |<f, g>_w| / ||f||_q` over polynomials of the
/// given degree, reported against the direct `||g||_p`.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub p: f64,
    pub direct_ln: f64,
    pub dual_ln: f64,
    /// `dual / direct`; at most 1 by Holder, and the duality claim is that it
    /// stays bounded away from 0.
    pub ratio: f64,
    pub restarts: usize,
}

/// Gradient ascent of `|<f, g>| / ||f||_q` over complex coefficient space,
/// seeded by the projected pointwise Holder extremizer plus seeded random
/// perturbations.
pub fn duality_ratio<W: Weighting>(
    proj: &Projector<'_, W>,
    g: impl Fn(Point) -> LogComplex,
    p: f64,
    degree: usize,
    restarts: usize,
    iters: usize,
    seed: u64,
) -> Result<DualityReport> {
    assert!(p > 1.0 && p.is_finite(), "duality sweep needs 1 < p < inf");
    assert!(restarts >= 1);
    let q = p / (p - 1.0);
    let dim = degree + 1;
    if dim > proj.window {
        return Err(Error::Precondition(format!(
            "duality degree {degree} exceeds the projector window {}",
            proj.window
        )));
    }
    let g_vals = proj.sample(&g);
    let direct_ln = proj.norm(&g_vals, p).ln();

    let nodes = proj.rule.nodes();
    let n_nodes = nodes.len();
    // u_n = <z^n, g>_w; the pairing is then linear in the coefficients
    let mut u = vec![Point::new(0.0, 0.0); dim];
    for (n, un) in u.iter_mut().enumerate() {
        let mut acc = LogAccumulator::new();
        for i in 0..n_nodes {
            if g_vals[i].is_zero() {
                continue;
            }
            acc.push(LogComplex::new(
                g_vals[i].ln_abs + proj.ln_mass[i] + n as f64 * proj.ln_r[i],
                n as f64 * proj.theta[i] - g_vals[i].phase,
            ));
        }
        *un = acc.total().to_complex();
    }
    // c_i = w_i w(z_i)^{q/2}, shifted so the largest is 1
    let ln_c: Vec<f64> = (0..n_nodes)
        .map(|i| proj.ln_mass[i] + (0.5 * q - 1.0) * proj.w.log_weight(nodes[i]))
        .collect();
    let shift = -ln_c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let c: Vec<f64> = ln_c.iter().map(|l| (l + shift).exp()).collect();

    // seed: coefficients of the projected Holder extremizer
    // f0 = phase(g) |g w^{1/2}|^{p/q} w^{-1/2}
    let f0: Vec<LogComplex> = (0..n_nodes)
        .map(|i| {
            let v = g_vals[i];
            if v.is_zero() {
                return LogComplex::from_real(0.0);
            }
            let lw = proj.w.log_weight(nodes[i]);
            LogComplex::new((p / q) * (v.ln_abs + 0.5 * lw) - 0.5 * lw, v.phase)
        })
        .collect();
    let seed_coeffs = proj.coefficients(&f0)?;
    let base: Vec<Point> = seed_coeffs.into_iter().take(dim).collect();
    let base_scale = base.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_ln = f64::NEG_INFINITY;

    let objective = |a: &[Point]| -> (f64, Vec<Point>) {
        // f_i, S = sum c_i |f_i|^q, G_n = sum c_i |f_i|^{q-1} phase(f_i) conj(z_i^n)
        let mut pair = Point::new(0.0, 0.0);
        for (an, un) in a.iter().zip(&u) {
            pair += an * un;
        }
        let mut s = 0.0f64;
        let mut grad_s = vec![Point::new(0.0, 0.0); dim];
        for i in 0..n_nodes {
            let mut f = Point::new(0.0, 0.0);
            for an in a.iter().rev() {
                f = f * nodes[i] + an;
            }
            let af = f.norm();
            if af == 0.0 || c[i] == 0.0 {
                continue;
            }
            s += c[i] * af.powf(q);
            let scale = c[i] * af.powf(q - 1.0);
            let ph = f / af;
            let mut zp = Point::new(1.0, 0.0);
            for gn in grad_s.iter_mut() {
                *gn += scale * ph * zp.conj();
                zp *= nodes[i];
            }
        }
        if s == 0.0 || pair.norm() == 0.0 {
            return (f64::NEG_INFINITY, vec![Point::new(0.0, 0.0); dim]);
        }
        // ln R = ln|pair| - (1/q) ln S  (the weight shift cancels nothing:
        // it rescales S by e^{shift}, handled below)
        let ln_r = pair.norm().ln() - (s.ln() - shift) / q;
        let grad: Vec<Point> = (0..dim)
            .map(|n| pair * u[n].conj() / (2.0 * pair.norm_sqr()) - grad_s[n] / (2.0 * s))
            .collect();
        (ln_r, grad)
    };

    for t in 0..restarts {
        let mut a = base.clone();
        if t > 0 {
            for an in a.iter_mut() {
                *an += base_scale
                    * Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            }
        }
        let (mut ln_r, mut grad) = objective(&a);
        let mut eta = 0.5;
        for _ in 0..iters {
            if !ln_r.is_finite() {
                break;
            }
            let mut improved = false;
            for _ in 0..20 {
                let trial: Vec<Point> =
                    a.iter().zip(&grad).map(|(an, gn)| an + eta * gn).collect();
                let (ln_t, grad_t) = objective(&trial);
                if ln_t > ln_r {
                    a = trial;
                    ln_r = ln_t;
                    grad = grad_t;
                    eta *= 1.2;
                    improved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !improved {
                break;
            }
        }
        best_ln = best_ln.max(ln_r);
    }
    Ok(DualityReport {
        p,
        direct_ln,
        dual_ln: best_ln,
        ratio: (best_ln - direct_ln).exp(),
        restarts,
    })
}

/// Relative `L^2(w)` error of the best approximation of `f` from the span of
/// kernel sections at the given centers.
pub fn kernel_density_error<W: Weighting>(
    proj: &Projector<'_, W>,
    k: &RadialKernel,
    centers: &[Point],
    f: impl Fn(Point) -> LogComplex,
) -> Result<f64> {
    if centers.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let nodes = proj.rule.nodes();
    let n_nodes = nodes.len();
    let m = centers.len();
    // sections evaluated on nodes, plain complex (bounded on truncated disks)
    let mut sections = Vec::with_capacity(m);
    for &a in centers {
        let col: Vec<Point> =
            nodes.iter().map(|&z| k.eval(z, a).map(|v| v.to_complex())).collect::<Result<_>>()?;
        sections.push(col);
    }
    let mass: Vec<f64> = proj.ln_mass.iter().map(|l| l.exp()).collect();
    let f_vals: Vec<Point> = nodes.iter().map(|&z| f(z).to_complex()).collect();

    let mut gram = DMatrix::<Point>::zeros(m, m);
    let mut rhs = DVector::<Point>::zeros(m);
    for i in 0..n_nodes {
        for a in 0..m {
            let sa = sections[a][i];
            rhs[a] += mass[i] * f_vals[i] * sa.conj();
            for b in 0..=a {
                gram[(a, b)] += mass[i] * sections[b][i] * sa.conj();
            }
        }
    }
    for a in 0..m {
        for b in (a + 1)..m {
            gram[(a, b)] = gram[(b, a)].conj();
        }
    }
    let chol = Cholesky::new(gram)
        .ok_or(Error::GramSingular { achievable: m.saturating_sub(1) })?;
    let beta = chol.solve(&rhs);

    let mut err = 0.0f64;
    let mut den = 0.0f64;
    for i in 0..n_nodes {
        let mut fit = Point::new(0.0, 0.0);
        for a in 0..m {
            fit += beta[a] * sections[a][i];
        }
        err += mass[i] * (f_vals[i] - fit).norm_sqr();
        den += mass[i] * f_vals[i].norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::EmptyRegion);
    }
    Ok((err / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{FnContext, FnSpec};
    use crate::quad::RuleSpec;
    use crate::weights::WeightSpec;
    use approx::assert_relative_eq;

    fn small_rule(r_max: f64) -> PolarRule {
        PolarRule::build(RuleSpec { r_max, panels: 12, gl_order: 6, angular: 64 }).expect("rule")
    }

    #[test]
    fn analytic_probes_are_reproduced() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let f = FnSpec::RandomPoly { degree: 9, seed: 5 }
            .resolve(&FnContext::default())
            .expect("probe");
        let pts = [Point::new(0.2, 0.1), Point::new(-0.4, 0.3), Point::new(0.0, 0.7)];
        let worst = proj.reproduce_check(&f, &pts).expect("check");
        assert!(worst < 1e-10, "reproduction error {worst}");
    }

    #[test]
    fn mean_of_abs_squared_is_the_moment_ratio() {
        // P(|z|^2) is the constant m_1/m_0; for the near-untruncated
        // unweighted disk that is 1/2
        let rule = PolarRule::build(RuleSpec {
            r_max: 1.0 - 1e-15,
            panels: 24,
            gl_order: 8,
            angular: 64,
        })
        .expect("rule");
        let w = WeightSpec::unweighted();
        let proj = Projector::new(&rule, &w, 8).expect("projector");
        let coeffs = proj
            .coefficients(&proj.sample(|z| LogComplex::from_real(z.norm_sqr())))
            .expect("coefficients");
        assert_relative_eq!(coeffs[0].re, 0.5, max_relative = 1e-12);
        for c in &coeffs[1..] {
            assert!(c.norm() < 1e-13);
        }
    }

    #[test]
    fn idempotent_and_self_adjoint_in_the_discrete_geometry() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 20).expect("projector");
        let ctx = FnContext::default();
        let f = FnSpec::Plateau { center: (0.1, 0.0), inner: 0.3, outer: 0.5 }
            .resolve(&ctx)
            .expect("f");
        let g = FnSpec::RandomPoly { degree: 12, seed: 11 }.resolve(&ctx).expect("g");

        let pf = proj.project(&f).expect("P f");
        let ppf = proj.project(|z| pf.eval(z)).expect("P P f");
        let scale = pf.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (a, b) in pf.coeffs.iter().zip(&ppf.coeffs) {
            assert!((a - b).norm() <= 1e-12 * scale, "{a} vs {b}");
        }

        // <P f, g> = <f, P g>: g is already in the window, so both equal <f, g>
        let f_vals = proj.sample(&f);
        let g_vals = proj.sample(&g);
        let pf_vals = proj.sample(|z| pf.eval(z));
        let lhs = proj.pairing(&pf_vals, &g_vals);
        let rhs = proj.pairing(&f_vals, &g_vals);
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-10);
        assert_relative_eq!(lhs.im, rhs.im, max_relative = 1e-10);
    }

    #[test]
    fn contraction_at_p2_and_unit_ratio_for_analytic() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let ctx = FnContext::default();

        let rough = FnSpec::Plateau { center: (0.0, 0.0), inner: 0.4, outer: 0.6 }
            .resolve(&ctx)
            .expect("rough");
        let r = proj.norm_ratio(&rough, 2.0).expect("ratio");
        assert!(r.ratio <= 1.0 + 1e-12, "p=2 ratio {} exceeds 1", r.ratio);
        assert!(r.ratio < 1.0, "projection of a non-analytic function must lose mass");

        let poly = FnSpec::RandomPoly { degree: 10, seed: 3 }.resolve(&ctx).expect("poly");
        let r = proj.norm_ratio(&poly, 2.0).expect("ratio");
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn other_exponents_have_bounded_ratio() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let ctx = FnContext::default();
        let rough = FnSpec::Plateau { center: (0.2, 0.1), inner: 0.2, outer: 0.45 }
            .resolve(&ctx)
            .expect("rough");
        for p in [1.0, 4.0 / 3.0, 4.0, f64::INFINITY] {
            let r = proj.norm_ratio(&rough, p).expect("ratio");
            assert!(
                r.ratio.is_finite() && r.ratio < 50.0,
                "p={p} ratio {} out of range",
                r.ratio
            );
        }
    }

    #[test]
    fn duality_bound_sits_below_one_and_is_tight_for_p2() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let ctx = FnContext::default();
        let g = FnSpec::RandomPoly { degree: 6, seed: 9 }.resolve(&ctx).expect("g");
        // p = 2: the extremizer is g itself, inside the subspace; ratio -> 1
        let rep = duality_ratio(&proj, &g, 2.0, 8, 2, 40, 17).expect("duality");
        assert!(rep.ratio <= 1.0 + 1e-9, "Holder violated: {}", rep.ratio);
        assert!(rep.ratio > 0.999, "p=2 duality should be tight, got {}", rep.ratio);
    }

    #[test]
    fn duality_bound_for_p4_stays_in_band() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let ctx = FnContext::default();
        let g = FnSpec::RandomPoly { degree: 6, seed: 21 }.resolve(&ctx).expect("g");
        let rep = duality_ratio(&proj, &g, 4.0, 8, 3, 40, 23).expect("duality");
        assert!(rep.ratio <= 1.0 + 1e-9, "Holder violated: {}", rep.ratio);
        assert!(rep.ratio > 0.5, "duality bound collapsed: {}", rep.ratio);
    }

    #[test]
    fn kernel_sections_reproduce_themselves() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let m = MomentSeq::compute(&rule, &w, 500).expect("moments");
        let k = RadialKernel::new(m, 1e-12).expect("kernel");
        let a = Point::new(0.4, 0.1);
        let f = |z: Point| k.eval(z, a).expect("resolved");
        let err = kernel_density_error(&proj, &k, &[a], f).expect("density");
        assert!(err < 1e-8, "self-fit error {err}");
    }

    #[test]
    fn kernel_density_error_shrinks_with_more_centers() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 24).expect("projector");
        let m = MomentSeq::compute(&rule, &w, 500).expect("moments");
        let k = RadialKernel::new(m, 1e-12).expect("kernel");
        let f = |z: Point| LogComplex::from_complex(z * z);
        // nested rings of centers
        let ring = |n: usize| -> Vec<Point> {
            let mut pts = vec![Point::new(0.0, 0.0)];
            for j in 1..n {
                let r = 0.55 * j as f64 / (n - 1) as f64;
                let th = 2.3 * j as f64;
                pts.push(Point::new(r * th.cos(), r * th.sin()));
            }
            pts
        };
        let mut last = f64::INFINITY;
        for n in [1usize, 4, 9] {
            let err = kernel_density_error(&proj, &k, &ring(n), f).expect("density");
            assert!(err < last, "error should shrink: {err} !< {last}");
            last = err;
        }
    }

    #[test]
    fn truncation_error_decreases_in_the_kept_degree() {
        let rule = small_rule(0.99);
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let proj = Projector::new(&rule, &w, 30).expect("projector");
        let ctx = FnContext::default();
        let f = FnSpec::ExpLinear { scale: (2.0, 0.5) }.resolve(&ctx).expect("probe");
        let e4 = proj.truncation_error(&f, 4, 2.0).expect("err");
        let e8 = proj.truncation_error(&f, 8, 2.0).expect("err");
        let e16 = proj.truncation_error(&f, 16, 2.0).expect("err");
        assert!(e8 < e4 && e16 < e8, "{e4} {e8} {e16}");
        assert!(e16 < 1e-6);
    }

    #[test]
    fn window_must_fit_the_angular_resolution() {
        let rule = small_rule(0.9);
        let w = WeightSpec::unweighted();
        assert!(matches!(
            Projector::new(&rule, &w, 40),
            Err(Error::Precondition(_))
        ));
    }
}
