//! Boundary-graded polar quadrature on the truncated disk.
//!
//! Weights in this crate concentrate all their variation near `|z| = 1`, so
//! the radial direction uses geometrically graded panels
//! `b_k = 1 - (1-r_max)^{k/P}` with Gauss-Legendre nodes inside each panel,
//! crossed with an equispaced angular grid (trapezoid rule, which is spectral
//! for periodic integrands). All integrals are against normalized area
//! measure, so the rule's total mass is exactly `r_max^2`.
//!
//! Radial-only integrals (moments) reuse the same radial sub-rule, which keeps
//! kernels built from moments consistent with disk integrals evaluated on the
//! full rule.

use crate::lognum::{log_add, LogAccumulator, LogComplex, LogReal, RealSum};
use crate::{Error, Point, Result};
use serde::{Deserialize, Serialize};

/// Nodes and weights for `order`-point Gauss-Legendre on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence from the Chebyshev initial
/// guess; accurate to machine precision for the orders used here.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // p_{k+1} = ((2k+1) x p_k - k p_{k-1}) / (k+1)
            let (mut p0, mut p1) = (1.0, x);
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Shape parameters for the disk rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RuleSpec {
    pub r_max: f64,
    pub panels: usize,
    pub gl_order: usize,
    pub angular: usize,
}

impl Default for RuleSpec {
    fn default() -> Self {
        RuleSpec { r_max: 0.99, panels: 40, gl_order: 12, angular: 512 }
    }
}

impl RuleSpec {
    fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::Resolution(format!("r_max = {} outside (0, 1)", self.r_max)));
        }
        if self.panels == 0 || self.gl_order == 0 || self.angular < 4 {
            return Err(Error::Resolution("degenerate rule shape".into()));
        }
        Ok(())
    }
}

/// Tensor polar rule. Nodes are ring-major: node `ir * angular + ia` sits at
/// radius `radial()[ir].0` and angle `2 pi ia / angular`.
#[derive(Clone, Debug)]
pub struct PolarRule {
    spec: RuleSpec,
    nodes: Vec<Point>,
    weights: Vec<f64>,
    radial: Vec<(f64, f64)>,
}

impl PolarRule {
    pub fn build(spec: RuleSpec) -> Result<PolarRule> {
        spec.validate()?;
        let (gx, gw) = gauss_legendre(spec.gl_order);
        let base = 1.0 - spec.r_max;
        let mut radial = Vec::with_capacity(spec.panels * spec.gl_order);
        for k in 0..spec.panels {
            let a = 1.0 - base.powf(k as f64 / spec.panels as f64);
            let b = 1.0 - base.powf((k + 1) as f64 / spec.panels as f64);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (&x, &w) in gx.iter().zip(&gw) {
                let r = mid + half * x;
                // radial weight absorbs the Jacobian: sum w f(r) ~ 2 int f r dr
                radial.push((r, 2.0 * half * w * r));
            }
        }
        let m = spec.angular;
        let mut nodes = Vec::with_capacity(radial.len() * m);
        let mut weights = Vec::with_capacity(radial.len() * m);
        for &(r, wr) in &radial {
            for ia in 0..m {
                let th = 2.0 * std::f64::consts::PI * ia as f64 / m as f64;
                nodes.push(Point::new(r * th.cos(), r * th.sin()));
                weights.push(wr / m as f64);
            }
        }
        Ok(PolarRule { spec, nodes, weights, radial })
    }

    pub fn spec(&self) -> &RuleSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Radial sub-rule as `(r, w)` pairs with `sum w f(r) ~ 2 int_0^{r_max} f(r) r dr`.
    pub fn radial(&self) -> &[(f64, f64)] {
        &self.radial
    }

    pub fn total_mass(&self) -> f64 {
        // radial weights telescope to r_max^2 exactly; summing per-node
        // weights would add O(n eps) noise for nothing
        self.radial.iter().map(|&(_, w)| w).sum()
    }

    /// Plain integral of `f` against normalized area; summation honors the
    /// process accumulation mode.
    pub fn integrate(&self, f: impl Fn(Point) -> Point) -> Point {
        compensated_sum(self.nodes.iter().zip(&self.weights), f)
    }

    /// Log-domain integral for integrands with wide dynamic range; `ln_f`
    /// returns the integrand in log form and may be zero.
    pub fn integrate_log(&self, ln_f: impl Fn(Point) -> LogComplex) -> LogComplex {
        let mut acc = LogAccumulator::new();
        for (&z, &w) in self.nodes.iter().zip(&self.weights) {
            acc.push(ln_f(z).scale_ln(w.ln()));
        }
        acc.total()
    }

    /// `m_n = 2 int_0^{r_max} r^{2n+1} w(r) dr` in the log domain;
    /// `log_w` is `ln w(r)`.
    pub fn radial_moment(&self, n: usize, log_w: impl Fn(f64) -> f64) -> LogReal {
        let mut acc = f64::NEG_INFINITY;
        for &(r, wr) in &self.radial {
            acc = log_add(acc, wr.ln() + 2.0 * n as f64 * r.ln() + log_w(r));
        }
        LogReal::from_ln(acc)
    }

    /// Moment table `m_0 .. m_{count-1}` sharing one pass of weight evaluations.
    pub fn moment_table(&self, count: usize, log_w: impl Fn(f64) -> f64) -> Vec<LogReal> {
        let lw: Vec<f64> = self.radial.iter().map(|&(r, _)| log_w(r)).collect();
        (0..count)
            .map(|n| {
                let mut acc = f64::NEG_INFINITY;
                for (&(r, wr), &l) in self.radial.iter().zip(&lw) {
                    acc = log_add(acc, wr.ln() + 2.0 * n as f64 * r.ln() + l);
                }
                LogReal::from_ln(acc)
            })
            .collect()
    }

    /// Same shape with doubled panel count and angular resolution, for
    /// refinement histories.
    pub fn refine(&self) -> Result<PolarRule> {
        PolarRule::build(RuleSpec {
            panels: self.spec.panels * 2,
            angular: self.spec.angular * 2,
            ..self.spec
        })
    }
}

/// Polar rule on the disc `D(center, radius)`, uniform radial panels.
/// Integrands with a `1/(z - center)` singularity are fine: the polar
/// Jacobian cancels the pole.
#[derive(Clone, Debug)]
pub struct DiscRule {
    pub center: Point,
    pub radius: f64,
    nodes: Vec<Point>,
    weights: Vec<f64>,
}

impl DiscRule {
    pub fn build(
        center: Point,
        radius: f64,
        panels: usize,
        gl_order: usize,
        angular: usize,
    ) -> Result<DiscRule> {
        if !(radius > 0.0) {
            return Err(Error::Resolution(format!("disc radius {radius} must be positive")));
        }
        if panels == 0 || gl_order == 0 || angular < 4 {
            return Err(Error::Resolution("degenerate disc rule shape".into()));
        }
        let (gx, gw) = gauss_legendre(gl_order);
        let mut nodes = Vec::with_capacity(panels * gl_order * angular);
        let mut weights = Vec::with_capacity(panels * gl_order * angular);
        for k in 0..panels {
            let a = radius * k as f64 / panels as f64;
            let b = radius * (k + 1) as f64 / panels as f64;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (&x, &w) in gx.iter().zip(&gw) {
                let rho = mid + half * x;
                let wr = 2.0 * half * w * rho / angular as f64;
                for ia in 0..angular {
                    let th = 2.0 * std::f64::consts::PI * ia as f64 / angular as f64;
                    nodes.push(center + Point::new(rho * th.cos(), rho * th.sin()));
                    weights.push(wr);
                }
            }
        }
        Ok(DiscRule { center, radius, nodes, weights })
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(Point) -> Point) -> Point {
        compensated_sum(self.nodes.iter().zip(&self.weights), f)
    }
}

fn compensated_sum<'a>(
    it: impl Iterator<Item = (&'a Point, &'a f64)>,
    f: impl Fn(Point) -> Point,
) -> Point {
    let mode = crate::lognum::active_precision();
    let mut re = RealSum::new(mode);
    let mut im = RealSum::new(mode);
    for (&z, &w) in it {
        let v = f(z) * w;
        re.push(v.re);
        im.push(v.im);
    }
    Point::new(re.total(), im.total())
}
