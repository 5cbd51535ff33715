//! Weight families and their induced geometry.
//!
//! A weight `w = e^{-2 phi}` with `laplacian(phi) > 0` carries an intrinsic
//! radius function `tau = (laplacian phi)^{-1/2}`; discs `D(delta tau(z))`
//! centered at `z` are the natural cells of the space. The module provides the
//! supported families, their log-weights and Laplacians (closed form where
//! available, finite differences otherwise), empirical certification of the
//! Lipschitz-class constants for `tau`, the gate-slope condition used by the
//! bump construction, associated weights `w tau^a`, and the logarithmic bump
//! whose gradient and Laplacian stay below a prescribed fraction of
//! `laplacian(phi)`.

use crate::{Error, Point, Result};
use serde::{Deserialize, Serialize};

/// Non-vanishing entire factor `f(z) = exp(sum_k c_k z^k)` for modulated weights.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HoloFactor {
    /// Coefficients of the exponent polynomial, constant term first, as (re, im).
    pub exp_poly: Vec<(f64, f64)>,
}

impl HoloFactor {
    /// `exp(scale * z)`.
    pub fn exp_linear(scale: Point) -> HoloFactor {
        HoloFactor { exp_poly: vec![(0.0, 0.0), (scale.re, scale.im)] }
    }

    fn exponent(&self, z: Point) -> Point {
        let mut acc = Point::new(0.0, 0.0);
        for &(re, im) in self.exp_poly.iter().rev() {
            acc = acc * z + Point::new(re, im);
        }
        acc
    }

    pub fn eval(&self, z: Point) -> Point {
        self.exponent(z).exp()
    }

    /// `ln |f(z)|`, exact in the log domain.
    pub fn ln_abs(&self, z: Point) -> f64 {
        self.exponent(z).re
    }
}

/// Supported weight families. JSON uses the `family` tag, e.g.
/// `{"family":"exponential","c":1.0,"alpha":1.0}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    /// `w(z) = exp(-c (1-|z|^2)^{-alpha})`, the prototype large weight.
    Exponential { c: f64, alpha: f64 },
    /// `w == 1`; closed-form oracle for moments and kernels.
    UnweightedOracle,
    /// `w(z) = (1-|z|^2)^beta`, `beta > -1`; the classical comparison family.
    StandardOracle { beta: f64 },
    /// Radial profile given by `(r, ln w(r))` knots, monotone-cubic interpolated.
    CustomRadial { knots: Vec<(f64, f64)> },
    /// `w_{p,f} = |f|^p w`; `f` entire and zero-free, so `tau` is unchanged.
    Modulated { base: Box<WeightFamily>, p: f64, f: HoloFactor },
}

/// Validated weight. Construction is the only place family data is checked.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(transparent)]
pub struct WeightSpec {
    family: WeightFamily,
    #[serde(skip)]
    profile: Option<MonotoneCubic>,
}

/// Evaluation interface shared by plain and associated weights.
pub trait Weighting {
    fn log_weight(&self, z: Point) -> f64;
    fn is_radial(&self) -> bool;
    fn label(&self) -> String;
}

impl WeightSpec {
    pub fn new(family: WeightFamily) -> Result<WeightSpec> {
        validate(&family)?;
        let profile = match &family {
            WeightFamily::CustomRadial { knots } => Some(MonotoneCubic::new(knots)?),
            _ => None,
        };
        Ok(WeightSpec { family, profile })
    }

    pub fn exponential(c: f64, alpha: f64) -> Result<WeightSpec> {
        WeightSpec::new(WeightFamily::Exponential { c, alpha })
    }

    pub fn unweighted() -> WeightSpec {
        WeightSpec::new(WeightFamily::UnweightedOracle).expect("unweighted is always valid")
    }

    pub fn standard(beta: f64) -> Result<WeightSpec> {
        WeightSpec::new(WeightFamily::StandardOracle { beta })
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    /// `phi = -ln(w)/2`, the subharmonic exponent.
    pub fn phi(&self, z: Point) -> f64 {
        -0.5 * self.log_weight(z)
    }

    /// `laplacian(phi)` by closed form; custom profiles fall back to finite
    /// differences with a step scaled to the local `tau`.
    pub fn laplacian_phi(&self, z: Point) -> Result<f64> {
        let r2 = z.norm_sqr();
        if r2 >= 1.0 {
            return Err(Error::Weight(format!("point |z| = {} outside the disk", r2.sqrt())));
        }
        match &self.family {
            WeightFamily::Exponential { c, alpha } => {
                Ok(2.0 * c * alpha * (1.0 + alpha * r2) * (1.0 - r2).powf(-alpha - 2.0))
            }
            WeightFamily::UnweightedOracle => {
                Err(Error::Weight("unweighted oracle has laplacian(phi) = 0".into()))
            }
            WeightFamily::StandardOracle { beta } => {
                if *beta <= 0.0 {
                    Err(Error::Weight(format!(
                        "standard weight beta = {beta} has non-positive laplacian(phi)"
                    )))
                } else {
                    Ok(2.0 * beta * (1.0 - r2).powi(-2))
                }
            }
            WeightFamily::CustomRadial { .. } => {
                // step bootstrap: a Euclidean guess refines into a tau-scaled step
                let h0 = (1.0 - r2.sqrt()) / 100.0;
                let lap0 = self.laplacian_phi_fd(z, h0)?;
                if lap0 <= 0.0 {
                    return Err(Error::Weight(format!(
                        "custom profile has non-positive laplacian(phi) = {lap0} near ({}, {})",
                        z.re, z.im
                    )));
                }
                let tau0 = lap0.powf(-0.5);
                // tau/1000 keeps the h^2 truncation below 1e-6 relative while
                // staying far above rounding noise
                let h = (tau0 / 1000.0).min((1.0 - r2.sqrt()) / 4.0);
                let lap = self.laplacian_phi_fd(z, h)?;
                if lap <= 0.0 {
                    return Err(Error::Weight(format!(
                        "custom profile has non-positive laplacian(phi) = {lap} near ({}, {})",
                        z.re, z.im
                    )));
                }
                Ok(lap)
            }
            WeightFamily::Modulated { base, .. } => {
                // ln|f| is harmonic, so the modulation drops out of the Laplacian
                let base = WeightSpec::new((**base).clone())?;
                base.laplacian_phi(z)
            }
        }
    }

    /// Five-point finite-difference Laplacian of `phi` with explicit step.
    pub fn laplacian_phi_fd(&self, z: Point, h: f64) -> Result<f64> {
        if h <= 0.0 {
            return Err(Error::Resolution("finite-difference step must be positive".into()));
        }
        let p = |w: Point| self.phi(w);
        let lap = (p(z + Point::new(h, 0.0))
            + p(z - Point::new(h, 0.0))
            + p(z + Point::new(0.0, h))
            + p(z - Point::new(0.0, h))
            - 4.0 * p(z))
            / (h * h);
        if lap.is_finite() {
            Ok(lap)
        } else {
            Err(Error::NonFinite { re: z.re, im: z.im })
        }
    }

    /// Intrinsic radius `tau = (laplacian phi)^{-1/2}`.
    ///
    /// The unweighted oracle has no Laplacian scale; it uses the conventional
    /// substitute `tau(z) = (1-|z|)/2` so coverings and graded quadrature still
    /// have a radius function to work with.
    pub fn tau(&self, z: Point) -> Result<f64> {
        if let WeightFamily::UnweightedOracle = self.family {
            return Ok((1.0 - z.norm()) / 2.0);
        }
        Ok(self.laplacian_phi(z)?.powf(-0.5))
    }
}

impl Weighting for WeightSpec {
    fn log_weight(&self, z: Point) -> f64 {
        let r2 = z.norm_sqr();
        match &self.family {
            WeightFamily::Exponential { c, alpha } => -c * (1.0 - r2).powf(-alpha),
            WeightFamily::UnweightedOracle => 0.0,
            WeightFamily::StandardOracle { beta } => beta * (1.0 - r2).ln(),
            WeightFamily::CustomRadial { .. } => {
                self.profile.as_ref().expect("validated custom profile").eval(r2.sqrt())
            }
            WeightFamily::Modulated { base, p, f } => {
                let base = WeightSpec { family: (**base).clone(), profile: None };
                p * f.ln_abs(z) + base.log_weight(z)
            }
        }
    }

    fn is_radial(&self) -> bool {
        match &self.family {
            WeightFamily::Modulated { f, .. } => {
                // radial only if the factor exponent is constant
                f.exp_poly.iter().skip(1).all(|&(re, im)| re == 0.0 && im == 0.0)
            }
            _ => true,
        }
    }

    fn label(&self) -> String {
        match &self.family {
            WeightFamily::Exponential { c, alpha } => format!("exponential(c={c},alpha={alpha})"),
            WeightFamily::UnweightedOracle => "unweighted".into(),
            WeightFamily::StandardOracle { beta } => format!("standard(beta={beta})"),
            WeightFamily::CustomRadial { knots } => format!("custom_radial({} knots)", knots.len()),
            WeightFamily::Modulated { base, p, .. } => {
                let b = WeightSpec { family: (**base).clone(), profile: None };
                format!("modulated({}, p={p})", b.label())
            }
        }
    }
}

fn validate(family: &WeightFamily) -> Result<()> {
    match family {
        WeightFamily::Exponential { c, alpha } => {
            if !(*c > 0.0 && c.is_finite()) || !(*alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::Weight(format!(
                    "exponential family needs c > 0 and alpha > 0, got c={c}, alpha={alpha}"
                )));
            }
        }
        WeightFamily::UnweightedOracle => {}
        WeightFamily::StandardOracle { beta } => {
            if !(*beta > -1.0 && beta.is_finite()) {
                return Err(Error::Weight(format!("standard family needs beta > -1, got {beta}")));
            }
        }
        WeightFamily::CustomRadial { knots } => {
            if knots.len() < 4 {
                return Err(Error::Weight("custom profile needs at least 4 knots".into()));
            }
            if knots[0].0 != 0.0 {
                return Err(Error::Weight("custom profile must start at r = 0".into()));
            }
            for w in knots.windows(2) {
                if !(w[1].0 > w[0].0) {
                    return Err(Error::Weight("custom profile radii must strictly increase".into()));
                }
            }
            let last = knots.last().expect("non-empty").0;
            if last >= 1.0 {
                return Err(Error::Weight("custom profile radii must stay below 1".into()));
            }
            if knots.iter().any(|&(_, lw)| !lw.is_finite()) {
                return Err(Error::Weight("custom profile log-weights must be finite".into()));
            }
        }
        WeightFamily::Modulated { base, p, f } => {
            if !(*p > 0.0 && p.is_finite()) {
                return Err(Error::Weight(format!("modulated family needs p > 0, got {p}")));
            }
            if f.exp_poly.iter().any(|&(re, im)| !re.is_finite() || !im.is_finite()) {
                return Err(Error::Weight("modulation exponent coefficients must be finite".into()));
            }
            validate(base)?;
        }
    }
    Ok(())
}

/// Fritsch–Carlson monotone cubic through `(r, ln w)` knots; evaluation past
/// the last knot continues linearly with the end slope.
#[derive(Clone, Debug, PartialEq)]
struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl MonotoneCubic {
    fn new(knots: &[(f64, f64)]) -> Result<MonotoneCubic> {
        let n = knots.len();
        let x: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let y: Vec<f64> = knots.iter().map(|k| k.1).collect();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            if d[i - 1] * d[i] <= 0.0 {
                m[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        Ok(MonotoneCubic { x, y, m })
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t >= self.x[n - 1] {
            return self.y[n - 1] + self.m[n - 1] * (t - self.x[n - 1]);
        }
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&t).expect("finite radii")) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1),
        };
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * self.y[i]
            + (s3 - 2.0 * s2 + s) * h * self.m[i]
            + (-2.0 * s3 + 3.0 * s2) * self.y[i + 1]
            + (s3 - s2) * h * self.m[i + 1]
    }
}

/// `tau` together with certified Lipschitz-class constants.
///
/// `c1`, `c2` are the smallest empirical constants with `tau(z) <= c1 (1-|z|)`
/// and `|tau(z)-tau(w)| <= c2 |z-w|` on the estimation grid; re-certification
/// on finer grids allows the stored 10% safety margin.
#[derive(Clone, Debug)]
pub struct TauFn {
    spec: WeightSpec,
    pub c1: f64,
    pub c2: f64,
    pub m_tau: f64,
    pub r_max: f64,
    pub margin: f64,
}

impl TauFn {
    pub fn eval(&self, z: Point) -> f64 {
        self.spec.tau(z).expect("tau certified on construction")
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    /// Re-checks conditions (A) and (B) on a grid twice as fine; the stored
    /// constants must hold up to the safety margin.
    pub fn certify(&self, n_radial: usize, n_angular: usize) -> Result<()> {
        let fine = class_constants_on_grid(&self.spec, self.r_max, 2 * n_radial, 2 * n_angular)?;
        if fine.0 > self.c1 * self.margin {
            return Err(Error::Classification(format!(
                "condition (A) fails on the finer grid: {} > {} * {}",
                fine.0, self.c1, self.margin
            )));
        }
        if fine.1 > self.c2 * self.margin {
            return Err(Error::Classification(format!(
                "condition (B) fails on the finer grid: {} > {} * {}",
                fine.1, self.c2, self.margin
            )));
        }
        Ok(())
    }
}

/// Boundary-graded sample radii: `r_j = 1 - (1-r_max)^{j/(n-1)}` from the
/// center to `r_max`.
pub fn graded_radii(r_max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && r_max > 0.0 && r_max < 1.0);
    (0..n).map(|j| 1.0 - (1.0 - r_max).powf(j as f64 / (n - 1) as f64)).collect()
}

fn lattice_points(r_max: f64, n_radial: usize, n_angular: usize) -> Vec<Point> {
    let mut pts = Vec::with_capacity(n_radial * n_angular);
    for (j, r) in graded_radii(r_max, n_radial).into_iter().enumerate() {
        if r == 0.0 {
            pts.push(Point::new(0.0, 0.0));
            continue;
        }
        // stagger rings so pair directions are not all axis-aligned
        let offset = 0.5 * (j % 2) as f64;
        for k in 0..n_angular {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + offset) / n_angular as f64;
            pts.push(Point::new(r * th.cos(), r * th.sin()));
        }
    }
    pts
}

fn class_constants_on_grid(
    spec: &WeightSpec,
    r_max: f64,
    n_radial: usize,
    n_angular: usize,
) -> Result<(f64, f64)> {
    let pts = lattice_points(r_max, n_radial, n_angular);
    let tau: Vec<f64> = pts.iter().map(|&z| spec.tau(z)).collect::<Result<_>>()?;
    let mut c1 = 0.0f64;
    for (z, t) in pts.iter().zip(&tau) {
        let ratio = t / (1.0 - z.norm());
        if !ratio.is_finite() {
            return Err(Error::Classification(format!(
                "unbounded ratio tau/(1-|z|) at ({}, {})",
                z.re, z.im
            )));
        }
        c1 = c1.max(ratio);
    }
    let mut c2 = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dist = (pts[i] - pts[j]).norm();
            if dist == 0.0 {
                continue;
            }
            let ratio = (tau[i] - tau[j]).abs() / dist;
            if !ratio.is_finite() {
                return Err(Error::Classification(format!(
                    "unbounded Lipschitz ratio at pair ({}, {})",
                    pts[i].re, pts[j].re
                )));
            }
            c2 = c2.max(ratio);
        }
    }
    Ok((c1, c2))
}

/// Estimates conditions (A) and (B) empirically and returns `tau` with its
/// constants and the induced covering scale `m_tau = min(1, 1/c1, 1/c2)/4`.
pub fn estimate_class_constants(
    spec: &WeightSpec,
    r_max: f64,
    n_radial: usize,
    n_angular: usize,
) -> Result<TauFn> {
    let (c1, c2) = class_constants_on_grid(spec, r_max, n_radial, n_angular)?;
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::Classification("degenerate class constants".into()));
    }
    let m_tau = (1.0f64).min(1.0 / c1).min(1.0 / c2) / 4.0;
    Ok(TauFn { spec: spec.clone(), c1, c2, m_tau, r_max, margin: 1.1 })
}

/// Pair sample for the gate-slope condition: all ordered pairs of `points`
/// plus any explicit extras.
#[derive(Clone, Debug, Default)]
pub struct PairSet {
    pub points: Vec<Point>,
    pub explicit: Vec<(Point, Point)>,
}

impl PairSet {
    /// Boundary-graded lattice; the default sample for certification runs.
    pub fn lattice(r_max: f64, n_radial: usize, n_angular: usize) -> PairSet {
        PairSet { points: lattice_points(r_max, n_radial, n_angular), explicit: Vec::new() }
    }

    fn for_each(&self, mut visit: impl FnMut(Point, Point)) {
        for (i, &z) in self.points.iter().enumerate() {
            for (j, &xi) in self.points.iter().enumerate() {
                if i != j {
                    visit(z, xi);
                }
            }
        }
        for &(z, xi) in &self.explicit {
            visit(z, xi);
        }
    }
}

/// Grid for the `(b, t)` search: gate multipliers ascending, `t` on a uniform
/// grid below `1/m` with `t_steps` subdivisions.
#[derive(Clone, Debug)]
pub struct ESearch {
    pub b_grid: Vec<f64>,
    pub t_steps: usize,
}

fn geometric_grid(lo: f64, hi: f64, factor: f64) -> Vec<f64> {
    let mut g = Vec::new();
    let mut b = lo;
    while b <= hi * factor.sqrt() {
        g.push(b);
        b *= factor;
    }
    g
}

impl ESearch {
    /// Moderate gates only: `b` up to 32. Certificates found here exclude no
    /// more than a boundary collar and are the meaningful small-`m` ones.
    pub fn default_grid() -> ESearch {
        ESearch { b_grid: geometric_grid(0.25, 32.0, 1.2), t_steps: 64 }
    }

    /// Gates up to `4/tau(r_max)`, enough to reach certificates whose gate
    /// radius is comparable to the disk; needed for large `m`. The report's
    /// `gated` count shows how much evidence such a certificate rests on.
    pub fn extended_grid(tau: &TauFn, r_max: f64) -> ESearch {
        let cap = 4.0 / tau.eval(Point::new(r_max, 0.0));
        ESearch { b_grid: geometric_grid(0.25, cap.max(32.0), 1.2), t_steps: 64 }
    }
}

/// Certificate found by the gate-slope search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EFeasible {
    pub b: f64,
    pub t: f64,
    /// Pairs that passed the gate `|z-xi| > b tau(xi)`; 0 marks a vacuous
    /// certificate (everything excluded at the sampled scale).
    pub gated: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EViolation {
    pub z: (f64, f64),
    pub xi: (f64, f64),
    pub dist: f64,
    pub needed_t: f64,
}

/// Outcome of the condition-(E) style search at one `m`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionEReport {
    pub m: u32,
    pub feasible: Option<EFeasible>,
    /// Worst offenders at the best gate when infeasible (at most 16).
    pub violations: Vec<EViolation>,
    pub scanned_pairs: usize,
}

/// Searches `(b_m, t_m)` with `t_m < 1/m` such that
/// `tau(z) <= tau(xi) + t_m |z-xi|` for every sampled pair gated by
/// `|z-xi| > b_m tau(xi)`; returns the first feasible pair (ascending `b`) or
/// the violation list of the best gate. The certificate is a statement about
/// the sampled truncated disk, nothing more.
pub fn check_condition_e(
    tau: &TauFn,
    m: u32,
    pairs: &PairSet,
    search: &ESearch,
) -> ConditionEReport {
    assert!(m >= 1);
    let mut scanned = 0usize;
    let mut best: Option<(f64, f64, usize, Vec<EViolation>)> = None; // (b, needed, gated, worst)
    for &b in &search.b_grid {
        let mut needed = 0.0f64;
        let mut gated = 0usize;
        let mut worst: Vec<EViolation> = Vec::new();
        pairs.for_each(|z, xi| {
            scanned += 1;
            let dist = (z - xi).norm();
            let txi = tau.eval(xi);
            if dist <= b * txi {
                return;
            }
            gated += 1;
            let t = (tau.eval(z) - txi) / dist;
            if t > needed {
                needed = t;
            }
            if t * (m as f64) >= 1.0 {
                worst.push(EViolation { z: (z.re, z.im), xi: (xi.re, xi.im), dist, needed_t: t });
            }
        });
        let steps = search.t_steps as f64;
        // smallest grid value strictly above the needed slope, if any below 1/m
        let k = (needed * (m as f64) * steps).floor() as usize + 1;
        if k < search.t_steps {
            let t = k as f64 / (steps * m as f64);
            return ConditionEReport {
                m,
                feasible: Some(EFeasible { b, t, gated }),
                violations: Vec::new(),
                scanned_pairs: scanned,
            };
        }
        let better = match &best {
            None => true,
            Some((_, n, _, _)) => needed < *n,
        };
        if better {
            worst.sort_by(|a, b| b.needed_t.partial_cmp(&a.needed_t).expect("finite slopes"));
            worst.truncate(16);
            best = Some((b, needed, gated, worst));
        }
    }
    let (_, _, _, violations) = best.expect("non-empty b grid");
    ConditionEReport { m, feasible: None, violations, scanned_pairs: scanned }
}

/// Associated weight `w_*(z) = w(z) tau(z)^{alpha}`.
#[derive(Clone, Debug)]
pub struct StarWeight {
    base: WeightSpec,
    tau: TauFn,
    pub alpha_star: f64,
}

/// Builds `w tau^alpha` on top of a certified `tau`.
pub fn build_associated(tau: &TauFn, alpha_star: f64) -> StarWeight {
    StarWeight { base: tau.spec.clone(), tau: tau.clone(), alpha_star }
}

impl StarWeight {
    pub fn base(&self) -> &WeightSpec {
        &self.base
    }

    pub fn tau(&self) -> &TauFn {
        &self.tau
    }
}

impl Weighting for StarWeight {
    fn log_weight(&self, z: Point) -> f64 {
        self.base.log_weight(z) + self.alpha_star * self.tau.eval(z).ln()
    }

    fn is_radial(&self) -> bool {
        // tau is radial for every supported family (modulation keeps the base Laplacian)
        self.base.is_radial()
    }

    fn label(&self) -> String {
        format!("{}*tau^{}", self.base.label(), self.alpha_star)
    }
}

/// Logarithmic bump `phi_a(z) = (M/4) ln(1 + |z-a|^2/(beta^2 tau(a)^2))`.
///
/// With `m > 2 M eps^{-1/2}`, `b > max(m, b_m)` and
/// `beta^2 > eps^{-1} (1 + c2 b)^2 max(M, (M/4)^2)`, both `|d phi_a|^2` and
/// `laplacian(phi_a)` stay below `eps * laplacian(phi)` pointwise.
#[derive(Clone, Debug)]
pub struct LfiBump {
    pub a: Point,
    pub big_m: f64,
    pub eps: f64,
    pub beta: f64,
    pub m_used: u32,
    pub b_used: f64,
    tau_a: f64,
}

/// Builds the bump from a feasible gate-slope certificate.
pub fn lfi_bump(
    tau: &TauFn,
    a: Point,
    big_m: f64,
    eps: f64,
    e_report: &ConditionEReport,
) -> Result<LfiBump> {
    assert!(big_m > 0.0 && eps > 0.0);
    let m_min = 2.0 * big_m / eps.sqrt();
    if (e_report.m as f64) <= m_min {
        return Err(Error::Precondition(format!(
            "bump with M={big_m}, eps={eps} needs a condition-(E) certificate at m > {m_min:.2}, \
             got m = {}",
            e_report.m
        )));
    }
    let feas = e_report.feasible.as_ref().ok_or_else(|| {
        Error::Precondition(format!(
            "bump with M={big_m}, eps={eps} needs a feasible condition-(E) certificate at \
             m = {}, but the search reported infeasible",
            e_report.m
        ))
    })?;
    // strict inequalities in the certificate chain get 1% headroom
    let b_used = 1.01 * (e_report.m as f64).max(feas.b);
    let beta_sq = 1.02 * (1.0 + tau.c2 * b_used).powi(2) * big_m.max(big_m * big_m / 16.0) / eps;
    let beta = beta_sq.sqrt();
    Ok(LfiBump { a, big_m, eps, beta, m_used: e_report.m, b_used, tau_a: tau.eval(a) })
}

impl LfiBump {
    pub fn phi_at(&self, z: Point) -> f64 {
        let s = (self.beta * self.tau_a).powi(2);
        0.25 * self.big_m * ((z - self.a).norm_sqr() / s).ln_1p()
    }

    /// Wirtinger derivative `d phi_a / dz`.
    pub fn d_phi(&self, z: Point) -> Point {
        let s = (self.beta * self.tau_a).powi(2);
        let d = z - self.a;
        0.25 * self.big_m * d.conj() / (s + d.norm_sqr())
    }

    pub fn lap_phi(&self, z: Point) -> f64 {
        let s = (self.beta * self.tau_a).powi(2);
        let q = s + (z - self.a).norm_sqr();
        self.big_m * s / (q * q)
    }

    /// Max over a Cartesian grid of both certified ratios against
    /// `eps * laplacian(phi)`; both must come out at most 1.
    pub fn verify(&self, tau: &TauFn, grid_n: usize, r_max: f64) -> LfiReport {
        let mut max_grad = 0.0f64;
        let mut max_lap = 0.0f64;
        for i in 0..grid_n {
            for j in 0..grid_n {
                let x = -r_max + 2.0 * r_max * i as f64 / (grid_n - 1) as f64;
                let y = -r_max + 2.0 * r_max * j as f64 / (grid_n - 1) as f64;
                let z = Point::new(x, y);
                if z.norm() > r_max {
                    continue;
                }
                let lap_phi = tau.eval(z).powi(-2);
                let cap = self.eps * lap_phi;
                max_grad = max_grad.max(self.d_phi(z).norm_sqr() / cap);
                max_lap = max_lap.max(self.lap_phi(z) / cap);
            }
        }
        LfiReport { max_grad_ratio: max_grad, max_lap_ratio: max_lap }
    }
}

/// Grid maxima of `|d phi_a|^2 / (eps lap phi)` and `lap phi_a / (eps lap phi)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LfiReport {
    pub max_grad_ratio: f64,
    pub max_lap_ratio: f64,
}

impl LfiReport {
    pub fn passed(&self) -> bool {
        self.max_grad_ratio <= 1.0 && self.max_lap_ratio <= 1.0
    }
}
