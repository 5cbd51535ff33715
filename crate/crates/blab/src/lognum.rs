//! Log-domain scalars.
//!
//! Weights like `exp(-1/(1-r^2))` and kernel values like `exp(+50)/tau^2` leave
//! the comfortable range of `f64` long before the quantities the estimates
//! compare (`K_z(z) * w(z) * tau(z)^2`, say) do. Everything that can underflow
//! or overflow is therefore carried as a logarithm of the magnitude plus, for
//! complex values, a phase. Conversion back to plain floats happens only after
//! compensating factors have been applied.

use crate::Point;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul};

/// Non-negative real stored as `ln` of its magnitude.
///
/// Zero is encoded as `ln = -inf`; `is_zero` exposes the flag. Converting a
/// value whose logarithm is below the `f64` underflow threshold yields `0.0`
/// without error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogReal {
    ln: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { ln: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { ln: 0.0 };

    /// Wraps a plain non-negative value. Negative or NaN input is a caller bug.
    pub fn from_value(v: f64) -> LogReal {
        debug_assert!(v >= 0.0, "LogReal requires a non-negative value");
        LogReal { ln: v.ln() }
    }

    pub fn from_ln(ln: f64) -> LogReal {
        LogReal { ln }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    /// Plain value; underflows to 0, genuinely huge magnitudes go to `inf`.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn powf(self, p: f64) -> LogReal {
        if self.is_zero() {
            // 0^p = 0 for p > 0; p <= 0 would be a caller bug.
            debug_assert!(p > 0.0);
            return LogReal::ZERO;
        }
        LogReal { ln: self.ln * p }
    }

    pub fn sqrt(self) -> LogReal {
        self.powf(0.5)
    }

    pub fn recip(self) -> LogReal {
        LogReal { ln: -self.ln }
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        if self.is_zero() || rhs.is_zero() {
            return LogReal::ZERO;
        }
        LogReal { ln: self.ln + rhs.ln }
    }
}

impl Div for LogReal {
    type Output = LogReal;
    fn div(self, rhs: LogReal) -> LogReal {
        debug_assert!(!rhs.is_zero(), "division by LogReal zero");
        if self.is_zero() {
            return LogReal::ZERO;
        }
        LogReal { ln: self.ln - rhs.ln }
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        LogReal { ln: log_add(self.ln, rhs.ln) }
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &LogReal) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

/// `ln(e^a + e^b)` with the larger exponent factored out; `-inf` encodes zero.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Complex value as `ln|.|` plus phase in `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub ln_abs: f64,
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex { ln_abs: f64::NEG_INFINITY, phase: 0.0 };

    pub fn new(ln_abs: f64, phase: f64) -> LogComplex {
        LogComplex { ln_abs, phase: normalize_phase(phase) }
    }

    pub fn from_complex(v: Point) -> LogComplex {
        if v.re == 0.0 && v.im == 0.0 {
            return LogComplex::ZERO;
        }
        LogComplex { ln_abs: v.norm().ln(), phase: v.arg() }
    }

    pub fn from_real(v: f64) -> LogComplex {
        if v >= 0.0 {
            LogComplex { ln_abs: v.ln(), phase: 0.0 }
        } else {
            LogComplex { ln_abs: (-v).ln(), phase: std::f64::consts::PI }
        }
    }

    pub fn is_zero(self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    pub fn to_complex(self) -> Point {
        let m = self.ln_abs.exp();
        Point::new(m * self.phase.cos(), m * self.phase.sin())
    }

    pub fn abs(self) -> LogReal {
        LogReal::from_ln(self.ln_abs)
    }

    pub fn conj(self) -> LogComplex {
        LogComplex { ln_abs: self.ln_abs, phase: -self.phase }
    }

    pub fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.ln_abs + rhs.ln_abs, self.phase + rhs.phase)
    }

    pub fn div(self, rhs: LogComplex) -> LogComplex {
        debug_assert!(!rhs.is_zero(), "division by LogComplex zero");
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.ln_abs - rhs.ln_abs, self.phase - rhs.phase)
    }

    /// Multiplies by `e^{t}` for a real log-scale `t`.
    pub fn scale_ln(self, t: f64) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex { ln_abs: self.ln_abs + t, phase: self.phase }
    }
}

fn normalize_phase(p: f64) -> f64 {
    use std::f64::consts::PI;
    if p > -PI && p <= PI {
        return p;
    }
    let mut q = p.rem_euclid(2.0 * PI); // [0, 2pi)
    if q > PI {
        q -= 2.0 * PI;
    }
    q
}

/// Sum of complex terms supplied in the log domain.
///
/// Keeps a plain complex accumulator together with a running log-scale; the
/// scale is raised whenever a term exceeds it, so no intermediate overflows
/// as long as individual terms fit after shifting (they always do: shifted
/// terms have modulus <= 1).
#[derive(Clone, Copy, Debug)]
pub struct LogAccumulator {
    scale: f64,
    acc: Point,
}

impl LogAccumulator {
    pub fn new() -> LogAccumulator {
        LogAccumulator { scale: f64::NEG_INFINITY, acc: Point::new(0.0, 0.0) }
    }

    pub fn push(&mut self, term: LogComplex) {
        if term.is_zero() {
            return;
        }
        if term.ln_abs > self.scale {
            if self.scale != f64::NEG_INFINITY {
                self.acc *= (self.scale - term.ln_abs).exp();
            }
            self.scale = term.ln_abs;
        }
        let m = (term.ln_abs - self.scale).exp();
        self.acc += Point::new(m * term.phase.cos(), m * term.phase.sin());
    }

    /// Adds a plain complex term already divided by `e^{scale_ln}`.
    pub fn push_scaled(&mut self, scale_ln: f64, v: Point) {
        if v.re == 0.0 && v.im == 0.0 {
            return;
        }
        self.push(LogComplex::from_complex(v).scale_ln(scale_ln));
    }

    pub fn total(&self) -> LogComplex {
        if self.scale == f64::NEG_INFINITY || (self.acc.re == 0.0 && self.acc.im == 0.0) {
            return LogComplex::ZERO;
        }
        LogComplex::from_complex(self.acc).scale_ln(self.scale)
    }
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

/// Plain-precision accumulation strategy for moment quadrature.
///
/// `Extended` is Neumaier-compensated summation; selected process-wide through
/// the `BLAB_PRECISION` environment variable (`double` | `extended`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn from_env() -> crate::Result<Precision> {
        match std::env::var("BLAB_PRECISION") {
            Ok(s) if s == "double" => Ok(Precision::Double),
            Ok(s) if s == "extended" => Ok(Precision::Extended),
            Ok(s) => Err(crate::Error::Schema(format!(
                "BLAB_PRECISION must be `double` or `extended`, got `{s}`"
            ))),
            Err(_) => Ok(Precision::Double),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

/// Process-wide accumulation mode, read from the environment once. Invalid
/// values fall back to `Double` here; entry points validate loudly first.
pub fn active_precision() -> Precision {
    use std::sync::OnceLock;
    static ACTIVE: OnceLock<Precision> = OnceLock::new();
    *ACTIVE.get_or_init(|| Precision::from_env().unwrap_or(Precision::Double))
}

/// Compensated (Neumaier) sum; degenerates to plain summation under `Double`.
#[derive(Clone, Copy, Debug)]
pub struct RealSum {
    mode: Precision,
    sum: f64,
    carry: f64,
}

impl RealSum {
    pub fn new(mode: Precision) -> RealSum {
        RealSum { mode, sum: 0.0, carry: 0.0 }
    }

    pub fn push(&mut self, v: f64) {
        match self.mode {
            Precision::Double => self.sum += v,
            Precision::Extended => {
                let t = self.sum + v;
                if self.sum.abs() >= v.abs() {
                    self.carry += (self.sum - t) + v;
                } else {
                    self.carry += (v - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_flag_round_trip() {
        assert!(LogReal::ZERO.is_zero());
        assert_eq!(LogReal::ZERO.value(), 0.0);
        assert!(LogReal::from_value(0.0).is_zero());
        assert!(!LogReal::ONE.is_zero());
        // below the f64 underflow threshold: converts to 0 without error
        assert_eq!(LogReal::from_ln(-800.0).value(), 0.0);
        assert!(!LogReal::from_ln(-800.0).is_zero());
    }

    #[test]
    fn log_domain_matches_plain_arithmetic() {
        // 1e4 random positive pairs spread over many decades
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a: f64 = (rng.gen::<f64>() * 40.0 - 20.0).exp();
            let b: f64 = (rng.gen::<f64>() * 40.0 - 20.0).exp();
            let (la, lb) = (LogReal::from_value(a), LogReal::from_value(b));
            assert_relative_eq!((la * lb).value(), a * b, max_relative = 1e-12);
            assert_relative_eq!((la / lb).value(), a / b, max_relative = 1e-12);
            assert_relative_eq!((la + lb).value(), a + b, max_relative = 1e-12);
        }
    }

    #[test]
    fn extreme_magnitudes_survive() {
        let big = LogReal::from_ln(600.0);
        let small = LogReal::from_ln(-600.0);
        assert_relative_eq!((big * small).value(), 1.0, max_relative = 1e-14);
        let sum = big + small; // completely dominated by `big`
        assert_relative_eq!(sum.ln(), 600.0, max_relative = 1e-14);
    }

    #[test]
    fn complex_round_trip_and_products() {
        let v = Point::new(-3.25, 4.5);
        let w = Point::new(0.125, -9.0);
        let lv = LogComplex::from_complex(v);
        let lw = LogComplex::from_complex(w);
        let prod = lv.mul(lw).to_complex();
        assert_relative_eq!(prod.re, (v * w).re, max_relative = 1e-13);
        assert_relative_eq!(prod.im, (v * w).im, max_relative = 1e-13);
        let quot = lv.div(lw).to_complex();
        assert_relative_eq!(quot.re, (v / w).re, max_relative = 1e-13);
        assert_relative_eq!(quot.im, (v / w).im, max_relative = 1e-13);
    }

    #[test]
    fn accumulator_handles_wide_dynamic_range() {
        // sum of e^{300}, 1, e^{-300}: only the big term survives at 1e-15
        let mut acc = LogAccumulator::new();
        acc.push(LogComplex::new(300.0, 0.0));
        acc.push(LogComplex::new(0.0, 0.0));
        acc.push(LogComplex::new(-300.0, 0.0));
        let t = acc.total();
        assert_relative_eq!(t.ln_abs, 300.0, max_relative = 1e-14);

        // cancellation: e^{10} - e^{10} + 3 = 3, pushed in a hostile order
        let mut acc = LogAccumulator::new();
        acc.push(LogComplex::new(10.0, 0.0));
        acc.push(LogComplex::from_real(3.0));
        acc.push(LogComplex::new(10.0, std::f64::consts::PI));
        assert_relative_eq!(acc.total().to_complex().re, 3.0, max_relative = 1e-9);
    }

    #[test]
    fn accumulator_matches_plain_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let terms: Vec<Point> =
            (0..512).map(|_| Point::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        let plain: Point = terms.iter().sum();
        let mut acc = LogAccumulator::new();
        for t in &terms {
            acc.push(LogComplex::from_complex(*t));
        }
        let got = acc.total().to_complex();
        assert_relative_eq!(got.re, plain.re, max_relative = 1e-11);
        assert_relative_eq!(got.im, plain.im, max_relative = 1e-11);
    }

    #[test]
    fn compensated_sum_beats_plain_on_hard_input() {
        // classic pattern: huge value cancels, tiny residue must survive
        let mut ext = RealSum::new(Precision::Extended);
        for v in [1.0, 1e100, 1.0, -1e100] {
            ext.push(v);
        }
        assert_eq!(ext.total(), 2.0);
    }

    #[test]
    fn phase_normalization() {
        let v = LogComplex::new(0.0, 7.5 * std::f64::consts::PI);
        assert!(v.phase > -std::f64::consts::PI && v.phase <= std::f64::consts::PI);
        assert_relative_eq!(v.phase, -0.5 * std::f64::consts::PI, max_relative = 1e-12);
    }
}
