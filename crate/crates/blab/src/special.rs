//! Exponential integrals.
//!
//! `E2` is the closed form of the zeroth weight moment for the exponential
//! family at decay exponent 1: substituting `u = 1 - r^2`, `t = c/u` turns
//! `2 int_0^1 r exp(-c/(1-r^2)) dr` into `c int_c^inf e^{-t} t^{-2} dt = E2(c)`.
//! That identity is the independent route against which quadrature moments are
//! checked, so this module must not share any machinery with `quad`.

/// `E1(x) = int_x^inf e^{-t}/t dt` for `x > 0`.
///
/// Power series around 0 for `x <= 1`, modified-Lentz continued fraction for
/// `x > 1`; both branches converge to full `f64` precision in this range.
pub fn exp_e1(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "E1 requires x > 0");
    const EULER: f64 = 0.577_215_664_901_532_9;
    if x <= 1.0 {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
        let mut sum = 0.0f64;
        let mut term = 1.0f64; // x^k / k!
        for k in 1..=40 {
            term *= x / k as f64;
            let contrib = term / k as f64;
            if k % 2 == 1 {
                sum += contrib;
            } else {
                sum -= contrib;
            }
            if contrib < 1e-18 * sum.abs() {
                break;
            }
        }
        -EULER - x.ln() + sum
    } else {
        // E1(x) = e^{-x} * (1 / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let a = -(i as f64) * (i as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x).exp() * h
    }
}

/// `E2(x) = e^{-x} - x E1(x)`, the recurrence `n E_{n+1} = e^{-x} - x E_n` at n = 1.
pub fn exp_e2(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "E2 requires x > 0");
    (-x).exp() - x * exp_e1(x)
}
