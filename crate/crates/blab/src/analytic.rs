//! Probe functions: serializable descriptors and their evaluators.
//!
//! Configs refer to test functions by descriptor; resolving one yields a
//! log-domain evaluator `Point -> LogComplex`. Kernel-backed descriptors
//! (kernel sections, normalized kernels) need a [`RadialKernel`] in the
//! context and fail to resolve without one. The smooth cutoffs at the end are
//! deliberately non-analytic; they exist as data for the d-bar machinery.

use crate::kernel::RadialKernel;
use crate::lognum::LogComplex;
use crate::{Error, Point, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Descriptor for a probe function. JSON uses the `kind` tag, e.g.
/// `{"kind":"monomial","degree":3}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FnSpec {
    /// `z^degree`.
    Monomial { degree: u32 },
    /// `sum_k c_k z^k`, coefficients as (re, im), constant first.
    Polynomial { coeffs: Vec<(f64, f64)> },
    /// `exp(scale * z)`.
    ExpLinear { scale: (f64, f64) },
    /// Kernel section `z -> K(z, at)`; needs a kernel in the context.
    Kernel { at: (f64, f64) },
    /// Unit-norm kernel `K(., at) / ||K_at||_2`; needs a kernel.
    NormalizedKernel { at: (f64, f64) },
    /// Random polynomial with coefficients drawn from the seed; the same
    /// seed always resolves to the same function.
    RandomPoly { degree: u32, seed: u64 },
    /// `conj(z)^degree`; not analytic, used as a projection target.
    ConjMonomial { degree: u32 },
    /// Smooth compactly supported bump: `exp(1 - 1/(1 - |z-c|^2/R^2))`
    /// inside `D(c, R)`, zero outside. Not analytic.
    Bump { center: (f64, f64), radius: f64 },
    /// 1 on `D(c, inner)`, quintic ramp to 0 at radius `outer`. Not analytic.
    Plateau { center: (f64, f64), inner: f64, outer: f64 },
}

/// Resolution context; only kernel-backed descriptors look at it.
#[derive(Default)]
pub struct FnContext<'a> {
    pub kernel: Option<&'a RadialKernel>,
}

/// A resolved probe.
pub type Evaluator<'a> = Box<dyn Fn(Point) -> LogComplex + Sync + 'a>;

/// Quintic smoothstep: 0 at 0, 1 at 1, first and second derivatives vanish
/// at both ends; max slope 15/8 at the midpoint.
pub fn smoothstep(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
    }
}

impl FnSpec {
    pub fn resolve<'a>(&self, ctx: &FnContext<'a>) -> Result<Evaluator<'a>> {
        match self.clone() {
            FnSpec::Monomial { degree } => Ok(Box::new(move |z| {
                LogComplex::from_complex(z.powu(degree))
            })),
            FnSpec::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::Precondition("empty polynomial".into()));
                }
                Ok(Box::new(move |z| LogComplex::from_complex(horner(&coeffs, z))))
            }
            FnSpec::ExpLinear { scale } => {
                let s = Point::new(scale.0, scale.1);
                // exact in the log domain: ln|e^{sz}| = Re(sz)
                Ok(Box::new(move |z| {
                    let e = s * z;
                    LogComplex::new(e.re, e.im)
                }))
            }
            FnSpec::Kernel { at } => {
                let k = require_kernel(ctx, "kernel section")?;
                let a = Point::new(at.0, at.1);
                Ok(Box::new(move |z| {
                    k.eval(z, a).unwrap_or_else(|_| {
                        panic!("kernel section unresolved at ({}, {})", z.re, z.im)
                    })
                }))
            }
            FnSpec::NormalizedKernel { at } => {
                let k = require_kernel(ctx, "normalized kernel")?;
                let a = Point::new(at.0, at.1);
                let ln_norm = 0.5 * k.diag(a)?.ln();
                Ok(Box::new(move |z| {
                    let v = k.eval(z, a).unwrap_or_else(|_| {
                        panic!("kernel section unresolved at ({}, {})", z.re, z.im)
                    });
                    v.scale_ln(-ln_norm)
                }))
            }
            FnSpec::RandomPoly { degree, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let coeffs: Vec<(f64, f64)> = (0..=degree)
                    .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                Ok(Box::new(move |z| LogComplex::from_complex(horner(&coeffs, z))))
            }
            FnSpec::ConjMonomial { degree } => Ok(Box::new(move |z| {
                LogComplex::from_complex(z.conj().powu(degree))
            })),
            FnSpec::Bump { center, radius } => {
                if radius <= 0.0 {
                    return Err(Error::Precondition("bump radius must be positive".into()));
                }
                let c = Point::new(center.0, center.1);
                Ok(Box::new(move |z| {
                    let u = (z - c).norm_sqr() / (radius * radius);
                    if u >= 1.0 {
                        LogComplex::from_real(0.0)
                    } else {
                        LogComplex::new(1.0 - 1.0 / (1.0 - u), 0.0)
                    }
                }))
            }
            FnSpec::Plateau { center, inner, outer } => {
                if !(0.0 < inner && inner < outer) {
                    return Err(Error::Precondition(
                        "plateau needs 0 < inner < outer".into(),
                    ));
                }
                let c = Point::new(center.0, center.1);
                Ok(Box::new(move |z| {
                    let s = ((z - c).norm() - inner) / (outer - inner);
                    LogComplex::from_real(1.0 - smoothstep(s))
                }))
            }
        }
    }

    /// True for descriptors that are genuinely analytic on the disk.
    pub fn is_analytic(&self) -> bool {
        !matches!(
            self,
            FnSpec::ConjMonomial { .. } | FnSpec::Bump { .. } | FnSpec::Plateau { .. }
        )
    }
}

fn require_kernel<'a>(ctx: &FnContext<'a>, what: &str) -> Result<&'a RadialKernel> {
    ctx.kernel.ok_or_else(|| {
        Error::Precondition(format!("{what} needs a kernel in the resolution context"))
    })
}

fn horner(coeffs: &[(f64, f64)], z: Point) -> Point {
    let mut acc = Point::new(0.0, 0.0);
    for &(re, im) in coeffs.iter().rev() {
        acc = acc * z + Point::new(re, im);
    }
    acc
}

/// Central finite-difference `dbar f = (f_x + i f_y)/2` with step `h`.
pub fn dbar_fd(f: &dyn Fn(Point) -> LogComplex, z: Point, h: f64) -> Point {
    assert!(h > 0.0);
    let v = |w: Point| f(w).to_complex();
    let dx = v(z + Point::new(h, 0.0)) - v(z - Point::new(h, 0.0));
    let dy = v(z + Point::new(0.0, h)) - v(z - Point::new(0.0, h));
    (dx + Point::new(0.0, 1.0) * dy) / (4.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::MomentSeq;
    use crate::quad::{PolarRule, RuleSpec};
    use crate::weights::WeightSpec;
    use approx::assert_relative_eq;

    fn ctxless(spec: &FnSpec) -> Evaluator<'static> {
        let ctx = FnContext::default();
        spec.resolve(&ctx).expect("resolves without kernel")
    }

    #[test]
    fn polynomial_and_monomial_agree() {
        let p = ctxless(&FnSpec::Polynomial {
            coeffs: vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        });
        let m = ctxless(&FnSpec::Monomial { degree: 3 });
        let z = Point::new(0.4, -0.7);
        let a = p(z).to_complex();
        let b = m(z).to_complex();
        assert_relative_eq!(a.re, b.re, max_relative = 1e-14);
        assert_relative_eq!(a.im, b.im, max_relative = 1e-14);
    }

    #[test]
    fn exp_linear_is_exact_in_log_form() {
        let f = ctxless(&FnSpec::ExpLinear { scale: (2.0, 1.0) });
        let z = Point::new(0.3, 0.5);
        let v = f(z);
        let e = Point::new(2.0, 1.0) * z;
        assert_relative_eq!(v.ln_abs, e.re, max_relative = 1e-14);
    }

    #[test]
    fn random_poly_is_seed_deterministic() {
        let a = ctxless(&FnSpec::RandomPoly { degree: 8, seed: 42 });
        let b = ctxless(&FnSpec::RandomPoly { degree: 8, seed: 42 });
        let c = ctxless(&FnSpec::RandomPoly { degree: 8, seed: 43 });
        let z = Point::new(0.6, 0.1);
        assert_eq!(a(z).to_complex(), b(z).to_complex());
        assert_ne!(a(z).to_complex(), c(z).to_complex());
    }

    #[test]
    fn kernel_backed_specs_need_a_kernel() {
        let spec = FnSpec::Kernel { at: (0.3, 0.0) };
        let ctx = FnContext::default();
        assert!(matches!(spec.resolve(&ctx), Err(Error::Precondition(_))));
    }

    #[test]
    fn normalized_kernel_has_unit_norm() {
        let rule = PolarRule::build(RuleSpec { r_max: 0.99, panels: 24, gl_order: 8, angular: 128 })
            .expect("rule");
        let w = WeightSpec::exponential(1.0, 1.0).expect("weight");
        let m = MomentSeq::compute(&rule, &w, 600).expect("moments");
        let k = crate::kernel::RadialKernel::new(m, 1e-12).expect("kernel");
        let ctx = FnContext { kernel: Some(&k) };
        let f = FnSpec::NormalizedKernel { at: (0.3, 0.2) }.resolve(&ctx).expect("resolve");
        let norm_sq = rule
            .integrate_log(|z| {
                let v = f(z);
                LogComplex::new(2.0 * v.ln_abs + crate::weights::Weighting::log_weight(&w, z), 0.0)
            })
            .to_complex()
            .re;
        assert_relative_eq!(norm_sq, 1.0, max_relative = 1e-7);
    }

    #[test]
    fn bump_support_and_plateau_shape() {
        let bump = ctxless(&FnSpec::Bump { center: (0.1, 0.0), radius: 0.3 });
        assert_relative_eq!(bump(Point::new(0.1, 0.0)).to_complex().re, 1.0);
        assert!(bump(Point::new(0.5, 0.0)).is_zero());
        assert!(bump(Point::new(0.3, 0.1)).to_complex().re > 0.0);

        let plat = ctxless(&FnSpec::Plateau { center: (0.0, 0.0), inner: 0.5, outer: 0.6 });
        assert_relative_eq!(plat(Point::new(0.3, 0.2)).to_complex().re, 1.0);
        assert!(plat(Point::new(0.62, 0.0)).is_zero());
        let mid = plat(Point::new(0.55, 0.0)).to_complex().re;
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn dbar_vanishes_on_analytic_probes_only() {
        let h = 1e-5;
        let poly = ctxless(&FnSpec::Polynomial {
            coeffs: vec![(1.0, 0.5), (0.2, 0.0), (0.0, 0.3)],
        });
        let z = Point::new(0.4, 0.2);
        assert!(dbar_fd(&poly, z, h).norm() < 1e-9);

        // dbar conj(z) = 1 exactly
        let anti = ctxless(&FnSpec::ConjMonomial { degree: 1 });
        let d = dbar_fd(&anti, z, h);
        assert_relative_eq!(d.re, 1.0, max_relative = 1e-9);
        assert_relative_eq!(d.im, 0.0, epsilon = 1e-9);

        let bump = ctxless(&FnSpec::Bump { center: (0.0, 0.0), radius: 0.5 });
        assert!(dbar_fd(&bump, Point::new(0.3, 0.0), h).norm() > 1e-2);
    }

    #[test]
    fn spec_json_round_trip() {
        let specs = vec![
            FnSpec::Monomial { degree: 3 },
            FnSpec::Kernel { at: (0.3, 0.0) },
            FnSpec::Plateau { center: (0.0, 0.0), inner: 0.5, outer: 0.6 },
        ];
        let json = serde_json::to_string(&specs).expect("serialize");
        let back: Vec<FnSpec> = serde_json::from_str(&json).expect("deserialize");
        assert_eq!(back, specs);
        let lone: FnSpec =
            serde_json::from_str(r#"{"kind":"monomial","degree":3}"#).expect("schema");
        assert_eq!(lone, FnSpec::Monomial { degree: 3 });
    }
}
