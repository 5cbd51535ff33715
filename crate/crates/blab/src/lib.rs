//! Numerical laboratory for large weighted Bergman spaces on the unit disk.
//!
//! The crate builds reproducing kernels for spaces `A^p(w^{p/2})` whose weights
//! decay faster than any power of `1 - |z|` (the prototype is
//! `w(z) = exp(-c/(1-|z|^2)^a)`), applies the associated Bergman projection,
//! constructs coverings of the disk at the scale `tau = (laplacian phi)^{-1/2}`,
//! and solves the d-bar equation with weighted estimates. Every analytic
//! estimate the machinery relies on is re-checked numerically: two-sided bounds
//! become bounded-ratio reports with refinement histories, inequalities become
//! grid certificates.
//!
//! The primary interface is the `examples/` directory; each example is a
//! self-contained run of one capability:
//!
//! ```text
//! cargo run --release --example weights_tour            # weight families, tau, class constants
//! cargo run --release --example moments_and_kernel      # moments, E2 oracle, kernel decay
//! cargo run --release --example projection_reproducing  # P_w f = f on analytic targets
//! cargo run --release --example operator_norms          # empirical L^p -> A^p norms
//! cargo run --release --example covering_pou            # tau-adapted covering + partition of unity
//! cargo run --release --example dbar_solve              # constructive d-bar solution + residual
//! cargo run --release --example duality_sweep           # A^p/A^p' pairing ratios
//! cargo run --release --example kernel_density          # best approximation by kernel combinations
//! cargo run --release --example suite_run               # full JSON-configured verification suite
//! ```
//!
//! A thin binary `blab` drives the same suite from JSON configs:
//! `blab suite --config cfg.json --out reports/`.
//!
//! Numerical conventions, used everywhere without further comment:
//! area measure is normalized (`dA = dx dy / pi`, so the unit disk has area 1),
//! weights are carried in the log domain, quadrature is a boundary-graded
//! geometric polar product rule, and open-disk integrals are truncated at a
//! configurable `r_max < 1`.

pub mod analytic;
pub mod config;
pub mod covering;
pub mod dbar;
pub mod kernel;
pub mod lognum;
pub mod projection;
pub mod quad;
pub mod report;
pub mod special;
pub mod svg;
pub mod weights;

use num_complex::Complex64;
use thiserror::Error;

/// Point of the complex plane; all geometry routes through this alias.
pub type Point = Complex64;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or unsupported weight data (non-positive Laplacian, bad knots, ...).
    #[error("weight specification: {0}")]
    Weight(String),
    /// Empirical class constants could not be certified (unbounded ratio, NaN).
    #[error("classification failure: {0}")]
    Classification(String),
    /// A requested tolerance is unreachable at the configured resolution.
    #[error("resolution: {0}")]
    Resolution(String),
    /// An integrand produced a non-finite value.
    #[error("integration: non-finite value at node ({re}, {im})")]
    NonFinite { re: f64, im: f64 },
    /// A region predicate selected no quadrature nodes.
    #[error("integration: region contains no quadrature nodes")]
    EmptyRegion,
    /// Gram factorization broke down; `achievable` is the largest usable degree.
    #[error("gram factorization singular; achievable degree {achievable}")]
    GramSingular { achievable: usize },
    /// A documented precondition of an operation failed.
    #[error("precondition: {0}")]
    Precondition(String),
    /// Covering construction or verification failed; the witness is included.
    #[error("covering: {0}")]
    Covering(String),
    /// Config/report schema violation (CLI exit code 2).
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
