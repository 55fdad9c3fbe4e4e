//! Boundary-fixing C¹ diffeomorphisms of the closed unit disc.
//!
//! Everything here revolves around the radial family
//! `f_t(z) = t·z / (1 + (t−1)|z|)`, which fixes the unit circle pointwise,
//! scales radii monotonically, and forms a one-parameter group under
//! composition (`f_s ∘ f_t = f_{st}`, `f_t⁻¹ = f_{1/t}`).
//!
//! * [`specnorm2`] — closed-form maximization of `(au+bv)² + (bu+cv)²` on the
//!   closed disc, the pointwise engine behind every operator norm.
//! * [`radial_family`] — the map `f_t`, its exact Jacobian field, determinant,
//!   and the closed-form Jacobian norm `t / (1 + (t−1)|z|)`.
//! * [`group_metric`] — composition, inverses, and the C¹ distance
//!   `d(f, g) = sup|f−g| + sup|J(f)−J(g)|` with grid + golden-section sups.
//! * [`convergence_lab`] — the experiment: tabulate `d(f_t, id)` along t ↓ 1,
//!   check the bounds, fit the empirical rate, verify group membership.
//! * [`oracles`] — independent reference computations used by tests.
//! * [`cli`] — the `disc-diffeo` command-line front end (CSV/SVG).

pub mod cli;
pub mod convergence_lab;
pub mod group_metric;
pub mod oracles;
pub mod radial_family;
pub mod specnorm2;

pub use group_metric::{MaximizerConfig, MetricReport, NormConvention};
pub use radial_family::{DiscPoint, Jacobian2, RadialDiffeo};
pub use specnorm2::{SpectralSolution, SymmetricForm};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("point ({x}, {y}) lies outside the closed unit disc")]
    OutsideDisc { x: f64, y: f64 },
    #[error("parameter t must be a positive finite real, got {0}")]
    InvalidParameter(f64),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
