//! Group structure on the radial family and the C¹ metric
//! `d(f, g) = sup|f − g| + sup|J(f) − J(g)|` over the closed disc.
//!
//! Composition multiplies parameters (`f_s ∘ f_t = f_{st}`) and inversion
//! reciprocates them, so the group operations are exact. The two sups are
//! computed numerically: a deterministic grid scan plus golden-section
//! refinement. Under the spectral matrix-norm convention both pointwise
//! quantities are rotation invariant, which collapses the search to the
//! segment `z = (r, 0)`; the entrywise convention is not rotation invariant
//! and scans a full polar grid.

use std::f64::consts::TAU;
use std::fmt;

use crate::radial_family::{DiscPoint, RadialDiffeo};
use crate::specnorm2;

/// Pointwise matrix norm used for the Jacobian term of the metric.
///
/// The value term of the metric is unaffected; both conventions vanish
/// together as the parameters approach each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormConvention {
    /// Operator 2-norm of the difference matrix (the default).
    Spectral,
    /// Largest absolute entry of the difference matrix.
    EntrywiseMax,
}

impl fmt::Display for NormConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormConvention::Spectral => f.write_str("spectral"),
            NormConvention::EntrywiseMax => f.write_str("entrywise_max"),
        }
    }
}

/// Grid and refinement settings for the sup maximizers.
#[derive(Debug, Clone, Copy)]
pub struct MaximizerConfig {
    /// Initial 1-D grid resolution over `r ∈ [0, 1]`. The 2-D entrywise scan
    /// uses `(grid_points + 1) / 2` radii and as many angles, so the default
    /// gives a 2049×2049 polar grid.
    pub grid_points: usize,
    /// Maximum golden-section steps on the winning bracket.
    pub refine_iters: usize,
    /// Bracket width at which refinement stops.
    pub tol: f64,
}

impl Default for MaximizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 4097,
            refine_iters: 60,
            tol: 1e-10,
        }
    }
}

/// The assembled metric evaluation.
#[derive(Debug, Clone, Copy)]
pub struct MetricReport {
    /// `sup |f(z) − g(z)|` (Euclidean norm of the pointwise difference).
    pub sup_value_dist: f64,
    /// `sup ‖J(f)(z) − J(g)(z)‖` under the chosen convention.
    pub sup_jac_dist: f64,
    /// Their sum, the C¹ distance.
    pub d_g: f64,
    /// Radius attaining the value sup.
    pub argmax_radius_value: f64,
    /// Radius attaining the Jacobian sup.
    pub argmax_radius_jac: f64,
    pub convention: NormConvention,
}

/// Entrywise sups of `J(f_{t1}) − J(f_{t2})` over a full polar grid, split by
/// entry class. `max_abs = max(diag_sup, offdiag_sup)`.
#[derive(Debug, Clone, Copy)]
pub struct EntrywiseSups {
    pub diag_sup: f64,
    pub offdiag_sup: f64,
    pub max_abs: f64,
    pub argmax: DiscPoint,
}

/// `f_{t1} ∘ f_{t2} = f_{t1 t2}`.
pub fn compose(d1: RadialDiffeo, d2: RadialDiffeo) -> RadialDiffeo {
    RadialDiffeo::from_raw(d1.t() * d2.t())
}

/// `f_t⁻¹ = f_{1/t}`.
pub fn inverse(d: RadialDiffeo) -> RadialDiffeo {
    RadialDiffeo::from_raw(1.0 / d.t())
}

/// `sup_z |f_{t1}(z) − f_{t2}(z)|` and a maximizing radius.
///
/// Both maps scale `z` radially, so the pointwise difference is
/// `|z|·|t1/den1 − t2/den2|` — a function of the radius alone — and the
/// 2-D sup reduces to a 1-D maximization over `z = (r, 0)`.
pub fn sup_value_distance(
    d1: RadialDiffeo,
    d2: RadialDiffeo,
    cfg: &MaximizerConfig,
) -> (f64, f64) {
    let (t1, t2) = (d1.t(), d2.t());
    let g = move |r: f64| {
        let a = t1 * r / (1.0 + (t1 - 1.0) * r);
        let b = t2 * r / (1.0 + (t2 - 1.0) * r);
        (a - b).abs()
    };
    maximize_on_unit_interval(g, cfg)
}

/// `sup_z ‖J(f_{t1})(z) − J(f_{t2})(z)‖` and a maximizing radius.
///
/// Spectral convention: along the axis the difference matrix is diagonal and
/// its operator norm is rotation invariant, so the 1-D reduction applies; the
/// pointwise norm goes through the closed-form engine. Entrywise convention:
/// entries are not rotation invariant, so the sup is taken over a full polar
/// grid without refinement.
pub fn sup_jacobian_distance(
    d1: RadialDiffeo,
    d2: RadialDiffeo,
    cfg: &MaximizerConfig,
    convention: NormConvention,
) -> (f64, f64) {
    match convention {
        NormConvention::Spectral => {
            let g = move |r: f64| {
                let p = DiscPoint { x: r, y: 0.0 };
                let j1 = d1.jacobian_at(p).expect("axis point stays in the disc");
                let j2 = d2.jacobian_at(p).expect("axis point stays in the disc");
                specnorm2::spectral_norm((j1 - j2).to_symmetric_form())
                    .expect("Jacobian entries are finite on the disc")
            };
            maximize_on_unit_interval(g, cfg)
        }
        NormConvention::EntrywiseMax => {
            let sups = entrywise_jacobian_sups(d1, d2, cfg);
            (sups.max_abs, sups.argmax.radius())
        }
    }
}

/// Entrywise diagonal/off-diagonal sups over a polar grid of
/// `(grid_points + 1)/2` radii × as many angles; ties keep the first point.
pub fn entrywise_jacobian_sups(
    d1: RadialDiffeo,
    d2: RadialDiffeo,
    cfg: &MaximizerConfig,
) -> EntrywiseSups {
    let side = cfg.grid_points.div_ceil(2).max(4);
    let radii = side;
    let angles = side;
    let trig: Vec<(f64, f64)> = (0..angles)
        .map(|j| {
            let th = TAU * j as f64 / angles as f64;
            (th.cos(), th.sin())
        })
        .collect();

    let mut diag_sup = 0.0f64;
    let mut offdiag_sup = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut argmax = DiscPoint::origin();
    for i in 0..radii {
        let r = i as f64 / (radii - 1) as f64;
        for &(cos, sin) in &trig {
            let p = DiscPoint {
                x: r * cos,
                y: r * sin,
            };
            let j1 = d1.jacobian_at(p).expect("grid point stays in the disc");
            let j2 = d2.jacobian_at(p).expect("grid point stays in the disc");
            let d = j1 - j2;
            let diag = d.m11.abs().max(d.m22.abs());
            let off = d.m12.abs().max(d.m21.abs());
            if diag > diag_sup {
                diag_sup = diag;
            }
            if off > offdiag_sup {
                offdiag_sup = off;
            }
            let entry = diag.max(off);
            if entry > max_abs {
                max_abs = entry;
                argmax = p;
            }
        }
    }
    EntrywiseSups {
        diag_sup,
        offdiag_sup,
        max_abs,
        argmax,
    }
}

/// `d(f_{t1}, f_{t2})` = value sup + Jacobian sup.
pub fn metric(
    d1: RadialDiffeo,
    d2: RadialDiffeo,
    cfg: &MaximizerConfig,
    convention: NormConvention,
) -> MetricReport {
    let (sup_value_dist, argmax_radius_value) = sup_value_distance(d1, d2, cfg);
    let (sup_jac_dist, argmax_radius_jac) = sup_jacobian_distance(d1, d2, cfg, convention);
    MetricReport {
        sup_value_dist,
        sup_jac_dist,
        d_g: sup_value_dist + sup_jac_dist,
        argmax_radius_value,
        argmax_radius_jac,
        convention,
    }
}

/// Grid scan over `[0, 1]` followed by golden-section refinement of the best
/// bracket. Returns `(max value, argmax)`; never below the best grid sample.
fn maximize_on_unit_interval(f: impl Fn(f64) -> f64, cfg: &MaximizerConfig) -> (f64, f64) {
    assert!(cfg.grid_points >= 3, "grid_points must be at least 3");
    assert!(cfg.tol > 0.0, "tol must be positive");
    let n = cfg.grid_points;
    let last = (n - 1) as f64;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..n {
        let v = f(i as f64 / last);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = if best_i == 0 {
        0.0
    } else {
        (best_i - 1) as f64 / last
    };
    let hi = if best_i == n - 1 {
        1.0
    } else {
        (best_i + 1) as f64 / last
    };
    golden_refine(f, lo, hi, best_v, best_i as f64 / last, cfg)
}

fn golden_refine(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    mut best_v: f64,
    mut best_x: f64,
    cfg: &MaximizerConfig,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut b = hi - INV_PHI * (hi - lo);
    let mut c = lo + INV_PHI * (hi - lo);
    let mut fb = f(b);
    let mut fc = f(c);
    for &(x, v) in &[(b, fb), (c, fc)] {
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }
    for _ in 0..cfg.refine_iters {
        if hi - lo <= cfg.tol {
            break;
        }
        if fb > fc {
            hi = c;
            c = b;
            fc = fb;
            b = hi - INV_PHI * (hi - lo);
            fb = f(b);
            if fb > best_v {
                best_v = fb;
                best_x = b;
            }
        } else {
            lo = b;
            b = c;
            fb = fc;
            c = lo + INV_PHI * (hi - lo);
            fc = f(c);
            if fc > best_v {
                best_v = fc;
                best_x = c;
            }
        }
    }
    (best_v, best_x)
}
