//! The convergence experiment: tabulate `d(f_t, id)` along a schedule t ↓ 1,
//! check the linear bounds, fit the empirical rate, and verify that each
//! `f_t` really behaves like a member of the group (boundary fixed, positive
//! Jacobian determinant, invertible, disc-preserving).

use std::f64::consts::TAU;

use crate::group_metric::{self, MaximizerConfig, NormConvention};
use crate::radial_family::{DiscPoint, RadialDiffeo};
use crate::{Error, Result};

/// One entry of the convergence table. The `bound_*` columns are the closed
/// bounds `t−1`, `t²−1`, `t(t−1)` the sups are compared against.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub t: f64,
    pub sup_value: f64,
    pub sup_jac: f64,
    pub d_g: f64,
    pub bound_value: f64,
    pub bound_diag: f64,
    pub bound_offdiag: f64,
}

/// Least-squares slope of `log d_g` against `log (t−1)` with fit quality.
#[derive(Debug, Clone, Copy)]
pub struct RateEstimate {
    pub exponent: f64,
    pub r_squared: f64,
}

/// Result of one membership check with its worst-case witness.
#[derive(Debug, Clone, Copy)]
pub struct MembershipCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value (largest error, or smallest determinant).
    pub worst: f64,
    pub threshold: f64,
    pub witness: DiscPoint,
}

/// The four membership checks for a single parameter.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub t: f64,
    pub checks: Vec<MembershipCheck>,
}

impl MembershipReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The default schedule `t = 1 + 2⁻ᵏ`, k = 1..20, log-spaced toward 1⁺.
pub fn default_schedule() -> Vec<f64> {
    (1..=20).map(|k| 1.0 + 0.5f64.powi(k)).collect()
}

/// One [`ConvergenceRow`] per scheduled `t`, measured against the identity.
///
/// The schedule must be nonempty, strictly decreasing, and entirely above 1.
pub fn convergence_table(
    t_values: &[f64],
    cfg: &MaximizerConfig,
    convention: NormConvention,
) -> Result<Vec<ConvergenceRow>> {
    if t_values.is_empty() {
        return Err(Error::Domain("convergence schedule is empty".into()));
    }
    for &t in t_values {
        if !t.is_finite() || t <= 1.0 {
            return Err(Error::Domain(format!(
                "convergence schedule requires t > 1, got {t}"
            )));
        }
    }
    if t_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain(
            "convergence schedule must decrease strictly toward 1".into(),
        ));
    }

    let id = RadialDiffeo::identity();
    Ok(t_values
        .iter()
        .map(|&t| {
            let d = RadialDiffeo::from_raw(t);
            let report = group_metric::metric(d, id, cfg, convention);
            ConvergenceRow {
                t,
                sup_value: report.sup_value_dist,
                sup_jac: report.sup_jac_dist,
                d_g: report.d_g,
                bound_value: t - 1.0,
                bound_diag: t * t - 1.0,
                bound_offdiag: t * (t - 1.0),
            }
        })
        .collect())
}

/// Fits `log d_g = exponent · log(t−1) + const` by least squares.
pub fn fit_rate(rows: &[ConvergenceRow]) -> Result<RateEstimate> {
    if rows.len() < 3 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 3 rows, got {}",
            rows.len()
        )));
    }
    for row in rows {
        let valid = row.d_g.is_finite() && row.d_g > 0.0 && row.t.is_finite() && row.t > 1.0;
        if !valid {
            return Err(Error::Domain(
                "rate fit needs rows with t > 1 and d_g > 0".into(),
            ));
        }
    }
    let n = rows.len() as f64;
    let xs: Vec<f64> = rows.iter().map(|r| (r.t - 1.0).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.d_g.ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::Domain(
            "rate fit needs at least two distinct t values".into(),
        ));
    }
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + exponent * x);
            e * e
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(RateEstimate {
        exponent,
        r_squared,
    })
}

/// Samples `f_t` densely and reports four checks: boundary points fixed,
/// Jacobian determinant positive, inverse round-trip, image inside the disc.
/// Failures are reported, not thrown.
///
/// `cfg.grid_points` sizes the boundary-circle sample; the interior sample is
/// a fixed 320×320 polar grid (≈10⁵ points including the origin and r = 1).
pub fn verify_membership(t: f64, cfg: &MaximizerConfig) -> Result<MembershipReport> {
    const BOUNDARY_TOL: f64 = 1e-12;
    const ROUND_TRIP_TOL: f64 = 1e-10;
    const IMAGE_TOL: f64 = 1e-12;
    const RADII: usize = 320;
    const ANGLES: usize = 320;

    let d = RadialDiffeo::new(t)?;
    let inv = group_metric::inverse(d);

    let mut boundary_worst = 0.0f64;
    let mut boundary_witness = DiscPoint { x: 1.0, y: 0.0 };
    for j in 0..cfg.grid_points.max(4) {
        let th = TAU * j as f64 / cfg.grid_points.max(4) as f64;
        let p = DiscPoint {
            x: th.cos(),
            y: th.sin(),
        };
        let q = d.evaluate(p).expect("circle point stays in the disc");
        let err = q.distance(p);
        if err > boundary_worst {
            boundary_worst = err;
            boundary_witness = p;
        }
    }

    let mut det_worst = f64::INFINITY;
    let mut det_witness = DiscPoint::origin();
    let mut trip_worst = 0.0f64;
    let mut trip_witness = DiscPoint::origin();
    let mut image_worst = f64::NEG_INFINITY;
    let mut image_witness = DiscPoint::origin();
    for i in 0..RADII {
        let r = i as f64 / (RADII - 1) as f64;
        for j in 0..ANGLES {
            let th = TAU * j as f64 / ANGLES as f64;
            let p = DiscPoint {
                x: r * th.cos(),
                y: r * th.sin(),
            };
            let det = d.jacobian_det(p).expect("grid point stays in the disc");
            if det < det_worst {
                det_worst = det;
                det_witness = p;
            }
            let image = d.evaluate(p).expect("grid point stays in the disc");
            let overshoot = image.radius() - 1.0;
            if overshoot > image_worst {
                image_worst = overshoot;
                image_witness = p;
            }
            let back = inv.evaluate(image).expect("image stays in the disc");
            let err = back.distance(p);
            if err > trip_worst {
                trip_worst = err;
                trip_witness = p;
            }
        }
    }

    Ok(MembershipReport {
        t,
        checks: vec![
            MembershipCheck {
                name: "boundary_fixed",
                passed: boundary_worst <= BOUNDARY_TOL,
                worst: boundary_worst,
                threshold: BOUNDARY_TOL,
                witness: boundary_witness,
            },
            MembershipCheck {
                name: "jacobian_det_positive",
                passed: det_worst > 0.0,
                worst: det_worst,
                threshold: 0.0,
                witness: det_witness,
            },
            MembershipCheck {
                name: "inverse_round_trip",
                passed: trip_worst <= ROUND_TRIP_TOL,
                worst: trip_worst,
                threshold: ROUND_TRIP_TOL,
                witness: trip_witness,
            },
            MembershipCheck {
                name: "image_in_disc",
                passed: image_worst <= IMAGE_TOL,
                worst: image_worst,
                threshold: IMAGE_TOL,
                witness: image_witness,
            },
        ],
    })
}
