//! The radial family `f_t(z) = t·z / (1 + (t−1)|z|)` on the closed unit disc.
//!
//! Every member fixes the origin and the unit circle pointwise. The Jacobian
//! field is symmetric with the closed-form operator norm
//! `t / (1 + (t−1)|z|)` and determinant `t² / (1 + (t−1)|z|)³`. The parameter
//! domain is `t > 0` rather than `t ≥ 1`: the denominator satisfies
//! `1 + (t−1)r ≥ min(1, t) > 0` on the disc, every formula stays valid, and
//! the extension is what makes `f_t⁻¹ = f_{1/t}` available.

use std::ops::Sub;

use crate::specnorm2::SymmetricForm;
use crate::{Error, Result};

/// Closed-disc membership slack: `x² + y² ≤ 1 + MEMBERSHIP_TOL`.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Below this radius the Jacobian is the exact origin matrix `diag(t, t)`.
const ORIGIN_RADIUS_CUTOFF: f64 = 1e-300;

/// A point `(x, y)` of the closed unit disc, up to rounding slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    /// Validating constructor. The fields stay public for plain-data use;
    /// every operation re-checks membership on entry.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let p = Self { x, y };
        p.check()?;
        Ok(p)
    }

    pub fn origin() -> Self {
        Self { x: 0.0, y: 0.0 }
    }

    pub fn radius(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn radius_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Euclidean distance to another point.
    pub fn distance(self, other: DiscPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub(crate) fn check(self) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite()) {
            return Err(Error::NonFinite {
                what: "disc point coordinates",
            });
        }
        if self.radius_sq() > 1.0 + MEMBERSHIP_TOL {
            return Err(Error::OutsideDisc { x: self.x, y: self.y });
        }
        Ok(())
    }
}

/// 2×2 matrix of first partials, row i = component, column j = direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Jacobian2 {
    pub fn identity() -> Self {
        Self::diagonal(1.0)
    }

    pub fn diagonal(d: f64) -> Self {
        Self {
            m11: d,
            m12: 0.0,
            m21: 0.0,
            m22: d,
        }
    }

    pub fn det(self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Reads the matrix as the form `(a, b, c) = (m11, m12, m22)`. Intended
    /// for the symmetric matrices this crate produces (`m12 = m21`).
    pub fn to_symmetric_form(self) -> SymmetricForm {
        SymmetricForm::new(self.m11, self.m12, self.m22)
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(self) -> f64 {
        self.m11
            .abs()
            .max(self.m12.abs())
            .max(self.m21.abs())
            .max(self.m22.abs())
    }
}

impl Sub for Jacobian2 {
    type Output = Jacobian2;

    fn sub(self, rhs: Jacobian2) -> Jacobian2 {
        Jacobian2 {
            m11: self.m11 - rhs.m11,
            m12: self.m12 - rhs.m12,
            m21: self.m21 - rhs.m21,
            m22: self.m22 - rhs.m22,
        }
    }
}

/// The diffeomorphism `f_t`. `t > 1` pushes mass toward the boundary,
/// `t < 1` toward the origin, `t = 1` is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialDiffeo {
    t: f64,
}

impl RadialDiffeo {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidParameter(t));
        }
        Ok(Self { t })
    }

    pub fn identity() -> Self {
        Self { t: 1.0 }
    }

    /// Construction for parameters already known positive (group operations).
    pub(crate) fn from_raw(t: f64) -> Self {
        debug_assert!(t > 0.0, "radial parameter must stay positive, got {t}");
        Self { t }
    }

    pub fn t(self) -> f64 {
        self.t
    }

    /// `f_t(p) = t·p / (1 + (t−1)|p|)`. Fixes the origin and every boundary
    /// point; the image stays in the closed disc.
    pub fn evaluate(self, p: DiscPoint) -> Result<DiscPoint> {
        p.check()?;
        let den = 1.0 + (self.t - 1.0) * p.radius();
        Ok(DiscPoint {
            x: self.t * p.x / den,
            y: self.t * p.y / den,
        })
    }

    /// Exact Jacobian matrix at `p`.
    ///
    /// Away from the origin, with `r = |p|` and `den = 1 + (t−1)r`:
    ///
    /// ```text
    /// m11 = (t·r + t(t−1)y²) / (r·den²)      m12 = t(1−t)xy / (r·den²)
    /// m21 = m12                              m22 = (t·r + t(t−1)x²) / (r·den²)
    /// ```
    ///
    /// At the origin the matrix is `diag(t, t)`; the formula entries tend to
    /// the same limit along any approach.
    pub fn jacobian_at(self, p: DiscPoint) -> Result<Jacobian2> {
        p.check()?;
        let t = self.t;
        let r = p.radius();
        if r < ORIGIN_RADIUS_CUTOFF {
            return Ok(Jacobian2::diagonal(t));
        }
        let den = 1.0 + (t - 1.0) * r;
        let scale = r * den * den;
        let off = t * (1.0 - t) * p.x * p.y / scale;
        Ok(Jacobian2 {
            m11: (t * r + t * (t - 1.0) * p.y * p.y) / scale,
            m12: off,
            m21: off,
            m22: (t * r + t * (t - 1.0) * p.x * p.x) / scale,
        })
    }

    /// `det J(f_t)(p) = t² / (1 + (t−1)|p|)³`, strictly positive on the disc.
    pub fn jacobian_det(self, p: DiscPoint) -> Result<f64> {
        p.check()?;
        let den = 1.0 + (self.t - 1.0) * p.radius();
        Ok(self.t * self.t / (den * den * den))
    }

    /// Operator 2-norm of the Jacobian in closed form:
    /// `‖J(f_t)(p)‖ = t / (1 + (t−1)|p|)`.
    ///
    /// This is the direct formula, not a call into the spectral engine; the
    /// two routes agreeing is what the test suite checks.
    pub fn jacobian_norm(self, p: DiscPoint) -> Result<f64> {
        p.check()?;
        Ok(self.t / (1.0 + (self.t - 1.0) * p.radius()))
    }

    /// `(max, min)` of `‖J(f_t)‖` over the closed disc. The norm is monotone
    /// in `|p|`, so the extrema sit at the origin and the boundary:
    /// `(t, 1)` for `t ≥ 1`, `(1, t)` for `t < 1`.
    pub fn norm_extrema(self) -> (f64, f64) {
        if self.t >= 1.0 {
            (self.t, 1.0)
        } else {
            (1.0, self.t)
        }
    }
}
