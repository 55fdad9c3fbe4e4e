//! Independent reference computations for tests and verification runs:
//! eigenvalue-based norms, brute-force sweeps, finite-difference Jacobians,
//! and polar-grid sups. None of these share code with the closed-form paths
//! they check — independence is their entire value. They are also allowed to
//! be slow.

use std::f64::consts::TAU;
use std::str::FromStr;

use crate::radial_family::{DiscPoint, Jacobian2, RadialDiffeo};
use crate::specnorm2::SymmetricForm;
use crate::{Error, Result};

/// Polar grid dimensions: `radii` samples of `[0, 1]` including both ends,
/// `angles` equally spaced directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
}

impl GridSpec {
    pub fn new(radii: usize, angles: usize) -> Result<Self> {
        if radii < 2 || angles < 4 {
            return Err(Error::Domain(format!(
                "grid must have at least 2 radii and 4 angles, got {radii}x{angles}"
            )));
        }
        Ok(Self { radii, angles })
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `"RxA"`, e.g. `"64x64"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Domain(format!("expected a grid like 64x64, got {s:?}"));
        let (r, a) = s.split_once(['x', 'X']).ok_or_else(err)?;
        let radii: usize = r.trim().parse().map_err(|_| err())?;
        let angles: usize = a.trim().parse().map_err(|_| err())?;
        GridSpec::new(radii, angles)
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.radii, self.angles)
    }
}

/// Operator 2-norm of `[[a,b],[b,c]]` via its eigenvalues
/// `((a+c) ± √((a−c)² + 4b²)) / 2`.
///
/// The large-magnitude root comes from the sign-matched branch of the
/// quadratic formula; the other follows from the product `λ₁λ₂ = det`, so no
/// subtractive cancellation occurs.
pub fn eigen_norm(form: SymmetricForm) -> f64 {
    let SymmetricForm { a, b, c } = form;
    let trace = a + c;
    let disc = (a - c).hypot(2.0 * b);
    let big = 0.5 * (trace.abs() + disc);
    let small = if big > 0.0 {
        ((a * c - b * b) / big).abs()
    } else {
        0.0
    };
    big.max(small)
}

/// Brute-force maximum of `F` over `n` equally spaced unit vectors. Always a
/// lower bound on the true maximum, within `O(1/n²)` of it.
pub fn grid_max_form(form: SymmetricForm, n: usize) -> f64 {
    assert!(n >= 4, "angle sweep needs at least 4 samples, got {n}");
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        let th = TAU * k as f64 / n as f64;
        let v = form.eval(th.cos(), th.sin());
        if v > best {
            best = v;
        }
    }
    best
}

/// Central-difference Jacobian of `f_t` with step `h`.
///
/// The stencil needs room on both sides: `|p| > 10h` keeps it away from the
/// origin kink of the radius, `|p| + h ≤ 1` keeps it inside the disc.
pub fn fd_jacobian(d: RadialDiffeo, p: DiscPoint, h: f64) -> Result<Jacobian2> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let r = p.radius();
    if r <= 10.0 * h {
        return Err(Error::Domain(format!(
            "stencil too close to the origin: |p| = {r}, h = {h}"
        )));
    }
    if r + h > 1.0 {
        return Err(Error::Domain(format!(
            "stencil leaves the closed disc: |p| = {r}, h = {h}"
        )));
    }
    let east = d.evaluate(DiscPoint::new(p.x + h, p.y)?)?;
    let west = d.evaluate(DiscPoint::new(p.x - h, p.y)?)?;
    let north = d.evaluate(DiscPoint::new(p.x, p.y + h)?)?;
    let south = d.evaluate(DiscPoint::new(p.x, p.y - h)?)?;
    let two_h = 2.0 * h;
    Ok(Jacobian2 {
        m11: (east.x - west.x) / two_h,
        m12: (north.x - south.x) / two_h,
        m21: (east.y - west.y) / two_h,
        m22: (north.y - south.y) / two_h,
    })
}

/// Maximum of a pointwise function over the polar grid, including `r = 0`
/// and `r = 1`. Strict comparison keeps the first (smallest-index) maximizer
/// on ties.
pub fn grid_sup_disc<F>(pointwise: F, g: &GridSpec) -> (f64, DiscPoint)
where
    F: Fn(DiscPoint) -> f64,
{
    let mut best = f64::NEG_INFINITY;
    let mut arg = DiscPoint::origin();
    for i in 0..g.radii {
        let r = i as f64 / (g.radii - 1) as f64;
        for j in 0..g.angles {
            let th = TAU * j as f64 / g.angles as f64;
            let p = DiscPoint {
                x: r * th.cos(),
                y: r * th.sin(),
            };
            let v = pointwise(p);
            if v > best {
                best = v;
                arg = p;
            }
        }
    }
    (best, arg)
}
