//! Closed-form maximization of `F(u,v) = (au+bv)² + (bu+cv)²` on the closed
//! unit disc.
//!
//! `F` is the squared image norm of the symmetric matrix `M = [[a,b],[b,c]]`,
//! so the maximum over the disc is the largest eigenvalue of `M²` and its
//! square root is the operator 2-norm of `M`. The engine reaches that value
//! through the Lagrange-multiplier case analysis on the sign of `a² − c²`,
//! returning the stationary candidates and a maximizing unit vector along the
//! way. Degenerate inputs the analysis excludes (`b = 0`, the zero triple)
//! are still accepted: Jacobians of radial maps produce them on the axes.

use crate::{Error, Result};

/// Coefficients `(a, b, c)` of the symmetric matrix `[[a, b], [b, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SymmetricForm {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `F(u, v) = (au + bv)² + (bu + cv)²`.
    pub fn eval(self, u: f64, v: f64) -> f64 {
        let p = self.a * u + self.b * v;
        let q = self.b * u + self.c * v;
        p * p + q * q
    }

    fn validate(self) -> Result<()> {
        if self.a.is_finite() && self.b.is_finite() && self.c.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite {
                what: "symmetric form coefficients",
            })
        }
    }
}

/// Everything the constrained maximization produces.
#[derive(Debug, Clone, Copy)]
pub struct SpectralSolution {
    /// Larger Lagrange multiplier (largest eigenvalue of `M²`).
    pub lambda_plus: f64,
    /// Smaller Lagrange multiplier.
    pub lambda_minus: f64,
    /// Maximum of `F` on the closed disc.
    pub max_value: f64,
    /// A unit vector attaining the maximum, sign-canonicalized so the first
    /// nonzero coordinate is positive.
    pub argmax: (f64, f64),
    /// The two stationary candidate values in branch order.
    pub candidate_values: (f64, f64),
}

/// Unnormalized convex weights combining the two stationary values in the
/// `a² > c²` analysis: `A = (a² − c² + √disc)²`, `B = 4(a+c)²b²`.
#[derive(Debug, Clone, Copy)]
pub struct CandidateWeights {
    pub a_weight: f64,
    pub b_weight: f64,
}

impl CandidateWeights {
    /// `A / (A + B)`.
    pub fn fraction_a(self) -> f64 {
        self.a_weight / (self.a_weight + self.b_weight)
    }

    /// `B / (A + B)`.
    pub fn fraction_b(self) -> f64 {
        self.b_weight / (self.a_weight + self.b_weight)
    }
}

/// `√((a² − c²)² + 4b²(a+c)²)` in the factored form
/// `|a + c| · √((a − c)² + 4b²)`, which avoids squaring large intermediates
/// and the cancellation the expanded radicand invites.
fn sqrt_discriminant(a: f64, b: f64, c: f64) -> f64 {
    (a + c).abs() * (a - c).hypot(2.0 * b)
}

/// The Lagrange multipliers `((a² + 2b² + c²) ± √disc) / 2`, larger first.
///
/// The smaller root is recovered from the product `λ₊ λ₋ = (b² − ac)²`
/// instead of the subtractive formula, which loses digits when `b² ≈ ac`.
pub fn lagrange_multipliers(form: SymmetricForm) -> Result<(f64, f64)> {
    form.validate()?;
    let SymmetricForm { a, b, c } = form;
    let sum = a * a + 2.0 * b * b + c * c;
    let root = sqrt_discriminant(a, b, c);
    let plus = 0.5 * (sum + root);
    let q = b * b - a * c;
    let minus = if plus > 0.0 { (q / plus) * q } else { 0.0 };
    Ok((plus, minus))
}

/// `A` and `B` as literal expressions of the form coefficients.
pub fn candidate_weights(form: SymmetricForm) -> Result<CandidateWeights> {
    form.validate()?;
    let SymmetricForm { a, b, c } = form;
    let base = (a - c) * (a + c) + sqrt_discriminant(a, b, c);
    Ok(CandidateWeights {
        a_weight: base * base,
        b_weight: 4.0 * (a + c) * (a + c) * b * b,
    })
}

/// Maximizes `F` on the closed unit disc.
///
/// Dispatch follows the sign of `a² − c²` (compared as `|a|` vs `|c|`, which
/// is exact in floating point):
///
/// * `|a| > |c|`, `b ≠ 0` — the two weighted candidates; the larger wins.
/// * `|a| < |c|` — same analysis with `a`, `c` interchanged and the
///   components of the maximizer swapped back.
/// * `a = c` — maximum `a² + b² + 2|ab|` on the diagonal `u = ±v`.
/// * `a = −c` — `F` is the constant `a² + b²` on the unit circle.
/// * `b = 0` — diagonal matrix; maximum `max(a², c²)` on the matching axis.
pub fn max_on_disc(form: SymmetricForm) -> Result<SpectralSolution> {
    form.validate()?;
    let (lambda_plus, lambda_minus) = lagrange_multipliers(form)?;
    let SymmetricForm { a, b, c } = form;

    let (candidate_values, argmax) = if b == 0.0 {
        let axis = if a * a >= c * c { (1.0, 0.0) } else { (0.0, 1.0) };
        ((a * a, c * c), axis)
    } else if a.abs() > c.abs() {
        branch_dominant_a(a, b, c)
    } else if a.abs() < c.abs() {
        let (cands, (u, v)) = branch_dominant_a(c, b, a);
        (cands, (v, u))
    } else if a == c {
        let cands = (a * a + b * b + 2.0 * a * b, a * a + b * b - 2.0 * a * b);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let arg = if a == 0.0 {
            // zero diagonal: F = b² on the whole circle
            (1.0, 0.0)
        } else if a * b > 0.0 {
            (s, s)
        } else {
            (s, -s)
        };
        (cands, arg)
    } else {
        // a = −c: F = (a² + b²)(u² + v²), every unit vector attains the max
        ((a * a + b * b, a * a + b * b), (1.0, 0.0))
    };

    let max_value = candidate_values.0.max(candidate_values.1);
    Ok(SpectralSolution {
        lambda_plus,
        lambda_minus,
        max_value,
        argmax: canonical_sign(argmax),
        candidate_values,
    })
}

/// Operator 2-norm of `[[a, b], [b, c]]`: `√(max F on the disc)`.
pub fn spectral_norm(form: SymmetricForm) -> Result<f64> {
    Ok(max_on_disc(form)?.max_value.sqrt())
}

/// The `a² > c²` branch. Requires `|a| > |c|` and `b ≠ 0`, which make both
/// weights positive. Returns the candidate pair and the stationary unit
/// vector of the winning multiplier.
fn branch_dominant_a(a: f64, b: f64, c: f64) -> ((f64, f64), (f64, f64)) {
    let root = sqrt_discriminant(a, b, c);
    let base = (a - c) * (a + c) + root;
    let weight_a = base * base;
    let weight_b = 4.0 * (a + c) * (a + c) * b * b;
    let total = weight_a + weight_b;
    let (frac_a, frac_b) = (weight_a / total, weight_b / total);

    let first = frac_a * (a * a + b * b) + frac_b * (a * a + b * b + root);
    let second = frac_a * (b * b + c * c) + frac_b * (b * b + c * c - root);

    let sum = a * a + 2.0 * b * b + c * c;
    let lambda_plus = 0.5 * (sum + root);
    let argmax = if first >= second {
        // λ₊ − b² − c² = (a² − c² + √disc)/2 > 0 here
        let nu = lambda_plus - b * b - c * c;
        let nv = (a + c) * b;
        let n = nu.hypot(nv);
        (nu / n, nv / n)
    } else {
        let q = b * b - a * c;
        let lambda_minus = if lambda_plus > 0.0 { (q / lambda_plus) * q } else { 0.0 };
        let nv = a * a + b * b - lambda_minus;
        let nu = -(a + c) * b;
        let n = nu.hypot(nv);
        (nu / n, nv / n)
    };
    ((first, second), argmax)
}

/// Flip signs so the first nonzero coordinate is positive; also normalizes
/// negative zeros.
fn canonical_sign((u, v): (f64, f64)) -> (f64, f64) {
    let (u, v) = (u + 0.0, v + 0.0);
    if u != 0.0 {
        if u < 0.0 {
            (-u, -v)
        } else {
            (u, v)
        }
    } else if v < 0.0 {
        (u, -v)
    } else {
        (u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn multipliers_of_rank_one_diagonal() {
        let (hi, lo) = lagrange_multipliers(SymmetricForm::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!((hi, lo), (1.0, 0.0));
    }

    #[test]
    fn multipliers_of_antidiagonal() {
        let (hi, lo) = lagrange_multipliers(SymmetricForm::new(0.0, 1.0, 0.0)).unwrap();
        assert_eq!((hi, lo), (1.0, 1.0));
    }

    #[test]
    fn multipliers_match_eigenvalues_of_m_squared() {
        // eigenvalues of [[2,1],[1,0]] are 1 ± √2, so the multipliers are (1 ± √2)²
        let (hi, lo) = lagrange_multipliers(SymmetricForm::new(2.0, 1.0, 0.0)).unwrap();
        assert_relative_eq!(hi, 3.0 + 2.0 * SQRT_2, max_relative = 1e-14);
        assert_relative_eq!(lo, 3.0 - 2.0 * SQRT_2, max_relative = 1e-14);
    }

    #[test]
    fn max_of_pure_u_square() {
        let sol = max_on_disc(SymmetricForm::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(sol.max_value, 1.0);
        assert_eq!(sol.argmax, (1.0, 0.0));
    }

    #[test]
    fn max_in_equal_diagonal_case() {
        let sol = max_on_disc(SymmetricForm::new(1.0, 1.0, 1.0)).unwrap();
        assert_relative_eq!(sol.max_value, 4.0, max_relative = 1e-15);
        assert_relative_eq!(sol.argmax.0, 1.0 / SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(sol.argmax.1, 1.0 / SQRT_2, max_relative = 1e-15);
    }

    #[test]
    fn max_in_dominant_a_case() {
        let sol = max_on_disc(SymmetricForm::new(2.0, 1.0, 0.0)).unwrap();
        assert_relative_eq!(sol.max_value, 3.0 + 2.0 * SQRT_2, max_relative = 1e-14);
        assert_relative_eq!(sol.max_value, sol.lambda_plus, max_relative = 1e-14);
        // the returned vector attains the value
        let f = SymmetricForm::new(2.0, 1.0, 0.0).eval(sol.argmax.0, sol.argmax.1);
        assert_relative_eq!(f, sol.max_value, max_relative = 1e-13);
    }

    #[test]
    fn max_in_opposite_diagonal_case() {
        let sol = max_on_disc(SymmetricForm::new(1.0, 1.0, -1.0)).unwrap();
        assert_relative_eq!(sol.max_value, 2.0, max_relative = 1e-15);
        assert_eq!(sol.argmax, (1.0, 0.0));
    }

    #[test]
    fn diagonal_fallback_picks_dominant_axis() {
        let sol = max_on_disc(SymmetricForm::new(3.0, 0.0, -2.0)).unwrap();
        assert_eq!(sol.max_value, 9.0);
        assert_eq!(sol.argmax, (1.0, 0.0));

        let sol = max_on_disc(SymmetricForm::new(1.0, 0.0, 2.0)).unwrap();
        assert_eq!(sol.max_value, 4.0);
        assert_eq!(sol.argmax, (0.0, 1.0));
    }

    #[test]
    fn zero_form_by_convention() {
        let sol = max_on_disc(SymmetricForm::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(sol.max_value, 0.0);
        assert_eq!(sol.argmax, (1.0, 0.0));
    }

    #[test]
    fn argmax_sign_is_canonical() {
        // a = c with ab < 0 maximizes on the anti-diagonal; first coordinate positive
        let sol = max_on_disc(SymmetricForm::new(1.0, -1.0, 1.0)).unwrap();
        assert_relative_eq!(sol.max_value, 4.0, max_relative = 1e-15);
        assert!(sol.argmax.0 > 0.0 && sol.argmax.1 < 0.0);
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(SymmetricForm::new(1.0, 0.0, 1.0)).unwrap(), 1.0);
        assert_relative_eq!(
            spectral_norm(SymmetricForm::new(2.0, 1.0, 0.0)).unwrap(),
            1.0 + SQRT_2,
            max_relative = 1e-14
        );
        assert_eq!(spectral_norm(SymmetricForm::new(0.0, 0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(max_on_disc(SymmetricForm::new(f64::NAN, 0.0, 0.0)).is_err());
        assert!(lagrange_multipliers(SymmetricForm::new(1.0, f64::INFINITY, 0.0)).is_err());
        assert!(candidate_weights(SymmetricForm::new(1.0, 0.0, f64::NAN)).is_err());
    }

    #[test]
    fn weights_are_nonnegative_and_positive_in_the_main_branch() {
        let w = candidate_weights(SymmetricForm::new(2.0, 1.0, 0.0)).unwrap();
        assert!(w.a_weight > 0.0 && w.b_weight > 0.0);
        assert_relative_eq!(w.fraction_a() + w.fraction_b(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn vieta_identities_hold() {
        let form = SymmetricForm::new(3.0, -2.0, 1.5);
        let (hi, lo) = lagrange_multipliers(form).unwrap();
        let sum = form.a * form.a + 2.0 * form.b * form.b + form.c * form.c;
        let prod = (form.b * form.b - form.a * form.c).powi(2);
        assert_relative_eq!(hi + lo, sum, max_relative = 1e-12);
        assert_relative_eq!(hi * lo, prod, max_relative = 1e-12);
        assert!(hi >= lo && lo >= 0.0);
    }
}
