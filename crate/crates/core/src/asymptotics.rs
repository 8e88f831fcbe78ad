//! Singularity data and limit-law constants, in double precision.
//!
//! For `φ(u) = v e^u + 1 - v` the characteristic equation
//! `φ(τ) = τ φ'(τ)` reads `τ = 1 + (1 - v) / (v e^τ)`, and the dominant
//! singularity is `ρ = 1 / (v e^τ)`. The run count of a random `n`-mapping
//! has a moment generating function of quasi-power form with
//! `U(s) = -1 + s + τ(e^s)` and `V(s) = -ln √(1 + ρ(e^s)(1 - e^s))`, so the
//! mean and variance grow like `U'(0) n` and `U''(0) n`.

use std::f64::consts::E;

use serde::Serialize;

use crate::{Error, Result};

const MAX_ITERATIONS: usize = 100;

/// Principal branch of Lambert W: the `w ≥ -1` with `w e^w = x`.
pub fn lambert_w(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if x.is_nan() || x < branch {
        return Err(Error::DomainError { x });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == branch {
        return Ok(-1.0);
    }
    let mut w = if x < -0.25 {
        // expansion around the branch point
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 3.0 {
        x.ln_1p()
    } else {
        let l = x.ln();
        l - l.ln()
    };
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        // Halley step
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            return Ok(w);
        }
    }
    if (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1e-300) {
        Ok(w)
    } else {
        Err(Error::NoConvergence {
            what: "Lambert W",
            iterations: MAX_ITERATIONS,
        })
    }
}

/// Admissible interval for `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VWindow {
    pub lo: f64,
    pub hi: f64,
}

impl Default for VWindow {
    fn default() -> Self {
        VWindow { lo: 0.2, hi: 5.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularityData {
    pub v: f64,
    pub tau: f64,
    pub rho: f64,
}

impl SingularityData {
    /// `τ - 1 - (1 - v)/(v e^τ)`.
    pub fn tau_residual(&self) -> f64 {
        self.tau - 1.0 - (1.0 - self.v) / (self.v * self.tau.exp())
    }

    /// `(1 - v) ρ e^{ρ(1-v)} - (1 - v)/(e v)`.
    pub fn rho_functional_residual(&self) -> f64 {
        let a = 1.0 - self.v;
        a * self.rho * (self.rho * a).exp() - a / (E * self.v)
    }
}

pub fn solve_tau(v: f64) -> Result<SingularityData> {
    solve_tau_in(v, VWindow::default())
}

/// Newton iteration on the characteristic equation from `τ = 1`. `ρ` is
/// taken from `(τ - 1)/(1 - v)` (or `1/e` at `v = 1`) and cross-checked
/// against `1/(v e^τ)` and the Lambert W form.
pub fn solve_tau_in(v: f64, window: VWindow) -> Result<SingularityData> {
    if !(v > window.lo && v < window.hi) {
        return Err(Error::OutsideWindow {
            v,
            lo: window.lo,
            hi: window.hi,
        });
    }
    let c = (1.0 - v) / v;
    let mut tau: f64 = 1.0;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let g = tau - 1.0 - c * (-tau).exp();
        let dg = 1.0 + c * (-tau).exp();
        let step = g / dg;
        tau -= step;
        if step.abs() <= 2.0 * f64::EPSILON * tau.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "characteristic equation",
            iterations: MAX_ITERATIONS,
        });
    }
    let rho_def = 1.0 / (v * tau.exp());
    let rho = if v == 1.0 {
        1.0 / E
    } else if (1.0 - v).abs() < 1e-6 {
        // (τ - 1)/(1 - v) loses digits near v = 1
        rho_def
    } else {
        (tau - 1.0) / (1.0 - v)
    };
    if (rho - rho_def).abs() > 1e-10 * rho.abs().max(1.0) {
        return Err(Error::NoConvergence {
            what: "singularity consistency",
            iterations: MAX_ITERATIONS,
        });
    }
    Ok(SingularityData { v, tau, rho })
}

/// `ρ = W((1 - v)/(e v)) / (1 - v)` for `v ≠ 1`.
pub fn rho_via_lambert(v: f64) -> Result<f64> {
    Ok(lambert_w((1.0 - v) / (E * v))? / (1.0 - v))
}

/// `τ'(v) = 1 / (v (v - 1 - v e^τ))`.
pub fn tau_prime(v: f64) -> Result<f64> {
    let tau = solve_tau(v)?.tau;
    Ok(1.0 / (v * (v - 1.0 - v * tau.exp())))
}

/// `τ''(v) = e^τ / (v D³) + (2 v e^τ + 1 - 2v) / (v² D²)` with
/// `D = v - 1 - v e^τ`.
pub fn tau_double_prime(v: f64) -> Result<f64> {
    let tau = solve_tau(v)?.tau;
    let et = tau.exp();
    let d = v - 1.0 - v * et;
    Ok(et / (v * d * d * d) + (2.0 * v * et + 1.0 - 2.0 * v) / (v * v * d * d))
}

/// `U(s) = -1 + s + τ(e^s)`.
pub fn u_function(s: f64) -> Result<f64> {
    Ok(-1.0 + s + solve_tau(s.exp())?.tau)
}

/// `V(s) = -ln √(1 + ρ(e^s)(1 - e^s))`.
pub fn v_function(s: f64) -> Result<f64> {
    let v = s.exp();
    let rho = solve_tau(v)?.rho;
    Ok(-0.5 * (1.0 + rho * (1.0 - v)).ln())
}

/// Closed-form limits of mean and variance per node.
pub fn mean_constant() -> f64 {
    1.0 - 1.0 / E
}

pub fn variance_constant() -> f64 {
    1.0 / E - 2.0 / (E * E)
}

/// Second-order central differences `(f', f'')` at 0.
pub fn central_difference_2(f: impl Fn(f64) -> Result<f64>, h: f64) -> Result<(f64, f64)> {
    let (fm, f0, fp) = (f(-h)?, f(0.0)?, f(h)?);
    Ok(((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)))
}

/// Fourth-order central differences `(f', f'')` at 0.
pub fn central_difference_4(f: impl Fn(f64) -> Result<f64>, h: f64) -> Result<(f64, f64)> {
    let (fm2, fm1, f0, fp1, fp2) = (f(-2.0 * h)?, f(-h)?, f(0.0)?, f(h)?, f(2.0 * h)?);
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((d1, d2))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CltConstants {
    /// `U'(0)`.
    pub mu: f64,
    /// `U''(0)`.
    pub sigma2: f64,
    pub v_prime0: f64,
    pub v_doubleprime0: f64,
    /// Closed-form `τ'(1)` and `τ''(1)`.
    pub tau_prime1: f64,
    pub tau_doubleprime1: f64,
    /// Whether `mu` and `sigma2` match `1 - 1/e` and `1/e - 2/e²` within
    /// `max(10 h², 1e-8)`.
    pub closed_form_agreement: bool,
}

pub fn clt_constants(h: f64) -> Result<CltConstants> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::StepTooLarge { h });
    }
    let (mu, sigma2) = central_difference_4(u_function, h)?;
    let (v_prime0, v_doubleprime0) = central_difference_4(v_function, h)?;
    let tol = (10.0 * h * h).max(1e-8);
    let closed_form_agreement =
        (mu - mean_constant()).abs() <= tol && (sigma2 - variance_constant()).abs() <= tol;
    Ok(CltConstants {
        mu,
        sigma2,
        v_prime0,
        v_doubleprime0,
        tau_prime1: tau_prime(1.0)?,
        tau_doubleprime1: tau_double_prime(1.0)?,
        closed_form_agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambert_examples() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lambert_w(-1.0 / E).unwrap(), -1.0);
        assert!(matches!(lambert_w(-0.5), Err(Error::DomainError { .. })));
    }

    #[test]
    fn lambert_inverse_property() {
        let mut x = -1.0 / E + 1e-9;
        while x < 1e6 {
            let w = lambert_w(x).unwrap();
            assert!(w >= -1.0);
            let back = w * w.exp();
            assert!(
                (back - x).abs() <= 1e-12 * x.abs().max(1e-3),
                "x = {x}, w = {w}, back = {back}"
            );
            x = if x < 0.0 {
                x * 0.7 + 0.01
            } else {
                x * 1.9 + 0.01
            };
        }
        for &x in &[1e-12, -1e-12, 1e-300, 1e300] {
            let w = lambert_w(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs());
        }
    }

    #[test]
    fn tau_examples() {
        let s = solve_tau(1.0).unwrap();
        assert_eq!(s.tau, 1.0);
        assert!((s.rho - 1.0 / E).abs() < 1e-15);

        // oracle: plain fixed-point iteration of τ = 1 + e^{-τ}
        let mut t = 1.0f64;
        for _ in 0..200 {
            t = 1.0 + (-t).exp();
        }
        let s = solve_tau(0.5).unwrap();
        assert!((s.tau - t).abs() < 1e-12);
        assert!((s.tau - 1.2785).abs() < 5e-5);

        for &v in &[0.25, 0.5, 0.9, 1.1, 2.0, 4.9] {
            let s = solve_tau(v).unwrap();
            assert!((s.rho * v * s.tau.exp() - 1.0).abs() < 1e-12);
            assert!(s.tau_residual().abs() < 1e-13);
            assert!((s.rho - rho_via_lambert(v).unwrap()).abs() < 1e-12);
        }
        assert!(matches!(solve_tau(0.1), Err(Error::OutsideWindow { .. })));
        assert!(solve_tau(f64::NAN).is_err());
    }

    #[test]
    fn rho_functional_equation_on_grid() {
        for i in 1..100 {
            let v = 0.2 + 4.8 * i as f64 / 100.0;
            if (v - 1.0).abs() < 1e-12 {
                continue;
            }
            let s = solve_tau(v).unwrap();
            assert!(s.rho_functional_residual().abs() <= 1e-10, "v = {v}");
        }
    }

    #[test]
    fn lambert_limit_at_one() {
        for &eps in &[1e-3, 1e-5, 1e-7] {
            for v in [1.0 - eps, 1.0 + eps] {
                let r = rho_via_lambert(v).unwrap();
                assert!((r - 1.0 / E).abs() < 2.0 * eps, "v = {v}");
            }
        }
    }

    #[test]
    fn tau_derivatives_match_finite_differences() {
        for &v in &[0.4, 0.8, 1.0, 1.5, 3.0] {
            let h = 1e-4;
            let t = |x: f64| solve_tau(x).unwrap().tau;
            let d1 = (t(v + h) - t(v - h)) / (2.0 * h);
            let d2 = (t(v + h) - 2.0 * t(v) + t(v - h)) / (h * h);
            assert!((d1 - tau_prime(v).unwrap()).abs() < 1e-7, "v = {v}");
            assert!((d2 - tau_double_prime(v).unwrap()).abs() < 1e-4, "v = {v}");
        }
        assert!((tau_prime(1.0).unwrap() + 1.0 / E).abs() < 1e-15);
        let expected = -1.0 / (E * E) + (2.0 * E - 1.0) / (E * E);
        assert!((tau_double_prime(1.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn clt_constant_values() {
        let c = clt_constants(1e-3).unwrap();
        assert!((c.mu - 0.632_120_558_8).abs() < 1e-9);
        assert!((c.sigma2 - 0.097_208_874_698).abs() < 1e-9);
        assert!((c.mu - mean_constant()).abs() <= 1e-8);
        assert!((c.sigma2 - variance_constant()).abs() <= 1e-8);
        assert!(c.sigma2 > 0.0);
        assert!(c.closed_form_agreement);
        assert!(c.v_prime0.is_finite() && c.v_doubleprime0.is_finite());
        assert!(matches!(
            clt_constants(1e-2),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(clt_constants(0.0).is_err());
    }

    #[test]
    fn second_order_differences_converge_quadratically() {
        let mut errors = Vec::new();
        let mut h = 0.1;
        for _ in 0..4 {
            let (d1, d2) = central_difference_2(u_function, h).unwrap();
            errors.push((
                (d1 - mean_constant()).abs(),
                (d2 - variance_constant()).abs(),
            ));
            h /= 2.0;
        }
        for w in errors.windows(2) {
            let r1 = w[0].0 / w[1].0;
            let r2 = w[0].1 / w[1].1;
            assert!((3.5..4.5).contains(&r1), "first derivative ratio {r1}");
            assert!((3.5..4.5).contains(&r2), "second derivative ratio {r2}");
        }
    }
}
