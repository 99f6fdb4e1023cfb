//! Convergence of the discrete exponentials to `exp(alpha t)` as the lattice
//! spacing shrinks.

use num_complex::Complex64;
use serde::Serialize;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::exponential::{exp, ExpFamily};
use crate::quadrature::DEFAULT_TOL;
use crate::timescale::TimeScale;

/// Number of trailing points used for the fitted slope.
pub const FIT_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub family: ExpFamily,
    pub alpha: Complex64,
    pub t: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log(error)` against `log(eps)` over the last
    /// [`FIT_POINTS`] rows; `None` when an error is zero.
    pub fitted_slope: Option<f64>,
}

/// `2^-k` for `k = 1..=10`.
pub fn default_eps() -> Vec<f64> {
    (1..=10).map(|k| 0.5f64.powi(k)).collect()
}

/// Evaluates the family on the lattice `{0, eps, ..., t}` for every `eps`
/// and measures `|E(t, 0) - exp(alpha t)|`. `t` must be a multiple of each
/// `eps`.
pub fn study(family: ExpFamily, alpha: Complex64, t: f64, eps: &[f64]) -> Result<ConvergenceStudy> {
    if !(t > 0.0) {
        return Err(Error::Unsupported(format!("target t must be positive, got {t}")));
    }
    let coefficient = Coefficient::constant(alpha);
    let reference = (alpha * t).exp();
    let mut rows = Vec::with_capacity(eps.len());
    for &e in eps {
        if !(e > 0.0) {
            return Err(Error::Unsupported(format!("spacing must be positive, got {e}")));
        }
        let steps = (t / e).round();
        if (steps * e - t).abs() > 1e-12 * t {
            return Err(Error::Unsupported(format!("t = {t} is not a multiple of eps = {e}")));
        }
        let ts = TimeScale::uniform(0.0, e, steps as usize + 1)?;
        let value = exp(family, &ts, &coefficient, ts.max(), 0.0, DEFAULT_TOL)?;
        rows.push(ConvergenceRow { eps: e, error: (value - reference).norm() });
    }
    let fitted_slope = fit_slope(&rows);
    Ok(ConvergenceStudy { family, alpha, t, rows, fitted_slope })
}

/// Least-squares slope of `log(error)` against `log(eps)` over the last
/// [`FIT_POINTS`] rows.
pub fn fit_slope(rows: &[ConvergenceRow]) -> Option<f64> {
    let tail = &rows[rows.len().saturating_sub(FIT_POINTS)..];
    if tail.len() < 2 || tail.iter().any(|r| !(r.error > 0.0) || !r.error.is_finite()) {
        return None;
    }
    let n = tail.len() as f64;
    let xs: Vec<f64> = tail.iter().map(|r| r.eps.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|r| r.error.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let rows: Vec<_> = default_eps()
            .into_iter()
            .map(|eps| ConvergenceRow { eps, error: 3.0 * eps.powi(2) })
            .collect();
        assert!((fit_slope(&rows).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn orders() {
        let one = Complex64::new(1.0, 0.0);
        let cay = study(ExpFamily::Cayley, one, 1.0, &default_eps()).unwrap();
        let s = cay.fitted_slope.unwrap();
        assert!((1.9..=2.1).contains(&s), "{s}");
        let hil = study(ExpFamily::HilgerDelta, one, 1.0, &default_eps()).unwrap();
        let s = hil.fitted_slope.unwrap();
        assert!((0.9..=1.1).contains(&s), "{s}");
        let ex = study(ExpFamily::Exact, one, 1.0, &default_eps()).unwrap();
        assert!(ex.rows.iter().all(|r| r.error <= 1e-13));
    }

    #[test]
    fn rejects_off_lattice_target() {
        assert!(study(ExpFamily::Cayley, Complex64::new(1.0, 0.0), 1.0, &[0.3]).is_err());
    }
}
