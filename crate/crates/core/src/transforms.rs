//! Pointwise scalar maps: the cylinder transforms behind the Hilger and Cayley
//! exponentials, the Cayley transform, both circle-plus additions, the
//! correspondence between Cayley and Hilger exponents, and regressivity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::timescale::{Grid, TimeScale};

/// Distance from a pole below which a map is reported singular.
pub const SINGULAR_MARGIN: f64 = 1e-9;

/// Below this `|h z|` the Cayley cylinder map uses its Taylor series.
const ZETA_SERIES_CUTOFF: f64 = 1e-4;

#[inline]
fn positive_zero(x: f64) -> f64 {
    // Maps -0.0 to +0.0 so that atan2 approaches the cut from above.
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Hilger cylinder map `(1/h) Log(1 + z h)`, with `xi(0, z) = z`.
pub fn xi(h: f64, z: Complex64) -> Result<Complex64> {
    if h == 0.0 {
        return Ok(z);
    }
    let w = z * h;
    let one_plus = Complex64::new(1.0 + w.re, w.im);
    if one_plus.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("xi", format!("1 + z h = {one_plus} vanishes (h = {h}, z = {z})")));
    }
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = positive_zero(w.im).atan2(1.0 + w.re);
    Ok(Complex64::new(re, im) / h)
}

/// Cayley cylinder map `(1/h) Log((1 + z h/2) / (1 - z h/2))`, with
/// `zeta(0, z) = z`. Even in `h`.
pub fn zeta(h: f64, z: Complex64) -> Result<Complex64> {
    let h = h.abs();
    if h == 0.0 {
        return Ok(z);
    }
    let u = z * (0.5 * h);
    let one_minus = Complex64::new(1.0 - u.re, -u.im);
    let one_plus = Complex64::new(1.0 + u.re, u.im);
    if one_minus.norm() < SINGULAR_MARGIN || one_plus.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("zeta", format!("z h / 2 = {u} is at a pole (h = {h})")));
    }
    let hz = z * h;
    if hz.norm() < ZETA_SERIES_CUTOFF {
        let z2 = z * z;
        let h2 = h * h;
        return Ok(z * (Complex64::new(1.0, 0.0) + z2 * (h2 / 12.0) + z2 * z2 * (h2 * h2 / 80.0)));
    }
    // log((1+u)/(1-u)): |1+u|^2 - |1-u|^2 = 4 Re u and (1+u)(1-conj u) = 1 - |u|^2 + 2i Im u.
    let re = 0.5 * (4.0 * u.re / one_minus.norm_sqr()).ln_1p();
    let im = positive_zero(2.0 * u.im).atan2(1.0 - u.norm_sqr());
    Ok(Complex64::new(re, im) / h)
}

/// Inverse of [`zeta`] on its principal strip: `(2/h) tanh(h w / 2)`.
pub fn zeta_inv(h: f64, w: Complex64) -> Result<Complex64> {
    let h = h.abs();
    if h == 0.0 {
        return Ok(w);
    }
    let v = w * (0.5 * h);
    if v.cosh().norm() < SINGULAR_MARGIN {
        return Err(Error::singular("zeta_inv", format!("tanh pole at h w / 2 = {v}")));
    }
    Ok(v.tanh() * (2.0 / h))
}

/// Cayley transform `(1 + a z) / (1 - a z)`.
pub fn cayley(z: Complex64, a: Complex64) -> Result<Complex64> {
    let az = a * z;
    let den = Complex64::new(1.0 - az.re, -az.im);
    if den.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("cayley", format!("a z = {az} equals 1")));
    }
    Ok(Complex64::new(1.0 + az.re, az.im) / den)
}

/// Hilger addition `a + b + mu a b`.
pub fn oplus_mu(mu: f64, a: Complex64, b: Complex64) -> Complex64 {
    a + b + a * b * mu
}

/// Hilger inverse `-a / (1 + mu a)`.
pub fn ominus_mu(mu: f64, a: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) + a * mu;
    if den.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("ominus_mu", format!("1 + mu a = {den} vanishes")));
    }
    Ok(-a / den)
}

/// Cayley addition `(a + b) / (1 + mu^2 a b / 4)`, the relativistic velocity
/// addition with speed limit `2/mu`.
pub fn oplus_cayley(mu: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) + a * b * (0.25 * mu * mu);
    if den.norm() < SINGULAR_MARGIN {
        return Err(Error::singular(
            "oplus_cayley",
            format!("1 + mu^2 a b / 4 = {den} vanishes (mu = {mu}, a = {a}, b = {b})"),
        ));
    }
    Ok((a + b) / den)
}

/// Hilger exponent `beta = a / (1 - mu a / 2)` with `E_a = e_beta`.
pub fn beta_of_alpha(mu: f64, a: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - a * (0.5 * mu);
    if den.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("beta_of_alpha", format!("mu a = {} equals 2", a * mu)));
    }
    Ok(a / den)
}

/// Cayley exponent `alpha = b / (1 + mu b / 2)` with `E_alpha = e_b`.
pub fn alpha_of_beta(mu: f64, b: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) + b * (0.5 * mu);
    if den.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("alpha_of_beta", format!("mu b = {} equals -2", b * mu)));
    }
    Ok(b / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegressivityKind {
    /// `1 + mu a != 0`, required by the Hilger exponential.
    MuRegressive,
    /// `mu a != +-2`, required by the Cayley exponential.
    CayleyRegressive,
    /// Real `a` with `|mu a| < 2`.
    PositivelyRegressive,
}

impl RegressivityKind {
    /// Evaluates the predicate with a margin of [`SINGULAR_MARGIN`].
    pub fn holds(self, mu: f64, a: Complex64) -> bool {
        let ma = a * mu;
        match self {
            RegressivityKind::MuRegressive => Complex64::new(1.0 + ma.re, ma.im).norm() > SINGULAR_MARGIN,
            RegressivityKind::CayleyRegressive => {
                let half = ma * 0.5;
                Complex64::new(1.0 - half.re, -half.im).norm() > SINGULAR_MARGIN
                    && Complex64::new(1.0 + half.re, half.im).norm() > SINGULAR_MARGIN
            }
            RegressivityKind::PositivelyRegressive => {
                a.im == 0.0 && 1.0 - (0.5 * ma.re).abs() > SINGULAR_MARGIN
            }
        }
    }
}

impl std::fmt::Display for RegressivityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegressivityKind::MuRegressive => "mu-regressive",
            RegressivityKind::CayleyRegressive => "Cayley-regressive",
            RegressivityKind::PositivelyRegressive => "positively regressive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressivityReport {
    pub holds: bool,
    pub first_violation: Option<f64>,
}

/// Tests the predicate at every grid point of the kappa-restricted scale. A
/// left-scattered maximum in the grid is skipped.
pub fn check_regressivity(
    kind: RegressivityKind,
    ts: &TimeScale,
    a: &Coefficient,
    grid: &Grid,
) -> RegressivityReport {
    for &t in grid.points() {
        if matches!(ts.is_left_scattered_max(t), Ok(true)) {
            continue;
        }
        let ok = ts.mu(t).map(|mu| kind.holds(mu, a.eval(t))).unwrap_or(false);
        if !ok {
            return RegressivityReport {
                holds: false,
                first_violation: Some(t),
            };
        }
    }
    RegressivityReport {
        holds: true,
        first_violation: None,
    }
}

/// Checks the predicate at every right-scattered point between `t0` and `t`.
/// Dense points satisfy every predicate.
pub(crate) fn require_regressive(
    kind: RegressivityKind,
    ts: &TimeScale,
    a: &Coefficient,
    t0: f64,
    t: f64,
) -> Result<()> {
    for (s, mu) in ts.jumps_between(t0, t)? {
        if !kind.holds(mu, a.eval(s)) {
            return Err(Error::Regressivity { kind, t: s });
        }
    }
    Ok(())
}
