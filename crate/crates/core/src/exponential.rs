//! Exponential functions on time scales.
//!
//! Four families are provided: Hilger's delta exponential `e_a`, the nabla
//! exponential on uniform lattices with a constant exponent, the Cayley
//! exponential `E_a` built on the Cayley cylinder map, and the exact
//! exponential `exp(a (t - t0))` restricted to the scale.
//!
//! Hilger and Cayley exponentials are evaluated as `exp` of a delta integral
//! of the corresponding cylinder map, so products along long discrete runs
//! are replaced by compensated sums of logarithms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;
use crate::timescale::{Grid, TimeScale};
use crate::transforms::{
    cayley, ominus_mu, oplus_cayley, oplus_mu, require_regressive, xi, zeta, RegressivityKind,
    SINGULAR_MARGIN,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpFamily {
    HilgerDelta,
    NablaConst,
    Cayley,
    Exact,
}

type JumpFn<'a> = Box<dyn Fn(f64, f64) -> Result<Complex64> + 'a>;

/// Integrand of a log-exponential: the dense-part integrand and the full
/// contribution `mu * rate(mu, s)` of a right-scattered point.
pub(crate) struct Exponent<'a> {
    dense: Box<dyn Fn(f64) -> Complex64 + 'a>,
    jump: JumpFn<'a>,
    breaks: Vec<f64>,
}

impl<'a> Exponent<'a> {
    pub(crate) fn hilger(alpha: &'a Coefficient) -> Self {
        Self {
            dense: Box::new(move |s| alpha.eval(s)),
            jump: Box::new(move |s, mu| Ok(xi(mu, alpha.eval(s))? * mu)),
            breaks: alpha.breakpoints().to_vec(),
        }
    }

    pub(crate) fn cayley(alpha: &'a Coefficient) -> Self {
        Self {
            dense: Box::new(move |s| alpha.eval(s)),
            jump: Box::new(move |s, mu| Ok(zeta(mu, alpha.eval(s))? * mu)),
            breaks: alpha.breakpoints().to_vec(),
        }
    }

    /// Exponent of `e_{ominus alpha}`.
    pub(crate) fn hilger_ominus(alpha: &'a Coefficient) -> Self {
        Self {
            dense: Box::new(move |s| -alpha.eval(s)),
            jump: Box::new(move |s, mu| Ok(xi(mu, ominus_mu(mu, alpha.eval(s))?)? * mu)),
            breaks: alpha.breakpoints().to_vec(),
        }
    }

    pub(crate) fn hilger_oplus(a: &'a Coefficient, b: &'a Coefficient) -> Self {
        let mut breaks = a.breakpoints().to_vec();
        breaks.extend_from_slice(b.breakpoints());
        Self {
            dense: Box::new(move |s| a.eval(s) + b.eval(s)),
            jump: Box::new(move |s, mu| Ok(xi(mu, oplus_mu(mu, a.eval(s), b.eval(s)))? * mu)),
            breaks,
        }
    }

    pub(crate) fn cayley_oplus(a: &'a Coefficient, b: &'a Coefficient) -> Self {
        let mut breaks = a.breakpoints().to_vec();
        breaks.extend_from_slice(b.breakpoints());
        Self {
            dense: Box::new(move |s| a.eval(s) + b.eval(s)),
            jump: Box::new(move |s, mu| {
                Ok(zeta(mu, oplus_cayley(mu, a.eval(s), b.eval(s))?)? * mu)
            }),
            breaks,
        }
    }

    /// Exponent of `e_{sign * mu * p^2}`, which vanishes on dense parts.
    pub(crate) fn hilger_mu_square(p: &'a Coefficient, sign: f64) -> Self {
        Self {
            dense: Box::new(|_| Complex64::new(0.0, 0.0)),
            jump: Box::new(move |s, mu| {
                let a = p.eval(s);
                Ok(xi(mu, a * a * (sign * mu))? * mu)
            }),
            breaks: Vec::new(),
        }
    }

    pub(crate) fn log_integral(&self, ts: &TimeScale, t0: f64, t: f64, tol: f64) -> Result<Complex64> {
        ts.delta_integral_split(t0, t, tol, &self.breaks, &*self.dense, &mut |s, mu| {
            (self.jump)(s, mu)
        })
    }

    pub(crate) fn eval(&self, ts: &TimeScale, t0: f64, t: f64, tol: f64) -> Result<Complex64> {
        Ok(self.log_integral(ts, t0, t, tol)?.exp())
    }
}

/// Hilger exponential `e_alpha(t, t0)`.
pub fn exp_hilger(ts: &TimeScale, alpha: &Coefficient, t: f64, t0: f64, tol: f64) -> Result<Complex64> {
    require_regressive(RegressivityKind::MuRegressive, ts, alpha, t0, t)?;
    Exponent::hilger(alpha).eval(ts, t0, t, tol)
}

/// Cayley exponential `E_alpha(t, t0)`.
pub fn exp_cayley(ts: &TimeScale, alpha: &Coefficient, t: f64, t0: f64, tol: f64) -> Result<Complex64> {
    require_regressive(RegressivityKind::CayleyRegressive, ts, alpha, t0, t)?;
    Exponent::cayley(alpha).eval(ts, t0, t, tol)
}

/// Nabla exponential on the lattice `eps Z` with constant exponent:
/// `(1 - alpha eps)^(-t/eps)`. `t` must be a multiple of `eps`.
pub fn exp_nabla_const(eps: f64, alpha: Complex64, t: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::Unsupported(format!("lattice spacing must be positive, got {eps}")));
    }
    let steps = t / eps;
    let n = steps.round();
    if (steps - n).abs() > 1e-9 * n.abs().max(1.0) || n.abs() > f64::from(i32::MAX) {
        return Err(Error::Domain { t });
    }
    let base = Complex64::new(1.0, 0.0) - alpha * eps;
    if base.norm() < SINGULAR_MARGIN {
        return Err(Error::singular("exp_nabla_const", format!("1 - alpha eps = {base} vanishes")));
    }
    Ok(base.powi(-(n as i32)))
}

/// Exact exponential `exp(alpha (t - t0))`.
pub fn exp_exact(alpha: Complex64, t: f64, t0: f64) -> Complex64 {
    (alpha * (t - t0)).exp()
}

fn constant_of(alpha: &Coefficient, family: &str) -> Result<Complex64> {
    alpha
        .as_constant()
        .ok_or_else(|| Error::Unsupported(format!("{family} exponential needs a constant coefficient")))
}

/// Lattice spacing of a uniform discrete scale.
pub(crate) fn lattice_spacing(ts: &TimeScale) -> Result<f64> {
    match ts.constant_graininess() {
        Some(eps) if ts.is_discrete() && eps > 0.0 => Ok(eps),
        _ => Err(Error::ConstantGraininess),
    }
}

/// Evaluates any family at one point.
pub fn exp(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<Complex64> {
    match family {
        ExpFamily::HilgerDelta => exp_hilger(ts, alpha, t, t0, tol),
        ExpFamily::Cayley => exp_cayley(ts, alpha, t, t0, tol),
        ExpFamily::Exact => {
            let a = constant_of(alpha, "exact")?;
            Ok(exp_exact(a, ts.snap(t)?, ts.snap(t0)?))
        }
        ExpFamily::NablaConst => {
            let a = constant_of(alpha, "nabla")?;
            let eps = lattice_spacing(ts)?;
            exp_nabla_const(eps, a, ts.snap(t)? - ts.snap(t0)?)
        }
    }
}

/// `e_alpha` where a factor `1 + mu alpha` may vanish: the product is then
/// zero for every later `t`. Used by Bohner-Peterson hyperbolic functions at
/// the boundary `alpha mu = -1`.
pub(crate) fn exp_hilger_allow_zero(
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<Complex64> {
    let forward = ts.snap(t)? > ts.snap(t0)?;
    for (s, mu) in ts.jumps_between(t0, t)? {
        if !RegressivityKind::MuRegressive.holds(mu, alpha.eval(s)) {
            if forward {
                return Ok(Complex64::new(0.0, 0.0));
            }
            return Err(Error::Regressivity {
                kind: RegressivityKind::MuRegressive,
                t: s,
            });
        }
    }
    Exponent::hilger(alpha).eval(ts, t0, t, tol)
}

/// Hilger exponential of `ominus alpha = -alpha / (1 + mu alpha)`.
pub fn exp_hilger_ominus(ts: &TimeScale, alpha: &Coefficient, t: f64, t0: f64, tol: f64) -> Result<Complex64> {
    require_regressive(RegressivityKind::MuRegressive, ts, alpha, t0, t)?;
    Exponent::hilger_ominus(alpha).eval(ts, t0, t, tol)
}

/// Hilger exponential of `a oplus_mu b = a + b + mu a b`.
pub fn exp_hilger_oplus(
    ts: &TimeScale,
    a: &Coefficient,
    b: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<Complex64> {
    require_regressive(RegressivityKind::MuRegressive, ts, a, t0, t)?;
    require_regressive(RegressivityKind::MuRegressive, ts, b, t0, t)?;
    Exponent::hilger_oplus(a, b).eval(ts, t0, t, tol)
}

/// Cayley exponential of `a oplus b = (a + b) / (1 + mu^2 a b / 4)`.
pub fn exp_cayley_oplus(
    ts: &TimeScale,
    a: &Coefficient,
    b: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<Complex64> {
    require_regressive(RegressivityKind::CayleyRegressive, ts, a, t0, t)?;
    require_regressive(RegressivityKind::CayleyRegressive, ts, b, t0, t)?;
    Exponent::cayley_oplus(a, b).eval(ts, t0, t, tol)
}

/// Hilger exponential `e_{sign mu p^2}(t, t0)`, the deformation factor in the
/// Bohner-Peterson Pythagorean identities (`sign = -1` hyperbolic, `+1`
/// trigonometric).
pub fn exp_hilger_mu_square(
    ts: &TimeScale,
    p: &Coefficient,
    sign: f64,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<Complex64> {
    Exponent::hilger_mu_square(p, sign).eval(ts, t0, t, tol)
}

/// Values of one exponential family over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpEvaluation {
    pub family: ExpFamily,
    pub ts: TimeScale,
    pub alpha: Coefficient,
    pub t0: f64,
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub tol: f64,
}

/// Evaluates a family on every grid point.
///
/// Log-integrals are accumulated outward from `t0` between consecutive grid
/// points and exponentiated once per point, so the cost is linear in the grid
/// size. Regressivity is checked over the whole grid range first.
pub fn exp_evaluate_grid(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<ExpEvaluation> {
    let t0 = ts.snap(t0)?;
    let pts = grid.points();
    let values = match family {
        ExpFamily::HilgerDelta | ExpFamily::Cayley => {
            let (kind, exponent) = if family == ExpFamily::Cayley {
                (RegressivityKind::CayleyRegressive, Exponent::cayley(alpha))
            } else {
                (RegressivityKind::MuRegressive, Exponent::hilger(alpha))
            };
            if let (Some(&first), Some(&last)) = (pts.first(), pts.last()) {
                require_regressive(kind, ts, alpha, first.min(t0), last.max(t0))?;
            }
            accumulate_outward(ts, &exponent, t0, pts, tol)?
        }
        ExpFamily::Exact | ExpFamily::NablaConst => pts
            .iter()
            .map(|&t| exp(family, ts, alpha, t, t0, tol))
            .collect::<Result<Vec<_>>>()?,
    };
    if let Some((i, _)) = values.iter().enumerate().find(|(_, v)| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::singular(
            "exp_evaluate_grid",
            format!("non-finite value at t = {}", pts[i]),
        ));
    }
    Ok(ExpEvaluation {
        family,
        ts: ts.clone(),
        alpha: alpha.clone(),
        t0,
        grid: grid.clone(),
        values,
        tol,
    })
}

pub(crate) fn accumulate_outward(
    ts: &TimeScale,
    exponent: &Exponent<'_>,
    t0: f64,
    pts: &[f64],
    tol: f64,
) -> Result<Vec<Complex64>> {
    let split = pts.partition_point(|&p| p < t0);
    let mut values = vec![Complex64::new(0.0, 0.0); pts.len()];
    let mut acc = CompensatedSum::new();
    let mut prev = t0;
    for i in split..pts.len() {
        acc.add(exponent.log_integral(ts, prev, pts[i], tol)?);
        values[i] = acc.value().exp();
        prev = pts[i];
    }
    let mut acc = CompensatedSum::new();
    let mut prev = t0;
    for i in (0..split).rev() {
        acc.add(exponent.log_integral(ts, prev, pts[i], tol)?);
        values[i] = acc.value().exp();
        prev = pts[i];
    }
    Ok(values)
}

/// `|E(t, t0) E(t0, t1) - E(t, t1)|`.
pub fn check_semigroup(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    t1: f64,
    tol: f64,
) -> Result<f64> {
    let lhs = exp(family, ts, alpha, t, t0, tol)? * exp(family, ts, alpha, t0, t1, tol)?;
    let rhs = exp(family, ts, alpha, t, t1, tol)?;
    Ok((lhs - rhs).norm())
}

/// One-step growth factor `E(sigma(t), t0) / E(t, t0)` of each family.
pub fn sigma_factor(family: ExpFamily, mu: f64, a: Complex64) -> Result<Complex64> {
    match family {
        ExpFamily::HilgerDelta => Ok(Complex64::new(1.0, 0.0) + a * mu),
        ExpFamily::Cayley => cayley(a, Complex64::new(0.5 * mu, 0.0)),
        ExpFamily::Exact => Ok((a * mu).exp()),
        ExpFamily::NablaConst => {
            let den = Complex64::new(1.0, 0.0) - a * mu;
            if den.norm() < SINGULAR_MARGIN {
                return Err(Error::singular("sigma_factor", "1 - alpha mu vanishes"));
            }
            Ok(den.inv())
        }
    }
}

/// `|E(sigma(t), t0) - f(mu, alpha(t)) E(t, t0)|` with the family's one-step
/// factor `f`.
pub fn check_sigma_shift(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<f64> {
    let t = ts.snap(t)?;
    let mu = ts.mu(t)?;
    let sig = ts.sigma(t)?;
    let factor = sigma_factor(family, mu, alpha.eval(t))?;
    let lhs = exp(family, ts, alpha, sig, t0, tol)?;
    let rhs = factor * exp(family, ts, alpha, t, t0, tol)?;
    Ok((lhs - rhs).norm())
}

/// `|E_alpha(t, t0) E_inv(t, t0) - 1|` where `inv` is the family's inverse
/// exponent: `ominus_mu alpha` for Hilger, `-alpha` for Cayley and exact.
pub fn check_inverse(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<f64> {
    let e = exp(family, ts, alpha, t, t0, tol)?;
    let inv = match family {
        ExpFamily::HilgerDelta => exp_hilger_ominus(ts, alpha, t, t0, tol)?,
        ExpFamily::Cayley | ExpFamily::Exact => exp(family, ts, &alpha.negated(), t, t0, tol)?,
        ExpFamily::NablaConst => {
            let a = constant_of(alpha, "nabla")?;
            let eps = lattice_spacing(ts)?;
            let neg = -a / (Complex64::new(1.0, 0.0) - a * eps);
            exp(family, ts, &Coefficient::constant(neg), t, t0, tol)?
        }
    };
    Ok((e * inv - 1.0).norm())
}

/// `|conj E_alpha(t, t0) - E_{conj alpha}(t, t0)|`.
pub fn check_conjugation(
    family: ExpFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<f64> {
    let e = exp(family, ts, alpha, t, t0, tol)?;
    let ec = exp(family, ts, &alpha.conjugated(), t, t0, tol)?;
    Ok((e.conj() - ec).norm())
}

/// `|E_a E_b - E_{a (+) b}|` with the family's own addition.
pub fn check_product_law(
    family: ExpFamily,
    ts: &TimeScale,
    a: &Coefficient,
    b: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<f64> {
    let lhs = exp(family, ts, a, t, t0, tol)? * exp(family, ts, b, t, t0, tol)?;
    let rhs = match family {
        ExpFamily::HilgerDelta => exp_hilger_oplus(ts, a, b, t, t0, tol)?,
        ExpFamily::Cayley => exp_cayley_oplus(ts, a, b, t, t0, tol)?,
        ExpFamily::Exact => {
            let sum = constant_of(a, "exact")? + constant_of(b, "exact")?;
            exp(family, ts, &Coefficient::constant(sum), t, t0, tol)?
        }
        ExpFamily::NablaConst => {
            let (ca, cb) = (constant_of(a, "nabla")?, constant_of(b, "nabla")?);
            let eps = lattice_spacing(ts)?;
            let sum = ca + cb - ca * cb * eps;
            exp(family, ts, &Coefficient::constant(sum), t, t0, tol)?
        }
    };
    Ok((lhs - rhs).norm())
}

/// `| |E_{i omega}(t, t0)| - 1 |` for a real coefficient `omega`.
pub fn check_unit_circle(
    ts: &TimeScale,
    omega: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<f64> {
    if !omega.is_real() {
        return Err(Error::Unsupported("unit-circle check needs a real omega".into()));
    }
    let e = exp_cayley(ts, &omega.scaled(Complex64::new(0.0, 1.0)), t, t0, tol)?;
    Ok((e.norm() - 1.0).abs())
}
