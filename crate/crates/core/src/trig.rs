//! Hyperbolic and trigonometric functions built from the exponential
//! families, with residual checks for their Pythagorean and derivative
//! identities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::exponential::{accumulate_outward, exp_hilger_allow_zero, Exponent};
use crate::report::ResidualReport;
use crate::timescale::{Grid, TimeScale};
use crate::transforms::{require_regressive, RegressivityKind};

/// Imaginary residue tolerated in values that are real in theory.
pub const REALITY_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrigFamily {
    Hilger,
    BohnerPeterson,
    Cayley,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrigKind {
    Hyperbolic,
    Trigonometric,
}

/// Values `(c(t), s(t))` of one family on a grid: `(cosh, sinh)` for the
/// hyperbolic kind, `(cos, sin)` for the trigonometric kind. Trigonometric
/// values have exactly zero imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigPair {
    pub family: TrigFamily,
    pub kind: TrigKind,
    pub parameter: Coefficient,
    pub t0: f64,
    pub grid: Grid,
    pub values: Vec<(Complex64, Complex64)>,
}

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn half_sum_diff(p: Complex64, m: Complex64) -> (Complex64, Complex64) {
    ((p + m) * 0.5, (p - m) * 0.5)
}

fn exact_param(param: &Coefficient) -> Result<Complex64> {
    param
        .as_constant()
        .ok_or_else(|| Error::Unsupported("exact functions need a constant parameter".into()))
}

fn real_omega(omega: &Coefficient) -> Result<()> {
    if omega.is_real() {
        Ok(())
    } else {
        Err(Error::Unsupported("trigonometric functions need a real omega".into()))
    }
}

fn hilger_trig_omega(ts: &TimeScale, omega: &Coefficient) -> Result<f64> {
    let w = omega.as_constant().ok_or_else(|| {
        Error::Unsupported("Hilger trigonometric functions are only available for constant omega".into())
    })?;
    if ts.constant_graininess().is_none() {
        return Err(Error::ConstantGraininess);
    }
    Ok(w.re)
}

fn to_real(z: Complex64) -> Result<Complex64> {
    if z.im.abs() >= REALITY_TOL * z.re.abs().max(1.0) {
        return Err(Error::NotReal { residue: z.im });
    }
    Ok(Complex64::new(z.re, 0.0))
}

/// Hyperbolic pair `(cosh_alpha(t, t0), sinh_alpha(t, t0))`.
///
/// Hilger pairs `e_alpha` with `e_{ominus alpha}`, Bohner-Peterson with
/// `e_{-alpha}`, Cayley with `E_{-alpha}`. Bohner-Peterson tolerates a
/// vanishing factor `1 - alpha mu = 0`: the affected exponential is then zero
/// from that point on.
pub fn hyp(
    family: TrigFamily,
    ts: &TimeScale,
    alpha: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    match family {
        TrigFamily::Hilger => {
            require_regressive(RegressivityKind::MuRegressive, ts, alpha, t0, t)?;
            let p = Exponent::hilger(alpha).eval(ts, t0, t, tol)?;
            let m = Exponent::hilger_ominus(alpha).eval(ts, t0, t, tol)?;
            Ok(half_sum_diff(p, m))
        }
        TrigFamily::BohnerPeterson => {
            let p = exp_hilger_allow_zero(ts, alpha, t, t0, tol)?;
            let m = exp_hilger_allow_zero(ts, &alpha.negated(), t, t0, tol)?;
            Ok(half_sum_diff(p, m))
        }
        TrigFamily::Cayley => {
            require_regressive(RegressivityKind::CayleyRegressive, ts, alpha, t0, t)?;
            let p = Exponent::cayley(alpha).eval(ts, t0, t, tol)?;
            let m = Exponent::cayley(&alpha.negated()).eval(ts, t0, t, tol)?;
            Ok(half_sum_diff(p, m))
        }
        TrigFamily::Exact => {
            let a = exact_param(alpha)?;
            let x = a * (ts.snap(t)? - ts.snap(t0)?);
            Ok((x.cosh(), x.sinh()))
        }
    }
}

/// Trigonometric pair `(cos_omega(t, t0), sin_omega(t, t0))` for real `omega`.
pub fn trig(
    family: TrigFamily,
    ts: &TimeScale,
    omega: &Coefficient,
    t: f64,
    t0: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    real_omega(omega)?;
    match family {
        TrigFamily::Cayley | TrigFamily::BohnerPeterson => {
            let iw = omega.scaled(I);
            let (c, s) = hyp(family, ts, &iw, t, t0, tol)?;
            Ok((to_real(c)?.re, to_real(s / I)?.re))
        }
        TrigFamily::Exact => {
            let w = exact_param(omega)?.re;
            let x = w * (ts.snap(t)? - ts.snap(t0)?);
            Ok((x.cos(), x.sin()))
        }
        TrigFamily::Hilger => {
            let w = hilger_trig_omega(ts, omega)?;
            trig(TrigFamily::Exact, ts, &Coefficient::real(w), t, t0, tol)
        }
    }
}

/// Exponential values on a grid for the pair making up a hyperbolic function.
fn pair_on_grid(
    family: TrigFamily,
    ts: &TimeScale,
    param: &Coefficient,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<Vec<(Complex64, Complex64)>> {
    let pts = grid.points();
    let (Some(&first), Some(&last)) = (pts.first(), pts.last()) else {
        return Ok(Vec::new());
    };
    let (lo, hi) = (first.min(t0), last.max(t0));
    let neg = param.negated();
    let (p, m) = match family {
        TrigFamily::Hilger => {
            require_regressive(RegressivityKind::MuRegressive, ts, param, lo, hi)?;
            (
                accumulate_outward(ts, &Exponent::hilger(param), t0, pts, tol)?,
                accumulate_outward(ts, &Exponent::hilger_ominus(param), t0, pts, tol)?,
            )
        }
        TrigFamily::Cayley => {
            require_regressive(RegressivityKind::CayleyRegressive, ts, param, lo, hi)?;
            (
                accumulate_outward(ts, &Exponent::cayley(param), t0, pts, tol)?,
                accumulate_outward(ts, &Exponent::cayley(&neg), t0, pts, tol)?,
            )
        }
        TrigFamily::BohnerPeterson => {
            let regular = require_regressive(RegressivityKind::MuRegressive, ts, param, lo, hi).is_ok()
                && require_regressive(RegressivityKind::MuRegressive, ts, &neg, lo, hi).is_ok();
            if regular {
                (
                    accumulate_outward(ts, &Exponent::hilger(param), t0, pts, tol)?,
                    accumulate_outward(ts, &Exponent::hilger(&neg), t0, pts, tol)?,
                )
            } else {
                let mut p = Vec::with_capacity(pts.len());
                let mut m = Vec::with_capacity(pts.len());
                for &t in pts {
                    p.push(exp_hilger_allow_zero(ts, param, t, t0, tol)?);
                    m.push(exp_hilger_allow_zero(ts, &neg, t, t0, tol)?);
                }
                (p, m)
            }
        }
        TrigFamily::Exact => unreachable!("exact values are computed directly"),
    };
    Ok(p.into_iter().zip(m).map(|(p, m)| half_sum_diff(p, m)).collect())
}

/// Evaluates a hyperbolic or trigonometric pair on every grid point, with
/// cost linear in the grid size.
pub fn trig_evaluate_grid(
    family: TrigFamily,
    kind: TrigKind,
    ts: &TimeScale,
    param: &Coefficient,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<TrigPair> {
    let t0 = ts.snap(t0)?;
    let values = match (family, kind) {
        (TrigFamily::Exact, TrigKind::Hyperbolic) => grid
            .points()
            .iter()
            .map(|&t| hyp(family, ts, param, t, t0, tol))
            .collect::<Result<Vec<_>>>()?,
        (TrigFamily::Exact, TrigKind::Trigonometric) | (TrigFamily::Hilger, TrigKind::Trigonometric) => grid
            .points()
            .iter()
            .map(|&t| trig(family, ts, param, t, t0, tol).map(|(c, s)| (c.into(), s.into())))
            .collect::<Result<Vec<_>>>()?,
        (_, TrigKind::Hyperbolic) => pair_on_grid(family, ts, param, t0, grid, tol)?,
        (_, TrigKind::Trigonometric) => {
            real_omega(param)?;
            pair_on_grid(family, ts, &param.scaled(I), t0, grid, tol)?
                .into_iter()
                .map(|(c, s)| Ok((to_real(c)?, to_real(s / I)?)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(TrigPair {
        family,
        kind,
        parameter: param.clone(),
        t0,
        grid: grid.clone(),
        values,
    })
}

/// Residuals of `cosh^2 - sinh^2` or `cos^2 + sin^2` on a grid.
///
/// The reference is `1` for Hilger, Cayley and exact functions. For
/// Bohner-Peterson functions it is the deformation factor `e_{-mu p^2}`
/// (hyperbolic) or `e_{mu p^2}` (trigonometric), and the residual is taken
/// relative to it since the factor grows along the scale.
pub fn pythagorean_residual(
    family: TrigFamily,
    kind: TrigKind,
    ts: &TimeScale,
    param: &Coefficient,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<ResidualReport> {
    let pair = trig_evaluate_grid(family, kind, ts, param, t0, grid, tol)?;
    let sign = match kind {
        TrigKind::Hyperbolic => -1.0,
        TrigKind::Trigonometric => 1.0,
    };
    let mut report = ResidualReport::new(match kind {
        TrigKind::Hyperbolic => "pythagorean-hyperbolic",
        TrigKind::Trigonometric => "pythagorean-trigonometric",
    });
    let deformation = if family == TrigFamily::BohnerPeterson {
        Some(accumulate_outward(
            ts,
            &Exponent::hilger_mu_square(param, sign),
            pair.t0,
            grid.points(),
            tol,
        )?)
    } else {
        None
    };
    for (k, (&t, &(c, s))) in grid.points().iter().zip(&pair.values).enumerate() {
        let lhs = c * c + s * s * sign;
        match &deformation {
            Some(d) => {
                let r = (lhs - d[k]).norm() / d[k].norm().max(1.0);
                report.push_with_reference(t, r, d[k]);
            }
            None => report.push(t, (lhs - ONE).norm()),
        }
    }
    Ok(report)
}

/// Residuals of the Cayley derivative formulas
/// `Cosh^D = alpha <Sinh>`, `Sinh^D = alpha <Cosh>` (hyperbolic) or
/// `Cos^D = -omega <Sin>`, `Sin^D = omega <Cos>` (trigonometric), where
/// `<x> = (x + x^sigma) / 2`. The residual at `t` is the larger of the two.
///
/// Scattered points use the exact forward quotient, dense points a numeric
/// derivative; a left-scattered maximum is skipped.
pub fn derivative_residual(
    kind: TrigKind,
    ts: &TimeScale,
    param: &Coefficient,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<ResidualReport> {
    let pair_at = |t: f64| -> Result<(Complex64, Complex64)> {
        match kind {
            TrigKind::Hyperbolic => hyp(TrigFamily::Cayley, ts, param, t, t0, tol),
            TrigKind::Trigonometric => {
                trig(TrigFamily::Cayley, ts, param, t, t0, tol).map(|(c, s)| (c.into(), s.into()))
            }
        }
    };
    let mut report = ResidualReport::new(match kind {
        TrigKind::Hyperbolic => "derivative-hyperbolic",
        TrigKind::Trigonometric => "derivative-trigonometric",
    });
    for &t in grid.points() {
        if ts.is_left_scattered_max(t)? {
            report.skip(t);
            continue;
        }
        let t = ts.snap(t)?;
        let mu = ts.mu(t)?;
        let p = param.eval(t);
        let (c, s) = pair_at(t)?;
        let (dc, ds, avg_c, avg_s) = if mu > 0.0 {
            let (cs, ss) = pair_at(ts.sigma(t)?)?;
            ((cs - c) / mu, (ss - s) / mu, (c + cs) * 0.5, (s + ss) * 0.5)
        } else {
            let h0 = 1e-2 * grid.dense_step().min(1.0);
            let dc = ts.delta_derivative_numeric(|u| pair_at(u).map_or(Complex64::new(f64::NAN, 0.0), |v| v.0), t, h0)?;
            let ds = ts.delta_derivative_numeric(|u| pair_at(u).map_or(Complex64::new(f64::NAN, 0.0), |v| v.1), t, h0)?;
            (dc, ds, c, s)
        };
        let (rc, rs) = match kind {
            TrigKind::Hyperbolic => ((dc - p * avg_s).norm(), (ds - p * avg_c).norm()),
            TrigKind::Trigonometric => ((dc + p * avg_s).norm(), (ds - p * avg_c).norm()),
        };
        report.push(t, rc.max(rs));
    }
    Ok(report)
}

/// Delta derivatives of `cos(omega t)` and `sin(omega t)` at a point with
/// graininess `mu`; `mu = 0` gives the ordinary derivatives.
pub fn exact_trig_delta(omega: f64, mu: f64, t: f64) -> (f64, f64) {
    let (s, c) = (omega * t).sin_cos();
    if mu == 0.0 {
        return (-omega * s, omega * c);
    }
    // sin(w mu) / mu and (cos(w mu) - 1) / mu, the latter without cancellation.
    let a = (omega * mu).sin() / mu;
    let b = -2.0 * (0.5 * omega * mu).sin().powi(2) / mu;
    (b * c - a * s, a * c + b * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timescale::Component;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn integers(n: usize) -> TimeScale {
        TimeScale::uniform(0.0, 1.0, n).unwrap()
    }

    fn mixed() -> TimeScale {
        TimeScale::new(vec![
            Component::Interval { lo: 0.0, hi: 1.0 },
            Component::Point(1.5),
            Component::Point(2.0),
            Component::Interval { lo: 2.5, hi: 3.0 },
        ])
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn trivial_at_t0() {
        let a = Coefficient::constant(c(0.3, 0.1));
        for family in [TrigFamily::Hilger, TrigFamily::BohnerPeterson, TrigFamily::Cayley, TrigFamily::Exact] {
            assert_eq!(hyp(family, &integers(3), &a, 1.0, 1.0, TOL).unwrap(), (c(1.0, 0.0), c(0.0, 0.0)));
            assert_eq!(trig(family, &integers(3), &Coefficient::real(0.7), 1.0, 1.0, TOL).unwrap(), (1.0, 0.0));
        }
    }

    #[test]
    fn hyperbolic_examples() {
        let one = Coefficient::real(1.0);
        let (ch, sh) = hyp(TrigFamily::Cayley, &integers(3), &one, 1.0, 0.0, TOL).unwrap();
        assert!(close(ch, c(5.0 / 3.0, 0.0), 1e-15));
        assert!(close(sh, c(4.0 / 3.0, 0.0), 1e-15));
        let (ch, sh) = hyp(TrigFamily::BohnerPeterson, &integers(3), &one, 1.0, 0.0, TOL).unwrap();
        assert!(close(ch, c(1.0, 0.0), 1e-15));
        assert!(close(sh, c(1.0, 0.0), 1e-15));
        let (ch, sh) = hyp(TrigFamily::Hilger, &integers(3), &one, 1.0, 0.0, TOL).unwrap();
        // e_1(1) = 2, e_{ominus 1}(1) = 1/2.
        assert!(close(ch, c(1.25, 0.0), 1e-15));
        assert!(close(sh, c(0.75, 0.0), 1e-15));
    }

    #[test]
    fn trigonometric_examples() {
        let (cs, sn) = trig(TrigFamily::Cayley, &integers(3), &Coefficient::real(1.0), 1.0, 0.0, TOL).unwrap();
        assert!((cs - 0.6).abs() < 1e-15 && (sn - 0.8).abs() < 1e-15);
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        let (cs, sn) = trig(TrigFamily::Exact, &unit, &Coefficient::real(PI), 0.5, 0.0, TOL).unwrap();
        assert!(cs.abs() < 1e-15 && (sn - 1.0).abs() < 1e-15);
        let (cs, sn) = trig(TrigFamily::BohnerPeterson, &integers(3), &Coefficient::real(1.0), 1.0, 0.0, TOL).unwrap();
        assert!((cs - 1.0).abs() < 1e-15 && (sn - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hilger_trig_only_in_constant_case() {
        let w = Coefficient::real(0.4);
        let (cs, sn) = trig(TrigFamily::Hilger, &integers(4), &w, 3.0, 0.0, TOL).unwrap();
        assert_eq!((cs, sn), ((0.4 * 3.0f64).cos(), (0.4 * 3.0f64).sin()));
        assert!(matches!(trig(TrigFamily::Hilger, &mixed(), &w, 2.0, 0.0, TOL), Err(Error::ConstantGraininess)));
        let tab = Coefficient::tabulated(vec![0.0, 3.0], vec![c(0.1, 0.0), c(0.2, 0.0)], true).unwrap();
        assert!(matches!(trig(TrigFamily::Hilger, &integers(4), &tab, 3.0, 0.0, TOL), Err(Error::Unsupported(_))));
    }

    #[test]
    fn complex_omega_is_rejected() {
        let w = Coefficient::constant(c(1.0, 0.5));
        assert!(trig(TrigFamily::Cayley, &integers(3), &w, 1.0, 0.0, TOL).is_err());
    }

    #[test]
    fn pythagorean_examples() {
        let ts = integers(6);
        let g = ts.make_grid(0.0, 5.0, 1.0).unwrap();
        let one = Coefficient::real(1.0);
        let r = pythagorean_residual(TrigFamily::Cayley, TrigKind::Trigonometric, &ts, &one, 0.0, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-12);
        let r = pythagorean_residual(TrigFamily::BohnerPeterson, TrigKind::Trigonometric, &ts, &one, 0.0, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-14);
        assert_eq!(r.points[1].reference, Some(c(2.0, 0.0)));
        let r = pythagorean_residual(TrigFamily::Exact, TrigKind::Trigonometric, &mixed(), &Coefficient::real(2.3), 0.0, &mixed().make_grid(0.0, 3.0, 0.1).unwrap(), TOL).unwrap();
        assert!(r.max_residual() < 1e-15);
    }

    #[test]
    fn pythagorean_on_mixed_scale() {
        let ts = mixed();
        let g = ts.make_grid(0.0, 3.0, 0.1).unwrap();
        let a = Coefficient::constant(c(0.7, -0.4));
        for family in [TrigFamily::Cayley, TrigFamily::Hilger, TrigFamily::Exact] {
            let r = pythagorean_residual(family, TrigKind::Hyperbolic, &ts, &a, 0.5, &g, TOL).unwrap();
            assert!(r.max_residual() < 1e-12, "{family:?}: {}", r.max_residual());
        }
        let r = pythagorean_residual(TrigFamily::BohnerPeterson, TrigKind::Hyperbolic, &ts, &a, 0.5, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-10);
        let w = Coefficient::real(1.7);
        for family in [TrigFamily::Cayley, TrigFamily::BohnerPeterson] {
            let r = pythagorean_residual(family, TrigKind::Trigonometric, &ts, &w, 0.5, &g, TOL).unwrap();
            assert!(r.max_residual() < 1e-12, "{family:?}: {}", r.max_residual());
        }
    }

    #[test]
    fn bp_boundary_hyperbolic_on_grid() {
        let ts = integers(5);
        let g = ts.make_grid(0.0, 4.0, 1.0).unwrap();
        let pair = trig_evaluate_grid(TrigFamily::BohnerPeterson, TrigKind::Hyperbolic, &ts, &Coefficient::real(1.0), 0.0, &g, TOL).unwrap();
        assert_eq!(pair.values[0], (c(1.0, 0.0), c(0.0, 0.0)));
        for k in 1..5 {
            let half = 2f64.powi(k) / 2.0;
            assert!(close(pair.values[k as usize].0, c(half, 0.0), 1e-14));
            assert!(close(pair.values[k as usize].1, c(half, 0.0), 1e-14));
        }
    }

    #[test]
    fn grid_matches_pointwise() {
        let ts = mixed();
        let g = ts.make_grid(0.0, 3.0, 0.25).unwrap();
        let w = Coefficient::real(1.1);
        let pair = trig_evaluate_grid(TrigFamily::Cayley, TrigKind::Trigonometric, &ts, &w, 1.5, &g, TOL).unwrap();
        for (&t, &(cs, sn)) in g.points().iter().zip(&pair.values) {
            let (pc, ps) = trig(TrigFamily::Cayley, &ts, &w, t, 1.5, TOL).unwrap();
            assert!((cs.re - pc).abs() < 1e-12 && (sn.re - ps).abs() < 1e-12);
            assert_eq!((cs.im, sn.im), (0.0, 0.0));
        }
    }

    #[test]
    fn parity() {
        let ts = TimeScale::uniform(-3.0, 0.5, 13).unwrap();
        let a = Coefficient::constant(c(0.6, 0.2));
        for family in [TrigFamily::Cayley, TrigFamily::Hilger, TrigFamily::BohnerPeterson, TrigFamily::Exact] {
            for t in [-3.0, -1.0, 0.5, 3.0] {
                let (cp, sp) = hyp(family, &ts, &a, t, 0.0, TOL).unwrap();
                let (cm, sm) = hyp(family, &ts, &a.negated(), t, 0.0, TOL).unwrap();
                if family == TrigFamily::Hilger {
                    continue;
                }
                assert!(close(cp, cm, 1e-12) && close(sp, -sm, 1e-12), "{family:?} t={t}");
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let ts = integers(4);
        let g = ts.make_grid(0.0, 3.0, 1.0).unwrap();
        let r = derivative_residual(TrigKind::Trigonometric, &ts, &Coefficient::real(1.0), 0.0, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-14);
        assert_eq!(r.skipped, vec![3.0]);
        let r = derivative_residual(TrigKind::Hyperbolic, &ts, &Coefficient::real(1.0), 0.0, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-13);
        let r = derivative_residual(TrigKind::Trigonometric, &ts, &Coefficient::real(0.0), 0.0, &g, TOL).unwrap();
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn derivative_on_dense_points() {
        let ts = mixed();
        let g = ts.make_grid(0.0, 3.0, 0.25).unwrap();
        let r = derivative_residual(TrigKind::Trigonometric, &ts, &Coefficient::real(1.3), 0.0, &g, TOL).unwrap();
        assert!(r.max_residual() < 1e-7, "{}", r.max_residual());
    }

    #[test]
    fn exact_trig_delta_examples() {
        let (cd, sd) = exact_trig_delta(PI, 1.0, 0.0);
        assert!((cd + 2.0).abs() < 1e-15 && sd.abs() < 1e-15);
        assert_eq!(exact_trig_delta(0.0, 0.5, 1.0), (0.0, 0.0));
        let (cd, sd) = exact_trig_delta(1.0, 1e-8, 0.3);
        assert!((cd + 0.3f64.sin()).abs() < 1e-7 && (sd - 0.3f64.cos()).abs() < 1e-7);
        let (cd, sd) = exact_trig_delta(0.8, 0.5, 0.7);
        let want_c = ((0.8 * 1.2f64).cos() - (0.8 * 0.7f64).cos()) / 0.5;
        let want_s = ((0.8 * 1.2f64).sin() - (0.8 * 0.7f64).sin()) / 0.5;
        assert!((cd - want_c).abs() < 1e-14 && (sd - want_s).abs() < 1e-14);
    }
}
