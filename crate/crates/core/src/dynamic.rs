//! First-order dynamic equations matching each exponential family, the
//! averaging operators, modified delta derivatives and second-order
//! oscillator residuals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::exponential::{sigma_factor, ExpFamily};
use crate::report::ResidualReport;
use crate::timescale::{Component, Grid, TimeScale};
use crate::transforms::{require_regressive, RegressivityKind, SINGULAR_MARGIN};

/// Discretization of `x' = alpha x` at right-scattered points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// `x^D = beta x`, one step multiplies by `1 + mu beta`.
    ExplicitDelta,
    /// `x^D = alpha <x>`, one step multiplies by the Cayley factor.
    TrapezoidalCayley,
    /// `x^D = alpha psi_alpha <x>`, one step multiplies by `exp(alpha mu)`.
    ExactDisc,
}

impl Scheme {
    fn family(self) -> ExpFamily {
        match self {
            Scheme::ExplicitDelta => ExpFamily::HilgerDelta,
            Scheme::TrapezoidalCayley => ExpFamily::Cayley,
            Scheme::ExactDisc => ExpFamily::Exact,
        }
    }
}

/// Complex samples of a function on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Unsupported(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::singular("SampledFunction", format!("non-finite sample at t = {}", grid.points()[k])));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F>(grid: Grid, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let values = grid.points().iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, t: f64) -> Result<Complex64> {
        self.grid
            .index_of(t)
            .map(|i| self.values[i])
            .ok_or(Error::Grid { t })
    }
}

/// `<x>(t) = (x(t) + x(sigma(t))) / 2`.
pub fn average(x: &SampledFunction, ts: &TimeScale, t: f64) -> Result<Complex64> {
    let t = ts.snap(t)?;
    let s = ts.sigma(t)?;
    let xt = x.value_at(t)?;
    if s == t {
        return Ok(xt);
    }
    Ok((xt + x.value_at(s)?) * 0.5)
}

/// Iterated average `<<x>>(t) = (x + 2 x^sigma + x^sigma sigma) / 4`.
pub fn double_average(x: &SampledFunction, ts: &TimeScale, t: f64) -> Result<Complex64> {
    let t = ts.snap(t)?;
    let s = ts.sigma(t)?;
    let xt = x.value_at(t)?;
    if s == t {
        return Ok(xt);
    }
    let ss = ts.sigma(s)?;
    Ok((xt + x.value_at(s)? * 2.0 + x.value_at(ss)?) * 0.25)
}

/// Solves `x(t0) = x0` with the given scheme and samples the solution on
/// `grid`, which must contain `t0`.
///
/// Right-scattered points are stepped with the scheme's exact one-step
/// factor. On dense parts `ExactDisc` uses the closed-form flow and the other
/// schemes integrate `x' = alpha x` with adaptive RK4 at local error `tol`
/// relative to `max(1, |x|)`.
pub fn solve_first_order(
    scheme: Scheme,
    ts: &TimeScale,
    alpha: &Coefficient,
    x0: Complex64,
    t0: f64,
    grid: &Grid,
    tol: f64,
) -> Result<SampledFunction> {
    if !(tol > 0.0) {
        return Err(Error::Unsupported(format!("tolerance must be positive, got {tol}")));
    }
    let t0 = ts.snap(t0)?;
    let start = grid.index_of(t0).ok_or(Error::Grid { t: t0 })?;
    let pts = grid.points();
    let kind = match scheme {
        Scheme::ExplicitDelta => Some(RegressivityKind::MuRegressive),
        Scheme::TrapezoidalCayley => Some(RegressivityKind::CayleyRegressive),
        Scheme::ExactDisc => {
            alpha
                .as_constant()
                .ok_or_else(|| Error::Unsupported("exact discretization needs a constant coefficient".into()))?;
            None
        }
    };
    if let Some(kind) = kind {
        require_regressive(kind, ts, alpha, pts[0], pts[pts.len() - 1])?;
    }
    let stepper = Stepper { scheme, ts, alpha, tol };
    let mut values = vec![Complex64::new(0.0, 0.0); pts.len()];
    values[start] = x0;
    for i in start + 1..pts.len() {
        values[i] = stepper.advance(values[i - 1], pts[i - 1], pts[i])?;
    }
    for i in (0..start).rev() {
        values[i] = stepper.advance(values[i + 1], pts[i + 1], pts[i])?;
    }
    SampledFunction::new(grid.clone(), values)
}

struct Stepper<'a> {
    scheme: Scheme,
    ts: &'a TimeScale,
    alpha: &'a Coefficient,
    tol: f64,
}

impl Stepper<'_> {
    fn advance(&self, mut x: Complex64, from: f64, to: f64) -> Result<Complex64> {
        let ts = self.ts;
        let to = ts.snap(to)?;
        let mut s = ts.snap(from)?;
        while s < to {
            let (k, _) = ts.locate(s)?;
            match ts.components()[k] {
                Component::Interval { hi, .. } if s < hi => {
                    let e = hi.min(to);
                    x = self.flow(x, s, e)?;
                    s = e;
                }
                _ => {
                    let mu = ts.mu(s)?;
                    x *= sigma_factor(self.scheme.family(), mu, self.alpha.eval(s))?;
                    s = ts.sigma(s)?;
                }
            }
        }
        while s > to {
            let (k, _) = ts.locate(s)?;
            match ts.components()[k] {
                Component::Interval { lo, .. } if s > lo => {
                    let e = lo.max(to);
                    x = self.flow(x, s, e)?;
                    s = e;
                }
                _ => {
                    let r = ts.rho(s)?;
                    x /= sigma_factor(self.scheme.family(), s - r, self.alpha.eval(r))?;
                    s = r;
                }
            }
        }
        Ok(x)
    }

    /// Continuous flow of `x' = alpha x` from `a` to `b` inside one interval.
    fn flow(&self, x: Complex64, a: f64, b: f64) -> Result<Complex64> {
        if self.scheme == Scheme::ExactDisc {
            let c = self.alpha.as_constant().unwrap_or_default();
            return Ok(x * (c * (b - a)).exp());
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let mut cuts: Vec<f64> = self
            .alpha
            .breakpoints()
            .iter()
            .copied()
            .filter(|&p| p > lo && p < hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        if b < a {
            cuts.reverse();
        }
        let mut x = x;
        let mut s = a;
        for e in cuts.into_iter().chain(std::iter::once(b)) {
            x = self.rk4(x, s, e)?;
            s = e;
        }
        Ok(x)
    }

    fn rk4(&self, mut x: Complex64, a: f64, b: f64) -> Result<Complex64> {
        let len = (b - a).abs();
        if len == 0.0 {
            return Ok(x);
        }
        let (lo, hi) = (a.min(b), a.max(b));
        // Right-continuous pieces: use the left limit at the upper end.
        let f = |s: f64| {
            let s = if s >= hi { hi.next_down() } else { s.max(lo) };
            self.alpha.eval(s)
        };
        let step = |x: Complex64, s: f64, h: f64| {
            let k1 = f(s) * x;
            let k2 = f(s + 0.5 * h) * (x + k1 * (0.5 * h));
            let k3 = f(s + 0.5 * h) * (x + k2 * (0.5 * h));
            let k4 = f(s + h) * (x + k3 * h);
            x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
        };
        let dir = (b - a).signum();
        let mut s = a;
        let mut h = dir * len.min(0.05);
        while (b - s) * dir > 0.0 {
            if (s + h - b) * dir > 0.0 {
                h = b - s;
            }
            let full = step(x, s, h);
            let half = step(step(x, s, 0.5 * h), s + 0.5 * h, 0.5 * h);
            let err = (half - full).norm() / 15.0;
            let allowed = self.tol * half.norm().max(1.0) * (h.abs() / len);
            if err <= allowed || h.abs() <= 1e-14 * len.max(1.0) {
                if err > allowed {
                    return Err(Error::Tolerance { tol: self.tol, a, b });
                }
                x = half + (half - full) / 15.0;
                s = if (s + h - b) * dir >= 0.0 { b } else { s + h };
            }
            let grow = if err == 0.0 { 2.0 } else { (0.9 * (allowed / err).powf(0.2)).clamp(0.2, 2.0) };
            h *= grow;
        }
        Ok(x)
    }
}

fn pole_guard(value: f64) -> bool {
    value.abs() < SINGULAR_MARGIN
}

/// `psi_alpha(mu) = (2 / (alpha mu)) tanh(alpha mu / 2)`, equal to `1` at
/// `alpha mu = 0`.
pub fn psi(alpha: Complex64, mu: f64) -> Result<Complex64> {
    let z = alpha * mu;
    if z.norm() < 1e-4 {
        let z2 = z * z;
        return Ok(Complex64::new(1.0, 0.0) - z2 / 12.0 + z2 * z2 / 120.0);
    }
    let half = z * 0.5;
    if pole_guard(half.cosh().norm()) {
        return Err(Error::singular("psi", format!("tanh pole at alpha mu = {z}")));
    }
    Ok(half.tanh() * 2.0 / z)
}

/// `phi(x) = (2 / x) tan(x / 2)`, equal to `1` at `x = 0`.
pub fn phi(x: f64) -> Result<f64> {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        return Ok(1.0 + x2 / 12.0 + x2 * x2 / 120.0);
    }
    if pole_guard((0.5 * x).cos()) {
        return Err(Error::singular("phi", format!("tan pole at x = {x}")));
    }
    Ok(2.0 * (0.5 * x).tan() / x)
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    x.sin() / x
}

fn same_interval(ts: &TimeScale, a: f64, b: f64) -> bool {
    match (ts.locate(a), ts.locate(b)) {
        (Ok((i, _)), Ok((j, _))) => i == j && matches!(ts.components()[i], Component::Interval { .. }),
        _ => false,
    }
}

fn evenly_spaced(p: &[f64], i: usize) -> bool {
    let (h0, h1) = (p[i] - p[i - 1], p[i + 1] - p[i]);
    (h1 - h0).abs() <= 1e-9 * h0.abs().max(h1.abs())
}

/// Derivative at a dense grid point from neighbouring samples in the same
/// interval: central differences when possible, second-order one-sided
/// otherwise.
fn dense_derivative(x: &SampledFunction, ts: &TimeScale, i: usize) -> Result<Complex64> {
    let p = x.grid.points();
    let v = &x.values;
    let n = p.len();
    let near = |j: usize| j < n && same_interval(ts, p[i], p[j]);
    if i > 0 && near(i - 1) && near(i + 1) && evenly_spaced(p, i) {
        return Ok((v[i + 1] - v[i - 1]) / (p[i + 1] - p[i - 1]));
    }
    if near(i + 1) && near(i + 2) && evenly_spaced(p, i + 1) {
        let h = p[i + 1] - p[i];
        return Ok((v[i] * -3.0 + v[i + 1] * 4.0 - v[i + 2]) / (2.0 * h));
    }
    if i >= 2 && near(i - 1) && near(i - 2) && evenly_spaced(p, i - 1) {
        let h = p[i] - p[i - 1];
        return Ok((v[i] * 3.0 - v[i - 1] * 4.0 + v[i - 2]) / (2.0 * h));
    }
    if near(i + 1) {
        return Ok((v[i + 1] - v[i]) / (p[i + 1] - p[i]));
    }
    if i > 0 && near(i - 1) {
        return Ok((v[i] - v[i - 1]) / (p[i] - p[i - 1]));
    }
    Err(Error::Grid { t: p[i] })
}

/// Second derivative at an interior dense grid point with a symmetric
/// stencil, if there is one.
fn dense_second_derivative(x: &SampledFunction, ts: &TimeScale, i: usize) -> Option<Complex64> {
    let p = x.grid.points();
    let v = &x.values;
    if i == 0 || i + 1 >= p.len() || !evenly_spaced(p, i) {
        return None;
    }
    if !(same_interval(ts, p[i], p[i - 1]) && same_interval(ts, p[i], p[i + 1])) {
        return None;
    }
    let h = p[i + 1] - p[i];
    Some((v[i + 1] - v[i] * 2.0 + v[i - 1]) / (h * h))
}

/// Samples at `t` and `sigma(t)` plus the graininess, for a right-scattered
/// `t`; `None` when `t` is right-dense.
fn forward_pair(x: &SampledFunction, ts: &TimeScale, t: f64) -> Result<Option<(Complex64, Complex64, f64)>> {
    let mu = ts.mu(t)?;
    if mu == 0.0 {
        return Ok(None);
    }
    Ok(Some((x.value_at(t)?, x.value_at(ts.sigma(t)?)?, mu)))
}

fn index(x: &SampledFunction, t: f64) -> Result<usize> {
    x.grid.index_of(t).ok_or(Error::Grid { t })
}

/// Delta derivative of sampled `x` at a grid point: the forward quotient at
/// right-scattered points, a finite-difference estimate at dense points.
pub fn delta_derivative_sampled(x: &SampledFunction, ts: &TimeScale, t: f64) -> Result<Complex64> {
    let t = ts.snap(t)?;
    match forward_pair(x, ts, t)? {
        Some((a, b, mu)) => Ok((b - a) / mu),
        None => dense_derivative(x, ts, index(x, t)?),
    }
}

/// Modified delta derivative `(x^sigma - x) / delta_alpha(mu)` with
/// `delta_alpha(mu) = (2 / alpha) tanh(alpha mu / 2)`.
pub fn delta_prime(alpha: Complex64, ts: &TimeScale, x: &SampledFunction, t: f64) -> Result<Complex64> {
    let t = ts.snap(t)?;
    match forward_pair(x, ts, t)? {
        Some((a, b, mu)) => {
            let delta = psi(alpha, mu)? * mu;
            if delta.norm() < SINGULAR_MARGIN * mu {
                return Err(Error::singular("delta_prime", format!("delta_alpha(mu) vanishes at t = {t}")));
            }
            Ok((b - a) / delta)
        }
        None => dense_derivative(x, ts, index(x, t)?),
    }
}

fn check_harmonic_step(omega: f64, mu: f64) -> Result<()> {
    if (omega * mu).abs() >= std::f64::consts::PI - SINGULAR_MARGIN {
        return Err(Error::singular("delta_doubleprime", format!("|omega mu| = {} is not below pi", (omega * mu).abs())));
    }
    Ok(())
}

/// Modified delta derivative `(x^sigma - x cos(omega mu)) omega / sin(omega mu)`,
/// which maps sampled harmonic oscillations to their exact derivatives.
pub fn delta_doubleprime(omega: f64, ts: &TimeScale, x: &SampledFunction, t: f64) -> Result<Complex64> {
    let t = ts.snap(t)?;
    match forward_pair(x, ts, t)? {
        Some((a, b, mu)) => {
            check_harmonic_step(omega, mu)?;
            Ok((b - a * (omega * mu).cos()) / (mu * sinc(omega * mu)))
        }
        None => dense_derivative(x, ts, index(x, t)?),
    }
}

/// `x^DD(t)`, if computable: either both `t` and `sigma(t)` are right-scattered
/// with `sigma(sigma(t))` sampled, or `t` is an interior dense point.
pub fn second_delta_derivative(x: &SampledFunction, ts: &TimeScale, t: f64) -> Result<Option<Complex64>> {
    let t = ts.snap(t)?;
    let i = index(x, t)?;
    if ts.is_left_scattered_max(t)? {
        return Ok(None);
    }
    let mu = ts.mu(t)?;
    if mu == 0.0 {
        return Ok(dense_second_derivative(x, ts, i));
    }
    let s = ts.sigma(t)?;
    if ts.is_left_scattered_max(s)? {
        return Ok(None);
    }
    let mu_s = ts.mu(s)?;
    if mu_s == 0.0 {
        return Ok(None);
    }
    let (Some(j), Some(k)) = (x.grid.index_of(s), x.grid.index_of(ts.sigma(s)?)) else {
        return Ok(None);
    };
    let v = &x.values;
    let d0 = (v[j] - v[i]) / mu;
    let d1 = (v[k] - v[j]) / mu_s;
    Ok(Some((d1 - d0) / mu))
}

fn constant_mu(ts: &TimeScale) -> Result<f64> {
    ts.constant_graininess().ok_or(Error::ConstantGraininess)
}

/// Cayley oscillator residual: `|x^DD + omega^2 <<x>>|` for the trigonometric
/// kind, `|x^DD - alpha^2 <<x>>|` for the hyperbolic kind. Points where
/// `x^DD` has no stencil are skipped.
pub fn oscillator_residual_cayley(
    ts: &TimeScale,
    kind: crate::trig::TrigKind,
    param: Complex64,
    x: &SampledFunction,
) -> Result<ResidualReport> {
    constant_mu(ts)?;
    let sign = match kind {
        crate::trig::TrigKind::Trigonometric => 1.0,
        crate::trig::TrigKind::Hyperbolic => -1.0,
    };
    let mut report = ResidualReport::new("oscillator-cayley");
    for &t in x.grid.points() {
        match second_delta_derivative(x, ts, t)? {
            Some(xdd) => {
                let avg = double_average(x, ts, t)?;
                report.push(t, (xdd + param * param * avg * sign).norm());
            }
            None => report.skip(t),
        }
    }
    Ok(report)
}

/// Residuals of the two equivalent exact oscillator equations on a scale of
/// constant graininess.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactOscillatorReport {
    /// `x^DD + omega^2 phi(omega mu)^2 <<x>>`.
    pub phi_form: ResidualReport,
    /// `x^DD + omega^2 sinc(omega mu / 2)^2 x^sigma`.
    pub sinc_form: ResidualReport,
    /// Largest `|cos^2(omega mu / 2) r_phi - r_sinc|`; the two residuals
    /// differ exactly by this factor for any samples.
    pub agreement: f64,
}

pub fn oscillator_residual_exact(ts: &TimeScale, omega: f64, x: &SampledFunction) -> Result<ExactOscillatorReport> {
    let mu = constant_mu(ts)?;
    check_harmonic_step(omega, mu)?;
    let theta = omega * mu;
    let w2phi2 = (omega * phi(theta)?).powi(2);
    let w2sinc2 = (omega * sinc(0.5 * theta)).powi(2);
    let scale = (0.5 * theta).cos().powi(2);
    let mut phi_form = ResidualReport::new("oscillator-exact-phi");
    let mut sinc_form = ResidualReport::new("oscillator-exact-sinc");
    let mut agreement: f64 = 0.0;
    for &t in x.grid.points() {
        let Some(xdd) = second_delta_derivative(x, ts, t)? else {
            phi_form.skip(t);
            sinc_form.skip(t);
            continue;
        };
        let xs = x.value_at(ts.sigma(t)?)?;
        let r1 = xdd + double_average(x, ts, t)? * w2phi2;
        let r2 = xdd + xs * w2sinc2;
        phi_form.push(t, r1.norm());
        sinc_form.push(t, r2.norm());
        agreement = agreement.max((r1 * scale - r2).norm());
    }
    Ok(ExactOscillatorReport { phi_form, sinc_form, agreement })
}

/// Residual of `x^D = sinc(omega mu) x^D'' - (mu omega^2 / 2) sinc(omega mu / 2)^2 x`
/// on a scale of constant graininess. Points whose successor is not sampled
/// are skipped.
pub fn delbis_relation_residual(ts: &TimeScale, omega: f64, x: &SampledFunction) -> Result<ResidualReport> {
    let mu = constant_mu(ts)?;
    check_harmonic_step(omega, mu)?;
    let mut report = ResidualReport::new("delbis");
    for &t in x.grid.points() {
        if ts.is_left_scattered_max(t)? || (mu > 0.0 && x.grid.index_of(ts.sigma(t)?).is_none()) {
            report.skip(t);
            continue;
        }
        let xd = delta_derivative_sampled(x, ts, t)?;
        let xpp = delta_doubleprime(omega, ts, x, t)?;
        let xt = x.value_at(t)?;
        let rhs = xpp * sinc(omega * mu) - xt * (0.5 * mu * (omega * sinc(0.5 * omega * mu)).powi(2));
        report.push(t, (xd - rhs).norm());
    }
    Ok(report)
}

/// Residual of `x^D''D'' + omega^2 x`, computed where `t` and `sigma(t)` are
/// both right-scattered with `sigma(sigma(t))` sampled, and at interior dense
/// points through the second difference.
pub fn harmonic_double_residual(ts: &TimeScale, omega: f64, x: &SampledFunction) -> Result<ResidualReport> {
    let mut report = ResidualReport::new("harmonic-double");
    let pts = x.grid.points();
    for (i, &t) in pts.iter().enumerate() {
        let mu = ts.mu(t).unwrap_or(0.0);
        let value = if ts.is_left_scattered_max(t)? {
            None
        } else if mu == 0.0 {
            dense_second_derivative(x, ts, i)
        } else {
            let s = ts.sigma(t)?;
            let ready = !ts.is_left_scattered_max(s)?
                && ts.mu(s)? > 0.0
                && x.grid.index_of(ts.sigma(s)?).is_some();
            if ready {
                let y0 = delta_doubleprime(omega, ts, x, t)?;
                let y1 = delta_doubleprime(omega, ts, x, s)?;
                check_harmonic_step(omega, mu)?;
                Some((y1 - y0 * (omega * mu).cos()) / (mu * sinc(omega * mu)))
            } else {
                None
            }
        };
        match value {
            Some(v) => report.push(t, (v + x.values[i] * (omega * omega)).norm()),
            None => report.skip(t),
        }
    }
    Ok(report)
}
