//! Adaptive Simpson quadrature and compensated summation for complex values.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Neumaier-compensated running sum of complex terms.
///
/// Real and imaginary parts carry independent compensation terms. The result
/// depends on the order terms are added in.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        comp + ((sum - t) + x)
    } else {
        comp + ((x - t) + sum)
    };
    (t, c)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol` by recursive
/// Simpson bisection. Fails with [`Error::Tolerance`] if any branch needs more
/// than `max_depth` bisections.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if b < a {
        return adaptive_simpson(f, b, a, tol, max_depth).map(|v| -v);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    step(f, a, b, fa, fm, fb, whole, tol, max_depth).ok_or(Error::Tolerance { tol, a, b })
}

#[inline]
fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Option<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let halves = left + right;
    let delta = halves - whole;
    let err = delta.norm();
    // Once the estimate is at the rounding floor further bisection cannot help.
    let floor = 64.0 * f64::EPSILON * halves.norm();
    if err <= 15.0 * tol || err <= floor {
        return Some(halves + delta / 15.0);
    }
    if depth == 0 || !(lm > a && rm < b) {
        return None;
    }
    let l = step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Some(l + r)
}
