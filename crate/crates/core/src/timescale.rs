//! Time scales built from finitely many closed intervals and isolated points,
//! with jump operators, graininess, grids and the delta integral.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, CompensatedSum, DEFAULT_MAX_DEPTH};

/// Absolute tolerance used when locating a value inside the scale. Components
/// closer than this are rejected at construction.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Component {
    Interval { lo: f64, hi: f64 },
    Point(f64),
}

impl Component {
    pub fn start(&self) -> f64 {
        match *self {
            Component::Interval { lo, .. } => lo,
            Component::Point(t) => t,
        }
    }

    pub fn end(&self) -> f64 {
        match *self {
            Component::Interval { hi, .. } => hi,
            Component::Point(t) => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Density {
    Dense,
    Scattered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClass {
    pub right: Density,
    pub left: Density,
}

/// A nonempty closed subset of the real line made of finitely many disjoint
/// components, stored in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeScale {
    components: Vec<Component>,
}

impl TimeScale {
    /// Builds a time scale from components in any order. Components must be
    /// pairwise disjoint and separated by more than [`MEMBERSHIP_TOL`].
    pub fn new(mut components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidTimeScale("no components".into()));
        }
        for c in &components {
            match *c {
                Component::Interval { lo, hi } => {
                    if !lo.is_finite() || !hi.is_finite() {
                        return Err(Error::InvalidTimeScale("non-finite interval bound".into()));
                    }
                    if hi - lo <= MEMBERSHIP_TOL {
                        return Err(Error::InvalidTimeScale(format!(
                            "interval [{lo}, {hi}] is empty or degenerate"
                        )));
                    }
                }
                Component::Point(t) => {
                    if !t.is_finite() {
                        return Err(Error::InvalidTimeScale("non-finite point".into()));
                    }
                }
            }
        }
        components.sort_by(|a, b| a.start().total_cmp(&b.start()));
        for w in components.windows(2) {
            if w[1].start() - w[0].end() <= MEMBERSHIP_TOL {
                return Err(Error::InvalidTimeScale(format!(
                    "components ending at {} and starting at {} overlap or are closer than {MEMBERSHIP_TOL:e}",
                    w[0].end(),
                    w[1].start()
                )));
            }
        }
        Ok(Self { components })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Component::Interval { lo, hi }])
    }

    pub fn points(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&t| Component::Point(t)).collect())
    }

    /// The slice `{start + k*step : k = 0..count}` of a uniform lattice.
    pub fn uniform(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || count == 0 {
            return Err(Error::InvalidTimeScale(
                "uniform scale needs a positive step and count".into(),
            ));
        }
        let pts: Vec<f64> = (0..count).map(|k| start + k as f64 * step).collect();
        Self::points(&pts)
    }

    pub fn union(&self, other: &TimeScale) -> Result<Self> {
        let mut all = self.components.clone();
        all.extend_from_slice(&other.components);
        Self::new(all)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn min(&self) -> f64 {
        self.components[0].start()
    }

    pub fn max(&self) -> f64 {
        self.components[self.components.len() - 1].end()
    }

    pub fn is_discrete(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Point(_)))
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_ok()
    }

    /// Returns the component index holding `t` and `t` snapped onto an exact
    /// endpoint when it lies within [`MEMBERSHIP_TOL`] of one.
    pub(crate) fn locate(&self, t: f64) -> Result<(usize, f64)> {
        if !t.is_finite() {
            return Err(Error::Domain { t });
        }
        let idx = self
            .components
            .partition_point(|c| c.start() <= t + MEMBERSHIP_TOL);
        if idx == 0 {
            return Err(Error::Domain { t });
        }
        let k = idx - 1;
        let c = self.components[k];
        if (t - c.start()).abs() <= MEMBERSHIP_TOL {
            return Ok((k, c.start()));
        }
        if (t - c.end()).abs() <= MEMBERSHIP_TOL {
            return Ok((k, c.end()));
        }
        match c {
            Component::Interval { lo, hi } if t > lo && t < hi => Ok((k, t)),
            _ => Err(Error::Domain { t }),
        }
    }

    /// Snaps `t` to the representable member it denotes.
    pub fn snap(&self, t: f64) -> Result<f64> {
        self.locate(t).map(|(_, s)| s)
    }

    /// Forward jump operator, with `sigma(max) = max`.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let (k, t) = self.locate(t)?;
        Ok(self.sigma_at(k, t))
    }

    fn sigma_at(&self, k: usize, t: f64) -> f64 {
        let c = self.components[k];
        if let Component::Interval { hi, .. } = c {
            if t < hi {
                return t;
            }
        }
        self.components.get(k + 1).map_or(t, Component::start)
    }

    /// Backward jump operator, with `rho(min) = min`.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let (k, t) = self.locate(t)?;
        if let Component::Interval { lo, .. } = self.components[k] {
            if t > lo {
                return Ok(t);
            }
        }
        Ok(if k == 0 {
            t
        } else {
            self.components[k - 1].end()
        })
    }

    /// True when `t` is the maximum of the scale and is left-scattered, i.e.
    /// `t` lies outside the kappa-restricted scale.
    pub fn is_left_scattered_max(&self, t: f64) -> Result<bool> {
        let (k, _) = self.locate(t)?;
        Ok(k + 1 == self.components.len()
            && k > 0
            && matches!(self.components[k], Component::Point(_)))
    }

    /// Graininess `sigma(t) - t`, defined away from a left-scattered maximum.
    pub fn mu(&self, t: f64) -> Result<f64> {
        let (k, s) = self.locate(t)?;
        if self.is_left_scattered_max(s)? {
            return Err(Error::Kappa { t });
        }
        Ok(self.sigma_at(k, s) - s)
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        let s = self.snap(t)?;
        let density = |other: f64| {
            if other == s {
                Density::Dense
            } else {
                Density::Scattered
            }
        };
        Ok(PointClass {
            right: density(self.sigma(s)?),
            left: density(self.rho(s)?),
        })
    }

    pub fn is_right_scattered(&self, t: f64) -> Result<bool> {
        let (k, s) = self.locate(t)?;
        Ok(self.sigma_at(k, s) > s)
    }

    /// Graininess shared by every point of the scale, if there is one: zero
    /// for a single interval or point, the common spacing for a uniform
    /// discrete scale.
    pub fn constant_graininess(&self) -> Option<f64> {
        match self.components.as_slice() {
            [_] => Some(0.0),
            comps if self.is_discrete() => {
                let first = comps[0].start();
                let last = comps[comps.len() - 1].start();
                let step = (last - first) / (comps.len() - 1) as f64;
                let uniform = comps.windows(2).all(|w| {
                    let d = w[1].start() - w[0].start();
                    (d - step).abs() <= 1e-9 * step.max(1.0)
                });
                uniform.then_some(step)
            }
            _ => None,
        }
    }

    /// Right-scattered points `s` in `[lo, hi)` together with `mu(s)`, in
    /// increasing order. The bounds may be given in either order.
    pub fn jumps_between(&self, t0: f64, t1: f64) -> Result<Vec<(f64, f64)>> {
        let a = self.snap(t0.min(t1))?;
        let b = self.snap(t0.max(t1))?;
        Ok(self
            .components
            .windows(2)
            .map(|w| (w[0].end(), w[1].start() - w[0].end()))
            .filter(|&(s, _)| s >= a && s < b)
            .collect())
    }

    /// Delta integral of `f` from `t0` to `t1`.
    ///
    /// Right-scattered points in `[t0, t1)` contribute `mu(s) * f(s)`; the
    /// dense parts are integrated by adaptive Simpson to absolute tolerance
    /// `tol` per interval. Terms are accumulated in increasing `t` with
    /// compensated summation. Antisymmetric in the bounds.
    pub fn delta_integral<F>(&self, f: F, t0: f64, t1: f64, tol: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        self.delta_integral_split(t0, t1, tol, &[], &f, &mut |s, mu| Ok(f(s) * mu))
    }

    /// Delta integral with separate dense and jump contributions.
    ///
    /// `dense` is integrated over the continuous parts, split additionally at
    /// every entry of `breaks` lying strictly inside an interval. `jump(s, mu)`
    /// must return the full contribution of the right-scattered point `s`,
    /// normally `mu * g(s)`.
    pub fn delta_integral_split(
        &self,
        t0: f64,
        t1: f64,
        tol: f64,
        breaks: &[f64],
        dense: &dyn Fn(f64) -> Complex64,
        jump: &mut dyn FnMut(f64, f64) -> Result<Complex64>,
    ) -> Result<Complex64> {
        if !(tol > 0.0) {
            return Err(Error::Unsupported(format!("tolerance must be positive, got {tol}")));
        }
        let (k0, a) = self.locate(t0)?;
        let (k1, b) = self.locate(t1)?;
        match a.total_cmp(&b) {
            Ordering::Equal => return Ok(Complex64::new(0.0, 0.0)),
            Ordering::Greater => {
                return self
                    .delta_integral_split(b, a, tol, breaks, dense, jump)
                    .map(|v| -v)
            }
            Ordering::Less => {}
        }
        let mut acc = CompensatedSum::new();
        for k in k0..=k1 {
            let comp = self.components[k];
            if let Component::Interval { lo, hi } = comp {
                let lo = lo.max(a);
                let hi = hi.min(b);
                if hi > lo {
                    let mut cuts: Vec<f64> = breaks
                        .iter()
                        .copied()
                        .filter(|&x| x > lo && x < hi)
                        .collect();
                    cuts.sort_by(f64::total_cmp);
                    cuts.dedup();
                    let mut left = lo;
                    for right in cuts.into_iter().chain(std::iter::once(hi)) {
                        // Pieces are right-continuous; take the left limit at a break.
                        let piece = |s: f64| {
                            if s == right && breaks.contains(&right) {
                                dense(right.next_down())
                            } else {
                                dense(s)
                            }
                        };
                        acc.add(adaptive_simpson(&piece, left, right, tol, DEFAULT_MAX_DEPTH)?);
                        left = right;
                    }
                }
            }
            let end = comp.end();
            if k + 1 < self.components.len() && end >= a && end < b {
                let mu = self.components[k + 1].start() - end;
                acc.add(jump(end, mu)?);
            }
        }
        Ok(acc.value())
    }

    /// Delta derivative of `f` at `t`.
    ///
    /// At right-scattered points this is the exact forward quotient. At
    /// right-dense points the difference-quotient limit is estimated by
    /// Richardson extrapolation starting from step `h0` (central differences
    /// where the interval allows, one-sided otherwise). For smooth `f` and
    /// `h0` around `1e-2` the dense estimate is typically good to `1e-9`.
    pub fn delta_derivative_numeric<F>(&self, f: F, t: f64, h0: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let (k, s) = self.locate(t)?;
        if self.is_left_scattered_max(s)? {
            return Err(Error::Kappa { t });
        }
        let sig = self.sigma_at(k, s);
        if sig > s {
            return Ok((f(sig) - f(s)) / (sig - s));
        }
        let Component::Interval { lo, hi } = self.components[k] else {
            return Err(Error::Unsupported(format!(
                "no derivative at {t}: isolated point without neighbours"
            )));
        };
        let room_r = hi - s;
        let room_l = s - lo;
        if room_r >= h0 && room_l >= h0 {
            let central = |h: f64| (f(s + h) - f(s - h)) / (2.0 * h);
            Ok(richardson(central, h0, 2))
        } else if room_r >= room_l {
            let h = h0.min(room_r);
            Ok(richardson(|h| (f(s + h) - f(s)) / h, h, 1))
        } else {
            let h = h0.min(room_l);
            Ok(richardson(|h| (f(s) - f(s - h)) / h, h, 1))
        }
    }

    /// Sampling grid over `[t0, t1]`: every isolated point and interval
    /// endpoint in range, plus evenly spaced interior points no more than
    /// `dense_step` apart.
    pub fn make_grid(&self, t0: f64, t1: f64, dense_step: f64) -> Result<Grid> {
        if !(dense_step > 0.0) || !dense_step.is_finite() {
            return Err(Error::Unsupported(format!(
                "dense step must be positive and finite, got {dense_step}"
            )));
        }
        let a = self.snap(t0)?;
        let b = self.snap(t1)?;
        if a > b {
            return Err(Error::Unsupported(format!("empty grid range [{t0}, {t1}]")));
        }
        let mut points = Vec::new();
        for comp in &self.components {
            match *comp {
                Component::Point(p) => {
                    if p >= a && p <= b {
                        points.push(p);
                    }
                }
                Component::Interval { lo, hi } => {
                    let lo = lo.max(a);
                    let hi = hi.min(b);
                    if lo > hi {
                        continue;
                    }
                    if lo == hi {
                        points.push(lo);
                        continue;
                    }
                    let n = ((hi - lo) / dense_step).ceil().max(1.0) as usize;
                    let width = hi - lo;
                    points.extend((0..n).map(|i| lo + width * (i as f64 / n as f64)));
                    points.push(hi);
                }
            }
        }
        Ok(Grid { points, dense_step })
    }
}

fn richardson<F>(d: F, h0: f64, order: i32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    const LEVELS: usize = 5;
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(LEVELS);
    let mut h = h0;
    for i in 0..LEVELS {
        let mut row = vec![d(h)];
        for j in 1..=i {
            let factor = 2f64.powi(order * j as i32);
            let prev = row[j - 1];
            let above = table[i - 1][j - 1];
            row.push(prev + (prev - above) / (factor - 1.0));
        }
        table.push(row);
        h *= 0.5;
    }
    table[LEVELS - 1][LEVELS - 1]
}

/// Strictly increasing sample points of a time scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    points: Vec<f64>,
    dense_step: f64,
}

impl Grid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn dense_step(&self) -> f64 {
        self.dense_step
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Position of `t` in the grid, matching within [`MEMBERSHIP_TOL`].
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let idx = self.points.partition_point(|&p| p < t - MEMBERSHIP_TOL);
        (idx < self.points.len() && (self.points[idx] - t).abs() <= MEMBERSHIP_TOL).then_some(idx)
    }

    /// Contiguous run of the grid, itself a valid grid over its own range.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Grid {
        Grid {
            points: self.points[range].to_vec(),
            dense_step: self.dense_step,
        }
    }
}
