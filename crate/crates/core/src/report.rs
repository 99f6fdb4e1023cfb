use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub t: f64,
    pub residual: f64,
    /// Right-hand side the residual was measured against, when it is not a
    /// fixed constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Complex64>,
}

/// Pointwise residuals of an identity or dynamic equation over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity: String,
    pub points: Vec<ResidualPoint>,
    /// Grid points where the identity could not be evaluated (missing forward
    /// jumps, boundary stencils).
    pub skipped: Vec<f64>,
}

impl ResidualReport {
    pub fn new(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            points: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, residual: f64) {
        self.points.push(ResidualPoint {
            t,
            residual,
            reference: None,
        });
    }

    pub fn push_with_reference(&mut self, t: f64, residual: f64, reference: Complex64) {
        self.points.push(ResidualPoint {
            t,
            residual,
            reference: Some(reference),
        });
    }

    pub fn skip(&mut self, t: f64) {
        self.skipped.push(t);
    }

    /// Largest residual and where it occurs. A NaN residual wins over any
    /// number; ties keep the earliest point.
    pub fn max(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for p in &self.points {
            match best {
                Some((r, _)) if r.is_nan() || p.residual <= r => {}
                _ => best = Some((p.residual, p.t)),
            }
        }
        best
    }

    pub fn max_residual(&self) -> f64 {
        self.max().map_or(0.0, |(r, _)| r)
    }

    pub fn argmax_t(&self) -> Option<f64> {
        self.max().map(|(_, t)| t)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_tracks_first_largest_and_nan() {
        let mut r = ResidualReport::new("x");
        assert_eq!(r.max_residual(), 0.0);
        assert!(r.passes(1e-300));
        r.push(0.0, 1e-3);
        r.push(1.0, 2e-3);
        r.push(2.0, 2e-3);
        assert_eq!(r.max(), Some((2e-3, 1.0)));
        r.push(3.0, f64::NAN);
        r.push(4.0, 1.0);
        assert!(r.max_residual().is_nan());
        assert_eq!(r.argmax_t(), Some(3.0));
        assert!(!r.passes(10.0));
    }
}
