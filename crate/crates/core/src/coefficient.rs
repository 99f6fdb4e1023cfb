//! Coefficient functions `alpha: T -> C` evaluated pointwise on a time scale.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed-form piece of a piecewise coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Piece {
    /// `sum_k coeffs[k] * t^k`, in absolute time.
    Polynomial { coeffs: Vec<Complex64> },
}

impl Piece {
    fn eval(&self, t: f64) -> Complex64 {
        match self {
            Piece::Polynomial { coeffs } => coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c),
        }
    }

    fn map_coeffs(&self, f: impl Fn(Complex64) -> Complex64) -> Piece {
        match self {
            Piece::Polynomial { coeffs } => Piece::Polynomial {
                coeffs: coeffs.iter().map(|&c| f(c)).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientKind {
    Constant {
        value: Complex64,
    },
    /// Piece `i` applies on `[breakpoints[i-1], breakpoints[i])`, with the
    /// first and last pieces extending to infinity.
    Piecewise {
        breakpoints: Vec<f64>,
        pieces: Vec<Piece>,
    },
    /// Values at increasing sample points, linearly interpolated between them
    /// and held constant outside.
    Tabulated {
        points: Vec<f64>,
        values: Vec<Complex64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    kind: CoefficientKind,
    /// Caller's assertion that the coefficient is rd-continuous on the scale it
    /// is used with. Not verified.
    rd_continuous: bool,
}

impl Coefficient {
    pub fn constant(value: Complex64) -> Self {
        Self {
            kind: CoefficientKind::Constant { value },
            rd_continuous: true,
        }
    }

    pub fn real(value: f64) -> Self {
        Self::constant(Complex64::new(value, 0.0))
    }

    pub fn piecewise(breakpoints: Vec<f64>, pieces: Vec<Piece>, rd_continuous: bool) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::Unsupported(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::Unsupported("breakpoints must be finite and increasing".into()));
        }
        Ok(Self {
            kind: CoefficientKind::Piecewise { breakpoints, pieces },
            rd_continuous,
        })
    }

    pub fn tabulated(points: Vec<f64>, values: Vec<Complex64>, rd_continuous: bool) -> Result<Self> {
        if points.is_empty() || points.len() != values.len() {
            return Err(Error::Unsupported("tabulated coefficient needs matching, nonempty points and values".into()));
        }
        if !points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Unsupported("tabulated points must be increasing".into()));
        }
        Ok(Self {
            kind: CoefficientKind::Tabulated { points, values },
            rd_continuous,
        })
    }

    pub fn kind(&self) -> &CoefficientKind {
        &self.kind
    }

    pub fn is_rd_continuous(&self) -> bool {
        self.rd_continuous
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        match &self.kind {
            CoefficientKind::Constant { value } => *value,
            CoefficientKind::Piecewise { breakpoints, pieces } => {
                let i = breakpoints.partition_point(|&b| b <= t);
                pieces[i].eval(t)
            }
            CoefficientKind::Tabulated { points, values } => {
                let i = points.partition_point(|&p| p <= t);
                if i == 0 {
                    values[0]
                } else if i == points.len() {
                    values[i - 1]
                } else {
                    let (t0, t1) = (points[i - 1], points[i]);
                    let w = (t - t0) / (t1 - t0);
                    values[i - 1] * (1.0 - w) + values[i] * w
                }
            }
        }
    }

    pub fn as_constant(&self) -> Option<Complex64> {
        match self.kind {
            CoefficientKind::Constant { value } => Some(value),
            _ => None,
        }
    }

    /// Points where the coefficient may fail to be smooth. Quadrature splits
    /// dense integrals at these.
    pub fn breakpoints(&self) -> &[f64] {
        match &self.kind {
            CoefficientKind::Constant { .. } => &[],
            CoefficientKind::Piecewise { breakpoints, .. } => breakpoints,
            CoefficientKind::Tabulated { points, .. } => points,
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.kind {
            CoefficientKind::Constant { value } => value.im == 0.0,
            CoefficientKind::Piecewise { pieces, .. } => pieces.iter().all(|p| match p {
                Piece::Polynomial { coeffs } => coeffs.iter().all(|c| c.im == 0.0),
            }),
            CoefficientKind::Tabulated { values, .. } => values.iter().all(|c| c.im == 0.0),
        }
    }

    fn map_linear(&self, f: impl Fn(Complex64) -> Complex64 + Copy) -> Self {
        let kind = match &self.kind {
            CoefficientKind::Constant { value } => CoefficientKind::Constant { value: f(*value) },
            CoefficientKind::Piecewise { breakpoints, pieces } => CoefficientKind::Piecewise {
                breakpoints: breakpoints.clone(),
                pieces: pieces.iter().map(|p| p.map_coeffs(f)).collect(),
            },
            CoefficientKind::Tabulated { points, values } => CoefficientKind::Tabulated {
                points: points.clone(),
                values: values.iter().map(|&v| f(v)).collect(),
            },
        };
        Self {
            kind,
            rd_continuous: self.rd_continuous,
        }
    }

    pub fn negated(&self) -> Self {
        self.map_linear(|c| -c)
    }

    pub fn conjugated(&self) -> Self {
        self.map_linear(|c| c.conj())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        self.map_linear(move |c| c * factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn piecewise_is_right_continuous_at_breaks() {
        let a = Coefficient::piecewise(
            vec![1.0],
            vec![
                Piece::Polynomial { coeffs: vec![c(1.0, 0.0)] },
                Piece::Polynomial { coeffs: vec![c(0.0, 0.0), c(2.0, 0.0)] },
            ],
            true,
        )
        .unwrap();
        assert_eq!(a.eval(0.5), c(1.0, 0.0));
        assert_eq!(a.eval(1.0), c(2.0, 0.0));
        assert_eq!(a.eval(3.0), c(6.0, 0.0));
        assert_eq!(a.breakpoints(), &[1.0]);
    }

    #[test]
    fn piecewise_validation() {
        let p = Piece::Polynomial { coeffs: vec![c(1.0, 0.0)] };
        assert!(Coefficient::piecewise(vec![1.0], vec![p.clone()], true).is_err());
        assert!(Coefficient::piecewise(vec![2.0, 1.0], vec![p.clone(), p.clone(), p], true).is_err());
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let a = Coefficient::tabulated(vec![0.0, 1.0], vec![c(0.0, 2.0), c(2.0, 0.0)], true).unwrap();
        assert_eq!(a.eval(0.5), c(1.0, 1.0));
        assert_eq!(a.eval(-3.0), c(0.0, 2.0));
        assert_eq!(a.eval(9.0), c(2.0, 0.0));
        assert!(!a.is_real());
    }

    #[test]
    fn linear_maps_commute_with_eval() {
        let a = Coefficient::piecewise(
            vec![0.0],
            vec![
                Piece::Polynomial { coeffs: vec![c(1.0, 2.0), c(0.5, -1.0)] },
                Piece::Polynomial { coeffs: vec![c(-1.0, 0.0), c(0.0, 0.0), c(3.0, 1.0)] },
            ],
            false,
        )
        .unwrap();
        for t in [-2.0, -0.1, 0.0, 0.7, 2.0] {
            assert_eq!(a.negated().eval(t), -a.eval(t));
            assert_eq!(a.conjugated().eval(t), a.eval(t).conj());
            let z = c(0.0, 1.0);
            assert!((a.scaled(z).eval(t) - a.eval(t) * z).norm() < 1e-15);
        }
        assert!(!a.is_rd_continuous());
    }

    #[test]
    fn serde_roundtrip() {
        let a = Coefficient::constant(c(1.0, -0.5));
        let s = serde_json::to_string(&a).unwrap();
        let back: Coefficient = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }
}
