//! CSV and JSON rendering. CSV numbers carry 17 significant digits in
//! scientific notation with a '.' separator; lines end in LF.

use serde::Serialize;
use tscale_core::{Complex64, ResidualReport};

pub const SCHEMA: &str = "tscale/1";

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn complex_csv(points: &[f64], values: &[Complex64]) -> String {
    let mut out = String::from("t,re,im\n");
    for (&t, v) in points.iter().zip(values) {
        out.push_str(&format!("{},{},{}\n", num(t), num(v.re), num(v.im)));
    }
    out
}

pub fn residual_csv(report: &ResidualReport) -> String {
    let mut out = String::from("t,residual\n");
    for p in &report.points {
        out.push_str(&format!("{},{}\n", num(p.t), num(p.residual)));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct Sample {
    pub t: f64,
    pub re: f64,
    pub im: f64,
}

pub fn samples(points: &[f64], values: &[Complex64]) -> Vec<Sample> {
    points
        .iter()
        .zip(values)
        .map(|(&t, v)| Sample { t, re: v.re, im: v.im })
        .collect()
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}
