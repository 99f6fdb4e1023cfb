use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use tscale_core::convergence::{default_eps, study};
use tscale_core::dynamic::{delbis_relation_residual, oscillator_residual_cayley, oscillator_residual_exact, solve_first_order};
use tscale_core::exponential::{check_product_law, check_semigroup, check_sigma_shift, check_unit_circle, exp_evaluate_grid};
use tscale_core::trig::{pythagorean_residual, trig_evaluate_grid};
use tscale_core::{
    Coefficient, CoefficientKind, Complex64, ExpFamily, Grid, ResidualPoint, ResidualReport,
    SampledFunction, Scheme, TimeScale, TrigFamily, TrigKind,
};

use crate::args::{
    Command, ConvergeArgs, EvalArgs, Family, Format, Function, Identity, IdentityArgs, Kind,
    OutputArgs, ScaleArgs, SchemeArg, SolveArgs,
};
use crate::error::CliError;
use crate::output::{complex_csv, json, num, residual_csv, samples, Sample, SCHEMA};
use crate::scale_spec::{parse_scale, render_scale};

/// Rendered output of a command and the exit code it implies.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub code: u8,
    pub out: Option<PathBuf>,
}

pub fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Identity(a) => identity(a),
        Command::Converge(a) => converge(a),
        Command::Solve(a) => solve(a),
    }
}

fn name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn exp_family(f: Family) -> Result<ExpFamily, CliError> {
    match f {
        Family::Hilger => Ok(ExpFamily::HilgerDelta),
        Family::Nabla => Ok(ExpFamily::NablaConst),
        Family::Cayley => Ok(ExpFamily::Cayley),
        Family::Exact => Ok(ExpFamily::Exact),
        Family::Bp => Err(config("the bp family uses the hilger exponential; pass --family hilger")),
    }
}

fn trig_family(f: Family) -> Result<TrigFamily, CliError> {
    match f {
        Family::Hilger => Ok(TrigFamily::Hilger),
        Family::Bp => Ok(TrigFamily::BohnerPeterson),
        Family::Cayley => Ok(TrigFamily::Cayley),
        Family::Exact => Ok(TrigFamily::Exact),
        Family::Nabla => Err(config("the nabla family has no hyperbolic or trigonometric functions")),
    }
}

fn trig_kind(k: Kind) -> TrigKind {
    match k {
        Kind::Hyp => TrigKind::Hyperbolic,
        Kind::Trig => TrigKind::Trigonometric,
    }
}

struct Setup {
    ts: TimeScale,
    grid: Grid,
    t0: f64,
    alpha: Coefficient,
    tol: f64,
}

fn load_coefficient(path: &PathBuf) -> Result<Coefficient, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    let kind: CoefficientKind = serde_json::from_str(&text)
        .map_err(|e| config(format!("{}: {e}", path.display())))?;
    Ok(match kind {
        CoefficientKind::Constant { value } => Coefficient::constant(value),
        CoefficientKind::Piecewise { breakpoints, pieces } => Coefficient::piecewise(breakpoints, pieces, true)?,
        CoefficientKind::Tabulated { points, values } => Coefficient::tabulated(points, values, true)?,
    })
}

fn setup(a: &ScaleArgs) -> Result<Setup, CliError> {
    if !(a.tol > 0.0) {
        return Err(config(format!("--tol must be positive, got {}", a.tol)));
    }
    if !(a.dense_step > 0.0 && a.dense_step.is_finite()) {
        return Err(config(format!("--dense-step must be positive, got {}", a.dense_step)));
    }
    let ts = parse_scale(&a.scale)?;
    let (lo, hi) = a.range.unwrap_or((ts.min(), ts.max()));
    for v in [lo, hi] {
        if !ts.contains(v) {
            return Err(config(format!("range endpoint {v} is not in the time scale")));
        }
    }
    let grid = ts.make_grid(lo, hi, a.dense_step)?;
    let t0 = match a.t0 {
        Some(t) if ts.contains(t) => ts.snap(t)?,
        Some(t) => return Err(config(format!("t0 = {t} is not in the time scale"))),
        None => grid.points()[0],
    };
    let alpha = match (&a.coefficient, a.alpha) {
        (Some(path), _) => load_coefficient(path)?,
        (None, Some(v)) => Coefficient::constant(v),
        (None, None) => Coefficient::real(1.0),
    };
    Ok(Setup { ts, grid, t0, alpha, tol: a.tol })
}

fn format_of(o: &OutputArgs, default: Format) -> Format {
    o.format.unwrap_or(default)
}

fn done(text: String, code: u8, o: &OutputArgs) -> Report {
    Report { text, code, out: o.out.clone() }
}

#[derive(Serialize)]
struct Table<'a> {
    schema: &'static str,
    command: &'static str,
    family: String,
    function: String,
    scale: String,
    coefficient: &'a CoefficientKind,
    t0: f64,
    points: Vec<Sample>,
}

fn eval(a: EvalArgs) -> Result<Report, CliError> {
    let s = setup(&a.scale)?;
    let values: Vec<Complex64> = match a.function {
        Function::Exp => exp_evaluate_grid(exp_family(a.family)?, &s.ts, &s.alpha, s.t0, &s.grid, s.tol)?.values,
        f => {
            let kind = if matches!(f, Function::Cosh | Function::Sinh) { TrigKind::Hyperbolic } else { TrigKind::Trigonometric };
            let pair = trig_evaluate_grid(trig_family(a.family)?, kind, &s.ts, &s.alpha, s.t0, &s.grid, s.tol)?;
            let second = matches!(f, Function::Sinh | Function::Sin);
            pair.values.into_iter().map(|(c, s)| if second { s } else { c }).collect()
        }
    };
    let text = match format_of(&a.scale.output, Format::Csv) {
        Format::Csv => complex_csv(s.grid.points(), &values),
        Format::Json => json(&Table {
            schema: SCHEMA,
            command: "eval",
            family: name(a.family),
            function: name(a.function),
            scale: render_scale(&s.ts),
            coefficient: s.alpha.kind(),
            t0: s.t0,
            points: samples(s.grid.points(), &values),
        }),
    };
    Ok(done(text, 0, &a.scale.output))
}

#[derive(Serialize)]
struct IdentityOutput<'a> {
    schema: &'static str,
    identity: String,
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    tol: f64,
    max_residual: f64,
    argmax_t: Option<f64>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    form_agreement: Option<f64>,
    skipped: &'a [f64],
    points: &'a [ResidualPoint],
}

/// Pointwise maximum of reports computed over the same grid.
fn merge(name: &str, reports: &[ResidualReport]) -> ResidualReport {
    let mut out = ResidualReport::new(name);
    let first = &reports[0];
    out.skipped = first.skipped.clone();
    for (k, p) in first.points.iter().enumerate() {
        let r = reports
            .iter()
            .map(|r| r.points[k].residual)
            .fold(0.0, |acc: f64, r| if r.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(r) });
        out.push(p.t, r);
    }
    out
}

fn pointwise(
    name: &str,
    s: &Setup,
    mut f: impl FnMut(f64) -> tscale_core::Result<Option<f64>>,
) -> Result<ResidualReport, CliError> {
    let mut report = ResidualReport::new(name);
    for &t in s.grid.points() {
        match f(t)? {
            Some(r) => report.push(t, r),
            None => report.skip(t),
        }
    }
    Ok(report)
}

fn constant_real(alpha: &Coefficient, what: &str) -> Result<f64, CliError> {
    match alpha.as_constant() {
        Some(v) if v.im == 0.0 => Ok(v.re),
        _ => Err(config(format!("{what} needs a real constant --alpha"))),
    }
}

fn identity(a: IdentityArgs) -> Result<Report, CliError> {
    let s = setup(&a.scale)?;
    let (ts, tol, t0) = (&s.ts, s.tol, s.t0);
    let mut agreement = None;
    let mut kind_label = None;
    let report = match a.identity {
        Identity::Pythagorean => {
            kind_label = Some(name(a.kind));
            pythagorean_residual(trig_family(a.family)?, trig_kind(a.kind), ts, &s.alpha, t0, &s.grid, tol)?
        }
        Identity::Semigroup => {
            let fam = exp_family(a.family)?;
            let t1 = match a.t1 {
                Some(t) if ts.contains(t) => t,
                Some(t) => return Err(config(format!("t1 = {t} is not in the time scale"))),
                None => s.grid.points()[0],
            };
            pointwise("semigroup", &s, |t| check_semigroup(fam, ts, &s.alpha, t, t0, t1, tol).map(Some))?
        }
        Identity::SigmaShift => {
            let fam = exp_family(a.family)?;
            pointwise("sigma-shift", &s, |t| {
                if ts.is_left_scattered_max(t)? {
                    return Ok(None);
                }
                check_sigma_shift(fam, ts, &s.alpha, t, t0, tol).map(Some)
            })?
        }
        Identity::ProductLaw => {
            let fam = exp_family(a.family)?;
            let beta = Coefficient::constant(a.beta.ok_or_else(|| config("product-law needs --beta"))?);
            pointwise("product-law", &s, |t| check_product_law(fam, ts, &s.alpha, &beta, t, t0, tol).map(Some))?
        }
        Identity::UnitCircle => {
            if a.family != Family::Cayley {
                return Err(config("unit-circle applies to the cayley family"));
            }
            pointwise("unit-circle", &s, |t| check_unit_circle(ts, &s.alpha, t, t0, tol).map(Some))?
        }
        Identity::OscillatorCayley => {
            if a.family != Family::Cayley {
                return Err(config("oscillator-cayley applies to the cayley family"));
            }
            kind_label = Some(name(a.kind));
            let p = s.alpha.as_constant().ok_or_else(|| config("oscillator-cayley needs a constant --alpha"))?;
            let kind = trig_kind(a.kind);
            let pair = trig_evaluate_grid(TrigFamily::Cayley, kind, ts, &s.alpha, t0, &s.grid, tol)?;
            let mut reports = Vec::new();
            for pick in [0, 1] {
                let values = pair.values.iter().map(|v| if pick == 0 { v.0 } else { v.1 }).collect();
                let x = SampledFunction::new(s.grid.clone(), values)?;
                reports.push(oscillator_residual_cayley(ts, kind, p, &x)?);
            }
            merge("oscillator-cayley", &reports)
        }
        Identity::OscillatorExact | Identity::Delbis => {
            if a.family != Family::Exact {
                return Err(config(format!("{} applies to the exact family", name(a.identity))));
            }
            let w = constant_real(&s.alpha, &name(a.identity))?;
            let pair = trig_evaluate_grid(TrigFamily::Exact, TrigKind::Trigonometric, ts, &s.alpha, t0, &s.grid, tol)?;
            let mut reports = Vec::new();
            let mut agree: f64 = 0.0;
            for pick in [0, 1] {
                let values = pair.values.iter().map(|v| if pick == 0 { v.0 } else { v.1 }).collect();
                let x = SampledFunction::new(s.grid.clone(), values)?;
                if a.identity == Identity::Delbis {
                    reports.push(delbis_relation_residual(ts, w, &x)?);
                } else {
                    let rep = oscillator_residual_exact(ts, w, &x)?;
                    agree = agree.max(rep.agreement);
                    reports.push(rep.phi_form);
                    reports.push(rep.sinc_form);
                }
            }
            if a.identity == Identity::OscillatorExact {
                agreement = Some(agree);
            }
            merge(&name(a.identity), &reports)
        }
    };
    let pass = report.passes(tol) && agreement.is_none_or(|g| g < tol);
    let code = if pass { 0 } else { 1 };
    let text = match format_of(&a.scale.output, Format::Json) {
        Format::Csv => residual_csv(&report),
        Format::Json => json(&IdentityOutput {
            schema: SCHEMA,
            identity: name(a.identity),
            family: name(a.family),
            kind: kind_label,
            tol,
            max_residual: report.max_residual(),
            argmax_t: report.argmax_t(),
            pass,
            form_agreement: agreement,
            skipped: &report.skipped,
            points: &report.points,
        }),
    };
    Ok(done(text, code, &a.scale.output))
}

#[derive(Serialize)]
struct ConvergeOutput {
    schema: &'static str,
    command: &'static str,
    family: String,
    alpha: Complex64,
    t: f64,
    fitted_slope: Option<f64>,
    rows: Vec<tscale_core::ConvergenceRow>,
}

fn converge(a: ConvergeArgs) -> Result<Report, CliError> {
    let family = exp_family(a.family)?;
    let eps = a.eps.clone().unwrap_or_else(default_eps);
    if eps.is_empty() {
        return Err(config("--eps needs at least one spacing"));
    }
    let st = study(family, a.alpha, a.t, &eps)?;
    let text = match format_of(&a.output, Format::Csv) {
        Format::Csv => {
            let slope = st.fitted_slope.map(num).unwrap_or_default();
            let mut out = String::from("eps,error,fitted_slope\n");
            for r in &st.rows {
                out.push_str(&format!("{},{},{}\n", num(r.eps), num(r.error), slope));
            }
            out
        }
        Format::Json => json(&ConvergeOutput {
            schema: SCHEMA,
            command: "converge",
            family: name(a.family),
            alpha: a.alpha,
            t: a.t,
            fitted_slope: st.fitted_slope,
            rows: st.rows,
        }),
    };
    Ok(done(text, 0, &a.output))
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    schema: &'static str,
    command: &'static str,
    scheme: String,
    scale: String,
    coefficient: &'a CoefficientKind,
    x0: Complex64,
    t0: f64,
    points: Vec<Sample>,
}

fn solve(a: SolveArgs) -> Result<Report, CliError> {
    let s = setup(&a.scale)?;
    let scheme = match a.scheme {
        SchemeArg::Explicit => Scheme::ExplicitDelta,
        SchemeArg::Trapezoidal => Scheme::TrapezoidalCayley,
        SchemeArg::Exact => Scheme::ExactDisc,
    };
    if s.grid.index_of(s.t0).is_none() {
        return Err(config(format!("t0 = {} is not a grid point", s.t0)));
    }
    let x = solve_first_order(scheme, &s.ts, &s.alpha, a.x0, s.t0, &s.grid, s.tol)?;
    let text = match format_of(&a.scale.output, Format::Csv) {
        Format::Csv => complex_csv(s.grid.points(), x.values()),
        Format::Json => json(&SolveOutput {
            schema: SCHEMA,
            command: "solve",
            scheme: name(a.scheme),
            scale: render_scale(&s.ts),
            coefficient: s.alpha.kind(),
            x0: a.x0,
            t0: s.t0,
            points: samples(s.grid.points(), x.values()),
        }),
    };
    Ok(done(text, 0, &a.scale.output))
}
