//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tscale_core::convergence::{default_eps, study};
use tscale_core::dynamic::{delta_doubleprime, harmonic_double_residual, oscillator_residual_exact, solve_first_order};
use tscale_core::exponential::{
    check_conjugation, check_inverse, check_product_law, check_semigroup, check_sigma_shift,
    exp_cayley, exp_evaluate_grid, exp_hilger,
};
use tscale_core::transforms::{beta_of_alpha, oplus_cayley, RegressivityKind};
use tscale_core::trig::pythagorean_residual;
use tscale_core::{
    Coefficient, Complex64, Component, Error, ExpFamily, SampledFunction, Scheme, TimeScale,
    TrigFamily, TrigKind,
};

const TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gate(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: Error) -> String {
    format!("unexpected error: {e}")
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

/// A random mixed scale inside `[0, 4]`.
fn random_scale(rng: &mut ChaCha8Rng) -> TimeScale {
    let mut comps = Vec::new();
    let mut t = 0.0;
    for _ in 0..rng.gen_range(1..6) {
        if rng.gen_bool(0.5) {
            let len = rng.gen_range(0.05..0.6);
            comps.push(Component::Interval { lo: t, hi: t + len });
            t += len;
        } else {
            comps.push(Component::Point(t));
        }
        t += rng.gen_range(0.05..0.6);
    }
    TimeScale::new(comps).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, ts: &TimeScale) -> f64 {
    let g = ts.make_grid(ts.min(), ts.max(), 0.05).unwrap();
    g.points()[rng.gen_range(0..g.len())]
}

fn ac1_closed_forms() -> Outcome {
    let ts = TimeScale::uniform(0.0, 1.0, 11).map_err(err)?;
    let one = Coefficient::real(1.0);
    let mut worst: f64 = 0.0;
    for k in 0..=10 {
        let t = k as f64;
        let h = exp_hilger(&ts, &one, t, 0.0, TOL).map_err(err)?;
        let e = exp_cayley(&ts, &one, t, 0.0, TOL).map_err(err)?;
        let h_ref = 2f64.powi(k);
        let e_ref = ((1.0 + 0.5) / (1.0 - 0.5f64)).powi(k);
        worst = worst.max((h - c(h_ref, 0.0)).norm() / h_ref);
        worst = worst.max((e - c(e_ref, 0.0)).norm() / e_ref);
    }
    gate(worst <= 1e-12, format!("max relative error {worst:.3e}"))
}

fn ac2_unit_circle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let ts = random_scale(&mut rng);
        let w = rng.gen_range(-5.0..5.0);
        let t = random_point(&mut rng, &ts);
        let t0 = random_point(&mut rng, &ts);
        let e = exp_cayley(&ts, &Coefficient::constant(c(0.0, w)), t, t0, TOL).map_err(err)?;
        worst = worst.max((e.norm() - 1.0).abs());
    }
    gate(worst <= 1e-12, format!("max ||E_(i w)| - 1| = {worst:.3e} over 200 pairs"))
}

fn ac3_pythagorean() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut scales = vec![mixed()];
    scales.extend((0..4).map(|_| random_scale(&mut rng)));
    let (mut cayley, mut bp): (f64, f64) = (0.0, 0.0);
    for ts in &scales {
        let g = ts.make_grid(ts.min(), ts.max(), 0.05).map_err(err)?;
        for _ in 0..5 {
            let w = Coefficient::real(rng.gen_range(-3.0..3.0));
            let a = Coefficient::constant(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let t0 = random_point(&mut rng, ts);
            for (kind, p) in [(TrigKind::Trigonometric, &w), (TrigKind::Hyperbolic, &a)] {
                let r = pythagorean_residual(TrigFamily::Cayley, kind, ts, p, t0, &g, TOL).map_err(err)?;
                cayley = cayley.max(r.max_residual());
                let r = pythagorean_residual(TrigFamily::BohnerPeterson, kind, ts, p, t0, &g, TOL).map_err(err)?;
                bp = bp.max(r.max_residual());
            }
        }
    }
    gate(
        cayley <= 1e-12 && bp <= 1e-10,
        format!("Cayley max residual {cayley:.3e}, Bohner-Peterson max relative deviation {bp:.3e}"),
    )
}

fn ac4_exponential_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shapes = [
        TimeScale::uniform(0.0, 0.5, 9).unwrap(),
        TimeScale::interval(0.0, 2.0).unwrap(),
        mixed(),
    ];
    let mut worst: f64 = 0.0;
    for ts in &shapes {
        // Residuals are absolute, so keep the exponentials of moderate size.
        let bound = 1.0;
        for _ in 0..40 {
            let a = Coefficient::real(rng.gen_range(-bound..bound));
            let b = Coefficient::real(rng.gen_range(-bound..bound));
            let [t, t0, t1] = [0; 3].map(|_| random_point(&mut rng, ts));
            let sig_t = if t == ts.max() { t0.min(t) } else { t };
            let check = |g: &dyn Fn() -> tscale_core::Result<f64>| g().map_err(err);
            let fam = ExpFamily::Cayley;
            for r in [
                check(&|| check_semigroup(fam, ts, &a, t, t0, t1, TOL))?,
                check(&|| check_inverse(fam, ts, &a, t, t0, TOL))?,
                check(&|| check_conjugation(fam, ts, &a, t, t0, TOL))?,
                check(&|| if sig_t < ts.max() { check_sigma_shift(fam, ts, &a, sig_t, t0, TOL) } else { Ok(0.0) })?,
                check(&|| check_product_law(fam, ts, &a, &b, t, t0, TOL))?,
            ] {
                worst = worst.max(r);
            }
            for (name, kind_ok) in [("a", &a), ("b", &b)] {
                let ok = ts
                    .make_grid(ts.min(), ts.max(), 1.0)
                    .unwrap()
                    .points()
                    .iter()
                    .filter(|&&s| s < ts.max())
                    .all(|&s| RegressivityKind::PositivelyRegressive.holds(ts.mu(s).unwrap(), kind_ok.eval(s)));
                if !ok {
                    return Err(format!("sampled coefficient {name} is not positively regressive"));
                }
            }
        }
    }
    gate(worst <= 1e-11, format!("max residual {worst:.3e} over 120 cases on 3 scale shapes"))
}

fn ac5_cauchy_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut scales: Vec<TimeScale> = [1.0, 0.5, 0.25, 0.1]
        .iter()
        .map(|&eps| TimeScale::uniform(-1.0, eps, (5.0 / eps) as usize + 1).unwrap())
        .collect();
    scales.push(TimeScale::interval(-1.0, 3.0).unwrap());
    for ts in &scales {
        let eps = ts.constant_graininess().unwrap();
        let g = ts.make_grid(ts.min(), ts.max(), 0.25).map_err(err)?;
        for _ in 0..10 {
            let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let t0 = g.points()[rng.gen_range(0..g.len())];
            let alpha = Coefficient::constant(a);
            let beta = Coefficient::constant(beta_of_alpha(eps, a).map_err(err)?);
            let trap = solve_first_order(Scheme::TrapezoidalCayley, ts, &alpha, c(1.0, 0.0), t0, &g, TOL).map_err(err)?;
            let expl = solve_first_order(Scheme::ExplicitDelta, ts, &beta, c(1.0, 0.0), t0, &g, TOL).map_err(err)?;
            let cay = exp_evaluate_grid(ExpFamily::Cayley, ts, &alpha, t0, &g, TOL).map_err(err)?;
            let hil = exp_evaluate_grid(ExpFamily::HilgerDelta, ts, &beta, t0, &g, TOL).map_err(err)?;
            for k in 0..g.len() {
                let scale = cay.values[k].norm().max(1.0);
                worst = worst.max((trap.values()[k] - cay.values[k]).norm() / scale);
                worst = worst.max((expl.values()[k] - hil.values[k]).norm() / scale);
                worst = worst.max((expl.values()[k] - cay.values[k]).norm() / scale);
            }
        }
    }
    gate(worst <= 1e-12, format!("max pointwise deviation {worst:.3e} (relative to max(1, |E|))"))
}

fn ac6_convergence() -> Outcome {
    let one = c(1.0, 0.0);
    let eps = default_eps();
    let cay = study(ExpFamily::Cayley, one, 1.0, &eps).map_err(err)?;
    let hil = study(ExpFamily::HilgerDelta, one, 1.0, &eps).map_err(err)?;
    let ex = study(ExpFamily::Exact, one, 1.0, &eps).map_err(err)?;
    let sc = cay.fitted_slope.unwrap_or(f64::NAN);
    let sh = hil.fitted_slope.unwrap_or(f64::NAN);
    let ee = ex.rows.iter().map(|r| r.error).fold(0.0, f64::max);
    gate(
        (1.9..=2.1).contains(&sc) && (0.9..=1.1).contains(&sh) && ee <= 1e-13,
        format!("Cayley slope {sc:.4}, Hilger slope {sh:.4}, exact max error {ee:.3e}"),
    )
}

fn ac7_exact_oscillator() -> Outcome {
    let (mut worst, mut agree): (f64, f64) = (0.0, 0.0);
    let mut cases = 0;
    for eps in [0.25, 0.5, 1.0] {
        let ts = TimeScale::uniform(0.0, eps, 40).unwrap();
        let g = ts.make_grid(ts.min(), ts.max(), 1.0).map_err(err)?;
        for w in [0.3, 1.0, 2.0, 2.9, -1.7] {
            if (w * eps).abs() >= PI {
                continue;
            }
            for phase in [0.0, PI / 2.0] {
                let x = SampledFunction::from_fn(g.clone(), |t| c((w * t + phase).sin(), 0.0)).map_err(err)?;
                let rep = oscillator_residual_exact(&ts, w, &x).map_err(err)?;
                worst = worst.max(rep.phi_form.max_residual()).max(rep.sinc_form.max_residual());
                agree = agree.max(rep.agreement);
                cases += 1;
            }
        }
    }
    gate(
        worst <= 1e-10 && agree <= 1e-12,
        format!("max residual {worst:.3e}, form agreement {agree:.3e} over {cases} cases"),
    )
}

fn ac8_doubleprime() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst, mut worst70): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let a = rng.gen_range(-2.0..2.0);
        let b = rng.gen_range(-2.0..2.0);
        let (w, eps) = loop {
            let w: f64 = rng.gen_range(-5.0..5.0);
            let eps: f64 = rng.gen_range(0.05..1.0);
            if (w * eps).abs() < 0.95 * PI {
                break (w, eps);
            }
        };
        let ts = TimeScale::uniform(0.0, eps, 16).unwrap();
        let g = ts.make_grid(ts.min(), ts.max(), 1.0).map_err(err)?;
        let x = SampledFunction::from_fn(g.clone(), |t| c(a * (w * t).cos() + b * (w * t).sin(), 0.0)).map_err(err)?;
        for &t in &g.points()[..g.len() - 1] {
            let d = delta_doubleprime(w, &ts, &x, t).map_err(err)?;
            let want = -a * w * (w * t).sin() + b * w * (w * t).cos();
            worst = worst.max((d - c(want, 0.0)).norm());
        }
        worst70 = worst70.max(harmonic_double_residual(&ts, w, &x).map_err(err)?.max_residual());
    }
    gate(
        worst <= 1e-11 && worst70 <= 1e-10,
        format!("max |x^D'' - x'| {worst:.3e}, max double-application residual {worst70:.3e}"),
    )
}

fn ac9_group() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut assoc: f64 = 0.0;
    for _ in 0..1000 {
        let mu = rng.gen_range(0.01..2.0);
        let lim = 2.0 / mu * 0.9995;
        let [a, b, d] = [0; 3].map(|_| c(rng.gen_range(-lim..lim), 0.0));
        let op = |x, y| oplus_cayley(mu, x, y).map_err(err);
        let ab = op(a, b)?;
        if ab != op(b, a)? {
            return Err(format!("not commutative at mu = {mu}, a = {a}, b = {b}"));
        }
        if !((ab.re * mu).abs() < 2.0 && ab.im == 0.0) {
            return Err(format!("not closed at mu = {mu}, a = {a}, b = {b}: {ab}"));
        }
        if op(a, -a)? != c(0.0, 0.0) || op(a, c(0.0, 0.0))? != a {
            return Err(format!("inverse or identity fails at mu = {mu}, a = {a}"));
        }
        let lhs = op(ab, d)?;
        let rhs = op(a, op(b, d)?)?;
        assoc = assoc.max((lhs - rhs).norm() * mu / 2.0);
    }
    // Regressive but not positively regressive: mu^2 a b = -4.
    let witness = oplus_cayley(1.0, c(4.0, 0.0), c(-1.0, 0.0));
    let singular = matches!(witness, Err(Error::Singular { .. }));
    gate(
        assoc <= 1e-12 && singular,
        format!("max associativity defect {assoc:.3e} (in units of 2/mu), witness raises Singular: {singular}"),
    )
}

fn ac10_brute_force() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..100 {
        let n = rng.gen_range(2..40);
        let mut pts = Vec::with_capacity(n);
        let mut t: f64 = rng.gen_range(-5.0..5.0);
        for _ in 0..n {
            pts.push(t);
            t += rng.gen_range(0.01..1.5);
        }
        let ts = TimeScale::points(&pts).map_err(err)?;
        let coeffs: Vec<f64> = (0..4).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let f = |s: f64| c(coeffs[0] + coeffs[1] * s * s, coeffs[2] * (coeffs[3] * s).sin());
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let got = ts.delta_integral(f, pts[i], pts[j], TOL).map_err(err)?;
        let want = naive_sum(&pts, &f, i, j);
        if got.re.to_bits() != want.re.to_bits() || got.im.to_bits() != want.im.to_bits() {
            return Err(format!("case {case}: {got} != {want}"));
        }
    }
    gate(true, "100 random discrete scales agree bit-for-bit".into())
}

/// Sum of `f(s) (next(s) - s)` over `s` in `[pts[i], pts[j])`, accumulated in
/// ascending order with Neumaier compensation on each component.
fn naive_sum(pts: &[f64], f: &dyn Fn(f64) -> Complex64, i: usize, j: usize) -> Complex64 {
    if j < i {
        return -naive_sum(pts, f, j, i);
    }
    let mut sum = [0.0f64; 2];
    let mut comp = [0.0f64; 2];
    for k in i..j {
        let term = f(pts[k]) * (pts[k + 1] - pts[k]);
        for (d, x) in [term.re, term.im].into_iter().enumerate() {
            let t = sum[d] + x;
            if sum[d].abs() >= x.abs() {
                comp[d] += (sum[d] - t) + x;
            } else {
                comp[d] += (x - t) + sum[d];
            }
            sum[d] = t;
        }
    }
    c(sum[0] + comp[0], sum[1] + comp[1])
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("AC1 closed-form agreement on the integers", ac1_closed_forms),
        ("AC2 unit-circle invariant", ac2_unit_circle),
        ("AC3 Pythagorean identities", ac3_pythagorean),
        ("AC4 exponential algebra", ac4_exponential_algebra),
        ("AC5 Cauchy-problem equivalence", ac5_cauchy_equivalence),
        ("AC6 convergence orders", ac6_convergence),
        ("AC7 exact oscillator equations", ac7_exact_oscillator),
        ("AC8 modified derivative of harmonic samples", ac8_doubleprime),
        ("AC9 group structure of positively regressive constants", ac9_group),
        ("AC10 brute-force delta sums", ac10_brute_force),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
