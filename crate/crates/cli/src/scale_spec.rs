//! Text form of time scales.
//!
//! ```text
//! spec := term ("+" term)*
//! term := "interval(" num "," num ")"
//!       | "points(" num ("," num)* ")"
//!       | "uniform(" start "," step "," count ")"
//! ```
//!
//! Components are sorted and intervals that touch are merged; a point lying
//! on an interval endpoint is absorbed. Any other overlap, including a
//! repeated point, is an error.

use tscale_core::{Component, TimeScale};

use crate::error::CliError;

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn position(&self, at: usize) -> (usize, usize) {
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
        (line, column)
    }

    fn error(&self, at: usize, message: impl Into<String>) -> CliError {
        let (line, column) = self.position(at);
        CliError::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(self.error(self.pos, format!("expected '{c}', found '{found}'"))),
            None => Err(self.error(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn word(&mut self) -> Result<(usize, &'a str), CliError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        if len == 0 {
            return Err(match self.peek() {
                Some(c) => self.error(start, format!("expected a term name, found '{c}'")),
                None => self.error(start, "expected a term name, found end of input"),
            });
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn number(&mut self) -> Result<(usize, f64), CliError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            let sign_ok = i == 0 || matches!(rest.as_bytes()[i - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || ((c == '-' || c == '+') && sign_ok) {
                len = i + 1;
            } else {
                break;
            }
        }
        let token = &rest[..len];
        match token.parse::<f64>() {
            Ok(v) if len > 0 => {
                self.pos += len;
                Ok((start, v))
            }
            _ => {
                let shown = if token.is_empty() { rest.chars().next().map(String::from).unwrap_or_default() } else { token.to_string() };
                Err(self.error(start, format!("expected a number, found '{shown}'")))
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<(usize, f64)>, CliError> {
        self.expect('(')?;
        let mut args = vec![self.number()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    args.push(self.number()?);
                }
                _ => break,
            }
        }
        self.expect(')')?;
        Ok(args)
    }
}

/// A component together with the text offset it came from.
type Located = (usize, Component);

fn term(sc: &mut Scanner<'_>, out: &mut Vec<Located>) -> Result<(), CliError> {
    let (at, name) = sc.word()?;
    let args = sc.arguments()?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(sc.error(at, format!("{name} takes {n} arguments, got {}", args.len())))
        }
    };
    match name {
        "interval" => {
            arity(2)?;
            let (lo, hi) = (args[0].1, args[1].1);
            if !(lo < hi) {
                return Err(sc.error(args[0].0, format!("interval needs lo < hi, got ({lo}, {hi})")));
            }
            out.push((at, Component::Interval { lo, hi }));
        }
        "points" => out.extend(args.iter().map(|&(p, v)| (p, Component::Point(v)))),
        "uniform" => {
            arity(3)?;
            let (start, step, count) = (args[0].1, args[1].1, args[2].1);
            if !(step > 0.0) {
                return Err(sc.error(args[1].0, format!("uniform step must be positive, got {step}")));
            }
            if !(count >= 1.0 && count.fract() == 0.0 && count <= 1e7) {
                return Err(sc.error(args[2].0, format!("uniform count must be a positive integer, got {count}")));
            }
            out.extend((0..count as usize).map(|k| (at, Component::Point(start + k as f64 * step))));
        }
        other => return Err(sc.error(at, format!("unknown term '{other}'"))),
    }
    Ok(())
}

/// Parses and normalizes a scale specification.
pub fn parse_scale(text: &str) -> Result<TimeScale, CliError> {
    let mut sc = Scanner::new(text);
    let mut comps = Vec::new();
    term(&mut sc, &mut comps)?;
    while !sc.at_end() {
        sc.expect('+')?;
        term(&mut sc, &mut comps)?;
    }
    if let Some((at, _)) = comps.iter().find(|(_, c)| !(c.start().is_finite() && c.end().is_finite())) {
        return Err(sc.error(*at, "components must be finite"));
    }
    Ok(TimeScale::new(normalize(comps)?)?)
}

fn describe(c: &Component) -> String {
    match *c {
        Component::Interval { lo, hi } => format!("interval({lo},{hi})"),
        Component::Point(p) => format!("point {p}"),
    }
}

fn normalize(mut comps: Vec<Located>) -> Result<Vec<Component>, CliError> {
    comps.sort_by(|a, b| a.1.start().total_cmp(&b.1.start()).then(a.1.end().total_cmp(&b.1.end())));
    let mut out: Vec<Component> = Vec::with_capacity(comps.len());
    for (_, c) in comps {
        let Some(last) = out.last_mut() else {
            out.push(c);
            continue;
        };
        let overlap = || CliError::Overlap(format!("{} and {}", describe(last), describe(&c)));
        match (*last, c) {
            (Component::Interval { lo, hi }, Component::Interval { lo: l2, hi: h2 }) => {
                if l2 == hi {
                    *last = Component::Interval { lo, hi: h2 };
                } else if l2 < hi {
                    return Err(overlap());
                } else {
                    out.push(c);
                }
            }
            (Component::Interval { hi, .. }, Component::Point(p)) => {
                if p < hi {
                    return Err(overlap());
                } else if p > hi {
                    out.push(c);
                }
            }
            (Component::Point(p), Component::Interval { lo, .. }) => {
                if lo == p {
                    *last = c;
                } else {
                    out.push(c);
                }
            }
            (Component::Point(p), Component::Point(q)) => {
                if p == q {
                    return Err(overlap());
                }
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Renders a scale in the grammar accepted by [`parse_scale`]. Numbers use
/// the shortest representation that reads back to the same value.
pub fn render_scale(ts: &TimeScale) -> String {
    let mut terms = Vec::new();
    let mut run: Vec<String> = Vec::new();
    for c in ts.components() {
        match *c {
            Component::Point(p) => run.push(p.to_string()),
            Component::Interval { lo, hi } => {
                if !run.is_empty() {
                    terms.push(format!("points({})", run.join(",")));
                    run.clear();
                }
                terms.push(format!("interval({lo},{hi})"));
            }
        }
    }
    if !run.is_empty() {
        terms.push(format!("points({})", run.join(",")));
    }
    terms.join(" + ")
}
