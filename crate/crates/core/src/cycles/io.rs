//! Line-oriented text format for formal cycles.
//!
//! ```text
//! cycle
//! vars: a b1 b2
//! param: s
//! ring: 2
//! slots: 2
//! +1 (1/a; s, (b1*s - b1*b2)/(s - b1*b2))
//! ```
//!
//! Each term line is `coeff (a₁, …, a_e; t₁, …, t_n)`. A box coordinate that
//! mentions the parameter must be a Möbius expression in it. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::field::{FieldError, Mobius, Poly, ProjValue, RatFunc, Symbol, Symbols};

use super::term::{Coord, Term};
use super::{CycleError, FormalCycle, MobiusCurve, ModulusRing, PointCycle, SlotSpace};

const DEFAULT_PARAM: &str = "s";

fn perr(line: usize, msg: impl Into<String>) -> CycleError {
    CycleError::Parse {
        line,
        msg: msg.into(),
    }
}

fn field_err(line: usize, e: FieldError) -> CycleError {
    perr(line, e.to_string())
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn items(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        Vec::new()
    } else {
        split_top(s, ',').into_iter().map(str::trim).collect()
    }
}

/// Reads `(α s + β)/(γ s + δ)` off a rational function of degree ≤ 1 in `param`.
fn as_mobius(f: &RatFunc, param: &str) -> Option<Mobius> {
    let split = |p: &Poly| -> Option<(RatFunc, RatFunc)> {
        let mut coeffs = p.to_univariate(param);
        if coeffs.len() > 2 {
            return None;
        }
        coeffs.resize(2, Poly::zero());
        let c1 = coeffs.pop().expect("two");
        let c0 = coeffs.pop().expect("two");
        Some((RatFunc::from_poly(c1), RatFunc::from_poly(c0)))
    };
    let (alpha, beta) = split(f.numer())?;
    let (gamma, delta) = split(f.denom())?;
    Mobius::new(alpha, beta, gamma, delta).ok()
}

struct Header {
    symbols: Symbols,
    param: String,
    ring: Option<ModulusRing>,
    slots: Option<usize>,
    decomposable: bool,
}

pub fn parse_cycle(src: &str) -> Result<FormalCycle, CycleError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "cycle")) => {}
        Some((k, _)) => return Err(perr(k, "expected `cycle` header")),
        None => return Err(perr(0, "empty cycle file")),
    }
    let mut h = Header {
        symbols: Symbols::default(),
        param: DEFAULT_PARAM.to_string(),
        ring: None,
        slots: None,
        decomposable: false,
    };
    let mut body = Vec::new();
    for (k, line) in lines {
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "vars" => {
                    for name in value.split_whitespace() {
                        h.symbols.declare(name).map_err(|e| field_err(k, e))?;
                    }
                }
                "param" => h.param = value.to_string(),
                "ring" => {
                    let m = value
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<u32>()
                                .map_err(|_| perr(k, format!("bad exponent `{t}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    h.ring = Some(ModulusRing::new(m).map_err(|e| perr(k, e.to_string()))?);
                }
                "slots" => h.slots = Some(value.parse().map_err(|_| perr(k, "bad slot count"))?),
                "decomposable" => h.decomposable = matches!(value, "yes" | "true"),
                other => return Err(perr(k, format!("unknown header `{other}`"))),
            }
        } else {
            body.push((k, line));
        }
    }
    if h.symbols.contains(&h.param) {
        return Err(perr(
            0,
            format!("parameter `{}` is also declared as a variable", h.param),
        ));
    }
    let ring = h
        .ring
        .clone()
        .ok_or_else(|| perr(0, "missing `ring:` header"))?;
    let n = h.slots.ok_or_else(|| perr(0, "missing `slots:` header"))?;
    let mut with_param = h.symbols.clone();
    with_param.declare(&h.param).map_err(|e| field_err(0, e))?;
    let mut cycle = FormalCycle::zero(SlotSpace::new(ring, n));
    for (k, line) in body {
        let (coeff, term) = parse_term(k, line, &h, &with_param)?;
        cycle
            .add_term(term, coeff)
            .map_err(|e| perr(k, e.to_string()))?;
    }
    Ok(if h.decomposable {
        cycle.mark_decomposable()
    } else {
        cycle
    })
}

fn parse_term(
    k: usize,
    line: &str,
    h: &Header,
    with_param: &Symbols,
) -> Result<(i64, Term), CycleError> {
    let open = line
        .find('(')
        .ok_or_else(|| perr(k, "expected `coeff (…)`"))?;
    let coeff: i64 = line[..open]
        .trim()
        .trim_start_matches('+')
        .parse()
        .map_err(|_| perr(k, "bad integer coefficient"))?;
    let inner = line[open..]
        .trim_end()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| perr(k, "unbalanced term parentheses"))?;
    let parts = split_top(inner, ';');
    let [affine, boxes] = parts.as_slice() else {
        return Err(perr(
            k,
            "expected exactly one `;` between affine and box coordinates",
        ));
    };
    let a = items(affine)
        .into_iter()
        .map(|s| h.symbols.parse_ratfunc(s).map_err(|e| field_err(k, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut slots = Vec::new();
    for s in items(boxes) {
        let v = with_param.parse_proj(s).map_err(|e| field_err(k, e))?;
        let coord = match v {
            ProjValue::Finite(f) if f.variables().iter().any(|x| **x == *h.param) => {
                Coord::Map(as_mobius(&f, &h.param).ok_or_else(|| {
                    perr(
                        k,
                        format!("`{s}` is not a Möbius expression in `{}`", h.param),
                    )
                })?)
            }
            v => Coord::Const(v),
        };
        slots.push(coord);
    }
    let term = if slots.iter().any(|c| matches!(c, Coord::Map(_))) {
        Term::Curve(MobiusCurve::new(a, slots).map_err(|e| perr(k, e.to_string()))?)
    } else {
        let b = slots
            .into_iter()
            .map(|c| match c {
                Coord::Const(v) => v,
                Coord::Map(_) => unreachable!(),
            })
            .collect();
        Term::Point(PointCycle::new(a, b))
    };
    Ok((coeff, term))
}

fn mobius_text(m: &Mobius, param: &str) -> String {
    let s = RatFunc::var(param);
    let [a, b, c, d] = m.coefficients();
    let num = &(a * &s) + b;
    let den = &(c * &s) + d;
    (&num / &den).to_string()
}

fn variables(c: &FormalCycle) -> BTreeSet<Symbol> {
    let mut vars = BTreeSet::new();
    let mut add = |f: &RatFunc| vars.extend(f.variables());
    for (t, _) in c.terms() {
        t.affine().iter().for_each(&mut add);
        match t {
            Term::Point(p) => p
                .coords()
                .iter()
                .filter_map(ProjValue::finite)
                .for_each(&mut add),
            Term::Curve(cv) => {
                for slot in cv.slots() {
                    match slot {
                        Coord::Const(v) => v.finite().into_iter().for_each(&mut add),
                        Coord::Map(m) => m.coefficients().into_iter().for_each(&mut add),
                    }
                }
            }
        }
    }
    vars
}

/// Canonical text of a cycle; [`parse_cycle`] inverts it.
pub fn print_cycle(c: &FormalCycle) -> String {
    let vars = variables(c);
    let mut param = DEFAULT_PARAM.to_string();
    let mut k = 0;
    while vars.iter().any(|v| **v == *param) {
        param = format!("{DEFAULT_PARAM}{k}");
        k += 1;
    }
    let mut out = String::from("cycle\n");
    let names: Vec<&str> = vars.iter().map(|v| &**v).collect();
    writeln!(out, "vars: {}", names.join(" ")).unwrap();
    if c.has_curves() {
        writeln!(out, "param: {param}").unwrap();
    }
    let exps: Vec<String> = c.ring().exponents().iter().map(u32::to_string).collect();
    writeln!(out, "ring: {}", exps.join(" ")).unwrap();
    writeln!(out, "slots: {}", c.n()).unwrap();
    if c.is_decomposable() {
        writeln!(out, "decomposable: yes").unwrap();
    }
    for (t, coeff) in c.terms() {
        let a: Vec<String> = t.affine().iter().map(RatFunc::to_string).collect();
        let b: Vec<String> = match t {
            Term::Point(p) => p.coords().iter().map(ProjValue::to_string).collect(),
            Term::Curve(cv) => cv
                .slots()
                .iter()
                .map(|s| match s {
                    Coord::Const(v) => v.to_string(),
                    Coord::Map(m) => mobius_text(m, &param),
                })
                .collect(),
        };
        writeln!(out, "{coeff:+} ({}; {})", a.join(", "), b.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{totaro_c2, BoundaryMode};

    const C2: &str = "cycle\nvars: a b1 b2\nparam: s\nring: 2\nslots: 2\n+1 (1/a; s, (b1*s - b1*b2)/(s - b1*b2))\n";

    #[test]
    fn parses_totaro_literal() {
        let c = parse_cycle(C2).unwrap();
        let v = RatFunc::var;
        let expect = totaro_c2(
            &ModulusRing::dual_numbers(),
            &v("a"),
            &v("b1"),
            &v("b2"),
            &[],
        )
        .unwrap();
        assert_eq!(c, expect);
        assert_eq!(c.boundary(BoundaryMode::Full).unwrap().num_terms(), 3);
    }

    #[test]
    fn round_trip() {
        let c = parse_cycle(C2).unwrap();
        let text = print_cycle(&c);
        assert_eq!(parse_cycle(&text).unwrap(), c, "{text}");
        let b = c.boundary(BoundaryMode::Full).unwrap();
        assert_eq!(parse_cycle(&print_cycle(&b)).unwrap(), b);
    }

    #[test]
    fn points_and_infinity() {
        let src =
            "cycle\nvars: x t\nring: 2\nslots: 2\n-2 (x; t, inf)  # on a face\n3 (x; 1/t, t^2)\n";
        let c = parse_cycle(src).unwrap();
        assert_eq!(c.num_terms(), 2);
        assert!(c.check_admissible().is_err());
        assert_eq!(parse_cycle(&print_cycle(&c)).unwrap(), c);
    }

    #[test]
    fn reports_line_numbers() {
        let src = "cycle\nvars: x\nring: 2\nslots: 1\n+1 (x; y)\n";
        assert!(matches!(
            parse_cycle(src),
            Err(CycleError::Parse { line: 5, .. })
        ));
        let quad = "cycle\nvars: x\nring: 2\nslots: 1\n+1 (x; s^2)\n";
        assert!(parse_cycle(quad)
            .unwrap_err()
            .to_string()
            .contains("Möbius"));
    }

    #[test]
    fn slot_count_enforced() {
        let src = "cycle\nvars: x t\nring: 2\nslots: 2\n+1 (x; t)\n";
        assert!(parse_cycle(src).is_err());
    }
}
