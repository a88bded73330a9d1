//! Text format for mixed complexes.
//!
//! ```text
//! mixed-complex
//! degree 0 1 x
//! degree 1 1 y
//! B 0
//! 1
//! ```
//!
//! `degree <n> <dim> [labels…]` declares `V_n`. `b <n>` and `B <n>` are followed by one
//! line per target basis vector, each holding `dim V_n` rationals. Unlisted maps are zero.

use std::fmt::Write as _;

use crate::field::Rational;

use super::complex::MixedComplex;
use super::linalg::Matrix;
use super::ComplexError;

fn perr(line: usize, msg: impl Into<String>) -> ComplexError {
    ComplexError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_complex(src: &str) -> Result<MixedComplex, ComplexError> {
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.into_iter().peekable();
    match it.next() {
        Some((_, "mixed-complex")) => {}
        Some((k, _)) => return Err(perr(k, "expected `mixed-complex` header")),
        None => return Err(perr(0, "empty complex file")),
    }
    let mut labels: Vec<Option<Vec<String>>> = Vec::new();
    let mut maps: Vec<(usize, bool, usize, Vec<Vec<Rational>>)> = Vec::new();
    while let Some((k, line)) = it.next() {
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |w: Option<&&str>, what: &str| -> Result<usize, ComplexError> {
            w.and_then(|s| s.parse().ok())
                .ok_or_else(|| perr(k, format!("expected {what}")))
        };
        match words[0] {
            "degree" => {
                let n = num(words.get(1), "a degree")?;
                let d = num(words.get(2), "a dimension")?;
                let names: Vec<String> = words[3..].iter().map(|s| s.to_string()).collect();
                let names = if names.is_empty() {
                    (0..d).map(|i| format!("e{n}.{i}")).collect()
                } else if names.len() == d {
                    names
                } else {
                    return Err(perr(k, format!("{} labels for dimension {d}", names.len())));
                };
                if labels.len() <= n {
                    labels.resize(n + 1, None);
                }
                if labels[n].replace(names).is_some() {
                    return Err(perr(k, format!("degree {n} declared twice")));
                }
            }
            kind @ ("b" | "B") => {
                let n = num(words.get(1), "a source degree")?;
                let mut rows = Vec::new();
                while let Some(&(_, next)) = it.peek() {
                    let first = next.split_whitespace().next().unwrap_or("");
                    if matches!(first, "degree" | "b" | "B") {
                        break;
                    }
                    let (kk, row) = it.next().expect("peeked");
                    let row = row
                        .split_whitespace()
                        .map(|w| {
                            w.parse::<Rational>()
                                .map_err(|_| perr(kk, format!("bad rational `{w}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(row);
                }
                maps.push((k, kind == "B", n, rows));
            }
            other => return Err(perr(k, format!("unknown directive `{other}`"))),
        }
    }
    let labels: Vec<Vec<String>> = labels.into_iter().map(Option::unwrap_or_default).collect();
    let mut m = MixedComplex::with_labels(labels);
    for (k, big, n, rows) in maps {
        let cols = m.dim(n as isize);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(perr(k, format!("rows must have {cols} entries")));
        }
        let mat = Matrix::from_rows(rows, cols);
        let res = if big {
            m.set_big_b(n, mat)
        } else {
            m.set_b(n, mat)
        };
        res.map_err(|e| perr(k, e.to_string()))?;
    }
    Ok(m)
}

pub fn print_complex(m: &MixedComplex) -> String {
    let mut out = String::from("mixed-complex\n");
    for (n, d) in m.dims().into_iter().enumerate() {
        writeln!(out, "degree {n} {d} {}", m.labels(n).join(" ")).unwrap();
    }
    for n in 0..m.dims().len() {
        for (name, mat) in [("b", m.b(n as isize)), ("B", m.big_b(n as isize))] {
            if mat.rows() > 0 && mat.cols() > 0 && !mat.is_zero() {
                writeln!(out, "{name} {n}").unwrap();
                out.push_str(&mat.to_string());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let src = "mixed-complex\n# a B-iso pair\ndegree 0 1 x\ndegree 1 1 y\nB 0\n1\n";
        let m = parse_complex(src).unwrap();
        assert_eq!(m.dims(), vec![1, 1]);
        assert_eq!(m.validate(), None);
        assert_eq!(parse_complex(&print_complex(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_bad_shapes() {
        let src = "mixed-complex\ndegree 0 2\ndegree 1 1\nb 1\n1 0\n";
        assert!(matches!(
            parse_complex(src),
            Err(ComplexError::Parse { line: 4, .. })
        ));
        assert!(parse_complex("complex\n").is_err());
        assert!(parse_complex("mixed-complex\ndegree 0 1\nb 0\n1/0\n").is_err());
    }
}
