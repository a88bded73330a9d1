//! Deterministic sample cycles used by the verification suites.

use crate::cycles::{reduced_c2_combination, totaro_c2, FormalCycle, ModulusRing, PointCycle};
use crate::field::{ProjValue, RatFunc};

pub type Named = (String, FormalCycle);

fn v(s: &str) -> RatFunc {
    RatFunc::var(s)
}

fn q(n: i64, d: i64) -> RatFunc {
    &RatFunc::from_int(n) / &RatFunc::from_int(d)
}

fn point(ring: &ModulusRing, a: RatFunc, t: Vec<RatFunc>) -> FormalCycle {
    FormalCycle::point(ring.clone(), PointCycle::finite(vec![a], t)).expect("corpus point")
}

/// `(x; t₁,…,tₙ)` with independent symbols.
pub fn symbolic_point(a: &str, t: &str, n: usize) -> FormalCycle {
    let ts = (1..=n).map(|k| v(&format!("{t}{k}"))).collect();
    point(&ModulusRing::dual_numbers(), v(a), ts)
}

/// Points with `n` box slots over `k[x]/(x²)`.
pub fn points(n: usize) -> Vec<Named> {
    let ring = ModulusRing::dual_numbers();
    let x = v("x");
    let mixed: Vec<RatFunc> = (1..=n)
        .map(|k| {
            let t = v(&format!("t{k}"));
            match k % 3 {
                1 => &t * &x,
                2 => &t + &RatFunc::one(),
                _ => &t / &x,
            }
        })
        .collect();
    let numeric: Vec<RatFunc> = [q(2, 1), q(-1, 1), q(3, 1), q(1, 2), q(-2, 1), q(5, 1)]
        .into_iter()
        .cycle()
        .take(n)
        .collect();
    let sym = symbolic_point("x", "t", n);
    let mix = point(&ring, (&x + &RatFunc::one()).inv().expect("nonzero"), mixed);
    let num = point(&ring, q(3, 1), numeric);
    let sum = sym.add_scaled(&mix, -2).expect("same space");
    vec![
        ("sym".into(), sym),
        ("mix".into(), mix),
        ("num".into(), num),
        ("sym-2mix".into(), sum),
    ]
}

/// Admissible Möbius-curve cycles, all over `k[x]/(x²)`.
pub fn curves() -> Vec<Named> {
    let ring = ModulusRing::dual_numbers();
    let (a, b1, b2) = (v("a"), v("b1"), v("b2"));
    let t = |k: usize| ProjValue::Finite(v(&format!("t{k}")));
    let c2 = |extras: &[ProjValue]| totaro_c2(&ring, &a, &b1, &b2, extras).expect("corpus curve");
    let reduced = |prefix: &[ProjValue]| {
        reduced_c2_combination(
            &ring,
            &a,
            [&v("p1"), &v("p2")],
            [&v("q1"), &v("q2")],
            prefix,
        )
        .expect("corpus curve")
    };
    vec![
        ("C2".into(), c2(&[])),
        ("C2x(t1)".into(), c2(&[t(1)])),
        ("C2x(t1,t2)".into(), c2(&[t(1), t(2)])),
        (
            "C2[2;3,5]".into(),
            totaro_c2(&ring, &q(2, 1), &q(3, 1), &q(5, 1), &[]).expect("corpus curve"),
        ),
        ("R".into(), reduced(&[])),
        ("(t1)xR".into(), reduced(&[t(1)])),
    ]
}

/// Seed sets for span-built mixed complexes.
pub fn span_seeds() -> Vec<(String, Vec<FormalCycle>)> {
    let curves = curves();
    let find = |name: &str| {
        curves
            .iter()
            .find(|(n, _)| n == name)
            .expect("named curve")
            .1
            .clone()
    };
    vec![
        ("(u)".into(), vec![symbolic_point("u", "t", 0)]),
        ("(u;t1)".into(), vec![symbolic_point("u", "t", 1)]),
        (
            "(u), R".into(),
            vec![symbolic_point("u", "t", 0), find("R")],
        ),
        ("(t1)xR".into(), vec![find("(t1)xR")]),
        (
            "(x;t1,t2), R, (t1)xR".into(),
            vec![symbolic_point("x", "t", 2), find("R"), find("(t1)xR")],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_admissible() {
        for n in 0..=5 {
            for (name, c) in points(n) {
                assert_eq!(c.n(), n);
                c.check_admissible()
                    .unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
        for (name, c) in curves() {
            c.check_admissible()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn reduced_curves() {
        let reduced: Vec<String> = curves()
            .into_iter()
            .filter(|(_, c)| c.is_reduced().unwrap())
            .map(|(n, _)| n)
            .collect();
        assert_eq!(reduced, vec!["R".to_string(), "(t1)xR".to_string()]);
    }
}
