use achow::field::{Mobius, ProjValue, RatFunc, Symbols};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..2), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(RatFunc::zero(), |acc, (c, a, b, e)| {
                let m = [(0, a), (1, b), (2, e)]
                    .iter()
                    .fold(RatFunc::from_int(c), |m, &(v, k)| {
                        &m * &RatFunc::var(VARS[v]).pow(k as i64).unwrap()
                    });
                &acc + &m
            })
    })
}

fn nonzero() -> impl Strategy<Value = RatFunc> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero()).prop_map(|(p, q)| &p / &q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(f in ratfunc().prop_filter("nonzero", |f| !f.is_zero())) {
        let g = f.inv().unwrap();
        prop_assert!((&f * &g).is_one());
        prop_assert_eq!(g.inv().unwrap(), f);
    }

    #[test]
    fn field_axioms(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&(&f - &g) + &g - f.clone()).is_zero());
    }

    #[test]
    fn normal_form_is_canonical(p in poly(), q in nonzero(), k in nonzero()) {
        let a = &p / &q;
        let b = &(&p * &k) / &(&q * &k);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn derivative_is_a_derivation(f in ratfunc(), g in ratfunc(), v in 0usize..3) {
        let v = VARS[v];
        let lhs = (&f * &g).derivative(v);
        let rhs = &(&f.derivative(v) * &g) + &(&f * &g.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips(f in ratfunc()) {
        let symbols = Symbols::new(VARS).unwrap();
        prop_assert_eq!(symbols.parse_ratfunc(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn mobius_solve_inverts_eval(
        a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5, s in ratfunc(),
    ) {
        prop_assume!(a * d - b * c != 0);
        let m = Mobius::new(a.into(), b.into(), c.into(), d.into()).unwrap();
        let s = ProjValue::Finite(s);
        let t = m.eval(&s);
        prop_assert_eq!(m.solve(&t).unwrap(), Some(s));
    }
}
