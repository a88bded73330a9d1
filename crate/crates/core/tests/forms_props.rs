use achow::field::{RatFunc, Symbols};
use achow::forms::{parse_form, DiffForm};
use proptest::prelude::*;

const VARS: [&str; 3] = ["u", "v", "w"];

fn poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-3i64..=3, 0usize..3, 1i64..3), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(RatFunc::from_int(1), |acc, (c, v, e)| {
                &acc + &(&RatFunc::from_int(c) * &RatFunc::var(VARS[v]).pow(e).unwrap())
            })
    })
}

fn unit() -> impl Strategy<Value = RatFunc> {
    (poly(), poly())
        .prop_filter("nonzero", |(p, q)| !p.is_zero() && !q.is_zero())
        .prop_map(|(p, q)| &p / &q)
}

fn one_form() -> impl Strategy<Value = DiffForm> {
    prop::collection::vec((unit(), 0usize..3), 1..3).prop_map(|parts| {
        parts.into_iter().fold(DiffForm::zero(1), |acc, (f, v)| {
            acc.add(&DiffForm::scalar(f).wedge(&DiffForm::d_var(VARS[v])))
                .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squares_to_zero(f in unit(), w in one_form()) {
        prop_assert!(DiffForm::scalar(f).d().d().is_zero());
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn dlog_is_a_homomorphism(f in unit(), g in unit()) {
        let lhs = DiffForm::dlog(&(&f * &g)).unwrap();
        let rhs = DiffForm::dlog(&f).unwrap().add(&DiffForm::dlog(&g).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(DiffForm::dlog(&f).unwrap().d().is_zero());
    }

    #[test]
    fn wedge_of_one_forms_anticommutes(a in one_form(), b in one_form()) {
        let ab = a.wedge(&b);
        prop_assert!(ab.add(&b.wedge(&a)).unwrap().is_zero());
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn d_satisfies_graded_leibniz(a in one_form(), b in one_form()) {
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).sub(&a.wedge(&b.d())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printer_round_trips(a in one_form(), b in one_form()) {
        let symbols = Symbols::new(VARS).unwrap();
        for w in [a.clone(), a.wedge(&b)] {
            prop_assert_eq!(parse_form(&symbols, &w.to_string()).unwrap(), w);
        }
    }
}
