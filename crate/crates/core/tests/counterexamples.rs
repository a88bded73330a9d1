//! Literal statements that fail, pinned at their smallest witnesses.

use achow::corpus;
use achow::cycles::io::parse_cycle;
use achow::cycles::{shuffle_product, BoundaryMode, FaceValue, FormalCycle};

fn curve(name: &str) -> FormalCycle {
    corpus::curves()
        .into_iter()
        .find(|(n, _)| n == name)
        .expect("corpus curve")
        .1
}

fn d(c: &FormalCycle) -> FormalCycle {
    c.boundary(BoundaryMode::Full).expect("boundary")
}

#[test]
fn top_delta_of_reduced_curve_is_not_reduced() {
    let r = curve("R");
    let n = r.n();
    assert_eq!(n, 2);
    assert!(r.is_reduced().unwrap());
    for k in 1..=n {
        assert!(r.delta_k(k).unwrap().is_reduced().unwrap());
    }

    let top = r.delta_k(n + 1).unwrap();
    assert!(!top.is_reduced().unwrap());
    let obstruction = top.face(n, FaceValue::Zero).unwrap();
    let expected = r
        .boundary(BoundaryMode::Reduced)
        .unwrap()
        .delta_k(n)
        .unwrap();
    assert!(!obstruction.is_zero());
    assert_eq!(obstruction, expected);
}

#[test]
fn shuffle_leibniz_double_counts_faces() {
    let c2 = curve("C2");
    let y = corpus::symbolic_point("y", "s", 1);
    let lhs = d(&shuffle_product(&c2, &y).unwrap());
    let rhs = shuffle_product(&d(&c2), &y)
        .unwrap()
        .add_scaled(&shuffle_product(&c2, &d(&y)).unwrap(), -1)
        .unwrap();
    let gap = parse_cycle(
        "cycle
vars: a b1 b2 s1 y
ring: 2 2
slots: 2
-1 (1/a, y; s1, b1)
+1 (1/a, y; b2, s1)
-1 (1/a, y; b1*b2, s1)
",
    )
    .unwrap();
    assert_eq!(lhs.sub(&rhs).unwrap(), gap);

    // The plain product satisfies the same identity.
    let concat = |a: &FormalCycle, b: &FormalCycle| achow::cycles::concat(a, b).unwrap();
    let lhs = d(&concat(&c2, &y));
    let rhs = concat(&d(&c2), &y)
        .add_scaled(&concat(&c2, &d(&y)), -1)
        .unwrap();
    assert_eq!(lhs, rhs);
}
