use achow::perm::{enumerate_shuffles, multinomial, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn sized() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=6).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

/// Sign by counting inversions.
fn inversion_sign(p: &Permutation) -> i64 {
    let v = p.images();
    let inv = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] > v[j])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #[test]
    fn sign_is_multiplicative((p, q, _) in sized()) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.sign(), p.sign() * q.sign());
        prop_assert_eq!(p.sign(), inversion_sign(&p));
        prop_assert_eq!(p.inverse().sign(), p.sign());
    }

    #[test]
    fn composition_is_associative((p, q, r) in sized()) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn insert_fixed_keeps_sign((p, _, _) in sized(), i in 1usize..=7) {
        let i = i.min(p.degree() + 1);
        let q = p.insert_fixed(i).unwrap();
        prop_assert_eq!(q.apply(i), i);
        prop_assert_eq!(q.sign(), p.sign());
    }

    #[test]
    fn block_product_sign((p, _, _) in sized(), (q, _, _) in sized()) {
        prop_assert_eq!(p.product(&q).sign(), p.sign() * q.sign());
    }
}

#[test]
fn shuffle_counts_are_binomial() {
    for r in 0..=5 {
        for s in 0..=5 {
            let all = enumerate_shuffles(&[r, s]);
            assert_eq!(all.len() as u128, multinomial(&[r, s]));
            assert!(all.iter().all(|p| p.is_shuffle(&[r, s])));
        }
    }
}
