use achow::corpus;
use achow::mixedcx::fixtures::random_mixed_complex;
use achow::mixedcx::io::{parse_complex, print_complex};
use achow::mixedcx::linalg::Matrix;
use achow::mixedcx::{connes_sequence, default_max_degree, span_builder, MixedComplex};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt) -> u64 {
    let r = (x.abs() % BigInt::from(P)).to_u64().expect("fits");
    if x.is_negative() && r != 0 {
        P - r
    } else {
        r
    }
}

/// Dense matrix mod `P`; entries are reduced numerators times inverted denominators.
fn modp(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let q = m.get(i, j);
                    mul(reduce(q.numer()), pow(reduce(q.denom()), P - 2))
                })
                .collect()
        })
        .collect()
}

fn rank(mut a: Vec<Vec<u64>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = pow(a[r][c], P - 2);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = mul(a[i][c], inv);
                let pivot = a[r].clone();
                for (x, &y) in a[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + P - mul(f, y)) % P;
                }
            }
        }
        r += 1;
    }
    r
}

/// Components of `Tot_n` in ascending degree.
fn components(n: isize) -> Vec<isize> {
    (0..=n).filter(|k| (n - k) % 2 == 0).collect()
}

/// `b + B` from `Tot_n` to `Tot_{n−1}`, assembled independently of the library.
fn tot_d(m: &MixedComplex, n: isize) -> Vec<Vec<u64>> {
    let offsets = |deg: isize| {
        let mut acc = 0;
        components(deg)
            .into_iter()
            .map(|k| {
                let o = acc;
                acc += m.dim(k);
                (k, o)
            })
            .collect::<Vec<_>>()
    };
    let src = offsets(n);
    let dst = offsets(n - 1);
    let rows = components(n - 1).iter().map(|&k| m.dim(k)).sum();
    let cols = components(n).iter().map(|&k| m.dim(k)).sum();
    let mut out = vec![vec![0; cols]; rows];
    for &(k, c0) in &src {
        for (target, block) in [(k - 1, m.b(k)), (k + 1, m.big_b(k))] {
            let Some(&(_, r0)) = dst.iter().find(|(t, _)| *t == target) else {
                continue;
            };
            let block = modp(&block);
            for (i, row) in block.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    out[r0 + i][c0 + j] = x;
                }
            }
        }
    }
    out
}

fn tot_dim(m: &MixedComplex, n: isize) -> usize {
    components(n).iter().map(|&k| m.dim(k)).sum()
}

fn oracle_hh(m: &MixedComplex, n: isize) -> usize {
    m.dim(n) - rank(modp(&m.b(n))) - rank(modp(&m.b(n + 1)))
}

fn oracle_hc(m: &MixedComplex, n: isize) -> usize {
    let out = if n == 0 { 0 } else { rank(tot_d(m, n)) };
    tot_dim(m, n) - out - rank(tot_d(m, n + 1))
}

fn library_dims(m: &MixedComplex) -> (Vec<usize>, Vec<usize>) {
    let max = default_max_degree(m);
    let col = m.column(max + 1);
    let tot = m.totalize(max + 1);
    (
        (0..=max).map(|n| col.homology(n).unwrap().dim).collect(),
        (0..=max)
            .map(|n| tot.chain.homology(n).unwrap().dim)
            .collect(),
    )
}

fn oracle_dims(m: &MixedComplex) -> (Vec<usize>, Vec<usize>) {
    let max = default_max_degree(m) as isize;
    (
        (0..=max).map(|n| oracle_hh(m, n)).collect(),
        (0..=max).map(|n| oracle_hc(m, n)).collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_fixtures_agree_with_modular_oracle(seed in 0u64..1_000_000, top in 1usize..=5) {
        let m = random_mixed_complex(seed, top, 40);
        prop_assert!(m.validate().is_none());
        prop_assert!(m.total_dim() <= 40);
        prop_assert_eq!(library_dims(&m), oracle_dims(&m));
    }

    #[test]
    fn euler_characteristic_of_hochschild_homology(seed in 0u64..1_000_000, top in 1usize..=5) {
        let m = random_mixed_complex(seed, top, 40);
        let (hh, _) = library_dims(&m);
        let chi = |v: Vec<i64>| v.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d } else { -d }).sum::<i64>();
        let chains = (0..hh.len() as isize).map(|n| m.dim(n) as i64).collect();
        prop_assert_eq!(chi(hh.into_iter().map(|d| d as i64).collect()), chi(chains));
    }

    #[test]
    fn text_format_round_trips(seed in 0u64..1_000_000, top in 0usize..=4) {
        let m = random_mixed_complex(seed, top, 24);
        let back = parse_complex(&print_complex(&m)).unwrap();
        prop_assert_eq!(back.dims(), m.dims());
        for n in 0..=m.dims().len() as isize {
            prop_assert_eq!(back.b(n), m.b(n));
            prop_assert_eq!(back.big_b(n), m.big_b(n));
        }
    }
}

#[test]
fn connes_sequence_is_exact_on_random_fixtures() {
    for seed in 0..20 {
        let m = random_mixed_complex(seed, 4, 30);
        let les = connes_sequence(&m, default_max_degree(&m)).unwrap();
        assert!(les.all_interior_exact(), "seed {seed}:\n{les}");
    }
}

#[test]
fn span_complexes_of_the_corpus() {
    type Row = (
        &'static str,
        &'static [usize],
        &'static [usize],
        &'static [usize],
    );
    let expected: [Row; 5] = [
        ("(u)", &[1, 1], &[1, 1, 0, 0], &[1, 0, 0, 0]),
        ("(u;t1)", &[0, 1, 1], &[0, 1, 1, 0, 0], &[0, 1, 0, 0, 0]),
        (
            "(u), R",
            &[1, 2, 2, 1],
            &[1, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
        ),
        ("(t1)xR", &[0, 0, 1, 2, 1], &[0; 7], &[0; 7]),
        (
            "(x;t1,t2), R, (t1)xR",
            &[0, 1, 4, 4, 1],
            &[0, 0, 1, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0, 0],
        ),
    ];
    let seeds = corpus::span_seeds();
    assert_eq!(seeds.len(), expected.len());
    for ((name, cycles), (want_name, dims, hh, hc)) in seeds.into_iter().zip(expected) {
        assert_eq!(name, want_name);
        let span = span_builder(&cycles, 4).unwrap();
        let m = &span.complex;
        assert!(m.validate().is_none(), "{name}");
        assert_eq!(m.dims(), dims, "{name}");
        let oracle = oracle_dims(m);
        assert_eq!(
            (oracle.0.as_slice(), oracle.1.as_slice()),
            (hh, hc),
            "{name}"
        );
        assert_eq!(library_dims(m), oracle, "{name}");
    }
}
