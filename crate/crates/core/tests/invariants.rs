//! Cross-route invariants over ranges too large for the unit tests.

use divseq_core::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn three_two(k: u64) -> Factorization {
    Factorization::new(vec![(2, k), (3, 1)]).unwrap()
}

fn is_square(m: u64) -> bool {
    let r = (m as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == m)
}

#[test]
fn divisor_routes_agree_up_to_1e5() {
    let l = Limits::default();
    for m in 1..=100_000u64 {
        let oracle = divisor_list(m, &l).unwrap();
        let f = Factorization::of(m).unwrap();
        let factored = divisor_list_factored(&f, &l).unwrap();
        assert_eq!(factored.len(), oracle.len(), "m={m}");
        assert!(
            factored
                .iter()
                .zip(&oracle)
                .all(|(a, &b)| a == &BigUint::from(b)),
            "m={m}"
        );
        assert_eq!(divisor_count(&f), BigUint::from(oracle.len()), "m={m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn divisor_routes_agree_up_to_1e6(m in 1u64..=1_000_000) {
        let l = Limits::default();
        let oracle: Vec<BigUint> = divisor_list(m, &l).unwrap().into_iter().map(BigUint::from).collect();
        let f = Factorization::of(m).unwrap();
        prop_assert_eq!(divisor_list_factored(&f, &l).unwrap(), oracle);
    }

    #[test]
    fn delta_routes_agree(m in 2u64..=10_000_000, t in 0u64..50) {
        let l = Limits::default();
        let f = Factorization::of(m).unwrap();
        prop_assert_eq!(delta_factored(&f, &l).unwrap(), BigUint::from(delta(m, &l).unwrap()));
        prop_assert_eq!(
            delta_above(m, t, &l).ok(),
            delta_above_factored(&f, &BigUint::from(t), &l).ok()
        );
    }
}

#[test]
fn lemma1_divisor_count() {
    let l = Limits::default();
    for k in 1..=30u64 {
        let m = 3u64 << k;
        assert_eq!(
            divisor_list(m, &l).unwrap().len() as u64,
            2 * k + 2,
            "k={k}"
        );
        assert_eq!(divisor_count(&three_two(k)), BigUint::from(2 * k + 2));
    }
    for k in 1..=1000u64 {
        assert_eq!(divisor_count(&three_two(k)), BigUint::from(2 * k + 2));
    }
}

#[test]
fn lemma2_middle_pair_and_exponent() {
    let l = Limits::default();
    for k in 1..=30u64 {
        let brute = delta(3u64 << k, &l).unwrap();
        let middle = middle_pair_3x2k(k).unwrap();
        assert_eq!(middle.difference, BigUint::from(brute), "k={k}");
        // every pair, not only d ≤ √m, to check the middle pair really is minimal
        let divs = divisor_list(3u64 << k, &l).unwrap();
        let full_min = divs
            .iter()
            .map(|&d| (d as i64 - ((3u64 << k) / d) as i64).unsigned_abs())
            .min()
            .unwrap();
        assert_eq!(full_min, brute, "k={k}");
    }
    for k in 1..=1000u64 {
        let want = BigUint::one() << (k.div_ceil(2) - 1);
        assert_eq!(middle_pair_3x2k(k).unwrap().difference, want, "k={k}");
    }
}

#[test]
fn delta_zero_iff_square() {
    let l = Limits::default();
    for m in 1..=100_000u64 {
        assert_eq!(delta(m, &l).unwrap() == 0, is_square(m), "m={m}");
    }
}

#[test]
fn delta_above_zero_dominates_delta() {
    let l = Limits::default();
    for m in 2..=100_000u64 {
        let d = delta(m, &l).unwrap();
        let above = delta_above(m, 0, &l).unwrap().difference;
        assert!(above >= BigUint::from(d));
        if d > 0 {
            assert_eq!(above, BigUint::from(d), "m={m}");
        }
    }
}

#[test]
fn path_equivalence() {
    let l = Limits::default();
    let oracle = a_seq(10, Path::Oracle, &l).unwrap();
    let factored = a_seq(10, Path::Factored, &l).unwrap();
    let fast = a_seq(10, Path::Fast, &l).unwrap();
    assert_eq!(oracle.terms, factored.terms);
    assert_eq!(oracle.terms, fast.terms);

    let factored = a_seq(40, Path::Factored, &l).unwrap();
    let fast = a_seq(40, Path::Fast, &l).unwrap();
    assert_eq!(factored.terms, fast.terms);
}

#[test]
fn partial_products_have_two_three_shape() {
    let l = Limits::default();
    for n in 2..=30u64 {
        let exact = partial_product(n, Path::Factored, &l).unwrap();
        let fast = partial_product(n, Path::Fast, &l).unwrap();
        assert_eq!(exact.factorization, fast.factorization, "n={n}");
        let f = exact.factorization.factors();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, 2);
        assert!(f[0].1 >= 2);
        assert_eq!(f[1], (3, 1));
    }
}

#[test]
fn monotonicity() {
    let l = Limits::default();
    let b = b_seq(200).unwrap();
    assert!(b.terms.windows(2).all(|w| w[0].bits() <= w[1].bits()));
    let a = a_seq(200, Path::Fast, &l).unwrap();
    let exps: Vec<BigUint> = a.terms[3..]
        .iter()
        .map(|t| t.power_of_two_exponent().unwrap())
        .collect();
    assert!(exps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn closed_form_round_trip() {
    let c = c_enclosure(200).unwrap();
    let b = b_seq(100).unwrap();
    for (n, t) in b.indexed() {
        assert_eq!(&Term::Value(b_closed_form(n, &c).unwrap()), t, "n={n}");
    }
}

#[test]
fn josephus_three_way() {
    let l = Limits::default();
    for q in 2..=5u64 {
        for n in 1..=2_000u64 {
            let r = survivor_recurrence(n, q).unwrap().survivor;
            assert_eq!(
                survivor_simulation(n, q, &l).unwrap().survivor,
                r,
                "n={n} q={q}"
            );
            assert_eq!(survivor_via_ow(n, q).unwrap().survivor, r, "n={n} q={q}");
        }
    }
}

#[test]
fn josephus_q2_closed_form() {
    for n in 1..=10_000u64 {
        let m = 63 - n.leading_zeros();
        let rest = n - (1 << m);
        assert_eq!(survivor_recurrence(n, 2).unwrap().survivor, 2 * rest + 1);
    }
}

#[test]
fn ceiling_iteration_laws() {
    let one = ow_sequence(3, 1, 201).unwrap();
    let two = ow_sequence(3, 2, 200).unwrap();
    assert_eq!(&one.terms[1..], &two.terms[..]);
    for q in 2..=6u64 {
        let it = ow_sequence(q, 7, 150).unwrap();
        for w in it.terms.windows(2) {
            // (q-1)·next ≥ q·prev and (q-1)·next ≤ q·prev + (q-1)
            let lhs = &w[1] * (q - 1);
            let qp = &w[0] * q;
            assert!(lhs >= qp);
            assert!(lhs <= qp + (q - 1));
        }
    }
}

#[test]
fn enclosures_nest_and_stay_non_empty() {
    let mut prev_c = c_enclosure(1).unwrap();
    let mut prev_k = k3_enclosure(1).unwrap();
    for n in 2..=300u64 {
        let c = c_enclosure(n).unwrap();
        let k = k3_enclosure(n).unwrap();
        assert!(c.is_subset_of(&prev_c) && k.is_subset_of(&prev_k), "n={n}");
        assert!(c.width() > BigRational::zero());
        prev_c = c;
        prev_k = k;
    }
}

#[test]
fn seed_one_growth_is_two_thirds_of_k3() {
    let two_thirds = BigRational::new(2.into(), 3.into());
    let seed1 = ow_sequence(3, 1, 120).unwrap();
    for n in 2..=120u32 {
        // seed-1 iterates indexed from 1: f_n = terms[n-1]
        let f_n = BigRational::from_integer(seed1.terms[n as usize - 1].clone().into());
        let w = constants::two_thirds_pow(n);
        let own =
            RationalInterval::new(&f_n * &w, (f_n + BigRational::from_integer(2.into())) * &w)
                .unwrap();
        let scaled = k3_enclosure(u64::from(n) - 1)
            .unwrap()
            .scale(&two_thirds)
            .unwrap();
        assert!(own.intersects(&scaled), "n={n}");
        assert!(own.intersects(&k3_enclosure(120).unwrap().scale(&two_thirds).unwrap()));
    }
}
