use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use ringprob::closedform::{general_bounds, BoundClass};
use ringprob::{parse_ring, structure, Enumerator, Execution, ProbFraction, Ring};

fn small_atom() -> impl Strategy<Value = String> {
    prop_oneof![
        (2u64..30).prop_map(|n| format!("Z{n}")),
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16]).prop_map(|q| format!("GF{q}")),
        prop::sample::select(vec![
            "M2(GF2)",
            "chain(2,2)",
            "chain(2,3)",
            "chain(3,2)",
            "GR(2,2,2)"
        ])
        .prop_map(str::to_string),
        (prop::sample::select(vec![2u64, 3]), 1usize..3)
            .prop_map(|(q, m)| format!("triv({q},{m})")),
    ]
}

fn small_ring() -> impl Strategy<Value = Arc<Ring>> {
    prop_oneof![
        small_atom(),
        (small_atom(), small_atom()).prop_map(|(a, b)| format!("{a} x {b}")),
    ]
    .prop_filter_map("ring too large", |spec| {
        let ring = parse_ring(&spec).unwrap();
        (ring.size() <= 300).then_some(ring)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn probabilities_sum_to_one(ring in small_ring()) {
        let counts = Enumerator::default().pair_counts(&ring).unwrap();
        let sum: u64 = counts.iter().sum();
        prop_assert_eq!(sum, (ring.size() * ring.size()) as u64);
    }

    #[test]
    fn brute_and_annihilator_routes_agree(ring in small_ring(), seed in any::<usize>()) {
        let e = Enumerator::default();
        let x = seed % ring.size();
        let brute = e.prob_brute(&ring, x).unwrap();
        let annsum = e.prob_annsum(&ring, x).unwrap();
        prop_assert!(brute.same_counts(&annsum), "{} at {}: {} vs {}", ring, x, brute, annsum);
    }

    #[test]
    fn unit_law(ring in small_ring()) {
        let rep = structure::report(&ring);
        let counts = Enumerator::default().pair_counts(&ring).unwrap();
        let units = rep.units().len() as u64;
        for (x, &hits) in counts.iter().enumerate() {
            prop_assert_eq!(hits == units, rep.is_unit(x), "{} at {}", ring, x);
        }
    }

    #[test]
    fn product_law(a in small_atom(), b in small_atom(), sa in any::<usize>(), sb in any::<usize>()) {
        let (ra, rb) = (parse_ring(&a).unwrap(), parse_ring(&b).unwrap());
        prop_assume!(ra.size() * rb.size() <= 400);
        let prod = Ring::product(vec![ra.clone(), rb.clone()]).unwrap();
        let (x, y) = (sa % ra.size(), sb % rb.size());
        let e = Enumerator::default();
        let joint = e.prob_brute(&prod, prod.product_join(&[x, y]).unwrap()).unwrap();
        let split = e.prob_brute(&ra, x).unwrap().product(&e.prob_brute(&rb, y).unwrap());
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn general_bounds_hold(ring in small_ring()) {
        let rep = structure::report(&ring);
        let counts = Enumerator::default().pair_counts(&ring).unwrap();
        let total = BigUint::from(ring.size() * ring.size());
        let value = |x: usize| ProbFraction::new(counts[x], total.clone());
        let (lo, hi) = general_bounds(&ring, BoundClass::Zero);
        prop_assert!(lo <= value(0) && value(0) <= hi);
        let (lo, hi) = general_bounds(&ring, BoundClass::NonzeroNonunit);
        for &x in rep.zero_divisors().iter().filter(|&&x| x != 0) {
            prop_assert!(lo <= value(x) && value(x) <= hi, "{} at {}: {} not in [{}, {}]", ring, x, value(x), lo, hi);
        }
    }

    #[test]
    fn engines_agree(ring in small_ring()) {
        let seq = Enumerator::new(4096, Execution::Sequential);
        let par = Enumerator::new(4096, Execution::Parallel);
        prop_assert_eq!(seq.pair_counts(&ring).unwrap(), par.pair_counts(&ring).unwrap());
        prop_assert_eq!(seq.annsum_counts(&ring).unwrap(), par.pair_counts(&ring).unwrap());
    }

    #[test]
    fn normalized_fractions_are_canonical(h in 0u64..10_000, t in 1u64..10_000) {
        let f = ProbFraction::new(h, t);
        let (a, b) = f.reduced();
        prop_assert_eq!(ProbFraction::new(a.clone(), b.clone()), f);
        prop_assert_eq!(num_integer::Integer::gcd(&a, &b) == BigUint::from(1u8) || a == BigUint::from(0u8), true);
    }
}

#[test]
fn spec_string_round_trip() {
    for spec in [
        "Z27",
        "GF9",
        "M3(GF2)",
        "chain(3,3)",
        "GR(2,2,2)",
        "triv(2,3)",
        "Z2 x M2(GF2)",
        "Z3 x GF4 x Z2",
    ] {
        let ring = parse_ring(spec).unwrap();
        let again = parse_ring(&ring.spec_string().unwrap()).unwrap();
        assert_eq!(*ring, *again, "{spec}");
    }
}
