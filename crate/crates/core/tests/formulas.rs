use num_bigint::BigUint;
use ringprob::closedform::{
    chain_value, local_bounds, local_equality_predicates, matrix_rank, prob_auto,
    prob_chain_formula, prob_j2zero_formula, prob_matrix_formula, prob_zn, subspace_count,
    zero_extremality_predicate, BoundClass, Formula, MatrixClass,
};
use ringprob::{parse_ring, structure, Enumerator, ProbFraction};

fn brute_values(spec: &str) -> (std::sync::Arc<ringprob::Ring>, Vec<ProbFraction>) {
    let ring = parse_ring(spec).unwrap();
    let counts = Enumerator::default().pair_counts(&ring).unwrap();
    let total = BigUint::from(ring.size() * ring.size());
    let values = counts
        .into_iter()
        .map(|h| ProbFraction::new(h, total.clone()))
        .collect();
    (ring, values)
}

#[test]
fn matrix_formula_matches_enumeration() {
    for spec in [
        "M1(GF2)", "M1(GF3)", "M2(GF2)", "M2(GF3)", "M3(GF2)", "M2(GF4)",
    ] {
        let (ring, values) = brute_values(spec);
        for (x, value) in values.iter().enumerate() {
            let rank = matrix_rank(&ring, x).unwrap() as u32;
            let ringprob::Construction::Matrix { dim, field } = ring.construction() else {
                unreachable!()
            };
            let cls = MatrixClass::new(field.order(), *dim as u32, rank).unwrap();
            assert_eq!(prob_matrix_formula(cls).value, *value, "{spec} at {x}");
        }
    }
}

#[test]
fn matrix_zero_class_counts() {
    // |M2(F2)| = 16: zero is hit 58 times, rank one 18 times, invertible 6 times.
    let hits: Vec<u64> = (0..=2)
        .map(|r| {
            let v = prob_matrix_formula(MatrixClass::new(2, 2, r).unwrap()).value;
            let (a, b) = v.reduced();
            u64::try_from(a * 256u32 / b).unwrap()
        })
        .collect();
    assert_eq!(hits, [58, 18, 6]);
}

#[test]
fn subspace_counts_small() {
    // 2-dim subspaces of F_2^4 containing a fixed line: 7.
    assert_eq!(subspace_count(2, 4, 1, 2).unwrap(), BigUint::from(7u8));
    // All 2-dim subspaces of F_3^4: 130.
    assert_eq!(subspace_count(3, 4, 0, 2).unwrap(), BigUint::from(130u8));
    assert!(subspace_count(2, 3, 2, 1).is_err());
}

#[test]
fn chain_formula_matches_enumeration() {
    for spec in [
        "Z4",
        "Z8",
        "Z27",
        "chain(2,2)",
        "chain(2,3)",
        "chain(3,3)",
        "GR(2,2,2)",
        "GF4",
    ] {
        let (ring, values) = brute_values(spec);
        for (x, value) in values.iter().enumerate() {
            let got = prob_chain_formula(&ring, x).unwrap();
            assert_eq!(got.value, *value, "{spec} at {x}");
        }
    }
    assert!(prob_chain_formula(&parse_ring("triv(2,2)").unwrap(), 0).is_err());
    assert_eq!(chain_value(2, 2, None), ProbFraction::new(8u8, 16u8));
}

#[test]
fn square_zero_formula_matches_enumeration() {
    for spec in [
        "Z4",
        "Z9",
        "chain(2,2)",
        "chain(3,2)",
        "triv(2,1)",
        "triv(2,2)",
        "triv(2,3)",
        "triv(3,2)",
    ] {
        let (ring, values) = brute_values(spec);
        for (x, value) in values.iter().enumerate() {
            assert_eq!(
                prob_j2zero_formula(&ring, x).unwrap().value,
                *value,
                "{spec} at {x}"
            );
        }
    }
    assert!(prob_j2zero_formula(&parse_ring("Z8").unwrap(), 0).is_err());
    assert!(prob_j2zero_formula(&parse_ring("Z6").unwrap(), 0).is_err());
}

#[test]
fn chain_and_square_zero_agree_at_length_two() {
    for spec in ["Z4", "Z9", "Z25", "chain(2,2)", "chain(3,2)", "triv(4,1)"] {
        let ring = parse_ring(spec).unwrap();
        for x in 0..ring.size() {
            assert_eq!(
                prob_chain_formula(&ring, x).unwrap().value,
                prob_j2zero_formula(&ring, x).unwrap().value,
                "{spec} at {x}"
            );
        }
    }
}

#[test]
fn local_bounds_hold() {
    for spec in [
        "Z4",
        "Z8",
        "Z9",
        "Z27",
        "chain(2,3)",
        "chain(3,3)",
        "GR(2,2,2)",
        "triv(2,2)",
        "triv(2,3)",
        "triv(3,2)",
    ] {
        let (ring, values) = brute_values(spec);
        let rep = structure::report(&ring);
        let (lo, hi) = local_bounds(&ring, BoundClass::NonzeroNonunit).unwrap();
        for &x in rep.radical().members().iter().filter(|&&x| x != 0) {
            assert!(lo <= values[x] && values[x] <= hi, "{spec} at {x}");
        }
        let (lo, hi) = local_bounds(&ring, BoundClass::Zero).unwrap();
        assert!(lo <= values[0] && values[0] <= hi, "{spec} at 0");
    }
}

#[test]
fn equality_cases_are_equivalent() {
    for spec in [
        "Z4",
        "Z8",
        "Z9",
        "chain(2,3)",
        "chain(3,2)",
        "GR(2,2,2)",
        "triv(2,2)",
        "triv(3,2)",
    ] {
        let ring = parse_ring(spec).unwrap();
        let preds = local_equality_predicates(&ring).unwrap();
        assert!(preds.iter().all(|&p| p == preds[0]), "{spec}: {preds:?}");
        let (attains, j2) = zero_extremality_predicate(&ring).unwrap();
        assert_eq!(attains, j2, "{spec}");
    }
}

#[test]
fn residue_formula_matches_enumeration() {
    for n in 2..=30u64 {
        let (_, values) = brute_values(&format!("Z{n}"));
        for (x, value) in values.iter().enumerate() {
            assert_eq!(prob_zn(n, x as u64).unwrap().value, *value, "Z{n} at {x}");
        }
    }
}

#[test]
fn auto_dispatch_picks_expected_formulas() {
    let e = Enumerator::default();
    let cases = [
        ("Z8", 1, Formula::Unit),
        ("M2(GF3)", 0, Formula::MatrixRank),
        ("Z8", 2, Formula::ChainLayer),
        ("triv(2,2)", 1, Formula::SquareZeroRadical),
        ("Z12", 2, Formula::ResidueCrt),
        ("Z2 x triv(2,2)", 1, Formula::Product),
    ];
    for (spec, x, formula) in cases {
        let ring = parse_ring(spec).unwrap();
        let got = prob_auto(&ring, x, &e).unwrap();
        assert_eq!(got.formula, formula, "{spec} at {x}");
        assert_eq!(got.value, e.prob_brute(&ring, x).unwrap(), "{spec} at {x}");
    }
}
