use autplane::grading::MVec;
use autplane::lattice::{
    cone_decompose_exact, frobenius_bound, representation, span_index, ConeResult, GeneratorSpec, SpanIndex,
};
use num_integer::Integer;
use proptest::prelude::*;

fn degrees(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=9, 0..=max_len)
}

fn minors_gcd(v: &[MVec]) -> i64 {
    let mut g = 0i64;
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            g = g.gcd(&(a.0 * b.1 - a.1 * b.0));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn span_index_is_the_gcd_of_minors(h in degrees(3), k in degrees(3)) {
        prop_assume!(!h.is_empty() || !k.is_empty());
        let spec = GeneratorSpec::new(h, k).unwrap();
        let g = minors_gcd(&spec.roots());
        let expected = if g == 0 { SpanIndex::NotFullRank } else { SpanIndex::Index(g as u64) };
        prop_assert_eq!(span_index(&spec), expected);
    }

    #[test]
    fn frobenius_bound_is_sharp(gaps in prop::collection::vec(1u64..=15, 1..=4)) {
        let g = gaps.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        prop_assume!(g == 1);
        let n0 = frobenius_bound(&gaps).unwrap();
        if n0 > 0 {
            prop_assert!(representation(n0 - 1, &gaps).is_none());
        }
        let smallest = *gaps.iter().min().unwrap();
        for n in n0..n0 + smallest {
            let rep = representation(n, &gaps).unwrap();
            prop_assert_eq!(rep.iter().sum::<u64>(), n);
            prop_assert!(rep.iter().all(|x| gaps.contains(x)));
        }
    }

    #[test]
    fn cone_decompositions_sum_to_their_target(h in degrees(2), k in degrees(3), a in 0i64..40) {
        prop_assume!(!h.is_empty() && !k.is_empty());
        let spec = GeneratorSpec::new(h, k).unwrap();
        let target = MVec(a, -1);
        if let ConeResult::Found(dec) = cone_decompose_exact(&spec, target).unwrap() {
            prop_assert_eq!(dec.sum(), target);
            prop_assert_eq!(dec.nu.len(), dec.mu.iter().map(|m| m.1 as usize).sum::<usize>() + 1);
            for r in dec.nu.iter().chain(&dec.mu) {
                prop_assert!(spec.contains_root(*r));
            }
        }
    }
}
