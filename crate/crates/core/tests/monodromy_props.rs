use std::collections::BTreeSet;

use hkcover_core::monodromy::{
    all_permutations, commuting_orders_possible, galois_like_obstruction, min_symmetric_degree,
    order_of, prime_order_shape, MonodromyError, Permutation,
};
use hkcover_core::orders::alpha;
use hkcover_oracles::{
    commuting_order_pairs, element_orders, min_degree_by_partitions, shapes_of_order,
};
use num_bigint::BigUint;

#[test]
fn min_degree_matches_partition_search() {
    for d in 1..=60u64 {
        assert_eq!(
            min_symmetric_degree(d).unwrap(),
            min_degree_by_partitions(d),
            "d = {d}"
        );
    }
}

#[test]
fn prime_shapes_match_enumeration() {
    for n in 1..=16u64 {
        for p in [2u64, 3, 5, 7, 11, 13] {
            if p > n {
                assert_eq!(
                    prime_order_shape(n, p),
                    Err(MonodromyError::PExceedsN { p, n })
                );
                continue;
            }
            let ours: BTreeSet<Vec<u64>> = prime_order_shape(n, p)
                .unwrap()
                .iter()
                .map(|c| c.parts().to_vec())
                .collect();
            let oracle = shapes_of_order(n, p);
            assert_eq!(ours, oracle, "n = {n}, p = {p}");
            if 2 * p > n {
                assert_eq!(ours.len(), 1);
            }
        }
    }
}

#[test]
fn commuting_orders_match_brute_force() {
    for n in 1..=7usize {
        let pairs = commuting_order_pairs(n);
        let orders = element_orders(n);
        for &d1 in &orders {
            for &d2 in &orders {
                let ours = commuting_orders_possible(n as u64, d1, d2).unwrap();
                assert_eq!(ours, pairs.contains(&(d1, d2)), "n = {n}, ({d1}, {d2})");
            }
        }
    }
}

#[test]
fn commuting_cycles_have_equal_or_disjoint_supports() {
    for n in 2..=7usize {
        let cycles: Vec<(Permutation, BTreeSet<usize>)> = all_permutations(n)
            .into_iter()
            .filter_map(|p| {
                let moved: Vec<Vec<usize>> =
                    p.cycles().into_iter().filter(|c| c.len() > 1).collect();
                (moved.len() == 1).then(|| {
                    let support = moved[0].iter().copied().collect();
                    (p, support)
                })
            })
            .collect();
        for (a, sa) in &cycles {
            for (b, sb) in &cycles {
                if a.commutes_with(b) {
                    assert!(sa == sb || sa.is_disjoint(sb), "{a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn exhaustive_and_rule_regimes_agree_at_the_boundary() {
    // n = 8 is exhaustive, but the prime rule also applies there
    for (d1, d2) in [(5u64, 7u64), (7, 5), (5, 3)] {
        let searched = commuting_orders_possible(8, d1, d2).unwrap();
        assert_eq!(searched, d1 + d2 <= 8, "({d1}, {d2})");
    }
}

#[test]
fn obstruction_witnesses_recheck() {
    for n in 2..=40u64 {
        for g in 1..=8u64 {
            let r = galois_like_obstruction(n, g).unwrap();
            if !r.obstructed {
                assert!(r.witness_primes.is_none());
                continue;
            }
            let (p, q) = r.witness_primes.unwrap();
            assert!(p != q && p <= n && q <= n);
            assert!(alpha(p).unwrap() > 2 * g && alpha(q).unwrap() > 2 * g);
            assert_eq!(commuting_orders_possible(n, p, q), Ok(false));
            assert!(p + q > n);
        }
    }
}

#[test]
fn permutation_orders_match_oracle() {
    for p in all_permutations(6) {
        let images: Vec<u8> = p.images().iter().map(|&i| i as u8).collect();
        assert_eq!(
            order_of(&p),
            BigUint::from(hkcover_oracles::perm_order(&images))
        );
    }
}
