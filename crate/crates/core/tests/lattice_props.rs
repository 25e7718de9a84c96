use std::sync::Arc;

use hkcover_core::catalog::{e8_negative, hyperbolic_plane, k3_lattice, standard_lattice};
use hkcover_core::complement::primitive_orthogonal_complement;
use hkcover_core::lattice::{
    inertia, is_negative_definite, signature, DivisorClass, Lattice, Signature,
};
use hkcover_oracles::gen::{congruence, random_symmetric, random_unimodular};
use hkcover_oracles::{
    inertia_by_descartes, is_saturated_basis, negative_definite_by_minors, to_q,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice(g: &[Vec<i64>]) -> Lattice {
    let labels: Vec<String> = (0..g.len()).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    Lattice::from_int_gram(g, &refs).unwrap()
}

fn as_triple(s: Signature) -> (usize, usize, usize) {
    (s.n_plus, s.n_zero, s.n_minus)
}

#[test]
fn signature_matches_descartes_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let g = random_symmetric(&mut rng, n, 5);
        assert_eq!(
            as_triple(signature(&lattice(&g))),
            inertia_by_descartes(&to_q(&g)),
            "{g:?}"
        );
    }
}

#[test]
fn sylvester_stability_under_unimodular_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let g = random_symmetric(&mut rng, n, 4);
        let s = signature(&lattice(&g));
        for _ in 0..20 {
            let t = random_unimodular(&mut rng, n, 3);
            assert_eq!(signature(&lattice(&congruence(&g, &t))), s);
        }
    }
}

#[test]
fn negative_definiteness_matches_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen_true = 0;
    for _ in 0..300 {
        let n = rand::Rng::gen_range(&mut rng, 1..=5);
        let mut g = random_symmetric(&mut rng, n, 3);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] -= 6;
        }
        let l = lattice(&g);
        let all: Vec<usize> = (0..n).collect();
        let want = negative_definite_by_minors(&to_q(&g));
        seen_true += usize::from(want);
        assert_eq!(is_negative_definite(&l, &all).unwrap(), want, "{g:?}");
    }
    assert!(seen_true > 20);
}

#[test]
fn catalog_signatures() {
    let cases: Vec<(Lattice, (usize, usize, usize))> = vec![
        (hyperbolic_plane(), (1, 0, 1)),
        (e8_negative(), (0, 0, 8)),
        (k3_lattice(), (3, 0, 19)),
        (standard_lattice("K3n", Some(2)).unwrap(), (3, 0, 20)),
        (standard_lattice("K3n", Some(5)).unwrap(), (3, 0, 20)),
        (standard_lattice("Kumn", Some(2)).unwrap(), (3, 0, 4)),
        (standard_lattice("rank1", Some(-2)).unwrap(), (0, 0, 1)),
    ];
    for (l, want) in cases {
        assert_eq!(as_triple(signature(&l)), want);
        let ints: Vec<Vec<i64>> = l
            .gram()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(inertia_by_descartes(&to_q(&ints)), want);
    }
}

fn check_complement(k3: &Arc<Lattice>, classes: &[DivisorClass]) {
    let basis = primitive_orthogonal_complement(k3, classes).unwrap();
    assert_eq!(basis.len(), 22 - classes.len());
    assert!(is_saturated_basis(&basis), "complement is not primitive");
    for v in &basis {
        for c in classes {
            let coeffs = c.integer_coeffs().unwrap();
            let mut acc = BigInt::zero();
            for i in 0..22 {
                for j in 0..22 {
                    acc += &coeffs[i] * k3.gram()[i][j].numer() * &v[j];
                }
            }
            assert!(acc.is_zero());
        }
    }
}

#[test]
fn k3_complements_are_orthogonal_and_primitive() {
    let k3 = Arc::new(k3_lattice());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for rho in 1..=3 {
        for _ in 0..10 {
            // independent classes: random vectors, retried until the pairing has full rank
            let classes = loop {
                let cs: Vec<DivisorClass> = (0..rho)
                    .map(|_| {
                        let v: Vec<i64> = (0..22)
                            .map(|_| rand::Rng::gen_range(&mut rng, -2..=2))
                            .collect();
                        DivisorClass::from_ints(&k3, &v).unwrap()
                    })
                    .collect();
                if hkcover_core::complement::pairing_rank(&k3, &cs).unwrap() == rho {
                    break cs;
                }
            };
            check_complement(&k3, &classes);
        }
    }
}

#[test]
fn non_primitive_sublattice_still_has_primitive_complement() {
    let k3 = Arc::new(k3_lattice());
    let mut v = vec![0i64; 22];
    v[0] = 2;
    v[1] = 4;
    check_complement(&k3, &[DivisorClass::from_ints(&k3, &v).unwrap()]);
}

proptest! {
    #[test]
    fn inertia_counts_add_up(entries in proptest::collection::vec(-6i64..=6, 10)) {
        // 4x4 symmetric from 10 upper-triangular entries
        let mut g = vec![vec![0i64; 4]; 4];
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                let x = it.next().unwrap();
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let s = inertia(&to_q(&g));
        prop_assert_eq!(s.rank(), 4);
        prop_assert_eq!(as_triple(s), inertia_by_descartes(&to_q(&g)));
    }

    #[test]
    fn direct_sum_adds_signatures(a in proptest::collection::vec(-5i64..=5, 1..4), b in proptest::collection::vec(-5i64..=5, 1..4)) {
        let la = Lattice::diagonal(&a);
        let lb = Lattice::diagonal(&b);
        let s = signature(&hkcover_core::direct_sum(&la, &lb));
        let (sa, sb) = (signature(&la), signature(&lb));
        prop_assert_eq!(s, Signature::new(sa.n_plus + sb.n_plus, sa.n_zero + sb.n_zero, sa.n_minus + sb.n_minus));
    }
}
