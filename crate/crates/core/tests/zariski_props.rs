use std::sync::Arc;

use hkcover_core::lattice::{
    branch_component_bound, negative_definite_embedding, q_exceptional, DivisorClass, Lattice,
};
use hkcover_core::zariski::{certify, enumerate_valid_supports, zariski_decompose, PrimeSystem};
use hkcover_core::Rational;
use hkcover_oracles::gen::{random_coefficient, random_hyperbolic_instance, random_negdef_gram};
use hkcover_oracles::{to_q, zariski_valid_supports, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lattice(g: &[Vec<i64>]) -> Arc<Lattice> {
    let labels: Vec<String> = (0..g.len()).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    Arc::new(Lattice::from_int_gram(g, &refs).unwrap())
}

fn class(l: &Arc<Lattice>, v: &[Q]) -> DivisorClass {
    DivisorClass::new(l, v.to_vec()).unwrap()
}

#[test]
fn negative_definite_effective_classes_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let k = rng.gen_range(1..=4);
        let g = random_negdef_gram(&mut rng, k);
        let l = lattice(&g);
        let primes: Vec<DivisorClass> = (0..k)
            .map(|i| DivisorClass::basis(&l, i).unwrap())
            .collect();
        let s = PrimeSystem::new(&l, primes, None).unwrap();
        let c: Vec<Rational> = (0..k).map(|_| random_coefficient(&mut rng)).collect();
        let d = class(&l, &c);
        let dec = zariski_decompose(&s, &d).unwrap();
        assert!(dec.positive.is_zero(), "{g:?} {c:?}");
        assert_eq!(dec.negative_part(&s), d);
        assert!(certify(&s, &d, &dec).all());
        assert!(q_exceptional(&l, s.primes()).unwrap());
    }
}

#[test]
fn support_agrees_with_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut nontrivial = 0;
    for _ in 0..80 {
        let k = rng.gen_range(2..=5);
        let inst = random_hyperbolic_instance(&mut rng, k);
        let l = lattice(&inst.gram);
        let primes: Vec<DivisorClass> = inst
            .primes
            .iter()
            .map(|p| DivisorClass::from_ints(&l, p).unwrap())
            .collect();
        let s = PrimeSystem::new(&l, primes, None).unwrap();
        let d = class(&l, &inst.d);
        let dec = zariski_decompose(&s, &d).unwrap();
        assert!(certify(&s, &d, &dec).all());

        let pq: Vec<Vec<Q>> = to_q(&inst.primes);
        let oracle = zariski_valid_supports(&to_q(&inst.gram), &pq, &inst.d);
        assert_eq!(oracle.len(), 1, "{inst:?}");
        assert_eq!(oracle[0].support, dec.support);
        assert_eq!(&oracle[0].positive[..], dec.positive.coeffs());
        assert_eq!(enumerate_valid_supports(&s, &d), vec![dec.support.clone()]);
        nontrivial += usize::from(!dec.support.is_empty());
    }
    assert!(
        nontrivial >= 10,
        "only {nontrivial} instances had a negative part"
    );
}

#[test]
fn nef_classes_have_empty_negative_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let inst = random_hyperbolic_instance(&mut rng, 3);
        let l = lattice(&inst.gram);
        let primes: Vec<DivisorClass> = inst
            .primes
            .iter()
            .map(|p| DivisorClass::from_ints(&l, p).unwrap())
            .collect();
        let s = PrimeSystem::new(&l, primes, None).unwrap();
        let h = DivisorClass::from_ints(&l, &inst.ample).unwrap();
        let dec = zariski_decompose(&s, &h).unwrap();
        assert!(dec.support.is_empty());
        assert_eq!(dec.positive, h);
    }
}

#[test]
fn decomposition_is_scale_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let inst = random_hyperbolic_instance(&mut rng, 4);
        let l = lattice(&inst.gram);
        let primes: Vec<DivisorClass> = inst
            .primes
            .iter()
            .map(|p| DivisorClass::from_ints(&l, p).unwrap())
            .collect();
        let s = PrimeSystem::new(&l, primes, None).unwrap();
        let d = class(&l, &inst.d);
        let t = random_coefficient(&mut rng);
        let scaled = DivisorClass::zero(&l).add_scaled(&t, &d).unwrap();
        let a = zariski_decompose(&s, &d).unwrap();
        let b = zariski_decompose(&s, &scaled).unwrap();
        assert_eq!(a.support, b.support);
        for (i, x) in &a.negative_coeffs {
            assert_eq!(&(x * &t), &b.negative_coeffs[i]);
        }
    }
}

#[test]
fn branch_bound_and_embeddings() {
    assert_eq!(branch_component_bound(4), Ok(1));
    for b2 in 4..=30u64 {
        assert_eq!(branch_component_bound(b2), Ok(b2 - 3));
        let (l, classes) = negative_definite_embedding(b2).unwrap();
        assert_eq!(classes.len() as u64, b2 - 3);
        assert!(q_exceptional(&l, &classes).unwrap());
        for c in &classes {
            assert!(!c.square().is_zero());
        }
    }
    assert_eq!(branch_component_bound(3), Ok(0));
    assert!(branch_component_bound(2).is_err());
}
