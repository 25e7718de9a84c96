//! Seeded random Zariski systems for the reproduction checks.

use std::sync::Arc;

use hkcover_core::lattice::{is_negative_definite, DivisorClass, Lattice};
use hkcover_core::rational::{frac, int};
use hkcover_core::zariski::PrimeSystem;
use hkcover_core::Rational;
use rand::Rng;

/// A prime system together with the class to decompose.
#[derive(Debug, Clone)]
pub struct Instance {
    pub system: PrimeSystem,
    pub class: DivisorClass,
}

/// Rational in (0, 5] with denominator at most 6.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.gen_range(1..=6);
    frac(rng.gen_range(1..=5 * den), den)
}

/// `k` primes with a negative-definite Gram matrix (diagonal in [-10, -1],
/// crossings in [0, 10]) spanning their own lattice, and d = sum c_i D_i.
pub fn exceptional_instance<R: Rng>(rng: &mut R, k: usize) -> Instance {
    let l = loop {
        let mut g = vec![vec![0i64; k]; k];
        for i in 0..k {
            g[i][i] = rng.gen_range(-10..=-1);
            for j in i + 1..k {
                let x = if rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(0..=10)
                };
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let labels: Vec<String> = (1..=k).map(|i| format!("E{i}")).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        let l = Lattice::from_int_gram(&g, &labels).expect("symmetric integer Gram");
        let all: Vec<usize> = (0..k).collect();
        if is_negative_definite(&l, &all).expect("indices in range") {
            break Arc::new(l);
        }
    };
    let primes: Vec<DivisorClass> = (0..k)
        .map(|i| DivisorClass::basis(&l, i).expect("in range"))
        .collect();
    let coeffs: Vec<Rational> = (0..k).map(|_| random_coefficient(rng)).collect();
    let class = DivisorClass::new(&l, coeffs).expect("rank matches");
    Instance {
        system: PrimeSystem::new(&l, primes, None).expect("same ambient"),
        class,
    }
}

/// A unimodular T with entries in [-3, 3] and its inverse, built together
/// from elementary row operations.
fn unimodular_pair<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let id: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let (mut t, mut inv) = (id.clone(), id);
    for _ in 0..4 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => {
                t.swap(i, j);
                inv.iter_mut().for_each(|r| r.swap(i, j));
            }
            1 => {
                t[i].iter_mut().for_each(|x| *x = -*x);
                inv.iter_mut().for_each(|r| r[i] = -r[i]);
            }
            _ => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row: Vec<i64> = t[i].iter().zip(&t[j]).map(|(a, b)| a + c * b).collect();
                let col: Vec<i64> = inv.iter().map(|r| r[j] - c * r[i]).collect();
                if row.iter().chain(&col).all(|x| x.abs() <= 3) {
                    t[i] = row;
                    inv.iter_mut().zip(col).for_each(|(r, x)| r[j] = x);
                }
            }
        }
    }
    (t, inv)
}

fn minkowski(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// diag(1, -1, -1, -1) in a random unimodular basis, `k` primes meeting
/// pairwise non-negatively and positively against an ample class h, and
/// d = h + a random effective combination of the primes.
pub fn hyperbolic_instance<R: Rng>(rng: &mut R, k: usize) -> Instance {
    let (t, t_inv) = unimodular_pair(rng, 4);
    let base = [1i64, -1, -1, -1];
    let gram: Vec<Vec<i64>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| (0..4).map(|m| t[m][i] * base[m] * t[m][j]).sum())
                .collect()
        })
        .collect();
    let l = Arc::new(
        Lattice::from_int_gram(&gram, &["x0", "x1", "x2", "x3"]).expect("symmetric integer Gram"),
    );
    'outer: loop {
        let h: Vec<i64> = std::iter::once(rng.gen_range(2..=4))
            .chain((0..3).map(|_| rng.gen_range(-1..=1)))
            .collect();
        if minkowski(&h, &h) <= 0 {
            continue;
        }
        let mut primes: Vec<Vec<i64>> = Vec::new();
        let mut tries = 0;
        while primes.len() < k {
            tries += 1;
            if tries > 5000 {
                continue 'outer;
            }
            let u: Vec<i64> = std::iter::once(rng.gen_range(0..=2))
                .chain((0..3).map(|_| rng.gen_range(-2..=2)))
                .collect();
            if minkowski(&h, &u) <= 0 || primes.contains(&u) {
                continue;
            }
            if minkowski(&u, &u) >= 0 && rng.gen_bool(0.8) {
                continue;
            }
            if primes.iter().all(|p| minkowski(p, &u) >= 0) {
                primes.push(u);
            }
        }
        let mut d: Vec<Rational> = mat_vec(&t_inv, &h).into_iter().map(int).collect();
        let primes: Vec<DivisorClass> = primes
            .iter()
            .map(|u| DivisorClass::from_ints(&l, &mat_vec(&t_inv, u)).expect("rank 4"))
            .collect();
        for p in &primes {
            if rng.gen_bool(0.25) {
                continue;
            }
            let a = random_coefficient(rng);
            for (x, c) in d.iter_mut().zip(p.coeffs()) {
                *x += &a * c;
            }
        }
        let class = DivisorClass::new(&l, d).expect("rank 4");
        return Instance {
            system: PrimeSystem::new(&l, primes, None).expect("same ambient"),
            class,
        };
    }
}
