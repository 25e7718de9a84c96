//! Random test instances. Callers pass a seeded RNG so every suite is
//! reproducible.

use rand::Rng;

use crate::{negative_definite_by_minors, qf, to_q, Q};

/// Random matrix in GL_n(Z) with entries in [-bound, bound], built from
/// elementary row operations that keep the entries in range.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut t = crate::int_identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            t[0][0] = -1;
        }
        return t;
    }
    for _ in 0..4 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => t.swap(i, j),
            1 => t[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row: Vec<i64> = t[i].iter().zip(&t[j]).map(|(a, b)| a + c * b).collect();
                if row.iter().all(|x| x.abs() <= bound) {
                    t[i] = row;
                }
            }
        }
    }
    t
}

/// T^T G T.
pub fn congruence(g: &[Vec<i64>], t: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut gt = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gt[i][j] = (0..n).map(|k| g[i][k] * t[k][j]).sum();
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| t[k][i] * gt[k][j]).sum();
        }
    }
    out
}

/// Random symmetric integer matrix with entries in [-bound, bound].
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-bound..=bound);
            g[i][j] = x;
            g[j][i] = x;
        }
    }
    g
}

/// Random negative-definite Gram matrix of prime divisors: diagonal in
/// [-10, -1], off-diagonal in [0, 10], accepted by Sylvester's criterion.
pub fn random_negdef_gram<R: Rng>(rng: &mut R, k: usize) -> Vec<Vec<i64>> {
    loop {
        let mut g = vec![vec![0i64; k]; k];
        for i in 0..k {
            g[i][i] = rng.gen_range(-10..=-1);
            for j in i + 1..k {
                // mostly small crossings, or the rejection rate explodes
                let x = if rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(0..=10)
                };
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        if negative_definite_by_minors(&to_q(&g)) {
            return g;
        }
    }
}

/// Random rational in (0, 5] with denominator at most 6.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> Q {
    let den = rng.gen_range(1..=6);
    qf(rng.gen_range(1..=5 * den), den)
}

/// A Zariski instance on a signature-(1,3) lattice.
#[derive(Clone, Debug)]
pub struct HyperbolicInstance {
    pub gram: Vec<Vec<i64>>,
    pub primes: Vec<Vec<i64>>,
    /// Integer class with q(h, h) > 0 and q(h, D_i) > 0 for every prime.
    pub ample: Vec<i64>,
    /// h + sum a_i D_i with a_i >= 0.
    pub d: Vec<Q>,
}

/// Inverse of a unimodular integer matrix, by Cramer's rule column by column.
pub fn unimodular_inverse(t: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = t.len();
    let tq = to_q(t);
    let mut inv = vec![vec![0i64; n]; n];
    for j in 0..n {
        let e: Vec<Q> = (0..n).map(|i| crate::q(i64::from(i == j))).collect();
        let col = crate::solve_cramer(&tq, &e).expect("unimodular matrix is invertible");
        for (i, x) in col.into_iter().enumerate() {
            assert!(x.is_integer(), "inverse is not integral");
            inv[i][j] = x.to_integer().try_into().unwrap();
        }
    }
    inv
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn minkowski(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]
}

/// diag(1, -1, -1, -1) under a random unimodular change of basis, with
/// `k` primes meeting pairwise non-negatively and an ample class h. The
/// class to decompose is h plus a random effective combination of primes.
///
/// Sampling happens in the diagonal basis, where admissible vectors are
/// common, and the result is pulled back through the basis change.
pub fn random_hyperbolic_instance<R: Rng>(rng: &mut R, k: usize) -> HyperbolicInstance {
    let base = vec![
        vec![1, 0, 0, 0],
        vec![0, -1, 0, 0],
        vec![0, 0, -1, 0],
        vec![0, 0, 0, -1],
    ];
    let t = random_unimodular(rng, 4, 3);
    let t_inv = unimodular_inverse(&t);
    let gram = congruence(&base, &t);
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
            // curves of negative square make the search interesting
            if minkowski(&u, &u) >= 0 && rng.gen_bool(0.8) {
                continue;
            }
            if primes.iter().all(|p| minkowski(p, &u) >= 0) {
                primes.push(u);
            }
        }
        let mut d: Vec<Q> = mat_vec(&t_inv, &h).into_iter().map(crate::q).collect();
        let primes: Vec<Vec<i64>> = primes.iter().map(|u| mat_vec(&t_inv, u)).collect();
        for p in &primes {
            if rng.gen_bool(0.25) {
                continue;
            }
            let a = random_coefficient(rng);
            for (x, c) in d.iter_mut().zip(p) {
                *x += &a * crate::q(*c);
            }
        }
        return HyperbolicInstance {
            gram,
            primes,
            ample: mat_vec(&t_inv, &h),
            d,
        };
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=5 {
            let t = random_unimodular(&mut rng, n, 3);
            let d = crate::det_laplace(&to_q(&t));
            assert!(d == crate::q(1) || d == crate::q(-1));
            assert!(t.iter().flatten().all(|x| x.abs() <= 3));
        }
    }

    #[test]
    fn instances_meet_their_contract() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let inst = random_hyperbolic_instance(&mut rng, 4);
        assert_eq!(crate::inertia_by_descartes(&to_q(&inst.gram)), (1, 0, 3));
        assert_eq!(inst.primes.len(), 4);
        let gq = to_q(&inst.gram);
        let h: Vec<Q> = inst.ample.iter().map(|&x| crate::q(x)).collect();
        assert!(num_traits::Signed::is_positive(&crate::pair(&gq, &h, &h)));
        for p in &inst.primes {
            let pq: Vec<Q> = p.iter().map(|&x| crate::q(x)).collect();
            assert!(num_traits::Signed::is_positive(&crate::pair(&gq, &h, &pq)));
        }
        let g = random_negdef_gram(&mut rng, 4);
        assert!(negative_definite_by_minors(&to_q(&g)));
    }
}
