//! Brute-force reference computations for the test suites.
//!
//! Nothing here shares code with `hkcover-core`. Every routine takes the slow,
//! obviously-correct route: Descartes' rule on the characteristic polynomial
//! instead of congruence diagonalization, Cramer's rule instead of
//! elimination, exhaustive enumeration instead of closed formulas.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub mod gen;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Linear algebra over Q
// ---------------------------------------------------------------------------

/// Determinant by Laplace expansion along the first row. Exponential; only
/// for the small matrices the oracles see (rank <= 6).
pub fn det_laplace(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    match n {
        0 => Q::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = Q::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Q>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * det_laplace(&minor);
                if col % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Negative definiteness by Sylvester's criterion: (-1)^k * (k-th leading
/// principal minor) > 0 for every k.
pub fn negative_definite_by_minors(m: &[Vec<Q>]) -> bool {
    (1..=m.len()).all(|k| {
        let lead: Vec<Vec<Q>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det_laplace(&lead);
        if k % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    })
}

/// Solve a square system by Cramer's rule. `None` if singular.
pub fn solve_cramer(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let d = det_laplace(a);
    if d.is_zero() {
        return None;
    }
    let n = a.len();
    Some(
        (0..n)
            .map(|col| {
                let replaced: Vec<Vec<Q>> = a
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let mut r = row.clone();
                        r[col] = b[i].clone();
                        r
                    })
                    .collect();
                det_laplace(&replaced) / &d
            })
            .collect(),
    )
}

/// Rank by fraction-field Gaussian elimination (row echelon, no pivoting
/// strategy beyond "first nonzero").
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
/// Coefficients in ascending degree order; leading coefficient is 1.
pub fn char_poly(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / q(k as i64);
    }
    coeffs
}

pub fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

fn sign_variations(coeffs: impl Iterator<Item = Q>) -> usize {
    let signs: Vec<bool> = coeffs
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia (n_plus, n_zero, n_minus) of a symmetric rational matrix.
///
/// All eigenvalues of a real symmetric matrix are real, so Descartes' rule of
/// signs counts positive roots of the characteristic polynomial exactly.
pub fn inertia_by_descartes(a: &[Vec<Q>]) -> (usize, usize, usize) {
    let n = a.len();
    let p = char_poly(a);
    let n_zero = p.iter().take_while(|c| c.is_zero()).count();
    let n_plus = sign_variations(p.iter().cloned());
    let n_minus =
        sign_variations(
            p.iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }),
        );
    assert_eq!(n_plus + n_zero + n_minus, n, "matrix is not symmetric?");
    (n_plus, n_zero, n_minus)
}

/// Sign pattern of the two eigenvalues of a symmetric 2x2 matrix, from the
/// trace and determinant.
pub fn inertia_2x2(a: [[i64; 2]; 2]) -> (usize, usize, usize) {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let tr = a[0][0] + a[1][1];
    match det.signum() {
        -1 => (1, 0, 1),
        1 if tr > 0 => (2, 0, 0),
        1 => (0, 0, 2),
        _ => match tr.signum() {
            1 => (1, 1, 0),
            -1 => (0, 1, 1),
            _ => (0, 2, 0),
        },
    }
}

// ---------------------------------------------------------------------------
// Integer lattices
// ---------------------------------------------------------------------------

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries
/// only, in order).
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let f = a[i][t].div_floor(&a[t][t]);
            if !f.is_zero() {
                for j in t..cols {
                    let s = &f * &a[t][j];
                    a[i][j] -= s;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let f = a[t][j].div_floor(&a[t][t]);
            if !f.is_zero() {
                for i in t..rows {
                    let s = &f * &a[i][t];
                    a[i][j] -= s;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition: pivot must divide the rest of the block
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for k in t..cols {
                        let v = a[i][k].clone();
                        a[t][k] += v;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// A set of integer row vectors spans a saturated (primitive) sublattice of
/// Z^n iff the rows are independent and every Smith invariant equals 1.
pub fn is_saturated_basis(rows: &[Vec<BigInt>]) -> bool {
    let inv = smith_invariants(rows);
    inv.len() == rows.len() && inv.iter().all(One::is_one)
}

// ---------------------------------------------------------------------------
// Zariski decomposition by exhaustive support search
// ---------------------------------------------------------------------------

pub fn pair(gram: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let mut acc = Q::zero();
    for i in 0..a.len() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..b.len() {
            acc += &a[i] * &gram[i][j] * &b[j];
        }
    }
    acc
}

/// One candidate decomposition found by [`zariski_valid_supports`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDecomposition {
    pub support: Vec<usize>,
    pub coeffs: Vec<Q>,
    pub positive: Vec<Q>,
}

/// Try every subset of the primes as a support. A subset is accepted when its
/// Gram matrix is negative definite (leading minors), the coefficients solving
/// q(P, D_i) = 0 on the subset are all strictly positive (Cramer), and P is
/// non-negative against every prime.
pub fn zariski_valid_supports(
    gram: &[Vec<Q>],
    primes: &[Vec<Q>],
    d: &[Q],
) -> Vec<OracleDecomposition> {
    let k = primes.len();
    let mut found = Vec::new();
    for mask in 0u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Q>> = support
            .iter()
            .map(|&i| {
                support
                    .iter()
                    .map(|&j| pair(gram, &primes[i], &primes[j]))
                    .collect()
            })
            .collect();
        if !negative_definite_by_minors(&sub) {
            continue;
        }
        let rhs: Vec<Q> = support.iter().map(|&i| pair(gram, d, &primes[i])).collect();
        let Some(x) = solve_cramer(&sub, &rhs) else {
            continue;
        };
        if !x.iter().all(Signed::is_positive) {
            continue;
        }
        let mut positive = d.to_vec();
        for (xi, &i) in x.iter().zip(&support) {
            for (p, c) in positive.iter_mut().zip(&primes[i]) {
                *p -= xi * c;
            }
        }
        if primes
            .iter()
            .any(|p| pair(gram, &positive, p).is_negative())
        {
            continue;
        }
        found.push(OracleDecomposition {
            support,
            coeffs: x,
            positive,
        });
    }
    found
}

// ---------------------------------------------------------------------------
// Number theory
// ---------------------------------------------------------------------------

pub fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    out
}

/// Euler's totient by counting.
pub fn phi_by_count(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Integer partitions of `n` (non-increasing parts).
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(rem: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn lcm_all(parts: &[u64]) -> u64 {
    parts.iter().fold(1u64, |acc, &p| acc.lcm(&p))
}

/// Smallest n such that some partition of n has lcm d, by scanning n upwards.
pub fn min_degree_by_partitions(d: u64) -> u64 {
    if d == 1 {
        return 0;
    }
    (1..)
        .find(|&n| partitions(n).iter().any(|p| lcm_all(p) == d))
        .unwrap()
}

/// Cycle types (as partitions, non-increasing) of S_n whose order is exactly `d`.
pub fn shapes_of_order(n: u64, d: u64) -> BTreeSet<Vec<u64>> {
    partitions(n)
        .into_iter()
        .filter(|p| lcm_all(p) == d)
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    // Pascal's triangle row by row
    if k > n {
        return 0;
    }
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Integer matrix powering
// ---------------------------------------------------------------------------

pub fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j]
                    .checked_add(x.checked_mul(b[l][j]).unwrap())
                    .unwrap();
            }
        }
    }
    out
}

/// Exact M^k by binary exponentiation over i64, panicking on overflow.
pub fn int_pow(m: &[Vec<i64>], mut k: u64) -> Vec<Vec<i64>> {
    let mut result = int_identity(m.len());
    let mut base = m.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            result = int_mul(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = int_mul(&base, &base);
        }
    }
    result
}

/// Multiplicative order exactly `d`: M^d = I and M^(d/p) != I for each prime p | d.
pub fn has_exact_order(m: &[Vec<i64>], d: u64) -> bool {
    let id = int_identity(m.len());
    int_pow(m, d) == id
        && trial_division(d)
            .iter()
            .all(|&(p, _)| int_pow(m, d / p) != id)
}

// ---------------------------------------------------------------------------
// Symmetric groups
// ---------------------------------------------------------------------------

/// All permutations of {0..n-1} in one-line notation (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut a: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn perm_order(p: &[u8]) -> u64 {
    // smallest k with p^k = id, by repeated application
    let id: Vec<u8> = (0..p.len() as u8).collect();
    let mut cur = p.to_vec();
    let mut k = 1;
    while cur != id {
        cur = cur.iter().map(|&x| p[x as usize]).collect();
        k += 1;
    }
    k
}

pub fn commutes(a: &[u8], b: &[u8]) -> bool {
    (0..a.len()).all(|i| a[b[i] as usize] == b[a[i] as usize])
}

/// Every pair (ord x, ord y) realised by commuting x, y in S_n, found by
/// checking all |S_n|^2 ordered pairs.
pub fn commuting_order_pairs(n: usize) -> HashSet<(u64, u64)> {
    let perms = all_permutations(n);
    let orders: Vec<u64> = perms.iter().map(|p| perm_order(p)).collect();
    let mut out = HashSet::new();
    for (i, x) in perms.iter().enumerate() {
        for (j, y) in perms.iter().enumerate() {
            if !out.contains(&(orders[i], orders[j])) && commutes(x, y) {
                out.insert((orders[i], orders[j]));
            }
        }
    }
    out
}

/// Orders realised by some element of S_n.
pub fn element_orders(n: usize) -> BTreeSet<u64> {
    all_permutations(n).iter().map(|p| perm_order(p)).collect()
}
