//! Finite orders of rational matrices and of automorphisms of abelian
//! varieties.
//!
//! Write d = r_1 ... r_k with r_i pairwise coprime prime powers and set
//! alpha(d) = phi(r_1) + ... + phi(r_k). The block-diagonal companion matrix
//! of the Phi_{r_i} has size alpha(d) and order exactly d.
//!
//! alpha(d) is the minimal size of a rational matrix of order d except when
//! d = 2 mod 4 and d > 2: then a primitive 2r-th root of unity, r an odd part,
//! accounts for the factor 2 at no extra cost since phi(2r) = phi(r), and the
//! minimum is alpha(d) - 1. The companion matrix of Phi_6 has order 6 in
//! GL_2(Q) while alpha(6) = 3. Reports carry both numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("{0} must be a positive integer")]
    NonPositive(&'static str),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("witness for order {0} failed its powering check")]
    WitnessFailed(u64),
}

pub type Result<T, E = OrderError> = std::result::Result<T, E>;

/// Witnesses larger than this are not built; the feasibility verdict is
/// still exact.
pub const WITNESS_SIZE_LIMIT: u64 = 512;

fn positive(name: &'static str, v: u64) -> Result<u64> {
    if v == 0 {
        Err(OrderError::NonPositive(name))
    } else {
        Ok(v)
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while (p as u128) * (p as u128) <= n as u128 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    pub value: u64,
}

impl PrimePower {
    pub fn phi(&self) -> u64 {
        // p^(e-1) (p - 1)
        self.value / self.prime * (self.prime - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoprimeFactorization {
    pub d: u64,
    /// One part per prime dividing d, ascending by prime.
    pub parts: Vec<PrimePower>,
}

impl CoprimeFactorization {
    pub fn values(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.value).collect()
    }
}

pub fn coprime_prime_power_parts(d: u64) -> Result<CoprimeFactorization> {
    positive("d", d)?;
    let parts = factorize(d)
        .into_iter()
        .map(|(prime, exponent)| PrimePower {
            prime,
            exponent,
            value: prime.pow(exponent),
        })
        .collect();
    Ok(CoprimeFactorization { d, parts })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(coprime_prime_power_parts(n)?
        .parts
        .iter()
        .map(PrimePower::phi)
        .product())
}

pub fn alpha(d: u64) -> Result<u64> {
    Ok(coprime_prime_power_parts(d)?
        .parts
        .iter()
        .map(PrimePower::phi)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Order of a matrix in GL_m(Q); bound = m.
    GeneralLinear,
    /// Order of a zero-fixing automorphism of a g-dimensional abelian variety;
    /// bound = 2g.
    Abelian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderBoundReport {
    pub d: u64,
    pub alpha: u64,
    pub phi: u64,
    pub bound: u64,
    /// alpha <= bound.
    pub feasible: bool,
    pub kind: BoundKind,
    /// The necessary condition alpha <= bound holds.
    pub necessary_condition_passes: bool,
    /// An explicit matrix of order d and size alpha was built and checked.
    pub witness_constructed: bool,
    pub witness_size: Option<u64>,
    /// Exact minimal size of a rational matrix of order d.
    pub min_size: u64,
    /// min_size <= bound: the exact necessary condition.
    pub min_size_fits: bool,
}

/// Exact minimal m with an element of order d in GL_m(Q).
pub fn min_matrix_size(d: u64) -> Result<u64> {
    let a = alpha(d)?;
    Ok(if d % 4 == 2 && d > 2 { a - 1 } else { a })
}

pub fn gl_order_feasible(m: u64, d: u64) -> Result<OrderBoundReport> {
    positive("m", m)?;
    positive("d", d)?;
    let a = alpha(d)?;
    let feasible = a <= m;
    let witness_size = if feasible && a <= WITNESS_SIZE_LIMIT {
        Some(order_witness(d)?.size() as u64)
    } else {
        None
    };
    Ok(OrderBoundReport {
        d,
        alpha: a,
        phi: euler_phi(d)?,
        bound: m,
        feasible,
        kind: BoundKind::GeneralLinear,
        necessary_condition_passes: feasible,
        witness_constructed: witness_size.is_some(),
        witness_size,
        min_size: min_matrix_size(d)?,
        min_size_fits: min_matrix_size(d)? <= m,
    })
}

/// Only the necessary condition alpha(d) <= 2g is checked; no abelian variety
/// is constructed.
pub fn abelian_order_feasible(g: u64, d: u64) -> Result<OrderBoundReport> {
    positive("g", g)?;
    positive("d", d)?;
    let a = alpha(d)?;
    let bound = g.checked_mul(2).ok_or(OrderError::Overflow("2g"))?;
    Ok(OrderBoundReport {
        d,
        alpha: a,
        phi: euler_phi(d)?,
        bound,
        feasible: a <= bound,
        kind: BoundKind::Abelian,
        necessary_condition_passes: a <= bound,
        witness_constructed: false,
        witness_size: None,
        min_size: min_matrix_size(d)?,
        min_size_fits: min_matrix_size(d)? <= bound,
    })
}

/// Divisors of n, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Quotient of `num` by the monic polynomial `den`, which must divide it.
/// Coefficients ascending.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// The n-th cyclotomic polynomial, coefficients ascending, by exact division
/// Phi_n = (x^n - 1) / prod over proper divisors e of n of Phi_e.
pub fn cyclotomic_poly(n: u64) -> Result<Vec<BigInt>> {
    positive("n", n)?;
    let divs = divisors(n);
    let mut memo: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for &m in &divs {
        let mut p = vec![BigInt::zero(); m as usize + 1];
        p[0] = BigInt::from(-1);
        p[m as usize] = BigInt::one();
        for e in divisors(m).into_iter().filter(|&e| e < m) {
            p = exact_div_monic(&p, &memo[&e]);
        }
        memo.insert(m, p);
    }
    Ok(memo.remove(&n).expect("n divides itself"))
}

/// Companion matrix of a monic integer polynomial (ones on the subdiagonal,
/// negated low coefficients in the last column).
pub fn companion_matrix(poly: &[BigInt]) -> Result<IntMatrix> {
    let n = poly.len() - 1;
    assert!(
        poly[n].is_one(),
        "companion matrix needs a monic polynomial"
    );
    let mut m = IntMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, 1);
    }
    for (i, c) in poly[..n].iter().enumerate() {
        let v = (-c)
            .to_i64()
            .ok_or(OrderError::Overflow("companion entry"))?;
        m.set(i, n - 1, v);
    }
    Ok(m)
}

/// M^d = I and M^(d/p) != I for every prime p dividing d.
pub fn has_exact_order(m: &IntMatrix, d: u64) -> Result<bool> {
    positive("d", d)?;
    let pow = |k| {
        m.checked_pow(k)
            .map_err(|_| OrderError::Overflow("matrix power"))
    };
    if !pow(d)?.is_identity() {
        return Ok(false);
    }
    for (p, _) in factorize(d) {
        if pow(d / p)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Block-diagonal companion matrices of Phi_{r_i}: size alpha(d), order
/// exactly d. The empty matrix for d = 1.
pub fn order_witness(d: u64) -> Result<IntMatrix> {
    let parts = coprime_prime_power_parts(d)?;
    let blocks = parts
        .parts
        .iter()
        .map(|pp| companion_matrix(&cyclotomic_poly(pp.value)?))
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::block_diag(&blocks);
    if !has_exact_order(&m, d)? {
        return Err(OrderError::WitnessFailed(d));
    }
    Ok(m)
}

/// A matrix of order d and size [`min_matrix_size`]: as [`order_witness`],
/// except that for d = 2 mod 4, d > 2, the blocks Phi_2 and Phi_r of the
/// first odd part r merge into one block Phi_{2r}.
pub fn min_order_witness(d: u64) -> Result<IntMatrix> {
    if !(d % 4 == 2 && d > 2) {
        return order_witness(d);
    }
    let parts = coprime_prime_power_parts(d)?;
    let blocks = parts
        .parts
        .iter()
        .skip(1)
        .enumerate()
        .map(|(i, pp)| {
            let r = if i == 0 { 2 * pp.value } else { pp.value };
            companion_matrix(&cyclotomic_poly(r)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::block_diag(&blocks);
    if !has_exact_order(&m, d)? {
        return Err(OrderError::WitnessFailed(d));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parts() {
        assert_eq!(coprime_prime_power_parts(15).unwrap().values(), vec![3, 5]);
        assert_eq!(
            coprime_prime_power_parts(1).unwrap().values(),
            Vec::<u64>::new()
        );
        assert_eq!(coprime_prime_power_parts(12).unwrap().values(), vec![4, 3]);
        assert_eq!(
            coprime_prime_power_parts(0),
            Err(OrderError::NonPositive("d"))
        );
    }

    #[test]
    fn totients_and_alpha() {
        assert_eq!(euler_phi(15), Ok(8));
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(euler_phi(11), Ok(10));
        assert_eq!(alpha(11), Ok(10));
        assert_eq!(alpha(13), Ok(12));
        assert_eq!(alpha(15), Ok(6));
        assert_eq!(alpha(1), Ok(0));
        assert_eq!(euler_phi(0), Err(OrderError::NonPositive("d")));
    }

    #[test]
    fn gl_feasibility() {
        let r = gl_order_feasible(8, 11).unwrap();
        assert!(!r.feasible);
        assert_eq!((r.alpha, r.bound), (10, 8));
        let r = gl_order_feasible(1, 2).unwrap();
        assert!(r.feasible && r.witness_constructed);
        assert_eq!(r.witness_size, Some(1));
        let r = gl_order_feasible(6, 15).unwrap();
        assert!(r.feasible);
        assert_eq!(r.witness_size, Some(6));
        assert_eq!(gl_order_feasible(0, 3), Err(OrderError::NonPositive("m")));
    }

    #[test]
    fn abelian_feasibility() {
        assert!(!abelian_order_feasible(4, 11).unwrap().feasible);
        assert!(!abelian_order_feasible(4, 13).unwrap().feasible);
        let r = abelian_order_feasible(3, 15).unwrap();
        assert!(r.feasible);
        assert!(r.phi > r.bound, "phi(15) = 8 exceeds 2g = 6");
        assert!(!r.witness_constructed);
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_poly(1).unwrap(), poly(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2).unwrap(), poly(&[1, 1]));
        assert_eq!(cyclotomic_poly(4).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(9).unwrap(), poly(&[1, 0, 0, 1, 0, 0, 1]));
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).unwrap().contains(&BigInt::from(-2)));
    }

    #[test]
    fn witnesses() {
        let w2 = order_witness(2).unwrap();
        assert_eq!(w2.rows(), vec![vec![-1]]);
        let w6 = order_witness(6).unwrap();
        assert_eq!(w6.size(), 3);
        assert_eq!(
            w6.rows(),
            vec![vec![-1, 0, 0], vec![0, 0, -1], vec![0, 1, -1]]
        );
        let w15 = order_witness(15).unwrap();
        assert_eq!(w15.size(), 6);
        assert!(w15.checked_pow(15).unwrap().is_identity());
        assert!(!w15.checked_pow(3).unwrap().is_identity());
        assert!(!w15.checked_pow(5).unwrap().is_identity());
        assert_eq!(order_witness(1).unwrap().size(), 0);
    }

    #[test]
    fn two_mod_four_exception() {
        assert_eq!(alpha(6), Ok(3));
        assert_eq!(min_matrix_size(6), Ok(2));
        assert_eq!(min_matrix_size(2), Ok(1));
        assert_eq!(min_matrix_size(15), Ok(6));
        let w = min_order_witness(6).unwrap();
        assert_eq!(w.rows(), vec![vec![0, -1], vec![1, 1]]);
        let r = gl_order_feasible(2, 6).unwrap();
        assert!(!r.feasible && r.min_size_fits);
        let r = abelian_order_feasible(1, 6).unwrap();
        assert!(!r.feasible && r.min_size_fits);
        let r = abelian_order_feasible(4, 11).unwrap();
        assert!(!r.min_size_fits);
    }

    #[test]
    fn factorization_of_large_prime() {
        assert_eq!(factorize(1_000_000_007), vec![(1_000_000_007, 1)]);
        assert!(is_prime(13));
        assert!(!is_prime(1));
    }
}
