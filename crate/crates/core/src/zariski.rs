//! Divisorial Zariski decomposition relative to a finite system of prime
//! divisor classes on a Néron-Severi lattice.
//!
//! Given d and primes D_1..D_k, find d = P + N with N = sum a_i D_i, a_i > 0 on
//! a support S whose Gram matrix is negative definite, q(P, D_i) = 0 on S and
//! q(P, D_j) >= 0 for every prime. The support is grown one prime at a time:
//! start from the primes d is negative on, solve for N on the current support,
//! and add the lowest-index prime the new P is still negative on.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{inertia, DivisorClass, Lattice, Signature};
use crate::matrix;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicatePrime(usize, usize),
    NegativeCrossPairing(usize, usize, Rational),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePrime(i, j) => write!(f, "duplicate prime ({i},{j})"),
            Violation::NegativeCrossPairing(i, j, v) => {
                write!(
                    f,
                    "negative cross pairing ({i},{j}) = {}",
                    format_rational(v)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZariskiError {
    #[error("invalid prime system: {}", join(.0))]
    InvalidSystem(Vec<Violation>),
    #[error("class does not live on the prime system's lattice")]
    AmbientMismatch,
    #[error("{names} names given for {primes} primes")]
    NameMismatch { names: usize, primes: usize },
    #[error(
        "support {support:?} is not negative definite; no decomposition over this prime system"
    )]
    NotContractible { support: Vec<usize> },
    #[error("coefficient of prime {index} solved to {} (must be positive)", format_rational(.value))]
    NegativeCoefficient { index: usize, value: Rational },
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone)]
pub struct PrimeSystem {
    ambient: Arc<Lattice>,
    primes: Vec<DivisorClass>,
    names: Vec<String>,
}

impl PrimeSystem {
    /// Names default to `D1, D2, ...`.
    pub fn new(
        ambient: &Arc<Lattice>,
        primes: Vec<DivisorClass>,
        names: Option<Vec<String>>,
    ) -> Result<Self, ZariskiError> {
        if primes.iter().any(|p| !p.lives_on(ambient)) {
            return Err(ZariskiError::AmbientMismatch);
        }
        let names = match names {
            Some(n) if n.len() != primes.len() => {
                return Err(ZariskiError::NameMismatch {
                    names: n.len(),
                    primes: primes.len(),
                })
            }
            Some(n) => n,
            None => (1..=primes.len()).map(|i| format!("D{i}")).collect(),
        };
        Ok(PrimeSystem {
            ambient: Arc::clone(ambient),
            primes,
            names,
        })
    }

    pub fn ambient(&self) -> &Arc<Lattice> {
        &self.ambient
    }

    pub fn primes(&self) -> &[DivisorClass] {
        &self.primes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    fn q(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        self.ambient.pair(a.coeffs(), b.coeffs())
    }

    /// Gram matrix of the primes indexed by `subset`.
    pub fn gram_on(&self, subset: &[usize]) -> Vec<Vec<Rational>> {
        subset
            .iter()
            .map(|&i| {
                subset
                    .iter()
                    .map(|&j| self.q(&self.primes[i], &self.primes[j]))
                    .collect()
            })
            .collect()
    }
}

/// Duplicate primes and negative pairings between distinct primes.
pub fn validate_prime_system(s: &PrimeSystem) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s.primes[i].coeffs() == s.primes[j].coeffs() {
                out.push(Violation::DuplicatePrime(i, j));
            }
            let v = s.q(&s.primes[i], &s.primes[j]);
            if v.is_negative() {
                out.push(Violation::NegativeCrossPairing(i, j, v));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    /// a_i of N = sum a_i D_i, keyed by prime index; only the support appears.
    pub negative_coeffs: BTreeMap<usize, Rational>,
    /// Sorted support indices.
    pub support: Vec<usize>,
    /// Support after each solve, in order.
    pub trace: Vec<Vec<usize>>,
}

impl ZariskiDecomposition {
    pub fn negative_part(&self, s: &PrimeSystem) -> DivisorClass {
        let mut n = DivisorClass::zero(s.ambient());
        for (&i, a) in &self.negative_coeffs {
            n = n.add_scaled(a, &s.primes[i]).expect("same ambient");
        }
        n
    }
}

fn is_neg_def(m: &[Vec<Rational>]) -> bool {
    inertia(m) == Signature::new(0, 0, m.len())
}

pub fn zariski_decompose(
    s: &PrimeSystem,
    d: &DivisorClass,
) -> Result<ZariskiDecomposition, ZariskiError> {
    if !d.lives_on(s.ambient()) {
        return Err(ZariskiError::AmbientMismatch);
    }
    let violations = validate_prime_system(s);
    if !violations.is_empty() {
        return Err(ZariskiError::InvalidSystem(violations));
    }

    let mut support: Vec<usize> = (0..s.len())
        .filter(|&i| s.q(d, &s.primes[i]).is_negative())
        .collect();
    let mut trace = Vec::new();
    loop {
        let (positive, coeffs) = if support.is_empty() {
            (d.clone(), Vec::new())
        } else {
            let gram = s.gram_on(&support);
            if !is_neg_def(&gram) {
                return Err(ZariskiError::NotContractible { support });
            }
            let rhs: Vec<Rational> = support.iter().map(|&i| s.q(d, &s.primes[i])).collect();
            let x = matrix::solve(&gram, &rhs).expect("negative-definite Gram is invertible");
            if let Some((&index, value)) = support.iter().zip(&x).find(|(_, v)| !v.is_positive()) {
                return Err(ZariskiError::NegativeCoefficient {
                    index,
                    value: value.clone(),
                });
            }
            let mut p = d.clone();
            for (xi, &i) in x.iter().zip(&support) {
                p = p.add_scaled(&-xi, &s.primes[i]).expect("same ambient");
            }
            (p, x)
        };
        trace.push(support.clone());

        let next = (0..s.len())
            .filter(|j| support.binary_search(j).is_err())
            .find(|&j| s.q(&positive, &s.primes[j]).is_negative());
        match next {
            Some(j) => {
                let pos = support.binary_search(&j).unwrap_err();
                support.insert(pos, j);
            }
            None => {
                return Ok(ZariskiDecomposition {
                    positive,
                    negative_coeffs: support.iter().copied().zip(coeffs).collect(),
                    support,
                    trace,
                })
            }
        }
    }
}

/// Postcondition checks recomputed from a returned decomposition alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionCertificates {
    /// q(P, D_i) = 0 for every i in the support.
    pub orthogonal: bool,
    /// q(P, D_j) >= 0 for every prime.
    pub nef_on_primes: bool,
    /// Gram matrix of the support is negative definite.
    pub gram_negdef: bool,
    /// Coefficients are positive exactly on the support.
    pub coefficients_positive: bool,
    /// P + N equals the input class.
    pub sums_to_input: bool,
}

impl DecompositionCertificates {
    pub fn all(&self) -> bool {
        self.orthogonal
            && self.nef_on_primes
            && self.gram_negdef
            && self.coefficients_positive
            && self.sums_to_input
    }
}

pub fn certify(
    s: &PrimeSystem,
    d: &DivisorClass,
    dec: &ZariskiDecomposition,
) -> DecompositionCertificates {
    let p = &dec.positive;
    let in_range = dec.support.iter().all(|&i| i < s.len());
    let orthogonal = in_range && dec.support.iter().all(|&i| s.q(p, &s.primes[i]).is_zero());
    let nef_on_primes = s.primes.iter().all(|dj| !s.q(p, dj).is_negative());
    let gram_negdef = in_range && is_neg_def(&s.gram_on(&dec.support));
    let keys: Vec<usize> = dec.negative_coeffs.keys().copied().collect();
    let coefficients_positive =
        keys == dec.support && dec.negative_coeffs.values().all(Signed::is_positive);
    let sums_to_input = in_range
        && p.lives_on(s.ambient())
        && p.add_scaled(&Rational::from_integer(1.into()), &dec.negative_part(s))
            .is_ok_and(|sum| sum.coeffs() == d.coeffs());
    DecompositionCertificates {
        orthogonal,
        nef_on_primes,
        gram_negdef,
        coefficients_positive,
        sums_to_input,
    }
}

/// Every support whose solved decomposition meets all postconditions, by
/// trying all 2^k subsets. Exponential; for cross-checking small systems.
pub fn enumerate_valid_supports(s: &PrimeSystem, d: &DivisorClass) -> Vec<Vec<usize>> {
    let k = s.len();
    assert!(k < 20, "exhaustive support search is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let gram = s.gram_on(&support);
        if !is_neg_def(&gram) {
            continue;
        }
        let rhs: Vec<Rational> = support.iter().map(|&i| s.q(d, &s.primes[i])).collect();
        let Some(x) = matrix::solve(&gram, &rhs) else {
            continue;
        };
        if !x.iter().all(Signed::is_positive) {
            continue;
        }
        let mut p = d.clone();
        for (xi, &i) in x.iter().zip(&support) {
            p = p.add_scaled(&-xi, &s.primes[i]).expect("same ambient");
        }
        if s.primes.iter().all(|dj| !s.q(&p, dj).is_negative()) {
            out.push(support);
        }
    }
    out
}
