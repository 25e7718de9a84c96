//! Symmetric groups: cycle types, element orders, commuting elements of
//! given orders, and the obstruction to abelian Galois-like factorizations of
//! a cover with monodromy group S_n.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::orders::{self, OrderError};

mod search;

pub use search::{all_permutations, cycle_types_of_order, partitions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("{0} must be a positive integer")]
    NonPositive(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the degree {n}")]
    PExceedsN { p: u64, n: u64 },
    #[error("S_{n} has no element of order {d} (needs degree at least {min})")]
    DegreeTooSmall { n: u64, d: u64, min: u64 },
    #[error("commuting elements of orders {d1} and {d2} in S_{n}: no exact rule applies")]
    Indeterminate { n: u64, d1: u64, d2: u64 },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("{name} = {value} is out of range ({reason})")]
    OutOfRange {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
}

pub type Result<T, E = MonodromyError> = std::result::Result<T, E>;

impl From<OrderError> for MonodromyError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::NonPositive(name) => MonodromyError::NonPositive(name),
            other => unreachable!("order arithmetic on small inputs failed: {other}"),
        }
    }
}

/// Degrees up to this are decided by exhaustive search over S_n.
pub const EXHAUSTIVE_DEGREE: u64 = 8;

/// A bijection of {0, ..., n-1}, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(MonodromyError::InvalidPermutation(format!(
                    "image {i} outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MonodromyError::InvalidPermutation(format!(
                    "image {i} repeated"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Product of disjoint cycles on consecutive points, in the order given:
    /// `[3, 2]` is (0 1 2)(3 4). Points beyond the sum are fixed.
    pub fn from_cycle_lengths(n: usize, lengths: &[usize]) -> Result<Self> {
        let total: usize = lengths.iter().sum();
        if total > n || lengths.contains(&0) {
            return Err(MonodromyError::InvalidPermutation(format!(
                "cycle lengths {lengths:?} in degree {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in lengths {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` after `other`: i -> self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && (0..self.degree())
                .all(|i| self.images[other.images[i]] == other.images[self.images[i]])
    }

    /// Cycles with their points, fixed points included, in order of least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let mut i = self.images[s];
            while i != s {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(|c| c.len() as u64).collect())
    }
}

/// Multiset of cycle lengths, stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn order(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc.lcm(&BigUint::from(p)))
    }
}

/// `{11,1^5}`: exponents for repeated lengths.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(u64, usize)> = Vec::new();
        for &p in &self.parts {
            match groups.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => groups.push((p, 1)),
            }
        }
        let items: Vec<String> = groups
            .into_iter()
            .map(|(p, k)| {
                if k == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{k}")
                }
            })
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn order_of(p: &Permutation) -> BigUint {
    p.cycle_type().order()
}

/// Smallest n with an element of order d in S_n: the sum of the coprime
/// prime-power parts of d, and 0 for d = 1.
pub fn min_symmetric_degree(d: u64) -> Result<u64> {
    if d == 0 {
        return Err(MonodromyError::NonPositive("d"));
    }
    Ok(orders::coprime_prime_power_parts(d)?.values().iter().sum())
}

/// Cycle types of order exactly p in S_n: k p-cycles and n - kp fixed points,
/// k >= 1.
pub fn prime_order_shape(n: u64, p: u64) -> Result<BTreeSet<CycleType>> {
    if !orders::is_prime(p) {
        return Err(MonodromyError::NotPrime(p));
    }
    if p > n {
        return Err(MonodromyError::PExceedsN { p, n });
    }
    Ok((1..=n / p)
        .map(|k| {
            let mut parts = vec![p; k as usize];
            parts.extend(std::iter::repeat(1).take((n - k * p) as usize));
            CycleType::new(parts)
        })
        .collect())
}

fn realizable(n: u64, d: u64) -> Result<()> {
    let min = min_symmetric_degree(d)?;
    if min > n {
        return Err(MonodromyError::DegreeTooSmall { n, d, min });
    }
    Ok(())
}

/// Whether some commuting x, y in S_n have orders exactly d1 and d2.
///
/// Exact rules, tried in turn: exhaustive search for n <= 8; an identity
/// order or equal orders (take y = x); disjoint supports when the minimal
/// degrees fit side by side; and for distinct primes both above n/2, where
/// each element is a single cycle and commuting cycles of different lengths
/// need disjoint supports, the answer d1 + d2 <= n. Anything else is
/// `Indeterminate`.
pub fn commuting_orders_possible(n: u64, d1: u64, d2: u64) -> Result<bool> {
    if d1 == 0 {
        return Err(MonodromyError::NonPositive("d1"));
    }
    if d2 == 0 {
        return Err(MonodromyError::NonPositive("d2"));
    }
    realizable(n, d1)?;
    realizable(n, d2)?;
    if n <= EXHAUSTIVE_DEGREE {
        return Ok(search::commuting_pair_exists(n as usize, d1, d2));
    }
    if d1 == 1 || d2 == 1 || d1 == d2 {
        return Ok(true);
    }
    if min_symmetric_degree(d1)? + min_symmetric_degree(d2)? <= n {
        return Ok(true);
    }
    if orders::is_prime(d1) && orders::is_prime(d2) && 2 * d1 > n && 2 * d2 > n {
        return Ok(d1 + d2 <= n);
    }
    Err(MonodromyError::Indeterminate { n, d1, d2 })
}

/// Outcome of [`galois_like_obstruction`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub group_degree: u64,
    pub abelian_dim: u64,
    pub witness_primes: Option<(u64, u64)>,
    /// Forced cycle types of the two witnesses.
    pub witness_shapes: Option<(CycleType, CycleType)>,
    pub reasons: Vec<String>,
    pub obstructed: bool,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| orders::is_prime(p)).collect()
}

/// Look for primes p < q <= n, both with p - 1 > 2g, such that S_n has no
/// commuting elements of orders p and q. Such a pair rules out a
/// factorization of a cover with monodromy S_n through a Galois cover by a
/// g-dimensional abelian variety. `obstructed = false` proves nothing.
pub fn galois_like_obstruction(n: u64, g: u64) -> Result<ObstructionReport> {
    if n < 2 {
        return Err(MonodromyError::OutOfRange {
            name: "degree",
            value: n,
            reason: "must be at least 2",
        });
    }
    if g == 0 {
        return Err(MonodromyError::NonPositive("abelian dimension"));
    }
    let two_g = 2 * g;
    let large: Vec<u64> = primes_up_to(n)
        .into_iter()
        .filter(|&p| p - 1 > two_g)
        .collect();
    let mut report = ObstructionReport {
        group_degree: n,
        abelian_dim: g,
        witness_primes: None,
        witness_shapes: None,
        reasons: Vec::new(),
        obstructed: false,
    };
    let listed: Vec<String> = large.iter().map(u64::to_string).collect();
    report.reasons.push(format!(
        "primes p <= {n} with alpha(p) = p - 1 > 2g = {two_g}: [{}]",
        listed.join(", ")
    ));
    if large.len() < 2 {
        report
            .reasons
            .push("fewer than two such primes: the pair argument does not apply".into());
        return Ok(report);
    }
    for (i, &p) in large.iter().enumerate() {
        for &q in &large[i + 1..] {
            match commuting_orders_possible(n, p, q) {
                Ok(false) => {
                    report.obstructed = true;
                    report.witness_primes = Some((p, q));
                    report.witness_shapes = single_shapes(n, p, q);
                    report.reasons.extend(obstruction_chain(
                        n,
                        g,
                        p,
                        q,
                        report.witness_shapes.as_ref(),
                    ));
                    return Ok(report);
                }
                Ok(true) => report.reasons.push(format!(
                    "({p}, {q}): S_{n} has commuting elements of these orders, no contradiction"
                )),
                Err(MonodromyError::Indeterminate { .. }) => report.reasons.push(format!(
                    "({p}, {q}): inconclusive, commuting elements of these orders not decided"
                )),
                Err(e) => return Err(e),
            }
        }
    }
    report
        .reasons
        .push("no witness pair found: no conclusion".into());
    Ok(report)
}

fn single_shapes(n: u64, p: u64, q: u64) -> Option<(CycleType, CycleType)> {
    let only = |r| {
        let s = prime_order_shape(n, r).ok()?;
        (s.len() == 1).then(|| s.into_iter().next().unwrap())
    };
    Some((only(p)?, only(q)?))
}

fn obstruction_chain(
    n: u64,
    g: u64,
    p: u64,
    q: u64,
    shapes: Option<&(CycleType, CycleType)>,
) -> Vec<String> {
    let mut out = vec![
        format!(
            "the Galois group of the composite cover surjects onto the monodromy group S_{n}, which has elements of orders {p} and {q}"
        ),
        format!(
            "lifting (reconstructed): for r in {{{p}, {q}}}, the preimage of an order-r element contains an element of r-power order mapping onto a generator of the order-r cyclic image"
        ),
        "each such lift is a birational, hence biregular, automorphism of the abelian variety: a group automorphism fixing 0 composed with a translation".into(),
        format!(
            "the linear part of a lift has r-power order, and alpha of any nontrivial r-power is at least r - 1; alpha({p}) = {} > {} = 2g and alpha({q}) = {} > {} = 2g, so both linear parts are trivial and both lifts are translations",
            p - 1,
            2 * g,
            q - 1,
            2 * g
        ),
        format!("translations commute, so their images, elements of orders {p} and {q} in S_{n}, commute"),
    ];
    if let Some((sp, sq)) = shapes {
        out.push(format!(
            "2*{p} > {n} and 2*{q} > {n}: the elements have cycle types {sp} and {sq}, single cycles"
        ));
        out.push(format!(
            "commuting cycles have equal or disjoint supports; lengths {p} != {q} exclude equal supports and {p} + {q} = {} > {n} excludes disjoint ones",
            p + q
        ));
    } else {
        out.push(format!(
            "S_{n} has no commuting elements of orders {p} and {q}"
        ));
    }
    out.push(format!(
        "contradiction: a cover with monodromy S_{n} is not abelian Galois-like in dimension {g}"
    ));
    out
}
