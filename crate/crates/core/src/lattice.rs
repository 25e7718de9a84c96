//! Exact quadratic lattices: Gram matrices over Q with labelled bases.
//!
//! A [`Lattice`] is immutable once built. Divisor classes hold an
//! `Arc<Lattice>` so they can be sent across threads together with the form
//! they are measured against.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square: row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("empty class list")]
    EmptyInput,
    #[error("class does not live on the given lattice")]
    AmbientMismatch,
    #[error("integral input required: {0}")]
    NonIntegral(&'static str),
    #[error("b2 = {0} is below 3; a BBF lattice has three positive directions")]
    B2TooSmall(u64),
    #[error("unknown catalog lattice {0:?}")]
    UnknownName(String),
    #[error("catalog lattice {0:?} needs a parameter")]
    MissingParam(String),
    #[error("invalid parameter {param} for catalog lattice {name:?}: {reason}")]
    InvalidParam {
        name: String,
        param: i64,
        reason: &'static str,
    },
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl Lattice {
    pub fn from_gram(gram: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Self> {
        let rank = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(LatticeError::NotSquare {
                    row,
                    len: r.len(),
                    rank,
                });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NonSymmetric { row: i, col: j });
                }
            }
        }
        if labels.len() != rank {
            return Err(LatticeError::LabelMismatch(format!(
                "{} labels for rank {rank}",
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(LatticeError::LabelMismatch(format!(
                "duplicate label {dup:?}"
            )));
        }
        Ok(Lattice { gram, labels })
    }

    /// Convenience constructor from an integer Gram matrix.
    pub fn from_int_gram(gram: &[Vec<i64>], labels: &[&str]) -> Result<Self> {
        Self::from_gram(
            gram.iter()
                .map(|r| r.iter().map(|&x| rational::int(x)).collect())
                .collect(),
            labels.iter().map(|s| s.to_string()).collect(),
        )
    }

    /// The rank-0 lattice.
    pub fn zero() -> Self {
        Lattice {
            gram: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Diagonal lattice with generated labels `v1, v2, ...`.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            rational::int(entries[i])
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice {
            gram,
            labels: (1..=n).map(|i| format!("v{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_integral(&self) -> bool {
        crate::matrix::is_integral_matrix(&self.gram)
    }

    /// q(a, b) for coefficient vectors in this basis.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        assert_eq!(a.len(), self.rank(), "left vector length");
        assert_eq!(b.len(), self.rank(), "right vector length");
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        acc
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gram: Vec<Vec<String>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(rational::format_rational).collect())
            .collect();
        f.debug_struct("Lattice")
            .field("labels", &self.labels)
            .field("gram", &gram)
            .finish()
    }
}

pub fn lattice_from_gram(gram: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Lattice> {
    Lattice::from_gram(gram, labels)
}

/// Orthogonal direct sum. Labels of `b` that collide with earlier labels get
/// a `_2`, `_3`, ... suffix.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let n = a.rank() + b.rank();
    let mut gram = vec![vec![Rational::zero(); n]; n];
    for i in 0..a.rank() {
        gram[i][..a.rank()].clone_from_slice(&a.gram[i]);
    }
    for i in 0..b.rank() {
        gram[a.rank() + i][a.rank()..].clone_from_slice(&b.gram[i]);
    }
    let mut labels = a.labels.clone();
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    for l in &b.labels {
        let mut candidate = l.clone();
        let mut k = 2;
        while taken.contains(&candidate) {
            candidate = format!("{l}_{k}");
            k += 1;
        }
        taken.insert(candidate.clone());
        labels.push(candidate);
    }
    Lattice { gram, labels }
}

/// Inertia triple of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Signature {
            n_plus,
            n_zero,
            n_minus,
        }
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Inertia of a symmetric rational matrix by congruence diagonalization.
///
/// Pivots on a nonzero diagonal entry when one is left. Otherwise a nonzero
/// off-diagonal entry g spans a hyperbolic block [[0,g],[g,0]], which is split
/// off as one positive and one negative direction. A block with no nonzero
/// entry at all is the radical.
pub fn inertia(matrix: &[Vec<Rational>]) -> Signature {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut sig = Signature::new(0, 0, 0);
    let mut k = 0;

    let swap_sym = |a: &mut Vec<Vec<Rational>>, i: usize, j: usize| {
        if i != j {
            a.swap(i, j);
            for row in a.iter_mut() {
                row.swap(i, j);
            }
        }
    };

    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &pivot;
                for c in k..n {
                    let t = &f * &a[k][c];
                    a[r][c] -= t;
                }
                // symmetric column update; only column k can be read stale
                for c in k..n {
                    let t = &f * &a[c][k];
                    a[c][r] -= t;
                }
            }
            k += 1;
            continue;
        }
        let off = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((i, j)) = off else {
            sig.n_zero += n - k;
            break;
        };
        // j > i >= k, so moving i to k leaves j in place
        swap_sym(&mut a, k, i);
        swap_sym(&mut a, k + 1, j);
        let g = a[k][k + 1].clone();
        // Block inverse [[0, 1/g], [1/g, 0]]: row r loses
        // (a[r][k+1]/g) * row k + (a[r][k]/g) * row k+1.
        for r in k + 2..n {
            let ck = &a[r][k + 1] / &g;
            let ck1 = &a[r][k] / &g;
            if ck.is_zero() && ck1.is_zero() {
                continue;
            }
            for c in k..n {
                let t = &ck * &a[k][c] + &ck1 * &a[k + 1][c];
                a[r][c] -= t;
            }
            for c in k..n {
                let t = &ck * &a[c][k] + &ck1 * &a[c][k + 1];
                a[c][r] -= t;
            }
        }
        sig.n_plus += 1;
        sig.n_minus += 1;
        k += 2;
    }
    sig
}

pub fn signature(l: &Lattice) -> Signature {
    inertia(&l.gram)
}

/// Whether the principal Gram submatrix on `subset` is negative definite.
pub fn is_negative_definite(l: &Lattice, subset: &[usize]) -> Result<bool> {
    let mut seen = HashSet::new();
    for &i in subset {
        if i >= l.rank() {
            return Err(LatticeError::IndexOutOfRange {
                index: i,
                rank: l.rank(),
            });
        }
        if !seen.insert(i) {
            return Err(LatticeError::DuplicateIndex(i));
        }
    }
    let sub = crate::matrix::principal_submatrix(&l.gram, subset);
    Ok(inertia(&sub) == Signature::new(0, 0, subset.len()))
}

/// A rational coefficient vector over a lattice basis.
#[derive(Clone)]
pub struct DivisorClass {
    ambient: Arc<Lattice>,
    coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(ambient: &Arc<Lattice>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != ambient.rank() {
            return Err(LatticeError::AmbientMismatch);
        }
        Ok(DivisorClass {
            ambient: Arc::clone(ambient),
            coeffs,
        })
    }

    pub fn from_ints(ambient: &Arc<Lattice>, coeffs: &[i64]) -> Result<Self> {
        Self::new(ambient, coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// The i-th basis vector.
    pub fn basis(ambient: &Arc<Lattice>, i: usize) -> Result<Self> {
        if i >= ambient.rank() {
            return Err(LatticeError::IndexOutOfRange {
                index: i,
                rank: ambient.rank(),
            });
        }
        let mut coeffs = vec![Rational::zero(); ambient.rank()];
        coeffs[i] = rational::int(1);
        Ok(DivisorClass {
            ambient: Arc::clone(ambient),
            coeffs,
        })
    }

    pub fn zero(ambient: &Arc<Lattice>) -> Self {
        DivisorClass {
            ambient: Arc::clone(ambient),
            coeffs: vec![Rational::zero(); ambient.rank()],
        }
    }

    pub fn ambient(&self) -> &Arc<Lattice> {
        &self.ambient
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn lives_on(&self, l: &Lattice) -> bool {
        std::ptr::eq(Arc::as_ptr(&self.ambient), l) || *self.ambient == *l
    }

    pub fn same_ambient(&self, other: &DivisorClass) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) || *self.ambient == *other.ambient
    }

    pub fn pair(&self, other: &DivisorClass) -> Result<Rational> {
        if !self.same_ambient(other) {
            return Err(LatticeError::AmbientMismatch);
        }
        Ok(self.ambient.pair(&self.coeffs, &other.coeffs))
    }

    pub fn square(&self) -> Rational {
        self.ambient.pair(&self.coeffs, &self.coeffs)
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: &Rational, other: &DivisorClass) -> Result<DivisorClass> {
        if !self.same_ambient(other) {
            return Err(LatticeError::AmbientMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + t * b)
            .collect();
        Ok(DivisorClass {
            ambient: Arc::clone(&self.ambient),
            coeffs,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integral)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| rational::is_integral(c).then(|| c.numer().clone()))
            .collect()
    }
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_ambient(other)
    }
}

impl Eq for DivisorClass {}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(rational::format_rational).collect();
        write!(f, "DivisorClass{c:?}")
    }
}

/// Matrix of pairings (q(c_i, c_j)) of the given classes, all of which must
/// live on `l`.
pub fn class_gram(l: &Lattice, classes: &[DivisorClass]) -> Result<Vec<Vec<Rational>>> {
    if classes.iter().any(|c| !c.lives_on(l)) {
        return Err(LatticeError::AmbientMismatch);
    }
    Ok(classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| l.pair(&a.coeffs, &b.coeffs))
                .collect()
        })
        .collect())
}

/// q-exceptionality: the Gram matrix of the classes is negative definite.
/// Linearly dependent classes give a singular Gram matrix and hence `false`.
pub fn q_exceptional(l: &Lattice, classes: &[DivisorClass]) -> Result<bool> {
    if classes.is_empty() {
        return Err(LatticeError::EmptyInput);
    }
    let g = class_gram(l, classes)?;
    Ok(inertia(&g) == Signature::new(0, 0, classes.len()))
}

/// Largest rank of a negative-definite sublattice of a form of signature
/// (3, b2 - 3): the number c of branch components allowed by b2 >= 3 + c.
pub fn branch_component_bound(b2: u64) -> Result<u64> {
    if b2 < 3 {
        return Err(LatticeError::B2TooSmall(b2));
    }
    Ok(b2 - 3)
}

/// A constructive instance of [`branch_component_bound`]: the diagonal form
/// diag(1, 1, 1, -1, ..., -1) of rank b2 together with its b2 - 3 negative
/// basis vectors, which span a negative-definite sublattice.
pub fn negative_definite_embedding(b2: u64) -> Result<(Arc<Lattice>, Vec<DivisorClass>)> {
    let c = branch_component_bound(b2)? as usize;
    let mut diag = vec![1i64; 3];
    diag.extend(std::iter::repeat(-1).take(c));
    let l = Arc::new(Lattice::diagonal(&diag));
    let classes = (3..3 + c)
        .map(|i| DivisorClass::basis(&l, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((l, classes))
}
