//! Small exact matrix kernels shared by the lattice, Zariski and order code.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solve the square system `a x = b` by Gauss-Jordan elimination over Q.
/// Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Principal submatrix on the given row/column indices.
pub fn principal_submatrix(m: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<Rational>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

/// Square integer matrix with overflow-checked arithmetic.
///
/// Used for the finite-order witnesses, whose powers stay inside a finite
/// group and therefore keep small entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "IntMatrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(blocks: &[IntMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, Overflow> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.data[l * n + j];
                    if b == 0 {
                        continue;
                    }
                    let cell = &mut out.data[i * n + j];
                    *cell = a
                        .checked_mul(b)
                        .and_then(|p| cell.checked_add(p))
                        .ok_or(Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by binary exponentiation.
    pub fn checked_pow(&self, mut k: u64) -> Result<IntMatrix, Overflow> {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// True when every entry of `m` is an integer.
pub fn is_integral_matrix(m: &[Vec<Rational>]) -> bool {
    m.iter().flatten().all(|x| x.denom().is_one())
}
