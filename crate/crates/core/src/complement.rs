//! Primitive orthogonal complements over Z.
//!
//! The complement {v in Z^n : q(v, c) = 0 for all c} is the integer kernel of
//! the k x n matrix C G. An integer kernel is automatically saturated, so the
//! work is in finding a Z-basis of it: reduce (C G)^T next to an identity
//! block with unimodular row operations; the identity rows sitting against a
//! zero row of the reduced block span the kernel. The basis is then put in
//! Hermite normal form so the output is canonical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{DivisorClass, Lattice, LatticeError, Result};

/// Reduce `rows` to row echelon form on the first `cols` columns with
/// unimodular integer row operations. Returns the pivot columns.
fn integer_echelon(rows: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            if rows[r][c].is_zero() {
                rows.swap(r, i);
                continue;
            }
            // [x y; -b/g a/g] has determinant 1
            let a = rows[r][c].clone();
            let b = rows[i][c].clone();
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let width = rows[r].len();
            for k in 0..width {
                let top = &eg.x * &rows[r][k] + &eg.y * &rows[i][k];
                let bottom = &ag * &rows[i][k] - &bg * &rows[r][k];
                rows[r][k] = top;
                rows[i][k] = bottom;
            }
        }
        if !rows[r][c].is_zero() {
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

/// Hermite normal form of a basis (rows), in place: positive pivots, entries
/// above each pivot reduced into [0, pivot).
fn hermite_normal_form(rows: &mut Vec<Vec<BigInt>>) {
    let cols = rows.first().map_or(0, Vec::len);
    let pivots = integer_echelon(rows, cols);
    rows.truncate(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for above in 0..r {
            let q = rows[above][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            for k in 0..cols {
                let t = &q * &rows[r][k];
                rows[above][k] -= t;
            }
        }
    }
}

/// The integer matrix C G whose kernel is the orthogonal complement.
fn pairing_matrix(l: &Lattice, classes: &[DivisorClass]) -> Result<Vec<Vec<BigInt>>> {
    if !l.is_integral() {
        return Err(LatticeError::NonIntegral("Gram matrix"));
    }
    let n = l.rank();
    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        if !c.lives_on(l) {
            return Err(LatticeError::AmbientMismatch);
        }
        let coeffs = c
            .integer_coeffs()
            .ok_or(LatticeError::NonIntegral("class coefficients"))?;
        let row = (0..n)
            .map(|j| {
                coeffs
                    .iter()
                    .zip(l.gram())
                    .map(|(ci, grow)| ci * grow[j].numer())
                    .sum::<BigInt>()
            })
            .collect();
        out.push(row);
    }
    Ok(out)
}

/// Basis of the primitive sublattice orthogonal to every class, in Hermite
/// normal form.
pub fn primitive_orthogonal_complement(
    l: &Lattice,
    classes: &[DivisorClass],
) -> Result<Vec<Vec<BigInt>>> {
    let m = pairing_matrix(l, classes)?;
    let n = l.rank();
    let k = m.len();
    // rows of [ (C G)^T | I_n ]
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = m.iter().map(|r| r[i].clone()).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let rank = integer_echelon(&mut aug, k).len();
    let mut basis: Vec<Vec<BigInt>> = aug
        .into_iter()
        .skip(rank)
        .map(|row| row[k..].to_vec())
        .collect();
    hermite_normal_form(&mut basis);
    Ok(basis)
}

/// Rank over Q of the classes' pairing functionals q(c, -).
pub fn pairing_rank(l: &Lattice, classes: &[DivisorClass]) -> Result<usize> {
    let mut m = pairing_matrix(l, classes)?;
    Ok(integer_echelon(&mut m, l.rank()).len())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::k3_lattice;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn complement_of_isotropic_vector_in_u() {
        let u = Arc::new(crate::catalog::hyperbolic_plane());
        let e = DivisorClass::basis(&u, 0).unwrap();
        assert_eq!(
            primitive_orthogonal_complement(&u, &[e]).unwrap(),
            vec![ints(&[1, 0])]
        );
    }

    #[test]
    fn complement_in_diagonal_form() {
        let l = Arc::new(Lattice::diagonal(&[2, -2]));
        let v = DivisorClass::basis(&l, 0).unwrap();
        assert_eq!(
            primitive_orthogonal_complement(&l, &[v]).unwrap(),
            vec![ints(&[0, 1])]
        );
    }

    #[test]
    fn saturation_is_not_lost() {
        // complement of (1,1) under diag(2, 2) is spanned by (1,-1)
        let l = Arc::new(Lattice::diagonal(&[2, 2, 1]));
        let c = DivisorClass::from_ints(&l, &[1, 1, 0]).unwrap();
        let basis = primitive_orthogonal_complement(&l, &[c]).unwrap();
        assert_eq!(basis, vec![ints(&[1, -1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn k3_complement_rank() {
        let k3 = Arc::new(k3_lattice());
        let h = DivisorClass::from_ints(&k3, &{
            let mut v = vec![0; 22];
            v[0] = 1;
            v[1] = 1;
            v
        })
        .unwrap();
        let basis = primitive_orthogonal_complement(&k3, &[h.clone()]).unwrap();
        assert_eq!(basis.len(), 21);
        assert_eq!(pairing_rank(&k3, &[h]).unwrap(), 1);
    }

    #[test]
    fn rejects_non_integral_input() {
        let l = Arc::new(Lattice::diagonal(&[1, 1]));
        let c = DivisorClass::new(
            &l,
            vec![crate::rational::frac(1, 2), crate::rational::int(0)],
        )
        .unwrap();
        assert_eq!(
            primitive_orthogonal_complement(&l, &[c]),
            Err(LatticeError::NonIntegral("class coefficients"))
        );
        let half =
            Lattice::from_gram(vec![vec![crate::rational::frac(1, 2)]], vec!["x".into()]).unwrap();
        assert_eq!(
            primitive_orthogonal_complement(&half, &[]),
            Err(LatticeError::NonIntegral("Gram matrix"))
        );
    }

    #[test]
    fn empty_class_list_gives_full_lattice() {
        let l = Lattice::diagonal(&[1, -1, 3]);
        assert_eq!(primitive_orthogonal_complement(&l, &[]).unwrap().len(), 3);
    }
}
