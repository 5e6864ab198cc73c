use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector, RatMatrix, RatVector, Rational};
use crate::error::{Error, Result};

/// Reduced row echelon form of `m` (in place) and its pivot columns.
pub fn rref(m: &mut [RatVector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &RatMatrix) -> usize {
    let mut rows = a.rows().to_vec();
    rref(&mut rows, a.ncols()).len()
}

/// One solution of a consistent linear system plus a basis of the
/// homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub point: RatVector,
    pub nullspace: Vec<RatVector>,
}

/// Solves `a x = b`. `Ok(None)` means the system is inconsistent.
///
/// Free variables are set to zero in the particular solution.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Solution>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    let mut aug: Vec<RatVector> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut point = vec![Rational::zero(); n];
    for (row, &c) in aug.iter().zip(&pivots) {
        point[c] = row[n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &c) in aug.iter().zip(&pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect();
    Ok(Some(Solution { point, nullspace }))
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.rows().to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(rows: &[IntVector]) -> usize {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..ncols {
                a[i][j] = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Solution of a nonsingular square integer system as numerators over a
/// positive common denominator, or `None` if singular.
pub fn cramer(a: &[IntVector], b: &[BigInt]) -> Option<(IntVector, BigInt)> {
    let (mut xs, den) = solve_many(a, &[b.to_vec()])?;
    Some((xs.pop().expect("one right-hand side"), den))
}

/// [`cramer`] for several right-hand sides sharing one elimination.
///
/// Fraction-free elimination on `[a | b..]` leaves `+-det(a)` in the last
/// pivot; back substitution then divides exactly, since `det * x` is
/// integral by Cramer's rule.
pub fn solve_many(a: &[IntVector], bs: &[IntVector]) -> Option<(Vec<IntVector>, BigInt)> {
    let n = a.len();
    let w = n + bs.len();
    let mut m: Vec<IntVector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(bs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..w {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = prev;
    let flip = det.is_negative();
    let xs = (n..w)
        .map(|col| {
            let mut num = vec![BigInt::zero(); n];
            for k in (0..n).rev() {
                let mut acc = &det * &m[k][col];
                for j in k + 1..n {
                    acc -= &m[k][j] * &num[j];
                }
                num[k] = acc / &m[k][k];
            }
            if flip {
                num.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            num
        })
        .collect();
    Some((xs, det.abs()))
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "inverse of a non-square matrix");
    let mut aug: Vec<RatVector> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
    Some(RatMatrix::new(n, rows).expect("square"))
}
