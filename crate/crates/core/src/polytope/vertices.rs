use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::HSystem;
use crate::ratmath::{lcm_all, rint, RatVector, Rational};

/// Integer arithmetic that may report overflow. Machine integers are tried
/// first; big integers never overflow.
trait Ring: Clone + Integer + Signed {
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
    fn add_checked(&self, other: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn add_checked(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
}

impl Ring for BigInt {
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn add_checked(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// `x * p - f * y`.
fn cross<T: Ring>(x: &T, p: &T, f: &T, y: &T) -> Option<T> {
    x.mul_checked(p)?.sub_checked(&f.mul_checked(y)?)
}

fn dot<T: Ring>(a: &[T], b: &[T]) -> Option<T> {
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (x, y)| acc.add_checked(&x.mul_checked(y)?))
}

/// Echelon rows of the constraints chosen so far: each row vanishes at the
/// pivot columns of the rows before it. Only used to detect dependence.
#[derive(Clone)]
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    chosen: Vec<usize>,
}

impl<T: Ring> Echelon<T> {
    /// Adds normal `i`. `Ok(None)` if it depends on the rows already
    /// present, `Err` on overflow.
    fn extend(&self, i: usize, mut row: Vec<T>) -> Result<Option<Echelon<T>>, Overflow> {
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(r) {
                *x = cross(x, &r[c], &f, y).ok_or(Overflow)?;
            }
            let g = row.iter().fold(T::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x = x.clone() / g.clone());
            }
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        let mut next = self.clone();
        next.rows.push(row);
        next.pivots.push(c);
        next.chosen.push(i);
        Ok(Some(next))
    }
}

#[derive(Debug)]
struct Overflow;

/// Fraction-free solve of an independent square system: numerators over a
/// positive denominator.
fn solve<T: Ring>(a: &[&Vec<T>], b: &[T]) -> Result<(Vec<T>, T), Overflow> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = (*row).clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .expect("independent rows");
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] =
                    cross(&m[i][j], &m[k][k], &m[i][k], &m[k][j]).ok_or(Overflow)? / prev.clone();
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = prev;
    let mut num = vec![T::zero(); n];
    for k in (0..n).rev() {
        let mut acc = det.mul_checked(&m[k][n]).ok_or(Overflow)?;
        for j in k + 1..n {
            acc = acc
                .sub_checked(&m[k][j].mul_checked(&num[j]).ok_or(Overflow)?)
                .ok_or(Overflow)?;
        }
        num[k] = acc / m[k][k].clone();
    }
    if det.is_negative() {
        num.iter_mut().for_each(|x| *x = -x.clone());
    }
    Ok((num, det.abs()))
}

struct Scaled<T> {
    normals: Vec<Vec<T>>,
    /// `L * b` for the common denominator `L` of the right-hand sides.
    rhs: Vec<T>,
}

/// Vertices as `(numerators, denominator)` in units of `1 / L`.
type Found<T> = Vec<(Vec<T>, T)>;

fn descend<T: Ring>(
    sys: &Scaled<T>,
    d: usize,
    ech: &Echelon<T>,
    from: usize,
    found: &mut Found<T>,
) -> Result<(), Overflow> {
    let n = sys.normals.len();
    let need = d - ech.rows.len();
    if n < from + need {
        return Ok(());
    }
    for i in from..=n - need {
        let Some(next) = ech.extend(i, sys.normals[i].clone())? else {
            continue;
        };
        if next.rows.len() < d {
            descend(sys, d, &next, i + 1, found)?;
            continue;
        }
        let a: Vec<&Vec<T>> = next.chosen.iter().map(|&k| &sys.normals[k]).collect();
        let b: Vec<T> = next.chosen.iter().map(|&k| sys.rhs[k].clone()).collect();
        let (num, den) = solve(&a, &b)?;
        let mut feasible = true;
        for k in 0..n {
            if dot(&sys.normals[k], &num).ok_or(Overflow)?
                > sys.rhs[k].mul_checked(&den).ok_or(Overflow)?
            {
                feasible = false;
                break;
            }
        }
        if feasible {
            found.push((num, den));
        }
    }
    Ok(())
}

fn run<T: Ring>(sys: Scaled<T>, d: usize) -> Result<Found<T>, Overflow> {
    let start = Echelon {
        rows: Vec::new(),
        pivots: Vec::new(),
        chosen: Vec::new(),
    };
    let mut found = Vec::new();
    descend(&sys, d, &start, 0, &mut found)?;
    Ok(found)
}

/// All vertices of `{x : A x <= b}`: feasible points where `d` linearly
/// independent constraints are tight. Sorted lexicographically.
///
/// Depth-first over index-increasing constraint subsets, pruning a branch
/// as soon as the chosen rows become dependent. Arithmetic is over the
/// integers until a vertex is found.
pub(crate) fn enumerate(sys: &HSystem) -> Vec<RatVector> {
    let d = sys.dim();
    let mut out = BTreeSet::new();
    if d == 0 {
        if sys.contains(&[]) {
            out.insert(Vec::new());
        }
        return out.into_iter().collect();
    }
    let scale = lcm_all(sys.rhs().iter().map(|b| b.denom()));
    let rhs: Vec<BigInt> = sys
        .rhs()
        .iter()
        .map(|b| (b * rint(&scale)).to_integer())
        .collect();
    let small = |v: &[BigInt]| {
        v.iter()
            .map(|x| i64::try_from(x).ok().map(i128::from))
            .collect::<Option<Vec<i128>>>()
    };
    let fast = small(&rhs).and_then(|rhs| {
        let normals = sys
            .normals()
            .iter()
            .map(|a| small(a))
            .collect::<Option<Vec<_>>>()?;
        run(Scaled { normals, rhs }, d).ok()
    });
    let found: Found<BigInt> = match fast {
        Some(f) => f
            .into_iter()
            .map(|(num, den)| {
                (
                    num.into_iter().map(BigInt::from).collect(),
                    BigInt::from(den),
                )
            })
            .collect(),
        None => run(
            Scaled {
                normals: sys.normals().to_vec(),
                rhs,
            },
            d,
        )
        .expect("big integers do not overflow"),
    };
    for (num, den) in found {
        let full = den * &scale;
        out.insert(
            num.into_iter()
                .map(|x| Rational::new(x, full.clone()))
                .collect(),
        );
    }
    out.into_iter().collect()
}
