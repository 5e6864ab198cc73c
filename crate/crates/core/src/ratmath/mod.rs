//! Exact scalars and integer/rational linear algebra.
//!
//! Everything in this crate is computed over `BigInt` and `BigRational`;
//! there is no floating point anywhere.

mod hnf;
mod lattice;
mod linear;

pub use hnf::{hnf, Hnf};
pub use lattice::{integer_kernel_basis, saturate};
pub use linear::{
    cramer, determinant, int_rank, inverse, rank, rref, solve_linear, solve_many, Solution,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<Rational>;

/// Dense row-major integer matrix. `cols` is kept explicitly so that a
/// matrix with no rows still knows its width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<IntVector>,
}

impl IntMatrix {
    pub fn new(cols: usize, rows: Vec<IntVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Panics on ragged input; for literals in tests and generators.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(cols, rows.iter().map(|r| ivec(r)).collect()).expect("rectangular literal")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { cols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self {
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .map(|(a, orow)| a * &orow[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(IntMatrix {
            cols: other.cols,
            rows,
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        self.rows.iter().map(|r| dot_int(r, v)).collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| to_rat_vec(r)).collect(),
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<RatVector>,
}

impl RatMatrix {
    pub fn new(cols: usize, rows: Vec<RatVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::identity(n).to_rational()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RatVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self {
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn rvec(v: &[(i64, i64)]) -> RatVector {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn to_rat_vec(v: &[BigInt]) -> RatVector {
    v.iter().map(rint).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `<a, x>` for an integer functional and a rational point.
pub fn dot_mixed(a: &[BigInt], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| v * c)
        .fold(Rational::zero(), |acc, t| acc + t)
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Integer entries of an integral rational vector, or `None`.
pub fn to_int_vec(v: &[Rational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn gcd_all<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

/// Divide out the content of a nonzero integer vector.
///
/// Returns the primitive vector and the (positive) gcd that was removed.
pub fn primitivize(v: &[BigInt]) -> Result<(IntVector, BigInt)> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((v.iter().map(|x| x / &g).collect(), g))
}

/// Positive rescaling of a nonzero rational vector to a primitive integer
/// vector, together with the factor `s > 0` such that `primitive = s * v`.
pub fn primitive_direction(v: &[Rational]) -> Result<(IntVector, Rational)> {
    let den = lcm_all(v.iter().map(|x| x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * rint(&den)).to_integer()).collect();
    let (prim, g) = primitivize(&scaled)?;
    Ok((prim, Rational::new(den, g)))
}

/// Positive generator of the additive group generated by `values`, or zero
/// when all values are zero.
pub fn rational_gcd(values: &[Rational]) -> Rational {
    let den = lcm_all(values.iter().map(|x| x.denom()));
    let nums: Vec<BigInt> = values
        .iter()
        .map(|x| (x * rint(&den)).to_integer())
        .collect();
    Rational::new(gcd_all(&nums), den)
}

/// Bezout coefficients: returns `(g, x)` with `g = gcd(values) >= 0` and
/// `sum x_i * values_i = g`.
pub fn extended_gcd(values: &[BigInt]) -> (BigInt, IntVector) {
    let mut g = BigInt::zero();
    let mut coeffs: IntVector = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        let e = g.extended_gcd(v);
        // e.gcd = e.x * g + e.y * v
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    (g, coeffs)
}

/// Componentwise fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `p/q`, or `p` when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q` or an integer; also accepts a leading `+`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

pub fn format_ivec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
