//! The lattice of admissible shifts for a core-normal configuration and
//! the finite candidate set of Q-codegrees above a threshold.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp;
use crate::ratmath::{
    extended_gcd, gcd_all, lcm_all, rank, rational_gcd, rint, saturate, solve_linear, to_rat_vec,
    IntMatrix, IntVector, RatMatrix, RatVector, Rational,
};

/// Rows are primitive and positively span their linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreNormalConfig {
    rows: IntMatrix,
}

impl CoreNormalConfig {
    pub fn new(dim: usize, rows: Vec<IntVector>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if !gcd_all(r).is_one() {
                return Err(Error::NonPrimitive(i));
            }
        }
        if !positively_spanning(dim, &rows) {
            return Err(Error::NotPositivelySpanning);
        }
        Ok(Self {
            rows: IntMatrix::new(dim, rows)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn len(&self) -> usize {
        self.rows.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.nrows() == 0
    }

    pub fn rows(&self) -> &[IntVector] {
        self.rows.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.rows
    }
}

/// Some `l >= 0`, `sum l = 1`, with `sum l_i a_i = 0`.
fn positively_spanning(dim: usize, rows: &[IntVector]) -> bool {
    let m = rows.len();
    let mut a: Vec<RatVector> = Vec::new();
    let mut b: RatVector = Vec::new();
    let mut equal = |row: RatVector, rhs: Rational| {
        a.push(row.iter().map(|x| -x.clone()).collect());
        b.push(-rhs.clone());
        a.push(row);
        b.push(rhs);
    };
    for j in 0..dim {
        equal(rows.iter().map(|r| rint(&r[j])).collect(), Rational::zero());
    }
    equal(vec![Rational::one(); m], Rational::one());
    for i in 0..m {
        let mut row = vec![Rational::zero(); m];
        row[i] = -Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    lp::is_feasible(&RatMatrix::new(m, a).expect("uniform width"), &b)
        .expect("consistent dimensions")
}

/// `Lambda = Z^m ∩ span(columns of A, 1)` together with the functional
/// `phi` that vanishes on the column span and sends `1` to 1. Its image
/// `phi(Lambda)` is `step * Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumLattice {
    /// Lattice basis of `Z^m` intersected with the column span of `A`.
    pub column_lattice: Vec<IntVector>,
    /// Lattice basis of `Lambda`.
    pub lattice: Vec<IntVector>,
    /// `phi` on each basis vector of `Lambda`.
    pub phi: RatVector,
    pub step: Rational,
    /// An element of `Lambda` with `phi = step`.
    pub unit: IntVector,
}

pub fn codegree_step(cfg: &CoreNormalConfig) -> Result<SpectrumLattice> {
    let m = cfg.len();
    let columns: Vec<RatVector> = cfg
        .matrix()
        .transpose()
        .rows()
        .iter()
        .map(|c| to_rat_vec(c))
        .collect();
    let column_lattice = saturate(m, &columns);
    let ones = vec![Rational::one(); m];

    let mut with_ones = columns.clone();
    with_ones.push(ones.clone());
    let r_cols = rank(&RatMatrix::new(m, columns.clone())?);
    let r_all = rank(&RatMatrix::new(m, with_ones.clone())?);
    if r_all == r_cols {
        return Err(Error::OnesInColumnSpan);
    }
    let lattice = saturate(m, &with_ones);

    // Coordinates in the basis (column lattice, 1); phi is the last one.
    let mut basis: Vec<RatVector> = column_lattice.iter().map(|v| to_rat_vec(v)).collect();
    basis.push(ones);
    let k = basis.len();
    let system = RatMatrix::new(m, basis).expect("uniform width").transpose();
    let mut phi = Vec::with_capacity(lattice.len());
    for v in &lattice {
        let sol = solve_linear(&system, &to_rat_vec(v))?
            .ok_or_else(|| Error::Internal("lattice vector outside the span".into()))?;
        phi.push(sol.point[k - 1].clone());
    }
    let step = rational_gcd(&phi);
    if !step.is_positive() {
        return Err(Error::Internal("phi vanishes on the lattice".into()));
    }

    // phi = step * n_j with integral n_j; combine them to reach 1.
    let multiples: Vec<BigInt> = phi.iter().map(|x| (x / &step).to_integer()).collect();
    let (g, coeffs) = extended_gcd(&multiples);
    debug_assert!(g.is_one());
    let mut unit = vec![BigInt::zero(); m];
    for (v, c) in lattice.iter().zip(&coeffs) {
        for (u, x) in unit.iter_mut().zip(v) {
            *u += c * x;
        }
    }
    Ok(SpectrumLattice {
        column_lattice,
        lattice,
        phi,
        step,
        unit,
    })
}

impl SpectrumLattice {
    /// `det Gram(Lambda)` and `det Gram(column lattice + 1)`. The second
    /// lattice has index `1 / step` in the first, so
    /// `step^2 * second = first`.
    pub fn gram_determinants(&self) -> (Rational, Rational) {
        let mut sub: Vec<IntVector> = self.column_lattice.clone();
        sub.push(vec![BigInt::one(); self.unit.len()]);
        (gram_det(&self.lattice), gram_det(&sub))
    }

    pub fn gram_identity_holds(&self) -> bool {
        let (full, sub) = self.gram_determinants();
        &self.step * &self.step * sub == full
    }

    /// `k * step` for `k = 1, 2, ...` while `k * step <= 1 / epsilon`.
    pub fn shift_grid(&self, epsilon: &Rational) -> Result<Vec<Rational>> {
        Ok(self.grid(epsilon)?.map(|(n, d)| ratio(n, d)).collect())
    }

    /// `(k * p, q)` for `step = p / q` and every `k` of the shift grid,
    /// each pair in lowest terms.
    fn grid(&self, epsilon: &Rational) -> Result<impl Iterator<Item = (BigInt, BigInt)> + '_> {
        if !epsilon.is_positive() {
            return Err(Error::OutOfRange(format!("epsilon = {epsilon}")));
        }
        let count = (epsilon.recip() / &self.step).floor().to_integer();
        let count = u64::try_from(&count)
            .map_err(|_| Error::OutOfRange(format!("shift grid of {count} entries")))?;
        let (p, q) = (self.step.numer().clone(), self.step.denom().clone());
        let small_q = u64::try_from(&q).ok();
        Ok((1..=count).map(move |k| {
            // gcd(k p, q) = gcd(k, q) since gcd(p, q) = 1.
            let g = match small_q {
                Some(qs) => BigInt::from(k.gcd(&qs)),
                None => BigInt::from(k).gcd(&q),
            };
            (BigInt::from(k) / &g * &p, &q / &g)
        }))
    }
}

/// `n / d` for coprime `n` and positive `d`.
fn ratio(n: BigInt, d: BigInt) -> Rational {
    Rational::new_raw(n, d)
}

fn gram_det(vectors: &[IntVector]) -> Rational {
    let gram: Vec<IntVector> = vectors
        .iter()
        .map(|u| {
            vectors
                .iter()
                .map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    rint(&crate::ratmath::determinant(
        &IntMatrix::new(vectors.len(), gram).expect("square"),
    ))
}

/// Candidate codegrees `1 / (k * step) >= epsilon`, in descending order.
pub fn spectrum_superset(cfg: &CoreNormalConfig, epsilon: &Rational) -> Result<Vec<Rational>> {
    let lat = codegree_step(cfg)?;
    let out = lat.grid(epsilon)?.map(|(n, d)| ratio(d, n)).collect();
    Ok(out)
}

/// A rational `y` with `A y + c 1` integral, if one exists. Exists iff `c`
/// is a multiple of the step.
pub fn check_necessary_condition(
    cfg: &CoreNormalConfig,
    c: &Rational,
) -> Result<Option<RatVector>> {
    let lat = codegree_step(cfg)?;
    necessary_condition_witness(cfg, &lat, c)
}

/// As [`check_necessary_condition`] with a precomputed lattice.
pub fn necessary_condition_witness(
    cfg: &CoreNormalConfig,
    lat: &SpectrumLattice,
    c: &Rational,
) -> Result<Option<RatVector>> {
    let k = c / &lat.step;
    if !k.is_integer() {
        return Ok(None);
    }
    // z = k * unit lies in Lambda with phi(z) = c, so z - c 1 is in the
    // column span and A y = z - c 1 is solvable.
    let target: RatVector = lat.unit.iter().map(|u| rint(u) * &k - c).collect();
    let sol = solve_linear(&cfg.matrix().to_rational(), &target)?
        .ok_or_else(|| Error::Internal("shift witness system is inconsistent".into()))?;
    Ok(Some(sol.point))
}

/// Common denominator of a shift grid, handy for sampling off-grid values.
pub fn grid_denominator(lat: &SpectrumLattice) -> BigInt {
    lcm_all(lat.phi.iter().map(|x| x.denom()))
}
