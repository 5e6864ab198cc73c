//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use polyadj_core::adjunction::{self, AdjunctionReport};
use polyadj_core::fan::{normal_fan, NormalFan};
use polyadj_core::generators;
use polyadj_core::ratmath::{
    determinant, hnf, integer_kernel_basis, rint, IntMatrix, RatVector, Rational,
};
use polyadj_core::spectrum::{codegree_step, CoreNormalConfig, SpectrumLattice};
use polyadj_core::HPolytope;

/// Box half-width per dimension for the random suite.
pub fn suite_box(d: usize) -> i64 {
    match d {
        2 => 5,
        3 => 3,
        _ => 2,
    }
}

/// Instance `i` of the seeded suite: dimension `2 + i % 3`, `d + 3` points.
pub fn suite_polytope(i: u64) -> HPolytope {
    let d = 2 + (i % 3) as usize;
    generators::random(d, d + 3, i, suite_box(d)).expect("valid generator parameters")
}

pub struct Instance {
    pub seed: u64,
    pub p: HPolytope,
    pub report: AdjunctionReport,
    pub fan: NormalFan,
    pub threshold: Rational,
    pub cfg: CoreNormalConfig,
    pub lattice: SpectrumLattice,
}

pub fn analyze_instance(seed: u64, p: HPolytope) -> Instance {
    let report = adjunction::analyze(&p).expect("suite polytopes are valid");
    let fan = normal_fan(&p);
    let threshold = fan
        .canonicity_threshold()
        .expect("fan cones are pointed")
        .threshold;
    let cfg = CoreNormalConfig::new(p.dim(), report.core_normals.clone())
        .expect("core normals are a valid configuration");
    let lattice = codegree_step(&cfg).expect("valid configuration");
    Instance {
        seed,
        p,
        report,
        fan,
        threshold,
        cfg,
        lattice,
    }
}

pub fn suite(count: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| analyze_instance(i, suite_polytope(i)))
        .collect()
}

/// Simplest rational (smallest denominator) in `[lo, hi]`, `0 <= lo <= hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(!lo.is_negative() && lo <= hi);
    let fl = lo.floor();
    if fl == *lo || fl.clone() + Rational::one() <= *hi {
        return if fl == *lo {
            lo.clone()
        } else {
            fl + Rational::one()
        };
    }
    // Both in (fl, fl + 1): recurse on reciprocals of the fractional parts.
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// `1 / qcd` by bisection on nonemptiness of the adjoint family.
///
/// The maximum is a vertex of the lifted system, so its denominator is at
/// most `D`, a Hadamard bound on the `(d+1)`-minors of `[A | 1]`. Two such
/// rationals are at least `1 / D^2` apart; once the bracket is narrower
/// the simplest rational inside is the answer.
pub fn bisection_c_star(p: &HPolytope) -> Rational {
    let d = p.dim();
    let mut norms: Vec<BigInt> = p
        .normals()
        .iter()
        .map(|a| a.iter().map(|x| x * x).sum::<BigInt>() + BigInt::one())
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let d_squared: BigInt = norms.iter().take(d + 1).product();
    let width = Rational::new(BigInt::one(), d_squared);

    let feasible = |c: &Rational| p.system().shifted(c).is_feasible();
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    while feasible(&hi) {
        lo = hi.clone();
        hi *= Rational::from_integer(2.into());
    }
    while &hi - &lo >= width {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if feasible(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = simplest_between(&lo, &hi);
    assert!(feasible(&c));
    c
}

/// Vertices by trying every `d`-subset of rows with Cramer's rule.
pub fn brute_force_vertices(p: &HPolytope) -> Vec<RatVector> {
    let d = p.dim();
    let den = polyadj_core::ratmath::lcm_all(p.rhs().iter().map(|b| b.denom()));
    let mut out = Vec::new();
    for rows in (0..p.len()).combinations(d) {
        let a: Vec<Vec<BigInt>> = rows.iter().map(|&i| p.normals()[i].clone()).collect();
        let b: Vec<BigInt> = rows
            .iter()
            .map(|&i| (&p.rhs()[i] * rint(&den)).to_integer())
            .collect();
        let det = determinant(&IntMatrix::new(d, a.clone()).unwrap());
        if det.is_zero() {
            continue;
        }
        let x: RatVector = (0..d)
            .map(|j| {
                let replaced: Vec<Vec<BigInt>> = a
                    .iter()
                    .zip(&b)
                    .map(|(row, bi)| {
                        let mut r = row.clone();
                        r[j] = bi.clone();
                        r
                    })
                    .collect();
                Rational::new(
                    determinant(&IntMatrix::new(d, replaced).unwrap()),
                    &det * &den,
                )
            })
            .collect();
        if p.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// Height in a simplicial full-dimensional cone by solving the square
/// system with Cramer's rule.
pub fn cramer_height(generators: &[Vec<BigInt>], y: &[BigInt]) -> Rational {
    let d = y.len();
    // y = G^T lambda; column j of G^T replaced by y gives lambda_j.
    let cols = IntMatrix::new(d, generators.to_vec()).unwrap().transpose();
    let det = determinant(&cols);
    let mut total = Rational::zero();
    for j in 0..d {
        let replaced: Vec<Vec<BigInt>> = cols
            .rows()
            .iter()
            .zip(y)
            .map(|(row, yi)| {
                let mut r = row.clone();
                r[j] = yi.clone();
                r
            })
            .collect();
        total += Rational::new(
            determinant(&IntMatrix::new(d, replaced).unwrap()),
            det.clone(),
        );
    }
    total
}

/// Decides whether some rational `y` makes `A y + c 1` integral through
/// integer solvability: such `y` exists iff some integral `z` satisfies
/// `N z = c N 1` for an integral basis `N` of the left kernel of `A`.
pub struct ShiftOracle {
    /// Row sums of the left-kernel basis, i.e. `N 1` entrywise.
    sums: Vec<BigInt>,
    /// Hermite form of the lattice spanned by the columns of `N`.
    h: polyadj_core::ratmath::Hnf,
}

impl ShiftOracle {
    pub fn new(a: &IntMatrix) -> Self {
        let m = a.nrows();
        let left = integer_kernel_basis(&a.transpose());
        let sums = left.iter().map(|n| n.iter().sum::<BigInt>()).collect();
        let h = hnf(&IntMatrix::new(m, left).unwrap().transpose());
        Self { sums, h }
    }

    pub fn admits(&self, c: &Rational) -> bool {
        if self.sums.is_empty() {
            return true;
        }
        let target: RatVector = self.sums.iter().map(|s| c * rint(s)).collect();
        if target.iter().any(|t| !t.is_integer()) {
            return false;
        }
        let mut t: Vec<BigInt> = target.iter().map(|x| x.to_integer()).collect();
        for &(r, col) in &self.h.pivots {
            let row = self.h.h.row(r);
            let (q, rem) = t[col].div_rem(&row[col]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in t.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        t.iter().all(|x| x.is_zero())
    }
}
