//! Exact rational linear programming over `{x : A x <= b}` with free `x`.
//!
//! Two-phase primal simplex on a dense tableau with Bland's rule. Every
//! optimal answer carries a dual certificate that is checked exactly before
//! it is returned.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{dot, lcm_all, rint, IntVector, RatMatrix, RatVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub a: RatMatrix,
    pub b: RatVector,
    pub objective: RatVector,
    pub direction: Direction,
}

impl LpProblem {
    pub fn new(a: RatMatrix, b: RatVector, objective: RatVector, direction: Direction) -> Self {
        Self {
            a,
            b,
            objective,
            direction,
        }
    }

    pub fn maximize(a: RatMatrix, b: RatVector, objective: RatVector) -> Self {
        Self::new(a, b, objective, Direction::Maximize)
    }

    pub fn minimize(a: RatMatrix, b: RatVector, objective: RatVector) -> Self {
        Self::new(a, b, objective, Direction::Minimize)
    }

    fn check_dims(&self) -> Result<()> {
        if self.b.len() != self.a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.a.nrows(),
                found: self.b.len(),
            });
        }
        if self.objective.len() != self.a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.a.ncols(),
                found: self.objective.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Option<RatVector>,
    /// Constraint indices with `<a_i, point> = b_i`, ascending.
    pub tight: Vec<usize>,
}

impl LpResult {
    fn without_optimum(status: LpStatus) -> Self {
        Self {
            status,
            value: None,
            point: None,
            tight: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

enum Outcome {
    Optimal,
    Unbounded,
}

/// Integer-pivoting tableau: the actual entries are `rows / den`. Every
/// pivot divides exactly by the previous pivot, so entries stay integral
/// without gcd reductions.
struct Tableau {
    /// `rows[i]` holds the coefficients followed by the right-hand side.
    rows: Vec<IntVector>,
    basis: Vec<usize>,
    ncols: usize,
    /// Positive common denominator.
    den: BigInt,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, objective: Option<&mut IntVector>) {
        let p = self.rows[r][c].clone();
        let prow = self.rows[r].clone();
        let den = self.den.clone();
        let update = |row: &mut IntVector| {
            let f = row[c].clone();
            for (x, q) in row.iter_mut().zip(&prow) {
                let mut v = &*x * &p;
                if !f.is_zero() && !q.is_zero() {
                    v -= &f * q;
                }
                if !den.is_one() {
                    v /= &den;
                }
                *x = v;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row);
            }
        }
        let mut objective = objective;
        if let Some(o) = objective.as_deref_mut() {
            update(o);
        }
        if p.is_negative() {
            for row in self.rows.iter_mut() {
                row.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            if let Some(o) = objective {
                o.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            self.den = -p;
        } else {
            self.den = p;
        }
        self.basis[r] = c;
    }

    /// `den` times the reduced costs of the current basis for the integral
    /// `cost`.
    fn price(&self, cost: &[BigInt]) -> IntVector {
        let mut out: IntVector = cost.iter().map(|x| x * &self.den).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&row[..self.ncols]) {
                if !t.is_zero() {
                    *o -= cb * t;
                }
            }
        }
        out
    }

    /// Maximizes `cost` from the current feasible basis using Bland's rule.
    /// Returns `den` times the final reduced costs.
    fn maximize(&mut self, cost: &[BigInt]) -> (Outcome, IntVector) {
        let mut objective = self.price(cost);
        loop {
            let Some(c) = (0..self.ncols).find(|&j| objective[j].is_positive()) else {
                return (Outcome::Optimal, objective);
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][c];
                if !t.is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(l) => {
                        // rhs_i / t_i against rhs_l / t_l, both pivots positive.
                        let lhs = &self.rows[i][self.ncols] * &self.rows[l][c];
                        let rhs = &self.rows[l][self.ncols] * t;
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            let Some(r) = leave else {
                return (Outcome::Unbounded, objective);
            };
            self.pivot(r, c, Some(&mut objective));
        }
    }

    /// Values of all columns at the current basic solution.
    fn basic_solution(&self) -> RatVector {
        let mut z = vec![Rational::zero(); self.ncols];
        for (i, &bcol) in self.basis.iter().enumerate() {
            z[bcol] = Rational::new(self.rows[i][self.ncols].clone(), self.den.clone());
        }
        z
    }
}

/// Phase 1. Returns a feasible tableau over `[x+ | x- | s]` together with
/// the positive factors the constraint rows were scaled by, or `None`.
fn feasible_tableau(a: &RatMatrix, b: &[Rational]) -> Option<(Tableau, Vec<BigInt>)> {
    let n = a.nrows();
    let d = a.ncols();
    let art_start = 2 * d + n;
    let negative: Vec<usize> = (0..n).filter(|&i| b[i].is_negative()).collect();
    let ncols = art_start + negative.len();

    let mut rows = Vec::with_capacity(n);
    let mut basis = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    for i in 0..n {
        let scale = lcm_all(a.row(i).iter().chain([&b[i]]).map(|x| x.denom()));
        let int = |x: &Rational| (x * rint(&scale)).to_integer();
        let mut row = vec![BigInt::zero(); ncols + 1];
        for j in 0..d {
            row[j] = int(&a.row(i)[j]);
            row[d + j] = -row[j].clone();
        }
        row[2 * d + i] = BigInt::one();
        row[ncols] = int(&b[i]);
        if let Some(k) = negative.iter().position(|&x| x == i) {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
            row[art_start + k] = BigInt::one();
            basis.push(art_start + k);
        } else {
            basis.push(2 * d + i);
        }
        rows.push(row);
        scales.push(scale);
    }
    let mut t = Tableau {
        rows,
        basis,
        ncols,
        den: BigInt::one(),
    };

    if !negative.is_empty() {
        let cost: IntVector = (0..ncols)
            .map(|j| {
                if j >= art_start {
                    -BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        t.maximize(&cost);
        let infeasible = t
            .basis
            .iter()
            .zip(&t.rows)
            .any(|(&bcol, row)| bcol >= art_start && !row[ncols].is_zero());
        if infeasible {
            return None;
        }
        // Every row carries its own slack column, so a basic artificial can
        // always be pivoted out on some non-artificial column.
        for i in 0..n {
            if t.basis[i] >= art_start {
                let c = (0..art_start)
                    .find(|&j| !t.rows[i][j].is_zero())
                    .expect("slack identity keeps rows independent");
                t.pivot(i, c, None);
            }
        }
        for row in t.rows.iter_mut() {
            let rhs = row.pop().expect("rhs column");
            row.truncate(art_start);
            row.push(rhs);
        }
        t.ncols = art_start;
    }
    Some((t, scales))
}

pub fn solve(p: &LpProblem) -> Result<LpResult> {
    p.check_dims()?;
    let a = &p.a;
    let n = a.nrows();
    let d = a.ncols();
    let Some((mut t, scales)) = feasible_tableau(a, &p.b) else {
        return Ok(LpResult::without_optimum(LpStatus::Infeasible));
    };

    // Internally always maximize, with the objective scaled to integers.
    let c_max: RatVector = match p.direction {
        Direction::Maximize => p.objective.clone(),
        Direction::Minimize => p.objective.iter().map(|x| -x.clone()).collect(),
    };
    let mu = lcm_all(c_max.iter().map(|x| x.denom()));
    let mut cost = vec![BigInt::zero(); t.ncols];
    for j in 0..d {
        cost[j] = (&c_max[j] * rint(&mu)).to_integer();
        cost[d + j] = -cost[j].clone();
    }
    let (outcome, objective) = t.maximize(&cost);
    if let Outcome::Unbounded = outcome {
        return Ok(LpResult::without_optimum(LpStatus::Unbounded));
    }

    let z = t.basic_solution();
    let point: RatVector = (0..d).map(|j| &z[j] - &z[d + j]).collect();
    // Row i was scaled by scales[i]; its multiplier scales back.
    let dual: RatVector = (0..n)
        .map(|i| Rational::new(-&objective[2 * d + i] * &scales[i], &t.den * &mu))
        .collect();
    let value = dot(&c_max, &point);
    verify_certificate(a, &p.b, &c_max, &point, &dual, &value)?;

    let tight = (0..n)
        .filter(|&i| dot(a.row(i), &point) == p.b[i])
        .collect();
    let value = match p.direction {
        Direction::Maximize => value,
        Direction::Minimize => -value,
    };
    Ok(LpResult {
        status: LpStatus::Optimal,
        value: Some(value),
        point: Some(point),
        tight,
    })
}

/// Primal feasibility plus a dual certificate `y >= 0`, `A^T y = c`,
/// `b.y = c.x`, all checked exactly.
fn verify_certificate(
    a: &RatMatrix,
    b: &[Rational],
    c: &[Rational],
    x: &[Rational],
    y: &[Rational],
    value: &Rational,
) -> Result<()> {
    for (i, row) in a.rows().iter().enumerate() {
        if dot(row, x) > b[i] {
            return Err(Error::Internal(format!("lp point violates row {i}")));
        }
    }
    if y.iter().any(|v| v.is_negative()) {
        return Err(Error::Internal("lp dual has a negative entry".into()));
    }
    for j in 0..a.ncols() {
        let s: Rational = a.rows().iter().zip(y).map(|(r, yi)| &r[j] * yi).sum();
        if s != c[j] {
            return Err(Error::Internal(format!("lp dual fails column {j}")));
        }
    }
    if dot(b, y) != *value || dot(c, x) != *value {
        return Err(Error::Internal("lp duality gap is nonzero".into()));
    }
    Ok(())
}

/// True iff `{x : A x <= b}` is nonempty.
pub fn is_feasible(a: &RatMatrix, b: &[Rational]) -> Result<bool> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    Ok(feasible_tableau(a, b).is_some())
}
