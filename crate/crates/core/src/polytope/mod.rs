//! Inequality systems, canonical lattice polytopes and lower-dimensional
//! hulls.
//!
//! [`HSystem`] is an arbitrary system `<a_i, x> <= b_i` with integral
//! normals; it may be redundant, empty or lower-dimensional (adjoint
//! polytopes are such systems). [`HPolytope`] is the canonical form: bounded,
//! full-dimensional, primitive normals, irredundant. Sets that are not
//! full-dimensional are carried as [`RelativePolytope`].

mod hull;
mod lattice_points;
mod vertices;

pub use hull::{AffineSubspace, RelativePolytope};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpProblem, LpResult, LpStatus};
use crate::ratmath::{
    determinant, dot_mixed, inverse, is_integral, lcm_all, primitivize, rint, to_int_vec,
    IntMatrix, IntVector, RatMatrix, RatVector, Rational,
};

/// Which lattice points to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    All,
    RelativeInterior,
}

/// `{x in R^d : <a_i, x> <= b_i}` with integral `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HSystem {
    dim: usize,
    normals: Vec<IntVector>,
    rhs: RatVector,
}

impl HSystem {
    pub fn new(dim: usize, normals: Vec<IntVector>, rhs: RatVector) -> Result<Self> {
        if normals.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: normals.len(),
                found: rhs.len(),
            });
        }
        if let Some(bad) = normals.iter().find(|a| a.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { dim, normals, rhs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[IntVector] {
        &self.normals
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn matrix(&self) -> RatMatrix {
        IntMatrix::new(self.dim, self.normals.clone())
            .expect("validated widths")
            .to_rational()
    }

    /// `b_i - <a_i, x>`.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.rhs[i] - dot_mixed(&self.normals[i], x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.len()).all(|i| !self.slack(i, x).is_negative())
    }

    /// Same normals, every right-hand side lowered by `c`.
    pub fn shifted(&self, c: &Rational) -> HSystem {
        HSystem {
            dim: self.dim,
            normals: self.normals.clone(),
            rhs: self.rhs.iter().map(|b| b - c).collect(),
        }
    }

    pub fn is_feasible(&self) -> bool {
        lp::is_feasible(&self.matrix(), &self.rhs).expect("consistent dimensions")
    }

    pub fn maximize(&self, objective: &[Rational]) -> Result<LpResult> {
        lp::solve(&LpProblem::maximize(
            self.matrix(),
            self.rhs.clone(),
            objective.to_vec(),
        ))
    }

    /// Vertices by exhaustive tight-subset enumeration. Meaningful for
    /// bounded systems; the output is sorted.
    pub fn vertices(&self) -> Vec<RatVector> {
        vertices::enumerate(self)
    }

    /// Hull of the vertices, or `None` if the system is infeasible. The
    /// system must be bounded.
    pub fn to_relative(&self) -> Option<RelativePolytope> {
        let verts = self.vertices();
        if verts.is_empty() {
            return None;
        }
        Some(RelativePolytope::from_points(&verts).expect("nonempty vertex list"))
    }
}

/// Vertex list of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<RatVector>,
}

/// Bounded full-dimensional polytope with primitive normals and an
/// irredundant inequality system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolytope {
    sys: HSystem,
}

impl HPolytope {
    /// Canonicalizes a raw inequality list `<a, x> <= b`.
    ///
    /// Rows are scaled to primitive integral normals, duplicate normals keep
    /// the smallest right-hand side, and redundant rows are dropped one at a
    /// time. Input order of the surviving rows is preserved.
    pub fn from_inequalities(dim: usize, raw: &[(RatVector, Rational)]) -> Result<Self> {
        let mut merged: BTreeMap<IntVector, usize> = BTreeMap::new();
        let mut normals: Vec<IntVector> = Vec::new();
        let mut rhs: RatVector = Vec::new();
        for (a, b) in raw {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
            let den = lcm_all(a.iter().map(|x| x.denom()));
            let scaled: IntVector = a.iter().map(|x| (x * rint(&den)).to_integer()).collect();
            let Ok((prim, g)) = primitivize(&scaled) else {
                if b.is_negative() {
                    return Err(Error::Empty);
                }
                continue;
            };
            let b = b * rint(&den) / rint(&g);
            match merged.get(&prim) {
                Some(&k) => {
                    if b < rhs[k] {
                        rhs[k] = b;
                    }
                }
                None => {
                    merged.insert(prim.clone(), normals.len());
                    normals.push(prim);
                    rhs.push(b);
                }
            }
        }
        let sys = HSystem::new(dim, normals, rhs)?;
        check_full_dimensional_polytope(&sys)?;

        let mut keep: Vec<bool> = vec![true; sys.len()];
        for i in 0..sys.len() {
            keep[i] = false;
            let others = select(&sys, &keep);
            let obj: RatVector = sys.normals[i].iter().map(rint).collect();
            let res = others.maximize(&obj)?;
            let redundant = res.status == LpStatus::Optimal
                && res.value.as_ref().is_some_and(|v| *v <= sys.rhs[i]);
            keep[i] = !redundant;
        }
        Ok(Self {
            sys: select(&sys, &keep),
        })
    }

    /// Facet description of the convex hull of `points`, which must
    /// affinely span the ambient space. Facets are sorted.
    pub fn from_vertices(points: &[RatVector]) -> Result<Self> {
        let rel = RelativePolytope::from_points(points)?;
        let dim = rel.ambient_dim();
        if rel.dim() < dim {
            return Err(Error::NotFullDimensional {
                expected: dim,
                found: rel.dim(),
            });
        }
        let (normals, rhs): (Vec<IntVector>, RatVector) = rel.facets().iter().cloned().unzip();
        Ok(Self {
            sys: HSystem::new(dim, normals, rhs)?,
        })
    }

    pub fn system(&self) -> &HSystem {
        &self.sys
    }

    pub fn dim(&self) -> usize {
        self.sys.dim
    }

    pub fn len(&self) -> usize {
        self.sys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sys.is_empty()
    }

    pub fn normals(&self) -> &[IntVector] {
        &self.sys.normals
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.sys.rhs
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.sys.contains(x)
    }

    pub fn vertices(&self) -> VPolytope {
        VPolytope {
            dim: self.dim(),
            vertices: self.sys.vertices(),
        }
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.sys.vertices().iter().all(|v| is_integral(v))
    }

    pub fn to_relative(&self) -> RelativePolytope {
        RelativePolytope::from_parts(
            AffineSubspace::whole(self.dim()),
            self.sys
                .normals
                .iter()
                .cloned()
                .zip(self.sys.rhs.iter().cloned())
                .collect(),
            self.sys.vertices(),
        )
    }

    /// Vertex barycenter.
    pub fn relative_interior_point(&self) -> RatVector {
        self.to_relative().relative_interior_point()
    }

    pub fn lattice_points(&self, region: Region, scale: &BigInt) -> Result<Vec<IntVector>> {
        self.to_relative().lattice_points(region, scale)
    }

    /// Image under `x -> u x + t` for unimodular `u`.
    pub fn transform(&self, u: &IntMatrix, t: &[BigInt]) -> Result<HPolytope> {
        let d = self.dim();
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: u.nrows(),
            });
        }
        if t.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: t.len(),
            });
        }
        let det = determinant(u);
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det));
        }
        let inv = inverse(&u.to_rational()).expect("unimodular is invertible");
        let inv_t: Vec<IntVector> = inv
            .transpose()
            .rows()
            .iter()
            .map(|r| to_int_vec(r).expect("inverse of a unimodular matrix is integral"))
            .collect();
        let inv_t = IntMatrix::new(d, inv_t)?;
        let mut normals = Vec::with_capacity(self.len());
        let mut rhs = Vec::with_capacity(self.len());
        for (a, b) in self.normals().iter().zip(self.rhs()) {
            let a2 = inv_t.mul_vec(a);
            let shift: BigInt = a2.iter().zip(t).map(|(x, y)| x * y).sum();
            rhs.push(b + rint(&shift));
            normals.push(a2);
        }
        Ok(Self {
            sys: HSystem::new(d, normals, rhs)?,
        })
    }

    /// `k * P` for a positive integer `k`.
    pub fn dilate(&self, k: &BigInt) -> Result<HPolytope> {
        if !k.is_positive() {
            return Err(Error::OutOfRange(format!("dilation factor {k}")));
        }
        let rhs = self.rhs().iter().map(|b| b * rint(k)).collect();
        Ok(Self {
            sys: HSystem::new(self.dim(), self.normals().to_vec(), rhs)?,
        })
    }
}

fn select(sys: &HSystem, keep: &[bool]) -> HSystem {
    let mut normals = Vec::new();
    let mut rhs = Vec::new();
    for i in (0..sys.len()).filter(|&i| keep[i]) {
        normals.push(sys.normals[i].clone());
        rhs.push(sys.rhs[i].clone());
    }
    HSystem {
        dim: sys.dim,
        normals,
        rhs,
    }
}

/// Nonempty, bounded and with an interior point; the three failures are
/// reported as distinct errors in that order.
fn check_full_dimensional_polytope(sys: &HSystem) -> Result<()> {
    let d = sys.dim;
    if !sys.is_feasible() {
        return Err(Error::Empty);
    }
    for j in 0..d {
        for sign in [1i64, -1] {
            let mut obj = vec![Rational::zero(); d];
            obj[j] = Rational::from_integer(sign.into());
            if sys.maximize(&obj)?.status == LpStatus::Unbounded {
                return Err(Error::Unbounded);
            }
        }
    }
    // max t subject to <a_i, x> + t <= b_i, t <= 1.
    let mut rows: Vec<RatVector> = sys
        .normals
        .iter()
        .map(|a| {
            let mut r: RatVector = a.iter().map(rint).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    rows.push(cap.clone());
    let mut b = sys.rhs.clone();
    b.push(Rational::one());
    let res = lp::solve(&LpProblem::maximize(RatMatrix::new(d + 1, rows)?, b, cap))?;
    let t = res
        .value
        .ok_or_else(|| Error::Internal("interior-point lp has no optimum".into()))?;
    if !t.is_positive() {
        let found = sys.to_relative().map_or(0, |r| r.dim());
        return Err(Error::NotFullDimensional { expected: d, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, ivec, rat, rvec};

    fn ineq(a: &[i64], b: i64) -> (RatVector, Rational) {
        (a.iter().map(|&x| rat(x, 1)).collect(), rat(b, 1))
    }

    fn pts(v: &[&[i64]]) -> Vec<RatVector> {
        v.iter()
            .map(|p| p.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    fn example_polytope() -> HPolytope {
        HPolytope::from_inequalities(
            2,
            &[
                ineq(&[0, -1], 0),
                ineq(&[-1, 0], 0),
                ineq(&[1, -1], 4),
                ineq(&[0, 1], 3),
                ineq(&[1, 0], 5),
            ],
        )
        .unwrap()
    }

    fn unit_cube(d: usize) -> HPolytope {
        let mut raw = Vec::new();
        for j in 0..d {
            let mut e = vec![0i64; d];
            e[j] = 1;
            raw.push(ineq(&e, 1));
            e[j] = -1;
            raw.push(ineq(&e, 0));
        }
        HPolytope::from_inequalities(d, &raw).unwrap()
    }

    #[test]
    fn canonicalization_drops_redundant_row() {
        let p = HPolytope::from_inequalities(
            2,
            &[
                ineq(&[-1, 0], 0),
                ineq(&[0, -1], 0),
                ineq(&[3, 1], 3),
                ineq(&[1, 0], 1),
            ],
        )
        .unwrap();
        assert_eq!(
            p.normals(),
            &[ivec(&[-1, 0]), ivec(&[0, -1]), ivec(&[3, 1])]
        );
    }

    #[test]
    fn canonicalization_primitivizes() {
        let p = HPolytope::from_inequalities(
            2,
            &[ineq(&[-1, 0], 0), ineq(&[0, -1], 0), ineq(&[6, 2], 6)],
        )
        .unwrap();
        assert_eq!(p.normals()[2], ivec(&[3, 1]));
        assert_eq!(p.rhs()[2], rat(3, 1));
    }

    #[test]
    fn duplicated_facets_merge() {
        let mut raw = Vec::new();
        for (a, b) in [([1, 0], 1), ([-1, 0], 0), ([0, 1], 1), ([0, -1], 0)] {
            raw.push(ineq(&a, b));
            raw.push(ineq(&a.map(|x| 2 * x), 2 * b));
        }
        raw.push(ineq(&[1, 0], 3));
        let p = HPolytope::from_inequalities(2, &raw).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.rhs()[0], rat(1, 1));
    }

    #[test]
    fn invalid_sets_are_distinct_errors() {
        let empty = [ineq(&[1], -1), ineq(&[-1], 0)];
        assert_eq!(HPolytope::from_inequalities(1, &empty), Err(Error::Empty));
        let unbounded = [ineq(&[-1, 0], 0), ineq(&[0, -1], 0)];
        assert_eq!(
            HPolytope::from_inequalities(2, &unbounded),
            Err(Error::Unbounded)
        );
        let flat = [
            ineq(&[0, 1], 0),
            ineq(&[0, -1], 0),
            ineq(&[1, 0], 1),
            ineq(&[-1, 0], 0),
        ];
        assert_eq!(
            HPolytope::from_inequalities(2, &flat),
            Err(Error::NotFullDimensional {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn idempotent_canonicalization() {
        let p = example_polytope();
        let raw: Vec<_> = p
            .normals()
            .iter()
            .zip(p.rhs())
            .map(|(a, b)| (a.iter().map(rint).collect(), b.clone()))
            .collect();
        assert_eq!(HPolytope::from_inequalities(2, &raw).unwrap(), p);
    }

    #[test]
    fn example_vertices() {
        // Pairwise intersection of adjacent facets of the five inequalities.
        let v = example_polytope().vertices().vertices;
        assert_eq!(v, pts(&[&[0, 0], &[0, 3], &[4, 0], &[5, 1], &[5, 3]]));
        assert_eq!(unit_cube(3).vertices().vertices.len(), 8);
    }

    #[test]
    fn from_vertices_examples() {
        let p = HPolytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.normals().contains(&ivec(&[1, 1])));

        let p =
            HPolytope::from_vertices(&pts(&[&[0, 0], &[3, 0], &[0, 1], &[1, 0], &[3, 0]])).unwrap();
        let k = p
            .normals()
            .iter()
            .position(|a| *a == ivec(&[1, 3]))
            .unwrap();
        assert_eq!(p.rhs()[k], rat(3, 1));
        assert_eq!(p.vertices().vertices, pts(&[&[0, 0], &[0, 1], &[3, 0]]));

        assert!(matches!(
            HPolytope::from_vertices(&pts(&[&[0, 0], &[1, 1], &[2, 2]])),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn round_trip_through_vertices() {
        let p = example_polytope();
        let q = HPolytope::from_vertices(&p.vertices().vertices).unwrap();
        let mut a: Vec<_> = p
            .normals()
            .iter()
            .cloned()
            .zip(p.rhs().iter().cloned())
            .collect();
        let mut b: Vec<_> = q
            .normals()
            .iter()
            .cloned()
            .zip(q.rhs().iter().cloned())
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn lattice_predicate() {
        assert!(example_polytope().is_lattice_polytope());
        assert!(unit_cube(3).is_lattice_polytope());
        let half = HPolytope::from_inequalities(1, &[ineq(&[2], 1), ineq(&[-1], 0)]).unwrap();
        assert!(!half.is_lattice_polytope());
    }

    #[test]
    fn relative_interior_of_square() {
        assert_eq!(
            unit_cube(2).relative_interior_point(),
            rvec(&[(1, 2), (1, 2)])
        );
    }

    #[test]
    fn lattice_points_of_box_and_scaled_lattice() {
        let sq2 = unit_cube(2).dilate(&int(2)).unwrap();
        assert_eq!(sq2.lattice_points(Region::All, &int(1)).unwrap().len(), 9);
        assert_eq!(
            sq2.lattice_points(Region::RelativeInterior, &int(1))
                .unwrap(),
            vec![ivec(&[1, 1])]
        );
        assert_eq!(sq2.lattice_points(Region::All, &int(2)).unwrap().len(), 4);
    }

    #[test]
    fn thin_simplex_has_no_interior_points() {
        let p = HPolytope::from_vertices(&pts(&[&[0, 0], &[3, 0], &[0, 1]])).unwrap();
        assert!(p
            .lattice_points(Region::RelativeInterior, &int(1))
            .unwrap()
            .is_empty());
        assert_eq!(p.lattice_points(Region::All, &int(1)).unwrap().len(), 5);
    }

    #[test]
    fn transforms() {
        let sq = unit_cube(2);
        let same = sq
            .transform(&IntMatrix::identity(2), &ivec(&[0, 0]))
            .unwrap();
        assert_eq!(same, sq);

        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let img = sq.transform(&shear, &ivec(&[2, -1])).unwrap();
        assert_eq!(img.vertices().vertices.len(), 4);
        assert_eq!(img.lattice_points(Region::All, &int(1)).unwrap().len(), 4);
        assert!(img.is_lattice_polytope());
        for v in sq.vertices().vertices {
            let w = vec![&v[0] + &v[1] + rat(2, 1), &v[1] - rat(1, 1)];
            assert!(img.contains(&w));
        }

        let bad = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(
            sq.transform(&bad, &ivec(&[0, 0])),
            Err(Error::NotUnimodular(int(2)))
        );
    }
}
