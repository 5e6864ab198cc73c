use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{
    dot, dot_mixed, integer_kernel_basis, is_integral, primitive_direction, rank, rref,
    solve_linear, IntMatrix, IntVector, RatMatrix, RatVector, Rational,
};

/// An affine subspace given both by equations `<a_i, x> = beta_i` and by a
/// base point plus a linearly independent direction basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    ambient: usize,
    equations: Vec<(IntVector, Rational)>,
    base: RatVector,
    directions: Vec<RatVector>,
}

impl AffineSubspace {
    pub fn whole(ambient: usize) -> Self {
        Self {
            ambient,
            equations: Vec::new(),
            base: vec![Rational::zero(); ambient],
            directions: RatMatrix::identity(ambient).into_rows(),
        }
    }

    /// Affine hull of a nonempty point set. Equations are a primitive
    /// integral basis of the orthogonal complement.
    pub fn from_points(points: &[RatVector]) -> Result<Self> {
        let base = points.first().ok_or(Error::EmptyInput)?.clone();
        let ambient = base.len();
        let mut diffs: Vec<RatVector> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&base).map(|(x, y)| x - y).collect())
            .collect();
        let pivots = rref(&mut diffs, ambient);
        diffs.truncate(pivots.len());
        let directions = diffs;
        let equations = if directions.is_empty() {
            IntMatrix::identity(ambient).into_rows()
        } else {
            let ints: Vec<IntVector> = directions
                .iter()
                .map(|v| primitive_direction(v).expect("rref rows are nonzero").0)
                .collect();
            integer_kernel_basis(&IntMatrix::new(ambient, ints)?)
        }
        .into_iter()
        .map(|w| {
            let beta = dot_mixed(&w, &base);
            (w, beta)
        })
        .collect();
        Ok(Self {
            ambient,
            equations,
            base,
            directions,
        })
    }

    /// Solution set of `equations`, or `None` if inconsistent.
    pub fn from_equations(
        ambient: usize,
        equations: Vec<(IntVector, Rational)>,
    ) -> Result<Option<Self>> {
        let a = IntMatrix::new(ambient, equations.iter().map(|(a, _)| a.clone()).collect())?
            .to_rational();
        let b: RatVector = equations.iter().map(|(_, b)| b.clone()).collect();
        let Some(sol) = solve_linear(&a, &b)? else {
            return Ok(None);
        };
        Ok(Some(Self {
            ambient,
            equations,
            base: sol.point,
            directions: sol.nullspace,
        }))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn equations(&self) -> &[(IntVector, Rational)] {
        &self.equations
    }

    pub fn base(&self) -> &RatVector {
        &self.base
    }

    pub fn directions(&self) -> &[RatVector] {
        &self.directions
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot_mixed(a, x) == *b)
    }

    /// Whether `v` lies in the linear space parallel to `self`.
    pub fn contains_direction(&self, v: &[Rational]) -> bool {
        self.equations
            .iter()
            .all(|(a, _)| dot_mixed(a, v).is_zero())
    }

    /// Same point set, regardless of how either side is presented.
    pub fn same_set(&self, other: &AffineSubspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains(&other.base)
            && other.contains(&self.base)
            && other.directions.iter().all(|v| self.contains_direction(v))
            && self.directions.iter().all(|v| other.contains_direction(v))
    }
}

/// A polytope of any dimension: its affine hull, facet inequalities valid
/// relative to that hull, and its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativePolytope {
    hull: AffineSubspace,
    facets: Vec<(IntVector, Rational)>,
    vertices: Vec<RatVector>,
}

impl RelativePolytope {
    pub(crate) fn from_parts(
        hull: AffineSubspace,
        facets: Vec<(IntVector, Rational)>,
        vertices: Vec<RatVector>,
    ) -> Self {
        Self {
            hull,
            facets,
            vertices,
        }
    }

    /// Convex hull of a nonempty point set in any dimension.
    pub fn from_points(points: &[RatVector]) -> Result<Self> {
        let unique: Vec<RatVector> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let hull = AffineSubspace::from_points(&unique)?;
        let facets = hull_facets(&unique, &hull);
        let vertices = unique
            .into_iter()
            .filter(|p| is_vertex(p, &facets, &hull))
            .collect();
        Ok(Self {
            hull,
            facets,
            vertices,
        })
    }

    pub fn hull(&self) -> &AffineSubspace {
        &self.hull
    }

    pub fn facets(&self) -> &[(IntVector, Rational)] {
        &self.facets
    }

    /// Sorted vertex list.
    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.hull.ambient_dim()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.hull.contains(x) && self.facets.iter().all(|(a, b)| dot_mixed(a, x) <= *b)
    }

    pub fn in_relative_interior(&self, x: &[Rational]) -> bool {
        self.hull.contains(x) && self.facets.iter().all(|(a, b)| dot_mixed(a, x) < *b)
    }

    /// Vertex barycenter.
    pub fn relative_interior_point(&self) -> RatVector {
        let n = Rational::from_integer(BigInt::from(self.vertices.len()));
        (0..self.ambient_dim())
            .map(|j| self.vertices.iter().map(|v| v[j].clone()).sum::<Rational>() / &n)
            .collect()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| is_integral(v))
    }

    /// `factor * self`.
    pub fn scaled(&self, factor: &Rational) -> Result<RelativePolytope> {
        let pts: Vec<RatVector> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * factor).collect())
            .collect();
        RelativePolytope::from_points(&pts)
    }

    /// Points of `scale * Z^d` in the requested region, sorted.
    pub fn lattice_points(
        &self,
        region: crate::polytope::Region,
        scale: &BigInt,
    ) -> Result<Vec<IntVector>> {
        if !scale.is_positive() {
            return Err(Error::OutOfRange(format!("sublattice scale {scale}")));
        }
        Ok(super::lattice_points::enumerate(self, region, scale))
    }
}

fn is_vertex(p: &RatVector, facets: &[(IntVector, Rational)], hull: &AffineSubspace) -> bool {
    let k = hull.dim();
    if k == 0 {
        return true;
    }
    // Tight facet normals restricted to the hull's direction space.
    let rows: Vec<RatVector> = facets
        .iter()
        .filter(|(a, b)| dot_mixed(a, p) == *b)
        .map(|(a, _)| hull.directions().iter().map(|d| dot_mixed(a, d)).collect())
        .collect();
    !rows.is_empty() && rank(&RatMatrix::new(k, rows).expect("uniform width")) == k
}

/// Facets of `conv(points)` relative to its affine hull: every
/// `k`-subset spanning a hyperplane of the hull with all points on one
/// side. Normals are taken in the hull's direction space, scaled to
/// primitive integer vectors.
fn hull_facets(points: &[RatVector], hull: &AffineSubspace) -> Vec<(IntVector, Rational)> {
    let k = hull.dim();
    if k == 0 {
        return Vec::new();
    }
    let dirs = hull.directions();
    let mut out = BTreeSet::new();
    for subset in points.iter().combinations(k) {
        let q0 = subset[0];
        let gram: Vec<RatVector> = subset[1..]
            .iter()
            .map(|q| {
                let diff: RatVector = q.iter().zip(q0).map(|(x, y)| x - y).collect();
                dirs.iter().map(|d| dot(d, &diff)).collect()
            })
            .collect();
        let g = RatMatrix::new(k, gram).expect("uniform width");
        let sol = solve_linear(&g, &vec![Rational::zero(); k - 1])
            .expect("consistent dimensions")
            .expect("homogeneous systems are consistent");
        if sol.nullspace.len() != 1 {
            continue;
        }
        let s = &sol.nullspace[0];
        let w: RatVector = (0..hull.ambient_dim())
            .map(|j| dirs.iter().zip(s).map(|(d, c)| &d[j] * c).sum())
            .collect();
        let Ok((w, _)) = primitive_direction(&w) else {
            continue;
        };
        let beta = dot_mixed(&w, q0);
        let vals: Vec<Rational> = points.iter().map(|p| dot_mixed(&w, p)).collect();
        if vals.iter().all(|v| *v <= beta) {
            out.insert((w, beta));
        } else if vals.iter().all(|v| *v >= beta) {
            out.insert((w.iter().map(|x| -x).collect(), -beta));
        }
    }
    out.into_iter().collect()
}
