//! Normal fans and the cone invariants used by the adjunction pipeline:
//! heights, the canonicity threshold, the Q-Gorenstein index, smoothness.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpProblem, LpStatus};
use crate::polytope::HPolytope;
use crate::ratmath::{
    cramer, determinant, dot_int, extended_gcd, gcd_all, hnf, int_rank, integer_kernel_basis, rint,
    saturate, solve_many, to_int_vec, to_rat_vec, IntMatrix, IntVector, RatMatrix, RatVector,
    Rational,
};

/// Polyhedral cone spanned by primitive integral generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
}

/// `<a_i, u> = index` for every generator `a_i`, with `u` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCertificate {
    pub index: BigInt,
    pub u: IntVector,
}

/// Minimal height over nonzero lattice points of a cone, capped at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonicity {
    pub threshold: Rational,
    /// A lattice point attaining the threshold when it is below 1.
    pub witness: Option<IntVector>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if !gcd_all(g).is_one() {
                return Err(Error::NonPrimitive(i));
            }
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Dimension of the linear span.
    pub fn rank(&self) -> usize {
        int_rank(&self.generators)
    }

    fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.dim, self.generators.clone()).expect("validated widths")
    }

    pub fn is_simplicial(&self) -> bool {
        self.rank() == self.generators.len()
    }

    /// No nontrivial nonnegative combination of the generators vanishes.
    pub fn is_pointed(&self) -> bool {
        // lambda >= 0, sum lambda = 1, sum lambda_i a_i = 0 must be infeasible.
        let k = self.generators.len();
        if k == 0 || self.is_simplicial() {
            return true;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let eq = |row: RatVector, b: Rational, rows: &mut Vec<RatVector>, rhs: &mut RatVector| {
            rows.push(row.iter().map(|x| -x.clone()).collect());
            rhs.push(-b.clone());
            rows.push(row);
            rhs.push(b);
        };
        for j in 0..self.dim {
            let row = self.generators.iter().map(|g| rint(&g[j])).collect();
            eq(row, Rational::zero(), &mut rows, &mut rhs);
        }
        eq(
            vec![Rational::one(); k],
            Rational::one(),
            &mut rows,
            &mut rhs,
        );
        for i in 0..k {
            let mut row = vec![Rational::zero(); k];
            row[i] = -Rational::one();
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let a = RatMatrix::new(k, rows).expect("uniform width");
        !lp::is_feasible(&a, &rhs).expect("consistent dimensions")
    }

    /// Max of `sum lambda_i` over `y = sum lambda_i a_i`, `lambda >= 0`, or
    /// `None` when `y` is not in the cone.
    fn height_lp(&self, y: &[Rational]) -> Option<Rational> {
        let k = self.generators.len();
        let mut rows = Vec::with_capacity(2 * self.dim + k);
        let mut rhs = Vec::with_capacity(2 * self.dim + k);
        for (j, yj) in y.iter().enumerate() {
            let row: RatVector = self.generators.iter().map(|g| rint(&g[j])).collect();
            rows.push(row.iter().map(|x| -x.clone()).collect());
            rhs.push(-yj.clone());
            rows.push(row);
            rhs.push(yj.clone());
        }
        for i in 0..k {
            let mut row = vec![Rational::zero(); k];
            row[i] = -Rational::one();
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let p = LpProblem::maximize(
            RatMatrix::new(k, rows).expect("uniform width"),
            rhs,
            vec![Rational::one(); k],
        );
        let res = lp::solve(&p).expect("consistent dimensions");
        match res.status {
            LpStatus::Optimal => res.value,
            LpStatus::Infeasible => None,
            LpStatus::Unbounded => panic!("height is unbounded only on non-pointed cones"),
        }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        if self.generators.is_empty() {
            return y.iter().all(|x| x.is_zero());
        }
        self.height_lp(y).is_some()
    }

    /// Height of a point of the cone.
    pub fn height(&self, y: &[Rational]) -> Result<Rational> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: y.len(),
            });
        }
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        self.height_lp(y)
            .ok_or_else(|| Error::NotInCone(crate::ratmath::format_vec(y)))
    }

    /// `min(1, min height(y))` over nonzero lattice points `y` of the cone.
    ///
    /// The height is the minimum of the functionals `u` that are vertices
    /// of `{u in span : <a_i, u> >= 1}`; each is linear, equal to the
    /// coordinate sum, on the cone over its tight generators. Those cones
    /// cover the cone, and a lattice point of height below 1 sits in the
    /// half-open parallelepiped of a simplicial piece of one of them. The
    /// parallelepipeds are searched depth first, pruned by the best height
    /// found so far.
    pub fn canonicity_threshold(&self) -> Result<Canonicity> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        self.pointed_threshold()
    }

    fn pointed_threshold(&self) -> Result<Canonicity> {
        let s = self.rank();
        let mut search = ThresholdSearch {
            best: Rational::one(),
            witness: None,
        };
        for tight in self.height_pieces()? {
            let gens: Vec<&IntVector> = tight.iter().map(|&i| &self.generators[i]).collect();
            for subset in gens.iter().combinations(s) {
                let sub: Vec<IntVector> = subset.into_iter().map(|g| (*g).clone()).collect();
                if int_rank(&sub) == s {
                    search.parallelepiped(self.dim, &sub)?;
                }
            }
        }
        Ok(Canonicity {
            threshold: search.best,
            witness: search.witness,
        })
    }

    /// Generator index sets on which the height is linear: for every vertex
    /// `u` of `{u in span : <a_i, u> >= 1}`, the generators with
    /// `<a_i, u> = 1`.
    fn height_pieces(&self) -> Result<Vec<Vec<usize>>> {
        let s = self.rank();
        if s == self.generators.len() {
            return Ok(vec![(0..s).collect()]);
        }
        let mut pieces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for idx in (0..self.generators.len()).combinations(s) {
            let tau: Vec<&IntVector> = idx.iter().map(|&i| &self.generators[i]).collect();
            // u = sum alpha_j tau_j with Gram(tau) alpha = 1, kept as w / den.
            let gram: Vec<IntVector> = tau
                .iter()
                .map(|x| tau.iter().map(|y| dot_int(x, y)).collect())
                .collect();
            let Some((alpha, den)) = cramer(&gram, &vec![BigInt::one(); s]) else {
                continue;
            };
            let w: IntVector = (0..self.dim)
                .map(|j| tau.iter().zip(&alpha).map(|(t, a)| &t[j] * a).sum())
                .collect();
            let values: Vec<BigInt> = self.generators.iter().map(|g| dot_int(g, &w)).collect();
            if values.iter().all(|v| *v >= den) {
                pieces.insert((0..values.len()).filter(|&i| values[i] == den).collect());
            }
        }
        Ok(pieces.into_iter().collect())
    }

    /// Smallest `r > 0` with an integral `u` satisfying `<a_i, u> = r` for
    /// all generators; such a `u` is automatically primitive. `None` when
    /// `<a_i, u> = 1` has no rational solution.
    pub fn gorenstein_index(&self) -> Option<GorensteinCertificate> {
        // Integral kernel of [A | -1]: pairs (u, r) with A u = r 1.
        let rows: Vec<IntVector> = self
            .generators
            .iter()
            .map(|g| {
                let mut r = g.clone();
                r.push(-BigInt::one());
                r
            })
            .collect();
        let kernel =
            integer_kernel_basis(&IntMatrix::new(self.dim + 1, rows).expect("uniform width"));
        let rs: Vec<BigInt> = kernel.iter().map(|v| v[self.dim].clone()).collect();
        let (g, coeffs) = extended_gcd(&rs);
        if g.is_zero() {
            return None;
        }
        let mut u = vec![BigInt::zero(); self.dim];
        for (v, c) in kernel.iter().zip(&coeffs) {
            for (ui, vi) in u.iter_mut().zip(v) {
                *ui += c * vi;
            }
        }
        Some(GorensteinCertificate { index: g, u })
    }

    /// Exactly `dim` generators with determinant +-1.
    pub fn is_unimodular(&self) -> bool {
        self.generators.len() == self.dim && determinant(&self.generator_matrix()).abs().is_one()
    }
}

struct ThresholdSearch {
    best: Rational,
    witness: Option<IntVector>,
}

/// `best = num / den` in machine integers while the search runs.
struct Bound {
    num: i128,
    den: i128,
}

impl ThresholdSearch {
    /// Scans the half-open parallelepiped of the independent vectors `v`
    /// for lattice points with coordinate sum below the current best.
    ///
    /// With `e` the exponent of the finite group (span ∩ Z^d) / Z v, the
    /// scaled coordinates `e * mu` of those points form an integer lattice
    /// containing `e Z^s`. Its triangular Hermite basis fixes coordinate
    /// `k` modulo the `k`-th pivot once the earlier ones are chosen, so
    /// coordinates are enumerated in increasing order and cut off as soon
    /// as the partial sum reaches the bound.
    fn parallelepiped(&mut self, dim: usize, v: &[IntVector]) -> Result<()> {
        let s = v.len();
        // Coordinates of a basis of span ∩ Z^d in terms of v, as numerators
        // over a common denominator.
        let solved = if s == dim {
            let vt = IntMatrix::new(dim, v.to_vec())?.transpose().into_rows();
            solve_many(&vt, IntMatrix::identity(dim).rows())
        } else {
            let basis = saturate(dim, &v.iter().map(|x| to_rat_vec(x)).collect::<Vec<_>>());
            let gram: Vec<IntVector> = v
                .iter()
                .map(|x| v.iter().map(|y| dot_int(x, y)).collect())
                .collect();
            let rhs: Vec<IntVector> = basis
                .iter()
                .map(|b| v.iter().map(|x| dot_int(x, b)).collect())
                .collect();
            solve_many(&gram, &rhs)
        };
        let (nums, den) =
            solved.ok_or_else(|| Error::Internal("dependent parallelepiped edges".into()))?;
        let g = nums.iter().flatten().fold(den.clone(), |g, x| g.gcd(x));
        let e = &den / &g;
        if e.is_one() {
            return Ok(());
        }
        let mut rows: Vec<IntVector> = nums
            .into_iter()
            .map(|mu| mu.into_iter().map(|x| x / &g).collect())
            .collect();
        for i in 0..s {
            let mut r = vec![BigInt::zero(); s];
            r[i] = e.clone();
            rows.push(r);
        }
        let h = hnf(&IntMatrix::new(s, rows)?).h;
        let small = |x: &BigInt| {
            i64::try_from(x)
                .map_err(|_| Error::OutOfRange(format!("cone index {e} is too large to enumerate")))
        };
        let tri: Vec<Vec<i128>> = (0..s)
            .map(|i| {
                h.row(i)
                    .iter()
                    .map(|x| small(x).map(i128::from))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let e_small = i128::from(small(&e)?);

        let mut bound = Bound {
            num: i128::from(small(self.best.numer())?),
            den: i128::from(small(self.best.denom())?),
        };
        let mut x = vec![0i128; s];
        let mut found: Option<Vec<i128>> = None;
        descend(
            &tri,
            e_small,
            0,
            &vec![0i128; s],
            0,
            &mut x,
            &mut bound,
            &mut found,
        );
        if let Some(xs) = found {
            self.best = Rational::new(BigInt::from(bound.num), BigInt::from(bound.den));
            let y: RatVector = (0..dim)
                .map(|j| {
                    xs.iter()
                        .zip(v)
                        .map(|(&xi, g)| Rational::new(BigInt::from(xi), e.clone()) * rint(&g[j]))
                        .sum()
                })
                .collect();
            self.witness = Some(to_int_vec(&y).expect("parallelepiped points are lattice points"));
        }
        Ok(())
    }
}

/// `offset` is the contribution of the chosen earlier basis rows to all
/// coordinates; `sum` is the sum of the coordinates fixed so far.
#[allow(clippy::too_many_arguments)]
fn descend(
    tri: &[Vec<i128>],
    e: i128,
    k: usize,
    offset: &[i128],
    sum: i128,
    x: &mut Vec<i128>,
    bound: &mut Bound,
    found: &mut Option<Vec<i128>>,
) {
    let s = tri.len();
    if k == s {
        // sum / e < num / den, strictly.
        if sum > 0 && sum * bound.den < bound.num * e {
            bound.num = sum;
            bound.den = e;
            *found = Some(x.clone());
        }
        return;
    }
    let pivot = tri[k][k];
    let mut xk = offset[k].rem_euclid(pivot);
    while xk < e && (sum + xk) * bound.den < bound.num * e {
        let c = (xk - offset[k]) / pivot;
        let next: Vec<i128> = offset.iter().zip(&tri[k]).map(|(o, t)| o + c * t).collect();
        x[k] = xk;
        descend(tri, e, k + 1, &next, sum + xk, x, bound, found);
        xk += pivot;
    }
}

/// Vertex-indexed normal fan: rays are the facet normals, one maximal cone
/// per vertex generated by the normals of the facets through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    dim: usize,
    rays: Vec<IntVector>,
    vertices: Vec<RatVector>,
    maximal_cones: Vec<Vec<usize>>,
}

/// Outcome of an alpha-canonicity check. On failure the witness is the
/// offending cone (ray indices), a lattice point and its height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCanonicity {
    pub holds: bool,
    pub witness: Option<(Vec<usize>, IntVector, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCanonicity {
    pub threshold: Rational,
    pub witness: Option<(Vec<usize>, IntVector)>,
}

/// Per-cone indices behind the fan's Q-Gorenstein index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinSummary {
    pub index: Option<BigInt>,
    pub per_cone: Vec<(Vec<usize>, Option<BigInt>)>,
    /// `(face, maximal cone)` pairs where the face index does not divide
    /// the index of the maximal cone containing it.
    pub non_dividing: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn normal_fan(p: &HPolytope) -> NormalFan {
    let vertices = p.vertices().vertices;
    let maximal_cones = vertices
        .iter()
        .map(|v| {
            (0..p.len())
                .filter(|&i| p.system().slack(i, v).is_zero())
                .collect()
        })
        .collect();
    NormalFan {
        dim: p.dim(),
        rays: p.normals().to_vec(),
        vertices,
        maximal_cones,
    }
}

impl NormalFan {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Vertex `i` of the polytope owns maximal cone `i`.
    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal_cones
    }

    pub fn cone(&self, rays: &[usize]) -> Cone {
        Cone {
            dim: self.dim,
            generators: rays.iter().map(|&i| self.rays[i].clone()).collect(),
        }
    }

    /// Ray sets of every nonzero cone. Faces of the polytope correspond to
    /// intersections of vertex tight sets, so the cones are the closure of
    /// the maximal ray sets under nonempty intersection. Sorted by size,
    /// then lexicographically.
    pub fn all_cone_indices(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = self.maximal_cones.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for m in &self.maximal_cones {
                    let meet: Vec<usize> = f.iter().copied().filter(|i| m.contains(i)).collect();
                    if !meet.is_empty() && all.insert(meet.clone()) {
                        next.push(meet);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn all_cones(&self) -> Vec<Cone> {
        self.all_cone_indices()
            .iter()
            .map(|c| self.cone(c))
            .collect()
    }

    /// Index of a maximal cone containing `w`, if any.
    pub fn locate(&self, w: &[Rational]) -> Option<usize> {
        (0..self.maximal_cones.len()).find(|&i| self.cone(&self.maximal_cones[i]).contains(w))
    }

    /// Minimum canonicity threshold over the cones of the fan. A lattice
    /// point of a face has the same height in the face as in any cone
    /// containing that face, so the maximal cones suffice.
    pub fn canonicity_threshold(&self) -> Result<FanCanonicity> {
        let mut best = FanCanonicity {
            threshold: Rational::one(),
            witness: None,
        };
        for m in &self.maximal_cones {
            // Cones of a full-dimensional polytope's fan are pointed.
            let c = self.cone(m).pointed_threshold()?;
            if c.threshold < best.threshold {
                best = FanCanonicity {
                    threshold: c.threshold,
                    witness: c.witness.map(|y| (m.clone(), y)),
                };
            }
        }
        Ok(best)
    }

    pub fn is_alpha_canonical(&self, alpha: &Rational) -> Result<AlphaCanonicity> {
        if !alpha.is_positive() || *alpha > Rational::one() {
            return Err(Error::OutOfRange(format!("alpha = {alpha}")));
        }
        let t = self.canonicity_threshold()?;
        if *alpha <= t.threshold {
            return Ok(AlphaCanonicity {
                holds: true,
                witness: None,
            });
        }
        let (cone, y) = t.witness.expect("threshold below 1 comes with a witness");
        Ok(AlphaCanonicity {
            holds: false,
            witness: Some((cone, y, t.threshold)),
        })
    }

    pub fn gorenstein_summary(&self) -> GorensteinSummary {
        let cones = self.all_cone_indices();
        let per_cone: Vec<(Vec<usize>, Option<BigInt>)> = cones
            .iter()
            .map(|c| (c.clone(), self.cone(c).gorenstein_index().map(|g| g.index)))
            .collect();
        let index = per_cone
            .iter()
            .try_fold(BigInt::one(), |acc, (_, r)| r.as_ref().map(|r| acc.lcm(r)));
        let lookup: BTreeMap<&Vec<usize>, &Option<BigInt>> =
            per_cone.iter().map(|(c, r)| (c, r)).collect();
        let mut non_dividing = Vec::new();
        for (face, r) in &per_cone {
            let Some(r) = r else { continue };
            for m in &self.maximal_cones {
                if m == face || !face.iter().all(|i| m.contains(i)) {
                    continue;
                }
                if let Some(Some(rm)) = lookup.get(m) {
                    if !(rm % r).is_zero() {
                        non_dividing.push((face.clone(), m.clone()));
                    }
                }
            }
        }
        GorensteinSummary {
            index,
            per_cone,
            non_dividing,
        }
    }

    /// Least common multiple of the indices of all cones, or `None` if some
    /// cone is not Q-Gorenstein.
    pub fn gorenstein_index(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for c in self.all_cone_indices() {
            acc = acc.lcm(&self.cone(&c).gorenstein_index()?.index);
        }
        Some(acc)
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal_cones
            .iter()
            .all(|m| self.cone(m).is_unimodular())
    }
}

/// Index of a vertex maximizing `<w, x>`; `w` lies in its normal cone.
pub fn maximizing_vertex(fan: &NormalFan, w: &[Rational]) -> usize {
    let vals: Vec<Rational> = fan
        .vertices
        .iter()
        .map(|v| crate::ratmath::dot(w, v))
        .collect();
    let best = vals.iter().max().expect("polytopes have vertices");
    vals.iter()
        .position(|v| v == best)
        .expect("max is attained")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::polytope::{Region, RelativePolytope};
    use crate::ratmath::{dot_mixed, int, ivec, rat, rvec};

    fn cone(gens: &[&[i64]]) -> Cone {
        let d = gens[0].len();
        Cone::new(d, gens.iter().map(|g| ivec(g)).collect()).unwrap()
    }

    /// Independent route: enumerate lattice points of conv(0, generators)
    /// with the polytope module and take LP heights.
    fn threshold_by_q1_enumeration(c: &Cone) -> Rational {
        let mut pts: Vec<RatVector> = c.generators().iter().map(|g| to_rat_vec(g)).collect();
        pts.push(vec![Rational::zero(); c.dim()]);
        let q1 = RelativePolytope::from_points(&pts).unwrap();
        let mut best = Rational::one();
        for y in q1.lattice_points(Region::All, &int(1)).unwrap() {
            if y.iter().all(|x| x.is_zero()) {
                continue;
            }
            let h = c.height(&to_rat_vec(&y)).unwrap();
            if h < best {
                best = h;
            }
        }
        best
    }

    #[test]
    fn heights() {
        let c = cone(&[&[2, -1], &[2, 1]]);
        assert_eq!(c.height(&rvec(&[(1, 1), (0, 1)])).unwrap(), rat(1, 2));
        assert_eq!(c.height(&rvec(&[(4, 1), (0, 1)])).unwrap(), rat(2, 1));
        assert_eq!(c.height(&rvec(&[(2, 1), (1, 1)])).unwrap(), rat(1, 1));
        assert!(matches!(
            c.height(&rvec(&[(0, 1), (1, 1)])),
            Err(Error::NotInCone(_))
        ));
        let not_pointed = cone(&[&[1, 0], &[-1, 0]]);
        assert_eq!(
            not_pointed.height(&rvec(&[(1, 1), (0, 1)])),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn non_simplicial_height_takes_the_best_representation() {
        // (1,1) = e1 + e2 or the generator (1,1) itself.
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c.height(&rvec(&[(1, 1), (1, 1)])).unwrap(), rat(2, 1));
    }

    #[test]
    fn canonicity_examples() {
        assert_eq!(
            cone(&[&[1, 0], &[0, 1]])
                .canonicity_threshold()
                .unwrap()
                .threshold,
            rat(1, 1)
        );
        let c = cone(&[&[2, -1], &[2, 1]]).canonicity_threshold().unwrap();
        assert_eq!(c.threshold, rat(1, 2));
        assert_eq!(c.witness, Some(ivec(&[1, 0])));
        assert_eq!(
            cone(&[&[3, 5, 7]])
                .canonicity_threshold()
                .unwrap()
                .threshold,
            rat(1, 1)
        );
        assert_eq!(
            cone(&[&[1, 0], &[-1, 0]]).canonicity_threshold(),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn canonicity_matches_q1_enumeration() {
        let cones = [
            cone(&[&[2, -1], &[2, 1]]),
            cone(&[&[-1, 0], &[1, 3]]),
            cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]),
            cone(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]),
            cone(&[&[1, 2, 0], &[3, 1, 1], &[0, 1, 5], &[1, 1, 1]]),
            cone(&[&[5, 2], &[1, 3]]),
            cone(&[&[1, 1, 0], &[1, -1, 0]]),
        ];
        for c in &cones {
            assert_eq!(
                c.canonicity_threshold().unwrap().threshold,
                threshold_by_q1_enumeration(c),
                "{c:?}"
            );
        }
    }

    #[test]
    fn gorenstein_examples() {
        let g = cone(&[&[2, -1], &[2, 1]]).gorenstein_index().unwrap();
        assert_eq!((g.index, g.u), (int(2), ivec(&[1, 0])));
        let g = cone(&[&[1, 0], &[1, 2]]).gorenstein_index().unwrap();
        assert_eq!((g.index, g.u), (int(1), ivec(&[1, 0])));
        let g = cone(&[&[3, 5]]).gorenstein_index().unwrap();
        assert_eq!(g.index, int(1));
        assert_eq!(dot_mixed(&ivec(&[3, 5]), &to_rat_vec(&g.u)), rat(1, 1));
        // Four coplanar rays of a non-Gorenstein cone: no u with equal products.
        assert!(cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 3]])
            .gorenstein_index()
            .is_none());
    }

    #[test]
    fn square_fan() {
        let fan = normal_fan(&generators::cube(2).unwrap());
        assert_eq!(fan.maximal_cones().len(), 4);
        assert_eq!(fan.all_cone_indices().len(), 8);
        assert!(fan.is_smooth());
        assert_eq!(fan.gorenstein_index(), Some(int(1)));
        assert!(fan.is_alpha_canonical(&rat(1, 1)).unwrap().holds);
    }

    #[test]
    fn cube_and_simplex_fans() {
        let cube3 = normal_fan(&generators::cube(3).unwrap());
        let sizes = cube3.all_cone_indices().iter().map(|c| c.len()).counts();
        assert_eq!((sizes[&1], sizes[&2], sizes[&3]), (6, 12, 8));
        let simplex = normal_fan(&generators::simplex_scaled(2, 1).unwrap());
        assert_eq!(simplex.all_cone_indices().len(), 6);
        assert!(simplex.is_smooth());
    }

    #[test]
    fn thin_simplex_fan() {
        let p = generators::simplex_scaled(2, 3).unwrap();
        let fan = normal_fan(&p);
        assert_eq!(fan.maximal_cones().len(), 3);
        let k = fan
            .vertices()
            .iter()
            .position(|v| *v == rvec(&[(0, 1), (1, 1)]))
            .unwrap();
        let mut gens = fan.cone(&fan.maximal_cones()[k]).generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![ivec(&[-1, 0]), ivec(&[1, 3])]);
        assert!(!fan.is_smooth());
        assert_eq!(fan.gorenstein_index(), Some(int(3)));
        // Oracle: solve <a_i, u> = r per cone directly; vertex (0,1) needs u = (-3, 2).
        let cert = fan
            .cone(&fan.maximal_cones()[k])
            .gorenstein_index()
            .unwrap();
        assert_eq!(cert.u, ivec(&[-3, 2]));
    }

    #[test]
    fn alpha_canonicity_with_witness() {
        // Triangle whose vertex cone at the origin is cone{(2,-1),(2,1)} up to sign.
        let p = HPolytope::from_vertices(&[
            rvec(&[(0, 1), (0, 1)]),
            rvec(&[(-1, 1), (2, 1)]),
            rvec(&[(-1, 1), (-2, 1)]),
        ])
        .unwrap();
        let fan = normal_fan(&p);
        let check = fan.is_alpha_canonical(&rat(1, 1)).unwrap();
        assert!(!check.holds);
        let (_, y, h) = check.witness.unwrap();
        assert_eq!(h, rat(1, 2));
        assert_eq!(y, ivec(&[1, 0]));
        assert!(fan.is_alpha_canonical(&rat(1, 2)).unwrap().holds);
        assert!(fan.is_alpha_canonical(&rat(0, 1)).is_err());
        assert!(fan.is_alpha_canonical(&rat(3, 2)).is_err());
    }

    #[test]
    fn fan_is_complete_on_sampled_directions() {
        let p = generators::pentagon();
        let fan = normal_fan(&p);
        let mut rng = generators::SplitMix::new(7);
        for _ in 0..200 {
            let w: RatVector = (0..2)
                .map(|_| rat(rng.below(41) as i64 - 20, 1 + rng.below(5) as i64))
                .collect();
            let i = maximizing_vertex(&fan, &w);
            assert!(fan.cone(&fan.maximal_cones()[i]).contains(&w));
        }
    }
}
