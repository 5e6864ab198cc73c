//! Adjoint polytopes, the mountain LP, Q-codegree, core, core normals and
//! the instance-wise lemma checks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::NormalFan;
use crate::lp::{self, LpProblem, LpStatus};
use crate::polytope::{AffineSubspace, HPolytope, HSystem, Region, RelativePolytope};
use crate::ratmath::{
    dot_mixed, format_ivec, format_vec, is_integral, rat, rint, to_rat_vec, IntVector, RatMatrix,
    RatVector, Rational,
};

/// `{x : <a_i, x> <= b_i - c}` with the normals of `p`, kept as given:
/// rows that become redundant stay in the system.
pub fn adjoint(p: &HPolytope, c: &Rational) -> Result<HSystem> {
    if c.is_negative() {
        return Err(Error::OutOfRange(format!("adjoint shift {c} is negative")));
    }
    Ok(p.system().shifted(c))
}

/// `{(x, t) : <a_i, x> + t <= b_i, t >= 0}` in one dimension more.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mountain {
    system: HSystem,
}

impl Mountain {
    /// Built from any inequality system; [`qcodegree`] always passes a
    /// canonical one.
    pub fn new(base: &HSystem) -> Self {
        let d = base.dim();
        let mut normals: Vec<IntVector> = base
            .normals()
            .iter()
            .map(|a| {
                let mut r = a.clone();
                r.push(BigInt::one());
                r
            })
            .collect();
        let mut rhs = base.rhs().to_vec();
        let mut floor = vec![BigInt::zero(); d + 1];
        floor[d] = -BigInt::one();
        normals.push(floor);
        rhs.push(Rational::zero());
        Self {
            system: HSystem::new(d + 1, normals, rhs).expect("widths match by construction"),
        }
    }

    pub fn system(&self) -> &HSystem {
        &self.system
    }

    /// Largest height `t` reached by the mountain, or `None` when the base
    /// is empty.
    pub fn apex(&self) -> Result<Option<Rational>> {
        Ok(self.apex_point()?.map(|(t, _)| t))
    }

    /// Apex height together with a base point reaching it.
    pub fn apex_point(&self) -> Result<Option<(Rational, RatVector)>> {
        let d = self.system.dim() - 1;
        let mut obj = vec![Rational::zero(); d + 1];
        obj[d] = Rational::one();
        let res = self.system.maximize(&obj)?;
        match res.status {
            LpStatus::Optimal => {
                let mut x = res.point.expect("optimal LP has a point");
                x.truncate(d);
                Ok(Some((res.value.expect("optimal LP has a value"), x)))
            }
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }

    /// The horizontal slice at height `t`, as a system in the base space.
    pub fn slice(&self, t: &Rational) -> HSystem {
        let d = self.system.dim() - 1;
        let n = self.system.len() - 1;
        let normals = self.system.normals()[..n]
            .iter()
            .map(|a| a[..d].to_vec())
            .collect();
        let rhs = self.system.rhs()[..n].iter().map(|b| b - t).collect();
        HSystem::new(d, normals, rhs).expect("widths match by construction")
    }
}

/// Largest shift keeping a system nonempty, computed on the rows exactly
/// as given. On a canonical system this is `1 / qcd`; on a redundant or
/// non-primitive one it shows why canonicalization matters.
pub fn raw_c_star(sys: &HSystem) -> Result<Rational> {
    Mountain::new(sys).apex()?.ok_or(Error::Empty)
}

/// `(c_star, qcd)`. The apex point is cross-checked against the second
/// characterization: it has slack at least `c_star` in every row, so every
/// adjoint below `c_star` contains a ball around it.
pub fn qcodegree(p: &HPolytope) -> Result<(Rational, Rational)> {
    let sys = p.system();
    let (c_star, x) = Mountain::new(sys).apex_point()?.ok_or(Error::Empty)?;
    if !c_star.is_positive() {
        return Err(Error::Internal(format!(
            "c_star = {c_star} is not positive"
        )));
    }
    if (0..sys.len()).any(|i| sys.slack(i, &x) < c_star) {
        return Err(Error::Internal(format!(
            "apex point {} is not in the core",
            format_vec(&x)
        )));
    }
    let qcd = c_star.recip();
    Ok((c_star, qcd))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub c_star: Rational,
    pub qcd: Rational,
    /// `P^(c_star)`: affine hull, facets and vertices.
    pub core: RelativePolytope,
    /// Indices into the normals of the analyzed polytope.
    pub core_normal_indices: Vec<usize>,
    pub core_normals: Vec<IntVector>,
    /// Solution set of `<a_i, x> = b_i - c_star` over the core normals.
    pub caff: AffineSubspace,
    /// Hull of the core normals in the dual space.
    pub acore: RelativePolytope,
}

impl AdjunctionReport {
    pub fn core_dim(&self) -> usize {
        self.core.dim()
    }
}

pub fn analyze(p: &HPolytope) -> Result<AdjunctionReport> {
    let (c_star, qcd) = qcodegree(p)?;
    let core_sys = Mountain::new(p.system()).slice(&c_star);
    let core = core_sys
        .to_relative()
        .ok_or_else(|| Error::Internal("core is empty at c_star".into()))?;
    if core.dim() >= p.dim() {
        return Err(Error::Internal("core is full-dimensional".into()));
    }

    // The core is the hull of its vertices, so a row is tight on all of it
    // iff it is tight at every vertex.
    let core_normal_indices: Vec<usize> = (0..p.len())
        .filter(|&i| {
            core.vertices()
                .iter()
                .all(|v| core_sys.slack(i, v).is_zero())
        })
        .collect();
    let core_normals: Vec<IntVector> = core_normal_indices
        .iter()
        .map(|&i| p.normals()[i].clone())
        .collect();

    let equations = core_normal_indices
        .iter()
        .map(|&i| (p.normals()[i].clone(), core_sys.rhs()[i].clone()))
        .collect();
    let caff = AffineSubspace::from_equations(p.dim(), equations)?
        .ok_or_else(|| Error::Internal("core-normal equations are inconsistent".into()))?;
    if !caff.same_set(core.hull()) {
        return Err(Error::Internal(
            "core normals do not cut out the affine hull of the core".into(),
        ));
    }

    let acore_points: Vec<RatVector> = core_normals.iter().map(|a| to_rat_vec(a)).collect();
    let acore = RelativePolytope::from_points(&acore_points)?;
    Ok(AdjunctionReport {
        c_star,
        qcd,
        core,
        core_normal_indices,
        core_normals,
        caff,
        acore,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl LemmaOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, LemmaOutcome::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            LemmaOutcome::Pass => "pass",
            LemmaOutcome::Fail { .. } => "fail",
            LemmaOutcome::Skipped { .. } => "skipped",
        }
    }
}

/// The four instance-wise checks:
/// origin in the relative interior of the core-normal hull; the hull's
/// vertices are exactly the core normals; the only lattice point in the
/// relative interior of `alpha` times the hull is the origin; the core
/// normals send the affine hull of the core to integral values after the
/// shift by `c_star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub origin_interior: LemmaOutcome,
    pub vertices_are_normals: LemmaOutcome,
    pub interior_lattice_points: LemmaOutcome,
    pub integral_shift: LemmaOutcome,
    /// The `alpha` used by the lattice-point check.
    pub alpha: Option<Rational>,
}

impl LemmaReport {
    pub fn outcomes(&self) -> [(&'static str, &LemmaOutcome); 4] {
        [
            ("origin_interior", &self.origin_interior),
            ("vertices_are_normals", &self.vertices_are_normals),
            ("interior_lattice_points", &self.interior_lattice_points),
            ("integral_shift", &self.integral_shift),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes().iter().all(|(_, o)| !o.is_failure())
    }
}

/// Runs the lemma checks. Without `alpha` the lattice-point check uses the
/// fan's own canonicity threshold; with `alpha` it runs only if the fan is
/// `alpha`-canonical and is skipped otherwise.
pub fn verify_lemmas(
    report: &AdjunctionReport,
    fan: &NormalFan,
    p: &HPolytope,
    alpha: Option<&Rational>,
) -> Result<LemmaReport> {
    let (alpha_used, canonical) = match alpha {
        Some(a) => (a.clone(), fan.is_alpha_canonical(a)?.holds),
        None => (fan.canonicity_threshold()?.threshold, true),
    };
    verify_lemmas_at(report, p, &alpha_used, canonical)
}

/// The lemma checks when it is already known whether the fan is
/// `alpha`-canonical, e.g. from a precomputed threshold.
pub fn verify_lemmas_at(
    report: &AdjunctionReport,
    p: &HPolytope,
    alpha: &Rational,
    canonical: bool,
) -> Result<LemmaReport> {
    let origin_interior = check_origin_interior(&report.core_normals)?;
    let vertices_are_normals = check_vertices(report);
    let interior_lattice_points = if canonical {
        check_interior_lattice_points(&report.acore, alpha)?
    } else {
        LemmaOutcome::Skipped {
            reason: format!("fan is not {alpha}-canonical"),
        }
    };
    let integral_shift = check_integral_shift(report, p);
    Ok(LemmaReport {
        origin_interior,
        vertices_are_normals,
        interior_lattice_points,
        integral_shift,
        alpha: canonical.then(|| alpha.clone()),
    })
}

/// Max `t` with `sum l_i a_i = 0`, `sum l_i = 1`, `l_i >= t`; the origin is
/// in the relative interior of the hull iff `t > 0`.
fn check_origin_interior(normals: &[IntVector]) -> Result<LemmaOutcome> {
    let m = normals.len();
    if m == 0 {
        return Ok(LemmaOutcome::Fail {
            witness: "no core normals".into(),
        });
    }
    let d = normals[0].len();
    let n = m + 1;
    let mut rows: Vec<RatVector> = Vec::new();
    let mut rhs: RatVector = Vec::new();
    let mut equal = |row: RatVector, b: Rational| {
        rows.push(row.iter().map(|x| -x.clone()).collect());
        rhs.push(-b.clone());
        rows.push(row);
        rhs.push(b);
    };
    for j in 0..d {
        let mut row: RatVector = normals.iter().map(|a| rint(&a[j])).collect();
        row.push(Rational::zero());
        equal(row, Rational::zero());
    }
    let mut ones = vec![Rational::one(); m];
    ones.push(Rational::zero());
    equal(ones, Rational::one());
    for i in 0..m {
        let mut row = vec![Rational::zero(); n];
        row[i] = -Rational::one();
        row[m] = Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut obj = vec![Rational::zero(); n];
    obj[m] = Rational::one();
    let res = lp::solve(&LpProblem::maximize(RatMatrix::new(n, rows)?, rhs, obj))?;
    Ok(match (res.status, res.value) {
        (LpStatus::Optimal, Some(t)) if t.is_positive() => LemmaOutcome::Pass,
        (LpStatus::Optimal, Some(t)) => LemmaOutcome::Fail {
            witness: format!("best uniform weight {t}"),
        },
        _ => LemmaOutcome::Fail {
            witness: "origin is not in the hull of the core normals".into(),
        },
    })
}

fn check_vertices(report: &AdjunctionReport) -> LemmaOutcome {
    let vertices: BTreeSet<RatVector> = report.acore.vertices().iter().cloned().collect();
    let normals: BTreeSet<RatVector> = report.core_normals.iter().map(|a| to_rat_vec(a)).collect();
    if vertices == normals {
        return LemmaOutcome::Pass;
    }
    let extra: Vec<String> = vertices
        .symmetric_difference(&normals)
        .map(|v| format_vec(v))
        .collect();
    LemmaOutcome::Fail {
        witness: format!("mismatch at {}", extra.join(", ")),
    }
}

fn check_interior_lattice_points(
    acore: &RelativePolytope,
    alpha: &Rational,
) -> Result<LemmaOutcome> {
    let scaled = acore.scaled(alpha)?;
    let points = scaled.lattice_points(Region::RelativeInterior, &BigInt::one())?;
    let origin = vec![BigInt::zero(); acore.ambient_dim()];
    if points == [origin.clone()] {
        return Ok(LemmaOutcome::Pass);
    }
    let witness = match points.iter().find(|y| **y != origin) {
        Some(y) => format!("lattice point {}", format_ivec(y)),
        None => "origin is not a relative interior point".into(),
    };
    Ok(LemmaOutcome::Fail { witness })
}

/// `A y + c_star 1` at a point `y` of the affine hull of the core.
fn check_integral_shift(report: &AdjunctionReport, p: &HPolytope) -> LemmaOutcome {
    let y = report.caff.base();
    let values: RatVector = report
        .core_normal_indices
        .iter()
        .map(|&i| dot_mixed(&p.normals()[i], y) + &report.c_star)
        .collect();
    if is_integral(&values) {
        LemmaOutcome::Pass
    } else {
        LemmaOutcome::Fail {
            witness: format!(
                "A y + c 1 = {} at y = {}",
                format_vec(&values),
                format_vec(y)
            ),
        }
    }
}

/// Whether the fan cones spanned by core normals alone cover the linear
/// span of the core normals, probed at `samples` integer combinations.
/// Returns a direction of the span outside all such cones, if found.
pub fn core_subfan_gap(
    report: &AdjunctionReport,
    fan: &NormalFan,
    samples: &[Vec<i64>],
) -> Option<RatVector> {
    let idx: BTreeSet<usize> = report.core_normal_indices.iter().copied().collect();
    let cones: Vec<_> = fan
        .all_cone_indices()
        .into_iter()
        .filter(|c| c.iter().all(|i| idx.contains(i)))
        .map(|c| fan.cone(&c))
        .collect();
    for coeffs in samples {
        let d = fan.dim();
        let w: RatVector = (0..d)
            .map(|j| {
                report
                    .core_normals
                    .iter()
                    .zip(coeffs)
                    .map(|(a, &k)| rint(&a[j]) * rat(k, 1))
                    .sum()
            })
            .collect();
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !cones.iter().any(|c| c.contains(&w)) {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::generators::{self, from_int_rows};
    use crate::ratmath::{int, ivec, rvec};

    fn raw_system(rows: &[(Vec<i64>, i64)]) -> HSystem {
        HSystem::new(
            2,
            rows.iter().map(|(a, _)| ivec(a)).collect(),
            rows.iter().map(|(_, b)| rat(*b, 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pentagon_pipeline() {
        let p = generators::pentagon();
        let r = analyze(&p).unwrap();
        assert_eq!((r.c_star.clone(), r.qcd.clone()), (rat(3, 2), rat(2, 3)));
        assert_eq!(
            r.core.vertices(),
            &[rvec(&[(3, 2), (3, 2)]), rvec(&[(7, 2), (3, 2)])]
        );
        assert_eq!(r.core_dim(), 1);
        let mut normals = r.core_normals.clone();
        normals.sort();
        assert_eq!(normals, vec![ivec(&[0, -1]), ivec(&[0, 1])]);
        assert!(r.caff.contains(&rvec(&[(0, 1), (3, 2)])));
        assert!(r.caff.contains(&rvec(&[(100, 1), (3, 2)])));
        assert!(!r.caff.contains(&rvec(&[(0, 1), (1, 1)])));
        let fan = normal_fan(&p);
        let lemmas = verify_lemmas(&r, &fan, &p, None).unwrap();
        assert!(lemmas.all_pass(), "{lemmas:?}");
        assert_eq!(lemmas.integral_shift, LemmaOutcome::Pass);
    }

    #[test]
    fn adjoint_examples() {
        let p = generators::pentagon();
        let core = adjoint(&p, &rat(3, 2)).unwrap().to_relative().unwrap();
        assert_eq!(
            core.vertices(),
            &[rvec(&[(3, 2), (3, 2)]), rvec(&[(7, 2), (3, 2)])]
        );
        assert_eq!(adjoint(&p, &rat(0, 1)).unwrap(), *p.system());
        assert!(adjoint(&p, &rat(-1, 1)).is_err());
        let t = generators::steep_triangle();
        assert!(adjoint(&t, &rat(3, 5)).unwrap().is_feasible());
        assert!(!adjoint(&t, &rat(2, 3)).unwrap().is_feasible());
    }

    #[test]
    fn mountain_shape() {
        let p = generators::pentagon();
        let m = Mountain::new(p.system());
        assert_eq!(m.system().len(), 6);
        assert_eq!(m.system().dim(), 3);
        assert_eq!(m.apex().unwrap(), Some(rat(3, 2)));
        assert_eq!(m.slice(&rat(1, 1)), adjoint(&p, &rat(1, 1)).unwrap());
        let sq = generators::cube(2).unwrap();
        assert_eq!(Mountain::new(sq.system()).apex().unwrap(), Some(rat(1, 2)));
    }

    #[test]
    fn steep_triangle_variants() {
        let t = generators::steep_triangle();
        assert_eq!(qcodegree(&t).unwrap(), (rat(3, 5), rat(5, 3)));
        let redundant = vec![
            (vec![-1, 0], 0),
            (vec![0, -1], 0),
            (vec![3, 1], 3),
            (vec![1, 0], 1),
        ];
        assert_eq!(raw_c_star(&raw_system(&redundant)).unwrap(), rat(1, 2));
        assert_eq!(
            qcodegree(&from_int_rows(2, &redundant).unwrap()).unwrap().0,
            rat(3, 5)
        );
        let scaled = vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![6, 2], 6)];
        assert_eq!(raw_c_star(&raw_system(&scaled)).unwrap(), rat(2, 3));
        assert_eq!(
            qcodegree(&from_int_rows(2, &scaled).unwrap()).unwrap().0,
            rat(3, 5)
        );
        let r = analyze(&t).unwrap();
        assert_eq!(r.core_normals.len(), 3);
        assert_eq!(r.core_dim(), 0);
    }

    #[test]
    fn simplex_codegrees() {
        // c (d + 1) <= 1 from the tight system x_i >= c, sum x_i <= 1 - c.
        for d in 2..=4 {
            let (c, q) = qcodegree(&generators::simplex_scaled(d, 1).unwrap()).unwrap();
            assert_eq!(c, rat(1, d as i64 + 1));
            assert_eq!(q, rat(d as i64 + 1, 1));
        }
        assert_eq!(
            qcodegree(&generators::simplex_scaled(2, 4).unwrap())
                .unwrap()
                .1,
            rat(3, 2)
        );
    }

    #[test]
    fn square_and_simplex_cores() {
        let sq = analyze(&generators::cube(2).unwrap()).unwrap();
        assert_eq!(sq.core.vertices(), &[rvec(&[(1, 2), (1, 2)])]);
        assert_eq!(sq.core_normals.len(), 4);
        assert_eq!(sq.acore.vertices().len(), 4);
        let s = analyze(&generators::simplex_scaled(2, 1).unwrap()).unwrap();
        assert_eq!(s.core.vertices(), &[rvec(&[(1, 3), (1, 3)])]);
        let mut v = s.acore.vertices().to_vec();
        v.sort();
        assert_eq!(
            v,
            vec![
                rvec(&[(-1, 1), (0, 1)]),
                rvec(&[(0, 1), (-1, 1)]),
                rvec(&[(1, 1), (1, 1)])
            ]
        );
    }

    #[test]
    fn lemma_alpha_modes() {
        let p = generators::simplex_scaled(2, 3).unwrap();
        let r = analyze(&p).unwrap();
        let fan = normal_fan(&p);
        let threshold = fan.canonicity_threshold().unwrap().threshold;
        assert!(threshold < rat(1, 1));
        let skipped = verify_lemmas(&r, &fan, &p, Some(&rat(1, 1))).unwrap();
        assert!(matches!(
            skipped.interior_lattice_points,
            LemmaOutcome::Skipped { .. }
        ));
        assert!(skipped.all_pass());
        let ran = verify_lemmas(&r, &fan, &p, Some(&threshold)).unwrap();
        assert_eq!(ran.interior_lattice_points, LemmaOutcome::Pass);
        assert_eq!(ran.alpha, Some(threshold));
    }

    #[test]
    fn scaling_law() {
        let p = generators::pentagon();
        let base = analyze(&p).unwrap();
        for k in 1..=3 {
            let q = analyze(&p.dilate(&int(k)).unwrap()).unwrap();
            assert_eq!(q.qcd, &base.qcd / rat(k, 1));
            let scaled: Vec<RatVector> = base
                .core
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x * rat(k, 1)).collect())
                .collect();
            assert_eq!(q.core.vertices(), scaled.as_slice());
        }
    }

    #[test]
    fn monotone_family() {
        let p = generators::pentagon();
        let cs = [rat(0, 1), rat(1, 2), rat(1, 1), rat(5, 4), rat(3, 2)];
        for w in cs.windows(2) {
            let small = adjoint(&p, &w[1]).unwrap();
            let big = adjoint(&p, &w[0]).unwrap();
            for v in small.vertices() {
                assert!(big.contains(&v));
            }
        }
    }

    #[test]
    fn subfan_probe_on_square() {
        let p = generators::cube(2).unwrap();
        let r = analyze(&p).unwrap();
        let fan = normal_fan(&p);
        let samples = vec![vec![1, 2, 3, 4], vec![5, 0, 1, 0], vec![0, 0, 0, 1]];
        assert_eq!(core_subfan_gap(&r, &fan, &samples), None);
    }
}
