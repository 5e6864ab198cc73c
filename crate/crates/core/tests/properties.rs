mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use polyadj_core::adjunction::{self, verify_lemmas};
use polyadj_core::fan::{normal_fan, Cone};
use polyadj_core::format::{parse_polytope, write_polytope};
use polyadj_core::generators::{self, random_translation, random_unimodular, SplitMix};
use polyadj_core::ratmath::{int, ivec, rat, rint, Rational};
use polyadj_core::spectrum::{spectrum_superset, CoreNormalConfig};

fn small_polytope() -> impl Strategy<Value = polyadj_core::HPolytope> {
    (2usize..=3, 0u64..5000).prop_map(|(d, seed)| {
        generators::random(d, d + 2, seed, common::suite_box(d)).expect("valid parameters")
    })
}

fn cone_2d() -> impl Strategy<Value = Cone> {
    // Two primitive generators spanning a strictly convex cone.
    (1i64..6, -5i64..6, 1i64..6, -5i64..6)
        .prop_filter("independent", |(a, b, c, e)| a * e - b * (-c) != 0)
        .prop_map(|(a, b, c, e)| {
            let prim = |x: i64, y: i64| {
                let g = num_integer::gcd(x, y).abs();
                ivec(&[x / g, y / g])
            };
            Cone::new(2, vec![prim(a, b), prim(-c, e)]).expect("valid cone")
        })
        .prop_filter("pointed", |c| c.is_pointed())
}

fn lattice_point_in(cone: &Cone, s: i64, t: i64) -> Vec<Rational> {
    let g = cone.generators();
    (0..2)
        .map(|j| rint(&(&g[0][j] * int(s) + &g[1][j] * int(t))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn height_is_homogeneous_and_superadditive(
        cone in cone_2d(), s in 0i64..4, t in 0i64..4, u in 0i64..4, v in 0i64..4, k in 1i64..5,
    ) {
        let y = lattice_point_in(&cone, s, t);
        let z = lattice_point_in(&cone, u, v);
        let hy = cone.height(&y).unwrap();
        let scaled: Vec<Rational> = y.iter().map(|x| x * rat(k, 1)).collect();
        prop_assert_eq!(cone.height(&scaled).unwrap(), hy.clone() * rat(k, 1));
        let sum: Vec<Rational> = y.iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert!(cone.height(&sum).unwrap() >= hy + cone.height(&z).unwrap());
    }

    #[test]
    fn index_bounds_threshold(p in small_polytope()) {
        let fan = normal_fan(&p);
        let threshold = fan.canonicity_threshold().unwrap().threshold;
        // Non-simplicial cones need not be Q-Gorenstein.
        if let Some(r) = fan.gorenstein_index() {
            let inverse = Rational::new(BigInt::one(), r.clone());
            prop_assert!(threshold >= inverse);
            prop_assert!(fan.is_alpha_canonical(&inverse).unwrap().holds);
            if fan.is_smooth() {
                prop_assert_eq!(r, BigInt::one());
                prop_assert_eq!(threshold, Rational::one());
            }
        }
    }

    #[test]
    fn write_then_parse_is_identity(p in small_polytope()) {
        let text = write_polytope(&p, &["roundtrip".to_string()]);
        prop_assert_eq!(parse_polytope(&text).unwrap().to_polytope().unwrap(), p);
    }

    #[test]
    fn canonical_form_is_idempotent(p in small_polytope()) {
        let rows: Vec<_> = p
            .normals()
            .iter()
            .zip(p.rhs())
            .map(|(a, b)| (a.iter().map(rint).collect(), b.clone()))
            .collect();
        prop_assert_eq!(polyadj_core::HPolytope::from_inequalities(p.dim(), &rows).unwrap(), p.clone());
        let again = polyadj_core::HPolytope::from_vertices(&p.vertices().vertices).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn invariants_survive_lattice_maps(p in small_polytope(), seed in any::<u64>()) {
        let mut rng = SplitMix::new(seed);
        let u = random_unimodular(p.dim(), &mut rng);
        let t = random_translation(p.dim(), 3, &mut rng);
        let q = p.transform(&u, &t).unwrap();
        let (a, b) = (adjunction::analyze(&p).unwrap(), adjunction::analyze(&q).unwrap());
        prop_assert_eq!(&a.c_star, &b.c_star);
        prop_assert_eq!(a.core_dim(), b.core_dim());
        prop_assert_eq!(a.core_normals.len(), b.core_normals.len());
        let (fp, fq) = (normal_fan(&p), normal_fan(&q));
        prop_assert_eq!(fp.gorenstein_index(), fq.gorenstein_index());
        prop_assert_eq!(
            fp.canonicity_threshold().unwrap().threshold,
            fq.canonicity_threshold().unwrap().threshold
        );
    }

    #[test]
    fn dilation_divides_codegree(p in small_polytope(), k in 2i64..4) {
        let q = p.dilate(&int(k)).unwrap();
        let (a, b) = (adjunction::analyze(&p).unwrap(), adjunction::analyze(&q).unwrap());
        prop_assert_eq!(b.qcd * rat(k, 1), a.qcd);
    }

    #[test]
    fn adjoint_is_nonempty_exactly_up_to_apex(p in small_polytope()) {
        let report = adjunction::analyze(&p).unwrap();
        let c = &report.c_star;
        prop_assert!(p.system().shifted(c).is_feasible());
        let beyond = c + Rational::new(BigInt::one(), BigInt::from(1000));
        prop_assert!(!p.system().shifted(&beyond).is_feasible());
        let half = c / rat(2, 1);
        prop_assert!(adjunction::adjoint(&p, &half).unwrap().to_relative().unwrap().dim() == p.dim());
    }

    #[test]
    fn codegree_is_in_candidate_set(p in small_polytope()) {
        let report = adjunction::analyze(&p).unwrap();
        let cfg = CoreNormalConfig::new(p.dim(), report.core_normals.clone()).unwrap();
        let epsilon = report.qcd.clone().min(rat(1, 2));
        let candidates = spectrum_superset(&cfg, &epsilon).unwrap();
        prop_assert!(candidates.contains(&report.qcd));
        prop_assert!(candidates.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(candidates.iter().all(|c| *c >= epsilon));
    }

    #[test]
    fn lemma_checks_pass(p in small_polytope()) {
        let report = adjunction::analyze(&p).unwrap();
        let fan = normal_fan(&p);
        let lemmas = verify_lemmas(&report, &fan, &p, None).unwrap();
        prop_assert!(lemmas.all_pass(), "{:?}", lemmas);
    }
}

#[test]
fn smooth_families_have_unit_index() {
    for d in 1..=4 {
        let fan = normal_fan(&generators::cube(d).unwrap());
        assert!(fan.is_smooth());
        assert_eq!(fan.gorenstein_index(), Some(BigInt::one()));
        let fan = normal_fan(&generators::simplex_scaled(d, 1).unwrap());
        assert!(fan.is_smooth());
        assert_eq!(
            fan.canonicity_threshold().unwrap().threshold,
            Rational::one()
        );
    }
}

#[test]
fn zero_lies_at_height_zero() {
    let cone = Cone::new(2, vec![ivec(&[1, 0]), ivec(&[1, 3])]).unwrap();
    assert!(cone
        .height(&[Rational::zero(), Rational::zero()])
        .unwrap()
        .is_zero());
}
