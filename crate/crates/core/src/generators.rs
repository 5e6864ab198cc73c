//! Named polytope families and seeded random instances.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::polytope::HPolytope;
use crate::ratmath::{int, rat, rint, IntMatrix, RatVector, Rational};

/// Deterministic generator used by every seeded routine (SplitMix64).
#[derive(Clone, Debug)]
pub struct SplitMix(SplitMix64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish value in `0..n` by reduction modulo `n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        self.next_u64() % n
    }

    /// Value in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// `conv(0, a e_1, e_2, ..., e_d)`.
pub fn simplex_scaled(d: usize, a: u64) -> Result<HPolytope> {
    if d == 0 || a == 0 {
        return Err(Error::OutOfRange(format!(
            "simplex-scaled needs d >= 1 and a >= 1, got d = {d}, a = {a}"
        )));
    }
    let mut points = vec![vec![Rational::zero(); d]];
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = if i == 0 {
            rint(&BigInt::from(a))
        } else {
            Rational::one()
        };
        points.push(e);
    }
    HPolytope::from_vertices(&points)
}

/// `[0, 1]^d`.
pub fn cube(d: usize) -> Result<HPolytope> {
    if d == 0 {
        return Err(Error::OutOfRange("cube needs d >= 1".into()));
    }
    let mut raw = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = -Rational::one();
        raw.push((e.clone(), Rational::zero()));
        e[i] = Rational::one();
        raw.push((e, Rational::one()));
    }
    HPolytope::from_inequalities(d, &raw)
}

/// The pentagon `-y <= 0, -x <= 0, x - y <= 4, y <= 3, x <= 5`.
pub fn pentagon() -> HPolytope {
    let rows: [([i64; 2], i64); 5] = [
        ([0, -1], 0),
        ([-1, 0], 0),
        ([1, -1], 4),
        ([0, 1], 3),
        ([1, 0], 5),
    ];
    from_int_rows(2, &rows.map(|(a, b)| (a.to_vec(), b))).expect("fixed valid pentagon")
}

/// `x >= 0, y >= 0, 3x + y <= 3`.
pub fn steep_triangle() -> HPolytope {
    from_int_rows(2, &[(vec![-1, 0], 0), (vec![0, -1], 0), (vec![3, 1], 3)])
        .expect("fixed valid triangle")
}

/// Raw integer rows `<a, x> <= b`, canonicalized.
pub fn from_int_rows(dim: usize, rows: &[(Vec<i64>, i64)]) -> Result<HPolytope> {
    let raw: Vec<(RatVector, Rational)> = rows
        .iter()
        .map(|(a, b)| (a.iter().map(|&x| rat(x, 1)).collect(), rat(*b, 1)))
        .collect();
    HPolytope::from_inequalities(dim, &raw)
}

/// Hull of `n` points drawn from `[-half_width, half_width]^d`, redrawn
/// from the same stream until the hull is full-dimensional.
pub fn random(d: usize, n: usize, seed: u64, half_width: i64) -> Result<HPolytope> {
    if d == 0 || n <= d || half_width < 1 {
        return Err(Error::OutOfRange(format!(
            "random needs d >= 1, n > d and a positive box, got d = {d}, n = {n}, box = {half_width}"
        )));
    }
    let mut rng = SplitMix::new(seed);
    loop {
        let points: Vec<RatVector> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| rat(rng.range(-half_width, half_width), 1))
                    .collect()
            })
            .collect();
        match HPolytope::from_vertices(&points) {
            Ok(p) => return Ok(p),
            Err(Error::NotFullDimensional { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Product of a few elementary shears with a random signed permutation.
pub fn random_unimodular(d: usize, rng: &mut SplitMix) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    if d >= 2 {
        for _ in 0..d + 1 {
            let i = rng.below(d as u64) as usize;
            let mut j = rng.below(d as u64 - 1) as usize;
            if j >= i {
                j += 1;
            }
            let f = int(rng.range(-2, 2));
            let mut rows = m.into_rows();
            let add: Vec<BigInt> = rows[j].iter().map(|x| x * &f).collect();
            for (x, y) in rows[i].iter_mut().zip(add) {
                *x += y;
            }
            m = IntMatrix::new(d, rows).expect("square");
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    for k in (1..d).rev() {
        order.swap(k, rng.below(k as u64 + 1) as usize);
    }
    let rows = m.into_rows();
    let permuted = order
        .iter()
        .map(|&k| {
            let sign = if rng.below(2) == 0 { int(1) } else { int(-1) };
            rows[k].iter().map(|x| x * &sign).collect()
        })
        .collect();
    IntMatrix::new(d, permuted).expect("square")
}

/// Integer vector with entries in `-bound..=bound`.
pub fn random_translation(d: usize, bound: i64, rng: &mut SplitMix) -> Vec<BigInt> {
    (0..d).map(|_| int(rng.range(-bound, bound))).collect()
}
