use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Region, RelativePolytope};
use crate::ratmath::{dot_mixed, rint, rref, IntVector, RatVector};

/// Points of `scale * Z^d` in `poly` (or its relative interior).
///
/// Scans the integer bounding box of the vertices, but only over the
/// coordinates left free by the affine hull's equations; the remaining
/// coordinates are solved for and must come out integral.
pub(crate) fn enumerate(poly: &RelativePolytope, region: Region, scale: &BigInt) -> Vec<IntVector> {
    let verts = poly.vertices();
    if verts.is_empty() {
        return Vec::new();
    }
    let d = poly.ambient_dim();
    let s = rint(scale);

    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for j in 0..d {
        let min = verts.iter().map(|v| &v[j]).min().expect("nonempty");
        let max = verts.iter().map(|v| &v[j]).max().expect("nonempty");
        let l = (min / &s).ceil().to_integer();
        let h = (max / &s).floor().to_integer();
        if l > h {
            return Vec::new();
        }
        lo.push(l);
        hi.push(h);
    }

    // Equations in z, where x = scale * z.
    let mut eqs: Vec<RatVector> = poly
        .hull()
        .equations()
        .iter()
        .map(|(a, b)| {
            let mut row: RatVector = a.iter().map(rint).collect();
            row.push(b / &s);
            row
        })
        .collect();
    let pivots = rref(&mut eqs, d + 1);
    if pivots.last() == Some(&d) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();

    let mut out = Vec::new();
    let mut z: Vec<BigInt> = lo.clone();
    loop {
        if let Some(point) = complete(&z, &eqs, &pivots, &lo, &hi, d) {
            let x: RatVector = point.iter().map(|c| rint(&(c * scale))).collect();
            let inside = poly.facets().iter().all(|(a, b)| {
                let v = dot_mixed(a, &x);
                match region {
                    Region::All => v <= *b,
                    Region::RelativeInterior => v < *b,
                }
            });
            if inside {
                out.push(point.iter().map(|c| c * scale).collect());
            }
        }
        // Odometer over the free coordinates.
        let mut advanced = false;
        for &j in free.iter().rev() {
            if z[j] < hi[j] {
                z[j] += BigInt::one();
                advanced = true;
                break;
            }
            z[j] = lo[j].clone();
        }
        if !advanced {
            break;
        }
    }
    out.sort();
    out
}

/// Fills the pivot coordinates from the free ones; `None` if any is
/// fractional or outside the box.
fn complete(
    z: &[BigInt],
    eqs: &[RatVector],
    pivots: &[usize],
    lo: &[BigInt],
    hi: &[BigInt],
    d: usize,
) -> Option<IntVector> {
    let mut point = z.to_vec();
    for (row, &p) in eqs.iter().zip(pivots) {
        let mut v = row[d].clone();
        for j in 0..d {
            if j != p && !row[j].is_zero() && !pivots.contains(&j) {
                v -= &row[j] * rint(&z[j]);
            }
        }
        if !v.is_integer() {
            return None;
        }
        let v = v.to_integer();
        if v < lo[p] || v > hi[p] {
            return None;
        }
        point[p] = v;
    }
    Some(point)
}
