use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector};

/// Row-style Hermite normal form `h = u * m` with `u` unimodular.
///
/// Pivots are positive, each pivot lies strictly right of the one above,
/// entries above a pivot are reduced into `[0, pivot)`, and zero rows sit
/// at the bottom.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `(row, column)` of every pivot, top to bottom.
    pub pivots: Vec<(usize, usize)>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sub_multiple(rows: &mut [IntVector], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn negate_row(row: &mut IntVector) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

pub fn hnf(m: &IntMatrix) -> Hnf {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut h: Vec<IntVector> = m.rows().to_vec();
    let mut u: Vec<IntVector> = IntMatrix::identity(nrows).into_rows();
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Euclid on the column below row r until one nonzero entry is left.
        loop {
            let best = (r..nrows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..nrows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            sub_multiple(&mut h, i, r, &q);
            sub_multiple(&mut u, i, r, &q);
        }
        pivots.push((r, c));
        r += 1;
    }

    Hnf {
        h: IntMatrix::new(ncols, h).expect("row width preserved"),
        u: IntMatrix::new(nrows, u).expect("square transform"),
        pivots,
    }
}
