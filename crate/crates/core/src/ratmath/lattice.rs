use num_traits::Zero;

use super::{hnf, primitive_direction, IntMatrix, IntVector, Rational};

/// Lattice basis of `{x in Z^n : m x = 0}`, in Hermite normal form.
///
/// Empty iff the kernel is trivial.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return IntMatrix::identity(n).into_rows();
    }
    // u * m^T = h; the rows of u opposite zero rows of h span ker m.
    let res = hnf(&m.transpose());
    let rank = res.rank();
    let raw: Vec<IntVector> = res.u.rows()[rank..].to_vec();
    reduce_basis(n, raw)
}

/// Canonical (HNF) basis of the lattice spanned by `rows`.
fn reduce_basis(n: usize, rows: Vec<IntVector>) -> Vec<IntVector> {
    if rows.is_empty() {
        return rows;
    }
    let m = IntMatrix::new(n, rows).expect("uniform width");
    let res = hnf(&m);
    res.h.rows()[..res.rank()].to_vec()
}

/// Lattice basis of `span(spanning) ∩ Z^m`.
pub fn saturate(dim: usize, spanning: &[Vec<Rational>]) -> Vec<IntVector> {
    let ints: Vec<IntVector> = spanning
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| primitive_direction(v).expect("nonzero").0)
        .collect();
    if ints.is_empty() {
        return Vec::new();
    }
    // Orthogonal complement first, then its kernel: the saturation.
    let complement = integer_kernel_basis(&IntMatrix::new(dim, ints).expect("uniform width"));
    if complement.is_empty() {
        return IntMatrix::identity(dim).into_rows();
    }
    integer_kernel_basis(&IntMatrix::new(dim, complement).expect("uniform width"))
}
