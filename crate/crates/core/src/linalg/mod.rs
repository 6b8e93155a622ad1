//! Exact dense linear algebra over `Q` and `F_p`.
//!
//! Everything downstream (Hom spaces, tensor quotients, resolutions) reduces to
//! the three primitives here: rank/kernel/image, affine solving and quotients
//! with a chosen section. Vectors are rows and maps act on the right, `v -> v * M`.

mod field;
mod matrix;
mod subspace;

pub use field::{format_scalar, parse_rational, Field, Scalar};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Rank, left kernel `{x : x * m = 0}` and row space of a matrix.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn rank_kernel_image(m: &Matrix) -> KernelImage {
    let image = Subspace::span(m);
    let kernel = left_kernel(m);
    KernelImage {
        rank: image.dim(),
        kernel,
        image,
    }
}

/// Basis of `{x : x * m = 0}` in canonical form.
pub fn left_kernel(m: &Matrix) -> Subspace {
    let f = m.field();
    let t = m.transpose();
    let rref = t.rref();
    let n = m.rows();
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (i, &p) in rref.pivots.iter().enumerate() {
            v[p] = f.neg(rref.matrix.get(i, free));
        }
        vectors.push(v);
    }
    Subspace::span_vectors(f, n, vectors)
}

/// Solutions of `x * a = b`: one particular solution plus the kernel of `a`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub kernel: Subspace,
}

/// Solves `x * a = b` for `x`, or returns `None` when the system is inconsistent.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Result<Option<AffineSolution>> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension(format!(
            "solve_right: a is {}x{}, b is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let f = a.field();
    let n = a.rows();
    // a^T y = b^T, column by column
    let at = a.transpose();
    let bt = b.transpose();
    let mut aug = Matrix::zeros(f, a.cols(), n + b.rows());
    aug.set_block(0, 0, &at);
    aug.set_block(0, n, &bt);
    let rref = aug.rref_limited(n);
    let r = rref.pivots.len();
    for i in r..aug.rows() {
        if (n..aug.cols()).any(|j| !num_traits::Zero::is_zero(rref.matrix.get(i, j))) {
            return Ok(None);
        }
    }
    let mut x = Matrix::zeros(f, b.rows(), n);
    for k in 0..b.rows() {
        for (i, &p) in rref.pivots.iter().enumerate() {
            x.set(k, p, rref.matrix.get(i, n + k).clone());
        }
    }
    Ok(Some(AffineSolution {
        particular: x,
        kernel: left_kernel(a),
    }))
}

/// A quotient `V / W` with `projection: V -> V/W` and a section `V/W -> V`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
    pub dim: usize,
}

/// Quotient of `field^ambient` by `w`. The section picks the unit vectors at the
/// non-pivot columns of `w`'s echelon basis.
pub fn quotient_with_section(w: &Subspace) -> Quotient {
    let f = w.field();
    let n = w.ambient_dim();
    let mut is_pivot = vec![false; n];
    for &p in w.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let q = free.len();
    let mut section = Matrix::zeros(f, q, n);
    for (k, &j) in free.iter().enumerate() {
        section.set(k, j, f.one());
    }
    let mut projection = Matrix::zeros(f, n, q);
    for i in 0..n {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        let red = w.reduce(&e);
        for (k, &j) in free.iter().enumerate() {
            projection.set(i, k, red[j].clone());
        }
    }
    Quotient {
        projection,
        section,
        dim: q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_rank_and_kernel() {
        let r = rank_kernel_image(&Matrix::identity(q(), 2));
        assert_eq!((r.rank, r.kernel.dim(), r.image.dim()), (2, 0, 2));
    }

    #[test]
    fn zero_matrix_kernel() {
        let r = rank_kernel_image(&Matrix::zeros(q(), 2, 2));
        assert_eq!((r.rank, r.kernel.dim()), (0, 2));
    }

    #[test]
    fn rank_one_kernel_is_canonical() {
        // x * [[1,2],[2,4]] = 0  <=>  x1 + 2 x2 = 0; canonical basis (1, -1/2) spans (2, -1)
        let m = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        let r = rank_kernel_image(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.dim(), 1);
        assert!(r.kernel.contains(&[q().from_int(2), q().from_int(-1)]));
        let expected = Subspace::span(&Matrix::from_ints(q(), &[&[2, -1]]));
        assert_eq!(r.kernel, expected);
    }

    #[test]
    fn solve_identity() {
        let b = Matrix::from_ints(q(), &[&[3, -1], &[0, 5]]);
        let sol = solve_right(&Matrix::identity(q(), 2), &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert_eq!(sol.kernel.dim(), 0);
    }

    #[test]
    fn solve_zero_inconsistent() {
        let b = Matrix::from_ints(q(), &[&[1, 0]]);
        assert!(solve_right(&Matrix::zeros(q(), 2, 2), &b).unwrap().is_none());
    }

    #[test]
    fn solve_affine_family() {
        // x * [[1],[1]] = [[1]]: x1 + x2 = 1, a one-dimensional affine family
        let a = Matrix::from_ints(q(), &[&[1], &[1]]);
        let b = Matrix::from_ints(q(), &[&[1]]);
        let sol = solve_right(&a, &b).unwrap().unwrap();
        assert_eq!(sol.particular.mul(&a), b);
        assert_eq!(sol.kernel.dim(), 1);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::zeros(q(), 1, 3);
        assert!(solve_right(&a, &b).is_err());
    }

    #[test]
    fn quotient_trivial_cases() {
        let z = quotient_with_section(&Subspace::zero(q(), 3));
        assert_eq!(z.dim, 3);
        assert!(z.projection.is_identity() && z.section.is_identity());
        let all = quotient_with_section(&Subspace::full(q(), 3));
        assert_eq!(all.dim, 0);
    }

    #[test]
    fn quotient_by_line() {
        let w = Subspace::span(&Matrix::from_ints(q(), &[&[1, 1, 0]]));
        let quo = quotient_with_section(&w);
        assert_eq!(quo.dim, 2);
        assert!(quo.section.mul(&quo.projection).is_identity());
        let k = left_kernel(&quo.projection);
        assert_eq!(k, w);
    }
}
