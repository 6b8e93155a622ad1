use num_traits::Zero;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// A subspace of `field^ambient`, stored as a canonical reduced echelon basis.
///
/// Two spanning sets of the same subspace always produce identical values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `rows`.
    pub fn span(rows: &Matrix) -> Self {
        let rref = rows.rref();
        let r = rref.pivots.len();
        Subspace {
            ambient: rows.cols(),
            basis: rref.matrix.submatrix(0..r, 0..rows.cols()),
            pivots: rref.pivots,
        }
    }

    pub fn span_vectors(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        Subspace::span(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the component along the pivot columns, leaving a canonical
    /// representative of `v` modulo the subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[j] = f.sub(&out[j], &f.mul(&c, x));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Subspace::span(&Matrix::vstack(
            self.field(),
            self.ambient,
            &[&self.basis, &other.basis],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_for_different_spanning_sets() {
        let q = Field::Rationals;
        let a = Subspace::span(&Matrix::from_ints(q, &[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::span(&Matrix::from_ints(q, &[&[1, 2, 1], &[1, 0, -1], &[2, 2, 0]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[q.from_int(1), q.from_int(0), q.from_int(-1)]));
        assert!(!a.contains(&[q.from_int(1), q.from_int(0), q.from_int(0)]));
    }

    #[test]
    fn coordinates_reconstruct_vector() {
        let q = Field::Rationals;
        let s = Subspace::span(&Matrix::from_ints(q, &[&[1, 2, 3], &[0, 1, 4]]));
        let v = vec![q.from_int(2), q.from_int(7), q.from_int(18)];
        let c = s.coordinates(&v).unwrap();
        let back = s.basis().apply(&c);
        assert_eq!(back, v);
    }
}
