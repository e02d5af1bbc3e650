//! Subspaces of a coordinate space, stored by their unique reduced row echelon
//! basis so that equal subspaces compare equal structurally.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zero(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient)?;
        Ok(Self::from_row_space(&m))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<Scalar>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Scalar::ZERO; ambient];
                v[i] = Scalar::ONE;
                v
            })
            .collect();
        Self::span(ambient, &vectors).expect("coordinate vectors have ambient length")
    }

    pub fn from_row_space(m: &Matrix) -> Self {
        let red = m.rref();
        let rows = (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(rows, m.cols()).expect("rows of equal length");
        Subspace { ambient: m.cols(), basis, pivots: red.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical basis matrix (rows are basis vectors).
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dims(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Eliminates the pivot coordinates of `v`; the result is zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *o = &*o - &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::span(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // v lies in both iff it is killed by the annihilators of both.
        let mut eqs = self.basis_matrix().kernel().basis();
        eqs.extend(other.basis_matrix().kernel().basis());
        Ok(Matrix::from_rows(eqs, self.ambient)?.kernel())
    }

    /// Image of the subspace under a linear map (column-as-image matrix).
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::dims(format!(
                "map with {} columns applied to ambient dimension {}",
                map.cols(),
                self.ambient
            )));
        }
        let images = self.basis().iter().map(|v| map.apply(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(map.rows(), &images)
    }

    /// Standard basis indices complementary to the pivots; their span is a
    /// complement of the subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient {}, basis {:?})", self.ambient, self.basis)
    }
}
