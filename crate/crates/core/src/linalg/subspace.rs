use rand::Rng;

use super::matrix::{vec_add, vec_scale, Matrix};
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// A linear subspace of `F_p^d`, stored as the rows of a reduced row-echelon
/// basis. The echelon form is unique, so derived equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self::from_matrix_rows(&Matrix::identity(field, ambient_dim))
    }

    /// Span of the rows of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        Subspace {
            ambient_dim: m.cols(),
            basis: m.echelon().reduced,
        }
    }

    pub fn span(field: PrimeField, ambient_dim: usize, vectors: &[Vec<FieldElement>]) -> Self {
        Self::from_matrix_rows(&Matrix::from_rows(field, ambient_dim, vectors))
    }

    /// Span of the first `k` columns of `m`.
    pub fn column_span(m: &Matrix, k: usize) -> Self {
        let vecs: Vec<_> = (0..k).map(|c| m.col(c)).collect();
        Self::span(m.field(), m.rows(), &vecs)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElement>> {
        self.basis.row_vecs()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let with = self
            .basis
            .vstack(&Matrix::from_rows(self.field(), self.ambient_dim, &[v.to_vec()]));
        with.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Self::from_matrix_rows(&self.basis.vstack(&other.basis)))
    }

    /// Vectors killed by every basis vector under the dot product.
    pub fn annihilator(&self) -> Subspace {
        let f = self.field();
        if self.dim() == 0 {
            return Self::full(f, self.ambient_dim);
        }
        Self::span(f, self.ambient_dim, &self.basis.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let f = self.field();
        let constraints = self.annihilator().basis.vstack(&other.annihilator().basis);
        if constraints.rows() == 0 {
            return Ok(Self::full(f, self.ambient_dim));
        }
        Ok(Self::span(f, self.ambient_dim, &constraints.kernel()))
    }

    /// `{x : map * x ∈ self}`; `map` goes from `F^map.cols()` into this ambient space.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "map into F^{} vs subspace of F^{}",
                map.rows(),
                self.ambient_dim
            )));
        }
        let f = self.field();
        let ann = self.annihilator();
        if ann.dim() == 0 {
            return Ok(Self::full(f, map.cols()));
        }
        Ok(Self::span(f, map.cols(), &ann.basis.mul(map).kernel()))
    }

    /// Image of the subspace under `map`.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("image: map domain mismatch".into()));
        }
        let imgs: Vec<_> = self.basis_vectors().iter().map(|b| map.mul_vec(b)).collect();
        Ok(Self::span(self.field(), map.rows(), &imgs))
    }

    /// Orthogonal complement for the bilinear form `<a, b> = a^T gram b`.
    pub fn perp(&self, gram: &Matrix) -> Result<Subspace> {
        if gram.rows() != self.ambient_dim || gram.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("gram matrix size".into()));
        }
        if gram.rank() != self.ambient_dim {
            return Err(Error::Singular);
        }
        let f = self.field();
        if self.dim() == 0 {
            return Ok(Self::full(f, self.ambient_dim));
        }
        Ok(Self::span(f, self.ambient_dim, &self.basis.mul(gram).kernel()))
    }

    /// Uniformly random vector of the subspace.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldElement> {
        let f = self.field();
        let p = f.modulus();
        let mut v = vec![0; self.ambient_dim];
        for b in self.basis_vectors() {
            let c = rng.gen_range(0..p);
            v = vec_add(f, &v, &vec_scale(f, &b, c));
        }
        v
    }

    /// Deterministic sample for the given seed.
    pub fn random_point(&self, seed: u64) -> Vec<FieldElement> {
        self.sample(&mut crate::rng::seeded(seed))
    }
}
