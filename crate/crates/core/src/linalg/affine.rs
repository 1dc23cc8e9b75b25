use rand::Rng;

use super::matrix::{vec_add, Matrix};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Solution set of an affine-linear system: empty, or `particular + directions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    particular: Option<Vec<FieldElement>>,
    directions: Subspace,
}

impl AffineSpace {
    pub fn empty(field: PrimeField, ambient_dim: usize) -> Self {
        AffineSpace {
            particular: None,
            directions: Subspace::zero(field, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.directions.ambient_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension, or `None` when the system is inconsistent.
    pub fn dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.directions.dim())
    }

    pub fn particular(&self) -> Option<&[FieldElement]> {
        self.particular.as_deref()
    }

    pub fn directions(&self) -> &Subspace {
        &self.directions
    }

    pub fn contains(&self, x: &[FieldElement]) -> bool {
        let Some(p0) = &self.particular else {
            return false;
        };
        let f = self.directions.field();
        let diff: Vec<_> = x.iter().zip(p0).map(|(&a, &b)| f.sub(a, b)).collect();
        self.directions.contains(&diff)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<FieldElement>> {
        let p0 = self.particular.as_ref().ok_or(Error::EmptySpace)?;
        let f = self.directions.field();
        Ok(vec_add(f, p0, &self.directions.sample(rng)))
    }

    /// Deterministic uniform point for the given seed.
    pub fn random_point(&self, seed: u64) -> Result<Vec<FieldElement>> {
        self.sample(&mut crate::rng::seeded(seed))
    }
}

/// Solves `a * x = b` exactly. Inconsistent systems give the empty space.
pub fn solve_affine(a: &Matrix, b: &[FieldElement]) -> Result<AffineSpace> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but {} right-hand sides",
            a.rows(),
            b.len()
        )));
    }
    let f = a.field();
    let k = a.cols();
    if a.rows() == 0 {
        return Ok(AffineSpace {
            particular: Some(vec![0; k]),
            directions: Subspace::full(f, k),
        });
    }
    let rhs = Matrix::from_cols(f, b.len(), &[b.to_vec()]);
    let ech = a.hstack(&rhs).echelon();
    if ech.pivots.last() == Some(&k) {
        return Ok(AffineSpace::empty(f, k));
    }
    let mut particular = vec![0; k];
    for (r, &c) in ech.pivots.iter().enumerate() {
        particular[c] = ech.reduced.get(r, k);
    }
    let directions = Subspace::span(f, k, &a.kernel());
    Ok(AffineSpace {
        particular: Some(particular),
        directions,
    })
}

/// Coefficients `(a, b)` with `f(x) = 0 ⟺ a x = b`, for `f` affine-linear in
/// `k` unknowns. Found by evaluating `f` at zero and at the unit vectors.
pub fn affine_system<F>(field: PrimeField, k: usize, f: F) -> (Matrix, Vec<FieldElement>)
where
    F: Fn(&[FieldElement]) -> Vec<FieldElement>,
{
    let mut x = vec![0; k];
    let at_zero = f(&x);
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        x[i] = 1;
        let fx = f(&x);
        x[i] = 0;
        cols.push(
            fx.iter()
                .zip(&at_zero)
                .map(|(&a, &c)| field.sub(a, c))
                .collect::<Vec<_>>(),
        );
    }
    let a = Matrix::from_cols(field, at_zero.len(), &cols);
    let b = at_zero.iter().map(|&c| field.neg(c)).collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_from_affine_map() {
        let f = PrimeField::new(101).unwrap();
        // x0 + 2 x1 - 3 = 0, x1 - x2 = 0
        let (a, b) = affine_system(f, 3, |x| vec![f.sub(f.add(x[0], f.mul(2, x[1])), 3), f.sub(x[1], x[2])]);
        let s = solve_affine(&a, &b).unwrap();
        assert_eq!(s.dim(), Some(1));
        let p = s.random_point(5).unwrap();
        assert_eq!(f.add(p[0], f.mul(2, p[1])), 3);
        assert_eq!(p[1], p[2]);
    }

    #[test]
    fn no_equations_is_everything() {
        let f = PrimeField::default();
        let s = solve_affine(&Matrix::zeros(f, 0, 3), &[]).unwrap();
        assert_eq!(s.dim(), Some(3));
    }

    #[test]
    fn inconsistent_is_empty() {
        let f = PrimeField::default();
        let a = Matrix::from_i64_rows(f, &[vec![1], vec![1]]);
        let s = solve_affine(&a, &[1, 2]).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.random_point(0), Err(Error::EmptySpace));
    }

    #[test]
    fn line_in_plane() {
        let f = PrimeField::default();
        let a = Matrix::from_i64_rows(f, &[vec![1, 1]]);
        let s = solve_affine(&a, &[1]).unwrap();
        assert_eq!(s.dim(), Some(1));
        let x = s.random_point(3).unwrap();
        assert_eq!(f.add(x[0], x[1]), 1);
        assert!(s.contains(&x));
    }

    #[test]
    fn point_is_unique_sample() {
        let f = PrimeField::default();
        let a = Matrix::from_i64_rows(f, &[vec![1, 0], vec![0, 2]]);
        let s = solve_affine(&a, &[5, 4]).unwrap();
        assert_eq!(s.dim(), Some(0));
        for seed in 0..4 {
            assert_eq!(s.random_point(seed).unwrap(), vec![5, 2]);
        }
    }
}
