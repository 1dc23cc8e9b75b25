//! Jordan types of nilpotent operators from rank sequences.

use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Turns a rank sequence `r_0 = d ≥ r_1 ≥ … ≥ r_m = 0` into the Jordan type:
/// the conjugate partition has parts `r_(k-1) - r_k`.
fn from_ranks(ranks: &[usize]) -> Result<Partition> {
    if ranks.last() != Some(&0) {
        return Err(Error::NotNilpotent);
    }
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).take_while(|&d| d > 0).collect();
    Ok(Partition::new(conj)
        .map_err(|e| Error::InvalidRecursion(format!("rank sequence {ranks:?}: {e}")))?
        .conjugate())
}

/// Jordan type of a nilpotent square matrix.
pub fn jordan_type(x: &Matrix) -> Result<Partition> {
    assert!(x.is_square(), "jordan_type needs a square matrix");
    let d = x.rows();
    let mut ranks = vec![d];
    let mut power = Matrix::identity(x.field(), d);
    for _ in 0..d {
        power = power.mul(x);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    from_ranks(&ranks)
}

/// Jordan type of the operator induced by `x` on `V / w`, where `w` is `x`-stable.
pub fn quotient_jordan_type(x: &Matrix, w: &Subspace) -> Result<Partition> {
    let d = x.rows();
    let base = w.dim();
    let mut ranks = vec![d - base];
    let mut power = Matrix::identity(x.field(), d);
    for _ in 0..d {
        power = power.mul(x);
        // rank of x^k on V/W is dim(x^k V + W) - dim W
        let img = Subspace::from_matrix_rows(&power.transpose());
        let r = img.sum(w)?.dim() - base;
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    from_ranks(&ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn block_diag(f: PrimeField, sizes: &[usize]) -> Matrix {
        let d: usize = sizes.iter().sum();
        let mut m = Matrix::zeros(f, d, d);
        let mut off = 0;
        for &s in sizes {
            for i in 0..s.saturating_sub(1) {
                m.set(off + i, off + i + 1, 1);
            }
            off += s;
        }
        m
    }

    #[test]
    fn zero_matrix() {
        let f = PrimeField::default();
        let t = jordan_type(&Matrix::zeros(f, 4, 4)).unwrap();
        assert_eq!(t.parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn single_block() {
        let f = PrimeField::default();
        assert_eq!(jordan_type(&block_diag(f, &[4])).unwrap().parts(), &[4]);
    }

    #[test]
    fn mixed_blocks() {
        let f = PrimeField::default();
        assert_eq!(jordan_type(&block_diag(f, &[2, 1, 1])).unwrap().parts(), &[2, 1, 1]);
        assert_eq!(jordan_type(&block_diag(f, &[1, 3, 2])).unwrap().parts(), &[3, 2, 1]);
    }

    #[test]
    fn not_nilpotent() {
        let f = PrimeField::default();
        assert_eq!(jordan_type(&Matrix::identity(f, 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn conjugated_block_keeps_type() {
        let f = PrimeField::default();
        let x = block_diag(f, &[3, 2, 2, 1]);
        let g = Matrix::from_i64_rows(
            f,
            &[
                vec![1, 2, 0, 0, 0, 0, 0, 5],
                vec![0, 1, 3, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 7, 0, 0, 0],
                vec![4, 0, 0, 1, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 0, 2, 0],
                vec![0, 9, 0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 6, 0, 0, 0, 1],
            ],
        );
        let y = g.mul(&x).mul(&g.inverse().unwrap());
        assert_eq!(jordan_type(&y).unwrap().parts(), &[3, 2, 2, 1]);
    }

    #[test]
    fn quotient_by_cyclic_subspace() {
        let f = PrimeField::default();
        // blocks (3, 1); W generated by the top vector of the 3-block
        let x = block_diag(f, &[3, 1]);
        let v = vec![0, 0, 1, 0];
        let w = Subspace::span(f, 4, &[v.clone(), x.mul_vec(&v), x.mul(&x).mul_vec(&v)]);
        assert_eq!(w.dim(), 3);
        assert_eq!(quotient_jordan_type(&x, &w).unwrap().parts(), &[1]);
        let w0 = Subspace::zero(f, 4);
        assert_eq!(quotient_jordan_type(&x, &w0).unwrap(), jordan_type(&x).unwrap());
    }
}
