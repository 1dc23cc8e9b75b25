//! Pairs of horizontal strips and their bijection with balanced bipartitions.
//!
//! The multiplicity of `V_λ` in `Ind_{W(C_(n-j)) × S_j × S_j}^{S_2n}(δ)` is the
//! number of ways to remove two successive horizontal strips of size `j`
//! from `λ` leaving a duplex partition. Each `(μ; ν) ∈ Q'_2n` with `μ + ν = λ`
//! and `μ_1 = j` gives such a pair of strips.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Bipartition, Partition};
use crate::qprime::{enumerate_q_prime, orbit_count_formula};
use crate::tableau::hook_length_count;

/// `λ ⊃ middle ⊃ remainder`, both differences horizontal strips of the same size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StripRemoval {
    pub lambda: Partition,
    pub middle: Partition,
    pub remainder: Partition,
}

impl StripRemoval {
    pub fn new(lambda: Partition, middle: Partition, remainder: Partition) -> Result<Self> {
        let ok = is_horizontal_strip(&lambda, &middle)
            && is_horizontal_strip(&middle, &remainder)
            && lambda.size() - middle.size() == middle.size() - remainder.size()
            && remainder.is_duplex();
        if !ok {
            return Err(Error::InvalidRecursion(format!(
                "{lambda} ⊃ {middle} ⊃ {remainder} is not a pair of equal horizontal strips"
            )));
        }
        Ok(StripRemoval {
            lambda,
            middle,
            remainder,
        })
    }

    /// Size of each strip.
    pub fn strip_size(&self) -> usize {
        self.lambda.size() - self.middle.size()
    }
}

/// `outer / inner` has at most one box in each column.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    let (a, b) = (outer.conjugate(), inner.conjugate());
    outer.contains(inner) && (1..=a.len()).all(|c| a.part(c) - b.part(c) <= 1)
}

/// All `κ ⊆ λ` with `λ / κ` a horizontal strip of size `j`.
fn remove_strip(lambda: &Partition, j: usize) -> Vec<Partition> {
    // κ_i ranges over [λ_(i+1), λ_i]
    fn rec(lambda: &Partition, i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i > lambda.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing gives a partition"));
            }
            return;
        }
        let (hi, lo) = (lambda.part(i), lambda.part(i + 1));
        for k in (lo..=hi).rev() {
            let take = hi - k;
            if take > left {
                break;
            }
            cur.push(k);
            rec(lambda, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 1, j, &mut Vec::new(), &mut out);
    out
}

/// Every removal of two horizontal `j`-strips from `λ` leaving a duplex partition.
pub fn strip_removals(lambda: &Partition, j: usize) -> BTreeSet<StripRemoval> {
    let mut out = BTreeSet::new();
    for middle in remove_strip(lambda, j) {
        for remainder in remove_strip(&middle, j) {
            if remainder.is_duplex() {
                out.insert(StripRemoval {
                    lambda: lambda.clone(),
                    middle: middle.clone(),
                    remainder,
                });
            }
        }
    }
    out
}

pub fn strip_pair_count(lambda: &Partition, j: usize) -> usize {
    strip_removals(lambda, j).len()
}

/// The strips attached to `(μ; ν)`: the columns of `μ + ν` are those of `μ`
/// and of `ν`, with `ν`'s columns first among equal lengths. The first strip
/// takes one box from each `μ` column, the second one box from each odd `ν`
/// column and each even `μ` column.
pub fn strips_of(bp: &Bipartition) -> Result<StripRemoval> {
    // (length, belongs to μ), sorted longest first, ν before μ on ties
    let mut cols: Vec<(usize, bool)> = bp
        .nu
        .conjugate()
        .parts()
        .iter()
        .map(|&c| (c, false))
        .chain(bp.mu.conjugate().parts().iter().map(|&c| (c, true)))
        .collect();
    cols.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let first: Vec<usize> = cols.iter().map(|&(c, m)| c - usize::from(m)).collect();
    let second: Vec<usize> = cols
        .iter()
        .zip(&first)
        .map(|(&(c, m), &l)| l - usize::from((m && c % 2 == 0) || (!m && c % 2 == 1)))
        .collect();
    let from_cols = |lens: &[usize]| -> Result<Partition> {
        Partition::new(lens.to_vec())
            .map(|p| p.conjugate())
            .map_err(|_| Error::InvalidRecursion(format!("column lengths {lens:?} from {bp}")))
    };
    StripRemoval::new(bp.shape(), from_cols(&first)?, from_cols(&second)?)
}

/// `(μ; ν) ∈ Q'_2n` with `μ + ν = λ` and `μ_1 = j`, paired with their strips.
pub fn bipartition_strip_bijection(lambda: &Partition, j: usize) -> Result<Vec<(Bipartition, StripRemoval)>> {
    enumerate_q_prime(lambda.size() / 2)
        .into_iter()
        .filter(|bp| bp.shape() == *lambda && bp.mu.part(1) == j)
        .map(|bp| strips_of(&bp).map(|s| (bp, s)))
        .collect()
}

/// The strip map is injective and hits every removal, for one `(λ, j)`.
pub fn strip_bijection_holds(lambda: &Partition, j: usize) -> Result<bool> {
    let pairs = bipartition_strip_bijection(lambda, j)?;
    let images: BTreeSet<_> = pairs.iter().map(|(_, s)| s.clone()).collect();
    Ok(images.len() == pairs.len() && images == strip_removals(lambda, j))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    /// `Σ_{(μ;ν) ∈ Q'_2n} |SYT(μ+ν)|`
    pub lhs: u128,
    /// `Σ_j (2n)! / (2^(n-j) (n-j)! (j!)²)`
    pub rhs: u128,
    /// `(λ, j)` where the strip count and the bipartition count differ.
    pub mismatches: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs && self.mismatches.is_empty()
    }
}

/// Total dimension of both sides and the per-`(λ, j)` multiplicities.
pub fn dimension_identity(n: usize) -> IdentityReport {
    let qp = enumerate_q_prime(n);
    let lhs = qp.iter().map(|bp| hook_length_count(&bp.shape())).sum();
    let mut mismatches = Vec::new();
    for lambda in Partition::all(2 * n) {
        for j in 0..=n {
            let count = qp
                .iter()
                .filter(|bp| bp.shape() == lambda && bp.mu.part(1) == j)
                .count();
            let strips = strip_pair_count(&lambda, j);
            if count != strips {
                mismatches.push(format!(
                    "λ = {lambda}, j = {j}: {count} bipartitions, {strips} strip pairs"
                ));
            }
        }
    }
    IdentityReport {
        n,
        lhs,
        rhs: orbit_count_formula(n),
        mismatches,
    }
}
