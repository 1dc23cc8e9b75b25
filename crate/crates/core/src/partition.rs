//! Integer partitions and bipartitions.
//!
//! Parts are indexed from 1 as in the usual notation `λ_1 ≥ λ_2 ≥ …`;
//! [`Partition::part`] returns 0 past the last nonzero part, so formulas that
//! run over "all i" can zero-pad freely.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    /// Accepts a weakly decreasing sequence; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(m^k)`: `k` parts equal to `m`.
    pub fn rectangle(m: usize, k: usize) -> Self {
        if m == 0 {
            return Self::empty();
        }
        Partition { parts: vec![m; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` for `i ≥ 1`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are indexed from 1");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&r| r >= c).count())
            .collect();
        Partition { parts }
    }

    /// Componentwise sum `λ + κ`.
    pub fn plus(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts = (1..=len).map(|i| self.part(i) + other.part(i)).collect();
        Partition { parts }
    }

    /// `λ ∪ λ = (λ_1, λ_1, λ_2, λ_2, …)`.
    pub fn doubled(&self) -> Partition {
        let parts = self.parts.iter().flat_map(|&p| [p, p]).collect();
        Partition { parts }
    }

    /// Every part occurs with even multiplicity.
    pub fn is_duplex(&self) -> bool {
        self.len().is_multiple_of(2) && self.parts.chunks(2).all(|c| c[0] == c[1])
    }

    /// Inverse of [`doubled`](Self::doubled) when the partition is duplex.
    pub fn halved(&self) -> Option<Partition> {
        self.is_duplex().then(|| Partition {
            parts: self.parts.iter().step_by(2).copied().collect(),
        })
    }

    /// Young diagram containment `κ ⊆ λ`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// `λ_1 - λ_2 + λ_3 - …` over the first `m` parts.
    pub fn alternating_sum(&self, m: usize) -> i64 {
        (1..=m)
            .map(|i| {
                if i % 2 == 1 {
                    self.part(i) as i64
                } else {
                    -(self.part(i) as i64)
                }
            })
            .sum()
    }

    /// `λ_2 + 2λ_3 + 3λ_4 + …`
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// All partitions of `n`, in ascending canonical (part-by-part) order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in 1..=max.min(rest) {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_parts(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `(2,1,1)`; `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses".into()))?;
        Partition::new(parse_parts(inner).map_err(bad)?)
    }
}

/// An ordered pair of partitions `(μ; ν)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Bipartition { mu, nu }
    }

    /// Convenience constructor from raw part lists; panics on invalid input.
    pub fn from_parts(mu: &[usize], nu: &[usize]) -> Self {
        Bipartition {
            mu: Partition::new(mu.to_vec()).expect("valid mu"),
            nu: Partition::new(nu.to_vec()).expect("valid nu"),
        }
    }

    pub fn total(&self) -> usize {
        self.mu.size() + self.nu.size()
    }

    /// Componentwise sum `μ + ν`, the Jordan type of the nilpotent part.
    pub fn shape(&self) -> Partition {
        self.mu.plus(&self.nu)
    }

    /// `(μ ∪ μ; ν ∪ ν)`
    pub fn doubled(&self) -> Bipartition {
        Bipartition::new(self.mu.doubled(), self.nu.doubled())
    }

    /// The swapped pair `(ν; μ)`.
    pub fn swapped(&self) -> Bipartition {
        Bipartition::new(self.nu.clone(), self.mu.clone())
    }

    /// All bipartitions of `total`, in canonical order (lexicographic on `(μ, ν)`).
    pub fn all(total: usize) -> Vec<Bipartition> {
        let mut out = Vec::new();
        for s in 0..=total {
            for mu in Partition::all(s) {
                for nu in Partition::all(total - s) {
                    out.push(Bipartition::new(mu.clone(), nu));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Bipartition {
    /// `(2,1;1)`, `(;2,2)`, `(1,1;)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &Partition| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.mu), join(&self.nu))
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses".into()))?;
        let (m, n) = inner
            .split_once(';')
            .ok_or_else(|| bad("expected ';' between the two partitions".into()))?;
        Ok(Bipartition::new(
            Partition::new(parse_parts(m).map_err(bad)?)?,
            Partition::new(parse_parts(n).map_err(bad)?)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn padding_and_conjugate() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.part(1), 3);
        assert_eq!(p.part(7), 0);
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<_> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Bipartition::all(2).len(), 5);
        assert_eq!(Bipartition::all(4).len(), 20);
    }

    #[test]
    fn duplex() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert!(p.doubled().is_duplex());
        assert_eq!(p.doubled().parts(), &[2, 2, 1, 1]);
        assert_eq!(p.doubled().halved(), Some(p.clone()));
        assert!(!p.is_duplex());
        assert!(Partition::empty().is_duplex());
    }

    #[test]
    fn display_and_parse() {
        let b = Bipartition::from_parts(&[2, 1], &[1]);
        assert_eq!(b.to_string(), "(2,1;1)");
        assert_eq!("(2,1;1)".parse::<Bipartition>().unwrap(), b);
        let e = Bipartition::from_parts(&[], &[2, 2]);
        assert_eq!(e.to_string(), "(;2,2)");
        assert_eq!("(;2,2)".parse::<Bipartition>().unwrap(), e);
        assert_eq!("(3,1)".parse::<Partition>().unwrap().parts(), &[3, 1]);
        assert!("(1,3)".parse::<Partition>().is_err());
        assert!("2,1;1".parse::<Bipartition>().is_err());
    }

    #[test]
    fn n_statistic() {
        assert_eq!(Partition::new(vec![2, 2]).unwrap().n_statistic(), 2);
        assert_eq!(Partition::new(vec![1, 1, 1, 1]).unwrap().n_statistic(), 6);
    }
}
