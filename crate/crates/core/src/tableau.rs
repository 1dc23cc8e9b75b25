//! Standard Young tableaux as growth chains `∅ = λ^0 ⊂ λ^1 ⊂ … ⊂ λ^N`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardTableau {
    chain: Vec<Partition>,
}

impl StandardTableau {
    /// Validates that each step adds exactly one box.
    pub fn from_chain(chain: Vec<Partition>) -> Result<Self> {
        let bad = || Error::InvalidRecursion(format!("not a growth chain: {chain:?}"));
        if chain.first().map(Partition::is_empty) != Some(true) {
            return Err(bad());
        }
        for (i, w) in chain.windows(2).enumerate() {
            if w[1].size() != i + 1 || !w[1].contains(&w[0]) {
                return Err(bad());
            }
        }
        Ok(StandardTableau { chain })
    }

    /// Builds the chain from row contents, e.g. `[[1, 2], [3, 4]]`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let total: usize = rows.iter().map(Vec::len).sum();
        let mut row_of = vec![usize::MAX; total + 1];
        for (r, row) in rows.iter().enumerate() {
            for &e in row {
                if e == 0 || e > total || row_of[e] != usize::MAX {
                    return Err(Error::InvalidRecursion(format!("bad tableau rows {rows:?}")));
                }
                row_of[e] = r;
            }
        }
        let mut chain = vec![Partition::empty()];
        let mut lens = vec![0usize; rows.len()];
        for &r in &row_of[1..] {
            lens[r] += 1;
            let p = Partition::new(lens.clone())
                .map_err(|_| Error::InvalidRecursion(format!("bad tableau rows {rows:?}")))?;
            chain.push(p);
        }
        let t = Self::from_chain(chain)?;
        if t.rows() != rows {
            return Err(Error::InvalidRecursion(format!("rows not increasing: {rows:?}")));
        }
        Ok(t)
    }

    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    pub fn shape(&self) -> &Partition {
        self.chain.last().expect("chain is never empty")
    }

    pub fn size(&self) -> usize {
        self.chain.len() - 1
    }

    /// Row (1-based) of the box holding entry `i`.
    pub fn row_of(&self, i: usize) -> usize {
        let (prev, next) = (&self.chain[i - 1], &self.chain[i]);
        (1..=next.len())
            .find(|&r| next.part(r) != prev.part(r))
            .expect("consecutive chain entries differ")
    }

    /// `i` is a descent when `i + 1` sits in a strictly lower row than `i`.
    pub fn descents(&self) -> BTreeSet<usize> {
        (1..self.size())
            .filter(|&i| self.row_of(i + 1) > self.row_of(i))
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.shape().len()];
        for i in 1..=self.size() {
            rows[self.row_of(i) - 1].push(i);
        }
        rows
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SYT{self}")
    }
}

/// All standard tableaux of the given shape, in canonical order.
pub fn enumerate_syt(shape: &Partition) -> Vec<StandardTableau> {
    // walk down from the shape by removing corners; `path` holds shape, ..., current
    fn rec(path: &mut Vec<Partition>, out: &mut Vec<StandardTableau>) {
        let cur = path.last().expect("path starts at the shape").clone();
        if cur.is_empty() {
            let chain = path.iter().rev().cloned().collect();
            out.push(StandardTableau { chain });
            return;
        }
        let parts = cur.parts();
        for r in 0..parts.len() {
            if r + 1 == parts.len() || parts[r + 1] < parts[r] {
                let mut smaller = parts.to_vec();
                smaller[r] -= 1;
                path.push(Partition::new(smaller).expect("removing a corner"));
                rec(path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![shape.clone()], &mut out);
    out.sort();
    out
}

/// `|SYT(λ)|` by the hook length formula.
pub fn hook_length_count(shape: &Partition) -> u128 {
    let conj = shape.conjugate();
    let n = shape.size() as u128;
    let mut num: u128 = (1..=n).product();
    let mut hooks: u128 = 1;
    for r in 1..=shape.len() {
        for c in 1..=shape.part(r) {
            let arm = shape.part(r) - c;
            let leg = conj.part(c) - r;
            hooks *= (arm + leg + 1) as u128;
            let g = gcd(num, hooks);
            num /= g;
            hooks /= g;
        }
    }
    assert_eq!(hooks, 1, "hook product must divide n!");
    num
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
