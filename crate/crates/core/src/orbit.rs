//! Orbit parameters `(w, α)` for `Sp(V)` acting on `V × G/B`.
//!
//! `w` ranges over `R_2n = { w : w w_0 is a fixed-point-free involution }` and
//! `α ⊆ {1..2n}` must be `w`-closed: `i < j`, `w^{-1}(i) < w^{-1}(j)` and
//! `j ∈ α` force `i ∈ α`.
//!
//! The textual form marks the members of `α` by square brackets around runs of
//! one-line values, e.g. `[21]4[3]` is `(2143, {1, 2, 3})`. When `2n ≥ 10` the
//! values are comma separated: `[2,1],4,[3]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1..m}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m + 1];
        for &v in &one_line {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidPermutation(one_line));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            one_line: (1..=m).collect(),
        }
    }

    /// `w_0(i) = m + 1 - i`.
    pub fn longest(m: usize) -> Self {
        Permutation {
            one_line: (1..=m).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `w(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            one_line: other.one_line.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        (1..=self.len()).all(|i| {
            let j = self.apply(i);
            j != i && self.apply(j) == i
        })
    }

    /// Membership in `R_m`: `w(m+1-i) = m+1-w^{-1}(i) ≠ i` for all `i`.
    pub fn is_in_r(&self) -> bool {
        let m = self.len();
        let inv = self.inverse();
        m.is_multiple_of(2)
            && (1..=m).all(|i| {
                let lhs = self.apply(m + 1 - i);
                lhs == m + 1 - inv.apply(i) && lhs != i
            })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() >= 10 { "," } else { "" };
        let s: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All fixed-point-free involutions of `{1..m}` (perfect matchings).
pub fn fixed_point_free_involutions(m: usize) -> Vec<Permutation> {
    fn rec(img: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some(first) = img.iter().position(|&v| v == 0) else {
            out.push(Permutation { one_line: img.clone() });
            return;
        };
        for partner in first + 1..img.len() {
            if img[partner] == 0 {
                img[first] = partner + 1;
                img[partner] = first + 1;
                rec(img, out);
                img[first] = 0;
                img[partner] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if m.is_multiple_of(2) {
        rec(&mut vec![0; m], &mut out);
    }
    out
}

/// `R_2n`, generated as `σ w_0` over fixed-point-free involutions `σ`, sorted.
pub fn enumerate_r(n: usize) -> Vec<Permutation> {
    let w0 = Permutation::longest(2 * n);
    let mut out: Vec<_> = fixed_point_free_involutions(2 * n)
        .iter()
        .map(|s| s.compose(&w0))
        .collect();
    out.sort();
    out
}

/// A subset of `{1..2n}` stored as a bitmask (bit `i-1` for element `i`).
pub type Subset = u32;

pub fn subset_members(s: Subset) -> Vec<usize> {
    (1..=32).filter(|&i| s & (1 << (i - 1)) != 0).collect()
}

pub fn subset_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

/// For each `j`, the elements `i` that `j ∈ α` forces into `α`.
fn closure_requirements(w: &Permutation) -> Vec<Subset> {
    let m = w.len();
    let inv = w.inverse();
    (0..=m)
        .map(|j| {
            (1..j)
                .filter(|&i| inv.apply(i) < inv.apply(j))
                .fold(0, |acc, i| acc | 1 << (i - 1))
        })
        .collect()
}

pub fn is_w_closed(w: &Permutation, alpha: Subset) -> bool {
    let req = closure_requirements(w);
    subset_members(alpha)
        .into_iter()
        .all(|j| j <= w.len() && req[j] & alpha == req[j])
}

/// An orbit parameter `(w, α) ∈ R'_2n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitParam {
    w: Permutation,
    alpha: Subset,
}

impl OrbitParam {
    pub fn new(w: Permutation, alpha: Subset) -> Result<Self> {
        if !w.is_in_r() {
            return Err(Error::NotInR(w.to_string()));
        }
        if w.len() > 32 || !is_w_closed(&w, alpha) {
            return Err(Error::NotWClosed {
                w: w.to_string(),
                alpha: subset_members(alpha),
            });
        }
        Ok(OrbitParam { w, alpha })
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn alpha(&self) -> Subset {
        self.alpha
    }

    pub fn alpha_members(&self) -> Vec<usize> {
        subset_members(self.alpha)
    }

    pub fn in_alpha(&self, value: usize) -> bool {
        self.alpha & (1 << (value - 1)) != 0
    }

    /// `n`, half the size of the permutation.
    pub fn n(&self) -> usize {
        self.w.len() / 2
    }
}

impl PartialOrd for OrbitParam {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrbitParam {
    /// Lexicographic on the one-line notation, then on `α` as a bitmask.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.w, self.alpha).cmp(&(&other.w, other.alpha))
    }
}

impl fmt::Display for OrbitParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.w.len();
        let comma = m >= 10;
        let mut open = false;
        for (idx, &v) in self.w.one_line().iter().enumerate() {
            let barred = self.in_alpha(v);
            if idx > 0 && comma && !(open && barred) {
                if open {
                    write!(f, "]")?;
                    open = false;
                }
                write!(f, ",")?;
            } else if idx > 0 && comma {
                write!(f, ",")?;
            }
            if barred && !open {
                write!(f, "[")?;
                open = true;
            } else if !barred && open {
                write!(f, "]")?;
                open = false;
            }
            write!(f, "{v}")?;
        }
        if open {
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrbitParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for OrbitParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for OrbitParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let comma = s.contains(',');
        let mut values = Vec::new();
        let mut alpha_vals = Vec::new();
        let mut depth = 0;
        let mut number = String::new();
        let flush = |number: &mut String, depth: i32, values: &mut Vec<usize>, alpha: &mut Vec<usize>| {
            if number.is_empty() {
                return Ok(());
            }
            let v: usize = number.parse().map_err(|_| ())?;
            number.clear();
            values.push(v);
            if depth > 0 {
                alpha.push(v);
            }
            Ok::<(), ()>(())
        };
        for ch in s.trim().chars() {
            match ch {
                '[' => {
                    flush(&mut number, depth, &mut values, &mut alpha_vals).map_err(|_| bad("bad number"))?;
                    if depth != 0 {
                        return Err(bad("nested '['"));
                    }
                    depth = 1;
                }
                ']' => {
                    flush(&mut number, depth, &mut values, &mut alpha_vals).map_err(|_| bad("bad number"))?;
                    if depth != 1 {
                        return Err(bad("unbalanced ']'"));
                    }
                    depth = 0;
                }
                ',' if comma => {
                    flush(&mut number, depth, &mut values, &mut alpha_vals).map_err(|_| bad("bad number"))?;
                }
                c if c.is_ascii_digit() => {
                    number.push(c);
                    if !comma {
                        flush(&mut number, depth, &mut values, &mut alpha_vals).map_err(|_| bad("bad number"))?;
                    }
                }
                c if c.is_whitespace() => {}
                _ => return Err(bad("unexpected character")),
            }
        }
        flush(&mut number, depth, &mut values, &mut alpha_vals).map_err(|_| bad("bad number"))?;
        if depth != 0 {
            return Err(bad("unclosed '['"));
        }
        if values.is_empty() {
            return Err(bad("empty"));
        }
        let w = Permutation::new(values)?;
        OrbitParam::new(w, subset_of(&alpha_vals))
    }
}

/// All of `R'_2n`, in canonical order.
pub fn enumerate_r_prime(n: usize) -> Vec<OrbitParam> {
    let m = 2 * n;
    assert!(m <= 32, "subsets are stored in 32 bits");
    let mut out = Vec::new();
    for w in enumerate_r(n) {
        let req = closure_requirements(&w);
        let full: u64 = 1 << m;
        for alpha in 0..full {
            let alpha = alpha as Subset;
            let closed = (1..=m).all(|j| alpha & (1 << (j - 1)) == 0 || req[j] & alpha == req[j]);
            if closed {
                out.push(OrbitParam { w: w.clone(), alpha });
            }
        }
    }
    out.sort();
    out
}

/// The rank grid `r(i, j) = |{1..i} ∩ w{1..j}|` and membership grid
/// `m(i, j) ⟺ α ⊆ {1..i} ∪ w{1..j}`, for `0 ≤ i, j ≤ 2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    size: usize,
    r: Vec<usize>,
    m: Vec<bool>,
}

impl RankProfile {
    pub fn of(p: &OrbitParam) -> Self {
        let size = p.w.len();
        let dim = size + 1;
        let mut r = vec![0; dim * dim];
        let mut m = vec![false; dim * dim];
        for j in 0..=size {
            let wj: Subset = (1..=j).fold(0, |acc, k| acc | 1 << (p.w.apply(k) - 1));
            for i in 0..=size {
                let low: Subset = if i == 0 { 0 } else { (1u64 << i) as Subset - 1 };
                r[i * dim + j] = (low & wj).count_ones() as usize;
                m[i * dim + j] = p.alpha & !(low | wj) == 0;
            }
        }
        RankProfile { size, r, m }
    }

    /// Builds a profile from measured grids (row-major, `(2n+1)²` entries).
    pub fn from_grids(size: usize, r: Vec<usize>, m: Vec<bool>) -> Self {
        assert_eq!(r.len(), (size + 1) * (size + 1));
        assert_eq!(m.len(), r.len());
        RankProfile { size, r, m }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn r(&self, i: usize, j: usize) -> usize {
        self.r[i * (self.size + 1) + j]
    }

    pub fn m(&self, i: usize, j: usize) -> bool {
        self.m[i * (self.size + 1) + j]
    }
}

/// Necessary condition for `O_a ⊆ closure(O_b)` from semicontinuity:
/// `dim V_i ∩ V_(2n-j)^⊥` can only jump up on the closure, so `r_a ≥ r_b`
/// entrywise; and where the two ranks agree the subspace `V_i + V_(2n-j)^⊥`
/// has constant dimension, so `v` lying in it is a closed condition and
/// `m_b(i, j) ⟹ m_a(i, j)`.
pub fn closure_necessary_leq(a: &OrbitParam, b: &OrbitParam) -> Result<bool> {
    if a.w.len() != b.w.len() {
        return Err(Error::DimensionMismatch(format!("{a} vs {b}")));
    }
    let (pa, pb) = (RankProfile::of(a), RankProfile::of(b));
    let size = pa.size;
    for i in 0..=size {
        for j in 0..=size {
            let (ra, rb) = (pa.r(i, j), pb.r(i, j));
            if ra < rb {
                return Ok(false);
            }
            if ra == rb && pb.m(i, j) && !pa.m(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Same comparison using only the rank grids.
pub fn rank_leq(a: &OrbitParam, b: &OrbitParam) -> bool {
    let (pa, pb) = (RankProfile::of(a), RankProfile::of(b));
    (0..=pa.size).all(|i| (0..=pa.size).all(|j| pa.r(i, j) >= pb.r(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param(s: &str) -> OrbitParam {
        s.parse().unwrap()
    }

    #[test]
    fn r4_has_three_elements() {
        let r4: Vec<String> = enumerate_r(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(r4, vec!["1234", "2143", "3412"]);
        for w in enumerate_r(3) {
            assert!(w.is_in_r());
        }
    }

    #[test]
    fn r_matches_brute_force_filter() {
        // every permutation of {1..2n}, filtered by the defining condition
        fn perms(m: usize) -> Vec<Vec<usize>> {
            if m == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(m - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, m);
                    out.push(q);
                }
            }
            out
        }
        for n in 1..=3 {
            let mut brute: Vec<_> = perms(2 * n)
                .into_iter()
                .map(|v| Permutation::new(v).unwrap())
                .filter(Permutation::is_in_r)
                .collect();
            brute.sort();
            assert_eq!(brute, enumerate_r(n));
        }
    }

    #[test]
    fn n1_parameters() {
        // w = 21 fails w(2n+1-i) ≠ i, so R_2 = {12}
        assert!(!Permutation::new(vec![2, 1]).unwrap().is_in_r());
        let params: Vec<String> = enumerate_r_prime(1).iter().map(|p| p.to_string()).collect();
        assert_eq!(params, vec!["12", "[1]2", "[12]"]);
    }

    #[test]
    fn counts_match_formula() {
        assert_eq!(enumerate_r_prime(1).len(), 3);
        assert_eq!(enumerate_r_prime(2).len(), 21);
        assert_eq!(enumerate_r_prime(3).len(), 215);
    }

    #[test]
    fn w_closed_subsets_match_brute_force() {
        for w in enumerate_r(2) {
            let inv = w.inverse();
            for alpha in 0u32..16 {
                let brute = (1..=4).all(|j| {
                    alpha & (1 << (j - 1)) == 0
                        || (1..j).all(|i| inv.apply(i) > inv.apply(j) || alpha & (1 << (i - 1)) != 0)
                });
                assert_eq!(is_w_closed(&w, alpha), brute);
            }
        }
    }

    #[test]
    fn grammar() {
        let p = param("[21]4[3]");
        assert_eq!(p.w().one_line(), &[2, 1, 4, 3]);
        assert_eq!(p.alpha_members(), vec![1, 2, 3]);
        assert_eq!(param("[2][1]4[3]"), p);
        assert_eq!(p.to_string(), "[21]4[3]");
        assert_eq!(param("[3]4[12]").alpha_members(), vec![1, 2, 3]);
        assert!("[2143".parse::<OrbitParam>().is_err());
        assert!("2134".parse::<OrbitParam>().is_err());
        assert!("1[2]34".parse::<OrbitParam>().is_err(), "{{2}} is not closed for 1234");
        assert!("12a4".parse::<OrbitParam>().is_err());
    }

    #[test]
    fn grammar_round_trips() {
        for n in 1..=3 {
            for p in enumerate_r_prime(n) {
                let s = p.to_string();
                assert_eq!(s.parse::<OrbitParam>().unwrap(), p, "{s}");
            }
        }
    }

    #[test]
    fn wide_grammar_uses_commas() {
        let w = enumerate_r(5).into_iter().next_back().unwrap();
        let p = OrbitParam::new(w, 0).unwrap();
        let s = p.to_string();
        assert!(s.contains(','), "{s}");
        assert_eq!(s.parse::<OrbitParam>().unwrap(), p);
        let top = enumerate_r_prime(5).into_iter().next_back().unwrap();
        let s = top.to_string();
        assert!(s.starts_with('[') && s.ends_with(']'), "{s}");
        assert_eq!(s.parse::<OrbitParam>().unwrap(), top);
    }

    #[test]
    fn profile_examples() {
        let id = RankProfile::of(&param("1234"));
        for i in 0..=4 {
            for j in 0..=4 {
                assert_eq!(id.r(i, j), i.min(j));
                assert!(id.m(i, j));
            }
        }
        let p = RankProfile::of(&param("[21]43"));
        assert!(!p.m(1, 0));
        assert!(p.m(2, 0));
    }

    #[test]
    fn profile_invariants_n3() {
        for p in enumerate_r_prime(3) {
            let prof = RankProfile::of(&p);
            for k in 0..=6 {
                assert_eq!(prof.r(6, k), k);
                assert_eq!(prof.r(k, 6), k);
            }
            for i in 0..6 {
                for j in 0..6 {
                    let step_i = prof.r(i + 1, j) - prof.r(i, j);
                    let step_j = prof.r(i, j + 1) - prof.r(i, j);
                    assert!(step_i <= 1 && step_j <= 1);
                    assert!(!prof.m(i, j) || prof.m(i + 1, j));
                    assert!(!prof.m(i, j) || prof.m(i, j + 1));
                }
            }
            assert!(prof.m(6, 6));
        }
    }

    #[test]
    fn necessary_leq_on_v_zero_orbits() {
        let (a, b, c) = (param("1234"), param("2143"), param("3412"));
        assert!(rank_leq(&a, &b) && rank_leq(&b, &c) && rank_leq(&a, &c));
        assert!(!rank_leq(&c, &a) && !rank_leq(&b, &a));
        assert!(closure_necessary_leq(&a, &a).unwrap());
        assert!(closure_necessary_leq(&a, &param("[1]2")).is_err());
    }
}
