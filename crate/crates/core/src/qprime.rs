//! The balanced bipartitions `Q'_2n`, the map `Ψ : Q'_2n → Q_n` and its
//! fibres, the enhanced closure order, and the tagged-pair count.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::partition::{Bipartition, Partition};
use crate::tableau::{enumerate_syt, hook_length_count, StandardTableau};

/// Equal alternating sums `μ_1 - μ_2 + μ_3 - … = ν_1 - ν_2 + ν_3 - …`.
pub fn is_in_q_prime(bp: &Bipartition) -> bool {
    let m = bp.mu.len().max(bp.nu.len());
    bp.mu.alternating_sum(m) == bp.nu.alternating_sum(m)
}

/// All of `Q'_2n` in canonical order.
pub fn enumerate_q_prime(n: usize) -> Vec<Bipartition> {
    Bipartition::all(2 * n).into_iter().filter(is_in_q_prime).collect()
}

/// `Ψ(μ; ν) = (μ̃; ν̃)` with `μ̃_k = A_μ(2k-1) - A_ν(2k-2)` and
/// `ν̃_k = A_ν(2k-1) - A_μ(2k)`, where `A_λ(m)` is the alternating sum of the
/// first `m` parts.
pub fn psi(bp: &Bipartition) -> Result<Bipartition> {
    if !is_in_q_prime(bp) {
        return Err(Error::NotInQPrime(bp.to_string()));
    }
    let len = bp.mu.len().max(bp.nu.len()) / 2 + 2;
    let mut mt = Vec::with_capacity(len);
    let mut nt = Vec::with_capacity(len);
    for k in 1..=len {
        mt.push(bp.mu.alternating_sum(2 * k - 1) - bp.nu.alternating_sum(2 * k - 2));
        nt.push(bp.nu.alternating_sum(2 * k - 1) - bp.mu.alternating_sum(2 * k));
    }
    let to_partition = |v: Vec<i64>| -> Result<Partition> {
        if v.iter().any(|&a| a < 0) {
            return Err(Error::InvalidRecursion(format!("negative part in Ψ({bp}): {v:?}")));
        }
        Partition::new(v.into_iter().map(|a| a as usize).collect())
            .map_err(|e| Error::InvalidRecursion(format!("Ψ({bp}): {e}")))
    };
    let out = Bipartition::new(to_partition(mt)?, to_partition(nt)?);
    debug_assert_eq!(2 * out.total(), bp.total());
    Ok(out)
}

/// Right-hand sides of the coupled system `μ_(k+1) + ν_k = c_k`:
/// `c = (μ̃_1+ν̃_1, μ̃_2+ν̃_1, μ̃_2+ν̃_2, μ̃_3+ν̃_2, …)`.
fn balance_targets(target: &Bipartition, len: usize) -> Vec<usize> {
    (1..=len)
        .map(|k| {
            let j = k.div_ceil(2);
            if k % 2 == 1 {
                target.mu.part(j) + target.nu.part(j)
            } else {
                target.mu.part(j + 1) + target.nu.part(j)
            }
        })
        .collect()
}

/// Checks the balance system linking `(μ; ν)` with `(μ̃; ν̃)`:
/// `μ̃_1 = μ_1`, `μ̃_1 + ν̃_1 = μ_2 + ν_1`, `μ̃_2 + ν̃_1 = μ_3 + ν_2`, …
pub fn satisfies_balance(bp: &Bipartition, target: &Bipartition) -> bool {
    let len = 2 * (bp.total() + target.total()) + 2;
    let c = balance_targets(target, len);
    bp.mu.part(1) == target.mu.part(1) && (1..=len).all(|k| bp.mu.part(k + 1) + bp.nu.part(k) == c[k - 1])
}

/// All bipartitions `(μ; ν)` solving the balance system for `target`,
/// i.e. the fibre `Ψ^{-1}(target)`, in canonical order.
pub fn psi_fiber(target: &Bipartition) -> Vec<Bipartition> {
    let n = target.total();
    let len = 2 * n + 1;
    let c = balance_targets(target, len);
    let mu1 = target.mu.part(1);
    let mut out = Vec::new();
    // choose ν_k for k = 1, 2, …; then μ_(k+1) = c_k - ν_k
    fn rec(k: usize, c: &[usize], mu: &mut Vec<usize>, nu: &mut Vec<usize>, out: &mut Vec<Bipartition>) {
        if k > c.len() {
            if let (Ok(m), Ok(n)) = (Partition::new(mu.clone()), Partition::new(nu.clone())) {
                out.push(Bipartition::new(m, n));
            }
            return;
        }
        let nu_prev = if k == 1 { usize::MAX } else { nu[k - 2] };
        let mu_prev = mu[k - 1];
        let ck = c[k - 1];
        for nk in 0..=ck.min(nu_prev) {
            let mk = ck - nk;
            if mk > mu_prev {
                continue;
            }
            nu.push(nk);
            mu.push(mk);
            rec(k + 1, c, mu, nu, out);
            mu.pop();
            nu.pop();
        }
    }
    rec(1, &c, &mut vec![mu1], &mut Vec::new(), &mut out);
    out.retain(|bp| bp.total() == 2 * n);
    out.sort();
    out
}

/// The enhanced closure order `(ρ; σ) ≤ (μ; ν)`: for all `k ≥ 0`,
/// `Σ_{i≤k}(ρ_i+σ_i) ≤ Σ_{i≤k}(μ_i+ν_i)` and the same with `ρ_(k+1)`,
/// `μ_(k+1)` added to the two sides.
pub fn leq_enhanced(a: &Bipartition, b: &Bipartition) -> bool {
    let len = a.mu.len().max(a.nu.len()).max(b.mu.len()).max(b.nu.len()) + 1;
    let (mut sa, mut sb) = (0usize, 0usize);
    for k in 0..=len {
        if sa > sb || sa + a.mu.part(k + 1) > sb + b.mu.part(k + 1) {
            return false;
        }
        sa += a.mu.part(k + 1) + a.nu.part(k + 1);
        sb += b.mu.part(k + 1) + b.nu.part(k + 1);
    }
    true
}

/// An element of `T'_2n`: a balanced bipartition with a standard tableau of shape `μ + ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct TaggedPair {
    pub bp: Bipartition,
    pub tab: StandardTableau,
}

impl TaggedPair {
    pub fn new(bp: Bipartition, tab: StandardTableau) -> Result<Self> {
        if tab.shape() != &bp.shape() {
            return Err(Error::DimensionMismatch(format!(
                "tableau shape {} differs from {} ",
                tab.shape(),
                bp.shape()
            )));
        }
        Ok(TaggedPair { bp, tab })
    }
}

impl std::fmt::Display for TaggedPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.bp, self.tab)
    }
}

/// All of `T'_2n` in canonical order.
pub fn enumerate_t_prime(n: usize) -> BTreeSet<TaggedPair> {
    enumerate_q_prime(n)
        .into_iter()
        .flat_map(|bp| {
            enumerate_syt(&bp.shape())
                .into_iter()
                .map(move |tab| TaggedPair { bp: bp.clone(), tab })
        })
        .collect()
}

/// `Σ_{j=0}^{n} (2n)! / (2^(n-j) (n-j)! (j!)^2)`.
pub fn orbit_count_formula(n: usize) -> u128 {
    (0..=n).map(|j| orbit_count_term(n, j)).sum()
}

pub fn orbit_count_term(n: usize, j: usize) -> u128 {
    let fact = |k: usize| -> u128 { (1..=k as u128).product() };
    fact(2 * n) / ((1u128 << (n - j)) * fact(n - j) * fact(j) * fact(j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CountCheck {
    pub enumerated: u128,
    pub formula: u128,
}

impl CountCheck {
    pub fn ok(&self) -> bool {
        self.enumerated == self.formula
    }
}

/// `|T'_2n|` by summing hook-length counts over `Q'_2n`, next to the closed formula.
pub fn count_t_prime(n: usize) -> CountCheck {
    let enumerated = enumerate_q_prime(n)
        .iter()
        .map(|bp| hook_length_count(&bp.shape()))
        .sum();
    CountCheck {
        enumerated,
        formula: orbit_count_formula(n),
    }
}

/// Dimension of the exotic orbit labelled by `(μ̃; ν̃) ∈ Q_n`:
/// `2n² - 2ν̃_1 - 4μ̃_2 - 6ν̃_2 - 8μ̃_3 - 10ν̃_3 - …`.
pub fn exotic_orbit_dim_formula(bt: &Bipartition) -> i64 {
    let n = bt.total() as i64;
    let len = bt.mu.len().max(bt.nu.len());
    let mut d = 2 * n * n;
    for k in 1..=len {
        d -= 4 * (k as i64 - 1) * bt.mu.part(k) as i64;
        d -= (4 * k as i64 - 2) * bt.nu.part(k) as i64;
    }
    d
}

/// `dim Z_(μ;ν) = 2n² + d - 2ν_2 - 2μ_3 - 2ν_3 - 2μ_4 - 4ν_4 - 4μ_5 - …`, with
/// the pairs `(μ_(k+2) + ν_(k+1))` weighted by `2⌈k/2⌉`.
pub fn z_stratum_dim_formula(bp: &Bipartition, d: usize) -> i64 {
    let n = (bp.total() / 2) as i64;
    let len = bp.mu.len().max(bp.nu.len()) + 2;
    let mut dim = 2 * n * n + d as i64;
    for k in 1..=len {
        let w = 2 * k.div_ceil(2) as i64;
        dim -= w * (bp.mu.part(k + 2) + bp.nu.part(k + 1)) as i64;
    }
    dim
}

/// `2n² + d + μ_2 - ν_2 + μ_4 - ν_4 + …`, the stratum dimension of `Y^T_(μ;ν)`.
pub fn springer_stratum_total(bp: &Bipartition, d: usize) -> i64 {
    let n = (bp.total() / 2) as i64;
    let len = bp.mu.len().max(bp.nu.len());
    let mut dim = 2 * n * n + d as i64;
    for k in (2..=len).step_by(2) {
        dim += bp.mu.part(k) as i64 - bp.nu.part(k) as i64;
    }
    dim
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(mu: &[usize], nu: &[usize]) -> Bipartition {
        Bipartition::from_parts(mu, nu)
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_q_prime(&bp(&[2], &[2])));
        assert!(is_in_q_prime(&bp(&[], &[1, 1, 1, 1])));
        assert!(!is_in_q_prime(&bp(&[1], &[3])));
    }

    #[test]
    fn q_prime_small() {
        let q1 = enumerate_q_prime(1);
        assert_eq!(q1, vec![bp(&[], &[1, 1]), bp(&[1], &[1]), bp(&[1, 1], &[])]);
        let q2: BTreeSet<_> = enumerate_q_prime(2).into_iter().collect();
        let expected: BTreeSet<_> = [
            bp(&[2], &[2]),
            bp(&[2, 1], &[1]),
            bp(&[1], &[2, 1]),
            bp(&[2, 2], &[]),
            bp(&[1, 1], &[1, 1]),
            bp(&[], &[2, 2]),
            bp(&[1, 1, 1], &[1]),
            bp(&[1], &[1, 1, 1]),
            bp(&[1, 1, 1, 1], &[]),
            bp(&[], &[1, 1, 1, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(q2, expected);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&bp(&[1, 1, 1], &[1])).unwrap(), bp(&[1], &[1]));
        assert_eq!(psi(&bp(&[2], &[2])).unwrap(), bp(&[2], &[]));
        let nu = Partition::new(vec![2, 1]).unwrap();
        let lifted = Bipartition::new(Partition::empty(), nu.doubled());
        assert_eq!(psi(&lifted).unwrap(), Bipartition::new(Partition::empty(), nu));
        assert!(matches!(psi(&bp(&[1], &[3])), Err(Error::NotInQPrime(_))));
    }

    #[test]
    fn fibre_example() {
        let fibre = psi_fiber(&bp(&[1], &[1]));
        assert_eq!(
            fibre,
            vec![bp(&[1], &[2, 1]), bp(&[1, 1], &[1, 1]), bp(&[1, 1, 1], &[1])]
        );
        // the total order on this fibre: (1³;1) < (1²;1²) < (1;21)
        let chain = [bp(&[1, 1, 1], &[1]), bp(&[1, 1], &[1, 1]), bp(&[1], &[2, 1])];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(leq_enhanced(&chain[i], &chain[j]), i <= j, "{i} {j}");
            }
        }
    }

    #[test]
    fn fibres_partition_q_prime_and_contain_doubled_target() {
        for n in 1..=4 {
            let mut seen = BTreeSet::new();
            for target in Bipartition::all(n) {
                let fibre = psi_fiber(&target);
                assert!(fibre.contains(&target.doubled()), "{target}");
                for b in fibre {
                    assert!(is_in_q_prime(&b));
                    assert_eq!(psi(&b).unwrap(), target);
                    assert!(satisfies_balance(&b, &target));
                    assert!(seen.insert(b));
                }
            }
            let all: BTreeSet<_> = enumerate_q_prime(n).into_iter().collect();
            assert_eq!(seen, all, "n = {n}");
        }
    }

    #[test]
    fn fibre_matches_brute_force() {
        for n in 1..=4 {
            let q = enumerate_q_prime(n);
            for target in Bipartition::all(n) {
                let brute: Vec<_> = q.iter().filter(|b| psi(b).unwrap() == target).cloned().collect();
                assert_eq!(psi_fiber(&target), brute);
            }
        }
    }

    #[test]
    fn enhanced_order_restricted_to_a_fibre() {
        for n in 1..=3 {
            for target in Bipartition::all(n) {
                let fibre = psi_fiber(&target);
                for a in &fibre {
                    for b in &fibre {
                        let by_nu = (1..=2 * n).all(|i| a.nu.part(i) <= b.nu.part(i));
                        assert_eq!(leq_enhanced(a, b), by_nu, "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn enhanced_order_is_a_partial_order() {
        for n in 1..=3 {
            let all = Bipartition::all(2 * n);
            for a in &all {
                assert!(leq_enhanced(a, a));
                for b in &all {
                    if a != b && leq_enhanced(a, b) {
                        assert!(!leq_enhanced(b, a), "{a} {b}");
                    }
                    for c in &all {
                        if leq_enhanced(a, b) && leq_enhanced(b, c) {
                            assert!(leq_enhanced(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tagged_pair_counts() {
        assert_eq!(
            count_t_prime(1),
            CountCheck {
                enumerated: 3,
                formula: 3
            }
        );
        assert_eq!(
            count_t_prime(2),
            CountCheck {
                enumerated: 21,
                formula: 21
            }
        );
        assert_eq!(
            count_t_prime(3),
            CountCheck {
                enumerated: 215,
                formula: 215
            }
        );
        assert!(count_t_prime(4).ok());
        assert_eq!(enumerate_t_prime(2).len(), 21);
        // n = 2 split by j
        let terms: Vec<_> = (0..=2).map(|j| orbit_count_term(2, j)).collect();
        assert_eq!(terms, vec![3, 12, 6]);
        let terms: Vec<_> = (0..=3).map(|j| orbit_count_term(3, j)).collect();
        assert_eq!(terms, vec![15, 90, 90, 20]);
    }

    #[test]
    fn z_and_springer_bookkeeping_sum_to_cotangent_dim() {
        // with d = |ν|, Z-dimension plus Springer dimension is 2n² + n
        for n in 1..=4 {
            for b in enumerate_q_prime(n) {
                let d = b.nu.size();
                let total = z_stratum_dim_formula(&b, d) + b.shape().n_statistic() as i64;
                assert_eq!(total, (2 * n * n + n) as i64, "{b}");
                assert_eq!(springer_stratum_total(&b, d), (2 * n * n + n) as i64, "{b}");
                let via_orbit = exotic_orbit_dim_formula(&psi(&b).unwrap()) + d as i64;
                assert_eq!(via_orbit, z_stratum_dim_formula(&b, d), "{b}");
            }
        }
    }
}
