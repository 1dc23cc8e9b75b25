//! The conormal variety `Y`, enhanced and exotic orbit labels, and the exotic
//! Robinson–Schensted correspondence computed from generic points.
//!
//! A point of `Y` over `(v, V_•)` is a pair `(u, x)` with `x V_i ⊆ V_(i-1)` and
//! `x^⊥ - x = τ_{v,u} + τ_{u,v}`. For fixed `(v, V_•)` these conditions are
//! linear in `(u, x)`, so the fibre is a linear space and a uniformly random
//! element of it stands in for a generic point.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::{affine_system, jordan_type, quotient_jordan_type, solve_affine, AffineSpace, Matrix, Subspace};
use crate::orbit::{enumerate_r_prime, OrbitParam};
use crate::partition::{Bipartition, Partition};
use crate::qprime::{enumerate_t_prime, is_in_q_prime, psi, satisfies_balance, TaggedPair};
use crate::rng::{mix, seeded};
use crate::symplectic::{orbit_dim, representative, Flag, SymplecticPoint, SymplecticSpace};
use crate::tableau::StandardTableau;

/// A point `(v, u, V_•, x)` of `Y`.
#[derive(Debug, Clone)]
pub struct ConormalSample {
    pub space: SymplecticSpace,
    pub v: Vec<FieldElement>,
    pub u: Vec<FieldElement>,
    pub flag: Flag,
    pub x: Matrix,
}

impl ConormalSample {
    /// `y = x + τ_{v,u}`.
    pub fn y(&self) -> Matrix {
        self.x.add(&self.space.tau(&self.v, &self.u))
    }
}

/// The fibre of `Y` over a point of `V × G/B`, as a space of `(u, s)` where
/// `s` is the strictly upper triangular matrix of `x` in flag coordinates.
#[derive(Debug, Clone)]
pub struct ConormalFiber {
    point: SymplecticPoint,
    solutions: AffineSpace,
}

fn strict_upper_slots(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

fn unpack(point: &SymplecticPoint, z: &[FieldElement]) -> (Vec<FieldElement>, Matrix) {
    let d = point.space.dim();
    let f = point.space.field();
    let u = z[..d].to_vec();
    let mut s = Matrix::zeros(f, d, d);
    for (&(i, j), &a) in strict_upper_slots(d).iter().zip(&z[d..]) {
        s.set(i, j, a);
    }
    (u, point.flag.from_flag_coords(&s))
}

/// Residual of `x^T J - J x = J v u^T J + J u v^T J` on the upper triangle.
/// Multiplying the defining equation by `J` makes both sides symmetric.
fn moment_residual(space: &SymplecticSpace, v: &[FieldElement], u: &[FieldElement], x: &Matrix) -> Vec<FieldElement> {
    let j = space.gram();
    let f = space.field();
    let d = space.dim();
    let lhs = x.transpose().mul(j).sub(&j.mul(x));
    let jv = j.mul_vec(v);
    let ju = j.mul_vec(u);
    let vj = j.transpose().mul_vec(v);
    let uj = j.transpose().mul_vec(u);
    let rhs = Matrix::outer(f, &jv, &uj).add(&Matrix::outer(f, &ju, &vj));
    let diff = lhs.sub(&rhs);
    (0..d)
        .flat_map(|r| (r..d).map(move |c| (r, c)))
        .map(|(r, c)| diff.get(r, c))
        .collect()
}

pub fn conormal_fiber(point: &SymplecticPoint) -> ConormalFiber {
    let d = point.space.dim();
    let f = point.space.field();
    let unknowns = d + strict_upper_slots(d).len();
    let (a, b) = affine_system(f, unknowns, |z| {
        let (u, x) = unpack(point, z);
        moment_residual(&point.space, &point.v, &u, &x)
    });
    let solutions = solve_affine(&a, &b).expect("system shapes agree");
    ConormalFiber {
        point: point.clone(),
        solutions,
    }
}

impl ConormalFiber {
    pub fn dim(&self) -> usize {
        self.solutions.dim().expect("the fibre contains u = 0, x = 0")
    }

    pub fn solutions(&self) -> &AffineSpace {
        &self.solutions
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ConormalSample {
        let z = self.solutions.sample(rng).expect("nonempty");
        let (u, x) = unpack(&self.point, &z);
        ConormalSample {
            space: self.point.space.clone(),
            v: self.point.v.clone(),
            u,
            flag: self.point.flag.clone(),
            x,
        }
    }
}

/// `x V_i ⊆ V_(i-1)` and the moment map equation hold exactly.
pub fn is_in_y(s: &ConormalSample) -> bool {
    let t = s.flag.to_flag_coords(&s.x);
    let d = s.space.dim();
    let triangular = (0..d).all(|r| (0..=r).all(|c| t.get(r, c) == 0));
    triangular && moment_residual(&s.space, &s.v, &s.u, &s.x).iter().all(|&a| a == 0)
}

/// `C[x] v = span(v, x v, x² v, …)`.
pub fn cyclic_span(x: &Matrix, v: &[FieldElement]) -> Subspace {
    let d = x.rows();
    let mut vecs = Vec::with_capacity(d);
    let mut cur = v.to_vec();
    for _ in 0..d {
        let next = x.mul_vec(&cur);
        vecs.push(cur);
        cur = next;
    }
    Subspace::span(x.field(), d, &vecs)
}

/// The enhanced orbit `(μ; ν)` of `(v, x)` for nilpotent `x`.
///
/// `μ + ν` is the Jordan type of `x`, `μ_1 = dim C[x]v`, and the operator
/// induced on `V / C[x]v` has type `(μ_2 + ν_1, μ_3 + ν_2, …)`.
pub fn enhanced_orbit(v: &[FieldElement], x: &Matrix) -> Result<Bipartition> {
    let lambda = jordan_type(x)?;
    let w = cyclic_span(x, v);
    let rho = quotient_jordan_type(x, &w)?;
    let len = lambda.len() + 1;
    let mut mu = vec![w.dim() as i64];
    let mut nu = Vec::with_capacity(len);
    for k in 1..=len {
        let nk = lambda.part(k) as i64 - mu[k - 1];
        nu.push(nk);
        mu.push(rho.part(k) as i64 - nk);
    }
    let bad = || Error::InvalidRecursion(format!("λ = {lambda}, ρ = {rho}, μ = {mu:?}, ν = {nu:?}"));
    let to_partition = |seq: &[i64]| -> Result<Partition> {
        if seq.iter().any(|&a| a < 0) {
            return Err(bad());
        }
        Partition::new(seq.iter().map(|&a| a as usize).collect()).map_err(|_| bad())
    };
    let bp = Bipartition::new(to_partition(&mu)?, to_partition(&nu)?);
    if bp.shape() != lambda || rho.len() > len {
        return Err(bad());
    }
    Ok(bp)
}

/// The exotic orbit `(μ̃; ν̃)` of `(v, y)` for self-adjoint nilpotent `y`: the
/// enhanced label of `(v, y)` has the form `(μ̃ ∪ μ̃; ν̃ ∪ ν̃)`.
pub fn exotic_orbit(space: &SymplecticSpace, v: &[FieldElement], y: &Matrix) -> Result<Bipartition> {
    if space.adjoint(y) != *y {
        return Err(Error::NotSelfAdjoint);
    }
    let e = enhanced_orbit(v, y)?;
    match (e.mu.halved(), e.nu.halved()) {
        (Some(mu), Some(nu)) => Ok(Bipartition::new(mu, nu)),
        _ => Err(Error::NotDuplexPattern(e.to_string())),
    }
}

/// `dim {z ∈ sp(V) : z v = 0, z y = y z}`.
pub fn exotic_stabilizer_dim(space: &SymplecticSpace, v: &[FieldElement], y: &Matrix) -> usize {
    let d = space.dim();
    let f = space.field();
    let (a, _) = affine_system(f, d * d, |z| {
        let z = Matrix::from_rows(f, d, &z.chunks(d).map(<[_]>::to_vec).collect::<Vec<_>>());
        let lie = z.transpose().mul(space.gram()).add(&space.gram().mul(&z));
        let comm = z.mul(y).sub(&y.mul(&z));
        let mut eqs: Vec<_> = (0..d)
            .flat_map(|r| (r + 1..d).map(move |c| (r, c)))
            .map(|(r, c)| lie.get(r, c))
            .collect();
        eqs.extend(z.mul_vec(v));
        eqs.extend((0..d * d).map(|k| comm.get(k / d, k % d)));
        eqs
    });
    d * d - a.rank()
}

/// `dim K·(v, y) = n(2n+1) - exotic_stabilizer_dim`.
pub fn exotic_orbit_dim(space: &SymplecticSpace, v: &[FieldElement], y: &Matrix) -> usize {
    let n = space.n();
    n * (2 * n + 1) - exotic_stabilizer_dim(space, v, y)
}

/// The tableau of Jordan types of `x|_(V_1) ⊂ x|_(V_2) ⊂ …`.
pub fn tableau_of(x: &Matrix, flag: &Flag) -> Result<StandardTableau> {
    let s = flag.to_flag_coords(x);
    let d = s.rows();
    if (0..d).any(|r| (0..=r).any(|c| s.get(r, c) != 0)) {
        return Err(Error::NotFlagTriangular);
    }
    let mut chain = vec![Partition::empty()];
    for i in 1..=d {
        chain.push(jordan_type(&s.leading_block(i))?);
    }
    StandardTableau::from_chain(chain)
}

/// Dimension of `{u ∈ W^⊥ : (v, y - τ_{v,u}) ∈ closure of O_target}` with
/// `W = C[y]v`, or `None` when empty. The closure condition is
/// `(y - τ_{v,u})^(μ_1+ν_i) ((y^(μ_(i+1)+ν_i))^{-1} W) = 0` for all `i ≥ 1`,
/// expanded as `y^k - Σ_{j=1}^{k} y^(k-j) τ_{v,u} y^(j-1)`.
pub fn psi_fiber_dimension(
    space: &SymplecticSpace,
    v: &[FieldElement],
    y: &Matrix,
    target: &Bipartition,
) -> Result<Option<usize>> {
    let base = exotic_orbit(space, v, y)?;
    if psi(target)? != base {
        return Err(Error::FibreMismatch {
            target: target.to_string(),
            base: base.to_string(),
        });
    }
    let f = space.field();
    let d = space.dim();
    let w = cyclic_span(y, v);
    let wperp = space.perp(&w).basis_vectors();
    let powers: Vec<Matrix> = (0..=2 * d).map(|k| y.pow(k)).collect();
    let pow_v: Vec<Vec<FieldElement>> = powers.iter().map(|p| p.mul_vec(v)).collect();

    // one block of equations per (i, z): constant y^k z and the vectors y^(j-1) z, y^(k-j) v
    struct Block {
        yk_z: Vec<FieldElement>,
        terms: Vec<(Vec<FieldElement>, Vec<FieldElement>)>,
    }
    let (mu, nu) = (&target.mu, &target.nu);
    let mut blocks = Vec::new();
    for i in 1..=mu.len().max(nu.len()) + 1 {
        let k = mu.part(1) + nu.part(i);
        let e = mu.part(i + 1) + nu.part(i);
        let pre = w.preimage(&powers[e])?;
        for z in pre.basis_vectors() {
            let terms = (1..=k)
                .map(|j| (powers[j - 1].mul_vec(&z), pow_v[k - j].clone()))
                .collect();
            blocks.push(Block {
                yk_z: powers[k].mul_vec(&z),
                terms,
            });
        }
    }
    let (a, b) = affine_system(f, wperp.len(), |c| {
        let mut u = vec![0; d];
        for (ct, bt) in c.iter().zip(&wperp) {
            for (ui, &bi) in u.iter_mut().zip(bt) {
                *ui = f.mul_add(*ui, *ct, bi);
            }
        }
        let mut eqs = Vec::with_capacity(blocks.len() * d);
        for blk in &blocks {
            let mut r = blk.yk_z.clone();
            for (yz, yv) in &blk.terms {
                let coeff = space.form(&u, yz);
                for (ri, &vi) in r.iter_mut().zip(yv) {
                    *ri = f.sub(*ri, f.mul(coeff, vi));
                }
            }
            eqs.extend(r);
        }
        eqs
    });
    Ok(solve_affine(&a, &b)?.dim())
}

/// Per-sample checks of the structure of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZReport {
    /// `x` is flag-triangular and solves the moment map equation.
    pub in_y: bool,
    /// `<x^i v, x^j v> = <x^i u, x^j u> = <x^i v, x^j u> = 0` for `0 ≤ i, j ≤ 2n`.
    pub orthogonality: bool,
    /// `y = x + τ_{v,u}` is self-adjoint.
    pub self_adjoint: bool,
    /// `y^(2n) = 0`.
    pub nilpotent: bool,
    /// The enhanced label of `(v, x)` lies in `Q'_2n`.
    pub q_prime: bool,
    /// `Ψ(enhanced label of (v, x))` equals the exotic label of `(v, y)`.
    pub commuting_square: bool,
    /// The enhanced and exotic labels satisfy the balance system.
    pub balance: bool,
}

impl ZReport {
    pub fn all_ok(&self) -> bool {
        self.in_y
            && self.orthogonality
            && self.self_adjoint
            && self.nilpotent
            && self.q_prime
            && self.commuting_square
            && self.balance
    }
}

pub fn verify_z_properties(s: &ConormalSample) -> ZReport {
    let space = &s.space;
    let d = space.dim();
    let mut xv = vec![s.v.clone()];
    let mut xu = vec![s.u.clone()];
    for k in 0..d {
        xv.push(s.x.mul_vec(&xv[k]));
        xu.push(s.x.mul_vec(&xu[k]));
    }
    let orthogonality = (0..=d).all(|i| {
        (0..=d).all(|j| {
            space.form(&xv[i], &xv[j]) == 0 && space.form(&xu[i], &xu[j]) == 0 && space.form(&xv[i], &xu[j]) == 0
        })
    });
    let y = s.y();
    let self_adjoint = space.adjoint(&y) == y;
    let nilpotent = y.pow(d).is_zero();
    let enhanced = enhanced_orbit(&s.v, &s.x).ok();
    let exotic = exotic_orbit(space, &s.v, &y).ok();
    let q_prime = enhanced.as_ref().is_some_and(is_in_q_prime);
    let (commuting_square, balance) = match (&enhanced, &exotic) {
        (Some(e), Some(t)) => (psi(e).ok().as_ref() == Some(t), satisfies_balance(e, t)),
        _ => (false, false),
    };
    ZReport {
        in_y: is_in_y(s),
        orthogonality,
        self_adjoint,
        nilpotent,
        q_prime,
        commuting_square,
        balance,
    }
}

/// Sampling parameters for the correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RskConfig {
    pub field: PrimeField,
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_SAMPLES: usize = 8;
pub const DEFAULT_SEED: u64 = 1;

impl Default for RskConfig {
    fn default() -> Self {
        RskConfig {
            field: PrimeField::default(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl RskConfig {
    /// Votes needed for a majority: `⌈k/2⌉ + 1`, capped at `k`.
    pub fn threshold(&self) -> usize {
        (self.samples.div_ceil(2) + 1).min(self.samples)
    }
}

/// The value of the correspondence at one orbit, with the data of the
/// sample it was read from.
#[derive(Debug, Clone)]
pub struct RskOutcome {
    pub param: OrbitParam,
    pub pair: TaggedPair,
    /// Samples agreeing with the majority value.
    pub agreeing: usize,
    pub samples: usize,
    /// A sample realizing the majority value.
    pub witness: ConormalSample,
}

/// `((μ; ν), T)` for a generic point of the conormal bundle over the orbit `p`.
pub fn exotic_rsk(p: &OrbitParam, space: &SymplecticSpace, cfg: &RskConfig) -> Result<RskOutcome> {
    let point = representative(p, space, cfg.seed)?;
    let fiber = conormal_fiber(&point);
    let mut rng = seeded(cfg.seed);
    let mut votes: BTreeMap<TaggedPair, (usize, ConormalSample)> = BTreeMap::new();
    for _ in 0..cfg.samples {
        let s = fiber.sample(&mut rng);
        let bp = enhanced_orbit(&s.v, &s.x)?;
        let tab = tableau_of(&s.x, &s.flag)?;
        let pair = TaggedPair::new(bp, tab)?;
        votes.entry(pair).or_insert((0, s)).0 += 1;
    }
    let best = votes
        .iter()
        .max_by_key(|(_, (c, _))| *c)
        .map(|(k, (c, s))| (k.clone(), *c, s.clone()));
    match best {
        Some((pair, count, witness)) if count >= cfg.threshold() => Ok(RskOutcome {
            param: p.clone(),
            pair,
            agreeing: count,
            samples: cfg.samples,
            witness,
        }),
        other => Err(Error::GenericityUnstable {
            param: p.to_string(),
            samples: cfg.samples,
            best: other.map_or(0, |(_, c, _)| c),
        }),
    }
}

/// One row of the correspondence with its dimension bookkeeping.
#[derive(Debug, Clone)]
pub struct RskRow {
    pub outcome: RskOutcome,
    /// `dim O_(w,α)` from the stabilizer.
    pub orbit_dim: usize,
    /// Dimension of the conormal fibre over the representative.
    pub conormal_dim: usize,
    /// `dim O_Ψ(μ;ν)` (exotic orbit, from its stabilizer) plus the `ψ`-fibre dimension.
    pub z_dim: usize,
    /// `λ_2 + 2λ_3 + …` for `λ = μ + ν`.
    pub springer_dim: usize,
}

impl RskRow {
    pub fn param(&self) -> &OrbitParam {
        &self.outcome.param
    }

    pub fn pair(&self) -> &TaggedPair {
        &self.outcome.pair
    }
}

/// Seed used for the orbit at position `index` in canonical order.
pub fn row_seed(seed: u64, index: usize) -> u64 {
    mix(seed, index as u64)
}

pub fn rsk_row(p: &OrbitParam, index: usize, space: &SymplecticSpace, cfg: &RskConfig) -> Result<RskRow> {
    let row_cfg = RskConfig {
        seed: row_seed(cfg.seed, index),
        ..*cfg
    };
    let outcome = exotic_rsk(p, space, &row_cfg)?;
    let point = representative(p, space, row_cfg.seed)?;
    let w = &outcome.witness;
    let y = w.y();
    let fib = psi_fiber_dimension(space, &w.v, &y, &outcome.pair.bp)?.ok_or_else(|| Error::FibreMismatch {
        target: outcome.pair.bp.to_string(),
        base: "empty fibre over the sample's own point".into(),
    })?;
    let z_dim = exotic_orbit_dim(space, &w.v, &y) + fib;
    let springer_dim = outcome.pair.bp.shape().n_statistic();
    Ok(RskRow {
        orbit_dim: orbit_dim(&point),
        conormal_dim: conormal_fiber(&point).dim(),
        z_dim,
        springer_dim,
        outcome,
    })
}

/// Checks that `param ↦ pair` is a bijection `R'_2n → T'_2n`.
pub fn check_bijective(n: usize, rows: &[RskRow]) -> Result<()> {
    let expected = enumerate_t_prime(n);
    let mut seen: BTreeMap<&TaggedPair, &OrbitParam> = BTreeMap::new();
    let mut problems = Vec::new();
    for r in rows {
        if let Some(prev) = seen.insert(r.pair(), r.param()) {
            problems.push(format!("{} and {} both give {}", prev, r.param(), r.pair()));
        }
    }
    let hit: BTreeSet<&TaggedPair> = seen.keys().copied().collect();
    for missing in expected.iter().filter(|t| !hit.contains(t)) {
        problems.push(format!("{missing} is not hit"));
    }
    for extra in hit.iter().filter(|t| !expected.contains(t)) {
        problems.push(format!("{extra} is not in T'_2n"));
    }
    if rows.len() != expected.len() {
        problems.push(format!("{} rows for {} tagged pairs", rows.len(), expected.len()));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::NotBijective(problems.join("; ")))
    }
}

/// The correspondence on all of `R'_2n`, in canonical order, checked for bijectivity.
pub fn rsk_table(n: usize, cfg: &RskConfig) -> Result<Vec<RskRow>> {
    let space = SymplecticSpace::standard(cfg.field, n);
    let rows = enumerate_r_prime(n)
        .iter()
        .enumerate()
        .map(|(i, p)| rsk_row(p, i, &space, cfg))
        .collect::<Result<Vec<_>>>()?;
    check_bijective(n, &rows)?;
    Ok(rows)
}
