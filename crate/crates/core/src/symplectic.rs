//! Symplectic spaces, flags, and the `Sp(V)`-orbit of a point `(v, V_•)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::{affine_system, dot, Matrix, Subspace};
use crate::orbit::{subset_of, OrbitParam, Permutation, RankProfile, Subset};

/// `F_p^{2n}` with the form `<a, b> = a^T J b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    n: usize,
    gram: Matrix,
    gram_inv: Matrix,
}

impl SymplecticSpace {
    /// `J = [[0, I], [-I, 0]]`, so `<e_k, f_k> = 1` for `e_k = b_k`, `f_k = b_(n+k)`.
    pub fn standard(field: PrimeField, n: usize) -> Self {
        let d = 2 * n;
        let mut j = Matrix::zeros(field, d, d);
        for k in 0..n {
            j.set(k, n + k, 1);
            j.set(n + k, k, field.neg(1));
        }
        Self::with_gram(j).expect("standard form is symplectic")
    }

    /// Checks that `gram` is skew and invertible.
    pub fn with_gram(gram: Matrix) -> Result<Self> {
        let d = gram.rows();
        if !gram.is_square() || !d.is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "gram matrix must be square of even size, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if gram.transpose() != gram.scale(gram.field().neg(1)) {
            return Err(Error::NotSkew);
        }
        let gram_inv = gram.inverse()?;
        Ok(SymplecticSpace {
            n: d / 2,
            gram,
            gram_inv,
        })
    }

    /// Standard form conjugated by a random change of basis.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        let d = 2 * n;
        loop {
            let mut c = Matrix::zeros(field, d, d);
            for r in 0..d {
                for col in 0..d {
                    c.set(r, col, rng.gen_range(0..field.modulus()));
                }
            }
            if c.rank() == d {
                let j = Self::standard(field, n).gram;
                return Self::with_gram(c.transpose().mul(&j).mul(&c)).expect("congruent to J");
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> PrimeField {
        self.gram.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn form(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        dot(self.field(), a, &self.gram.mul_vec(b))
    }

    pub fn perp(&self, s: &Subspace) -> Subspace {
        s.perp(&self.gram).expect("gram matrix is invertible")
    }

    /// The adjoint `y^⊥ = J^{-1} y^T J`, so that `<y a, b> = <a, y^⊥ b>`.
    pub fn adjoint(&self, y: &Matrix) -> Matrix {
        self.gram_inv.mul(&y.transpose()).mul(&self.gram)
    }

    /// `τ_{v,u} : v' ↦ <u, v'> v`, i.e. the matrix `v u^T J`.
    pub fn tau(&self, v: &[FieldElement], u: &[FieldElement]) -> Matrix {
        let ju: Vec<_> = self.gram.transpose().mul_vec(u);
        Matrix::outer(self.field(), v, &ju)
    }

    /// `k^T J k = J`.
    pub fn is_symplectic(&self, k: &Matrix) -> bool {
        k.transpose().mul(&self.gram).mul(k) == self.gram
    }

    /// `y^T J + J y = 0`.
    pub fn in_lie_algebra(&self, y: &Matrix) -> bool {
        y.transpose().mul(&self.gram).add(&self.gram.mul(y)).is_zero()
    }

    /// The transvection `x ↦ x + c <a, x> a`.
    pub fn transvection(&self, a: &[FieldElement], c: FieldElement) -> Matrix {
        let f = self.field();
        let row = self.gram.transpose().mul_vec(a);
        let row = Matrix::outer(f, a, &row).scale(c);
        Matrix::identity(f, self.dim()).add(&row)
    }

    /// A product of `count` random transvections.
    pub fn random_group_element<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Matrix {
        let f = self.field();
        let full = Subspace::full(f, self.dim());
        let mut k = Matrix::identity(f, self.dim());
        for _ in 0..count {
            let a = full.sample(rng);
            let c = rng.gen_range(0..f.modulus());
            k = self.transvection(&a, c).mul(&k);
        }
        k
    }

    /// A Darboux basis `(e_k, f_k)` with `<e_k, f_l> = δ_kl`, `<e_k, e_l> = <f_k, f_l> = 0`,
    /// found by symplectic Gram–Schmidt on the coordinate vectors.
    pub fn darboux_basis(&self) -> Vec<(Vec<FieldElement>, Vec<FieldElement>)> {
        let f = self.field();
        let d = self.dim();
        let mut rest: Vec<Vec<FieldElement>> = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = 1;
                v
            })
            .collect();
        let mut out = Vec::with_capacity(self.n);
        while let Some(e) = rest.iter().find(|v| v.iter().any(|&a| a != 0)).cloned() {
            let partner = rest
                .iter()
                .find(|w| self.form(&e, w) != 0)
                .expect("nondegenerate form")
                .clone();
            let scale = f.inv(self.form(&e, &partner));
            let fv: Vec<_> = partner.iter().map(|&a| f.mul(a, scale)).collect();
            // project the remaining vectors onto span(e, f)^⊥
            rest = rest
                .iter()
                .map(|w| {
                    let a = self.form(w, &fv);
                    let b = self.form(&e, w);
                    (0..d)
                        .map(|i| f.sub(f.sub(w[i], f.mul(a, e[i])), f.mul(b, fv[i])))
                        .collect()
                })
                .collect();
            out.push((e, fv));
        }
        out
    }
}

/// A complete flag, stored as an invertible matrix whose first `i` columns span `V_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    cols: Matrix,
    inv: Matrix,
}

impl Flag {
    pub fn new(cols: Matrix) -> Result<Self> {
        let inv = cols.inverse()?;
        Ok(Flag { cols, inv })
    }

    pub fn coordinate(field: PrimeField, d: usize) -> Self {
        Self::new(Matrix::identity(field, d)).expect("identity is invertible")
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, d: usize, rng: &mut R) -> Self {
        loop {
            let mut c = Matrix::zeros(field, d, d);
            for r in 0..d {
                for col in 0..d {
                    c.set(r, col, rng.gen_range(0..field.modulus()));
                }
            }
            if let Ok(f) = Self::new(c) {
                return f;
            }
        }
    }

    /// Builds a flag through a chain `0 ⊂ W_1 ⊂ … ⊂ W_d` with `dim W_i = i`.
    pub fn from_chain(chain: &[Subspace]) -> Result<Self> {
        let d = chain.len();
        let field = chain
            .first()
            .map(Subspace::field)
            .ok_or_else(|| Error::DimensionMismatch("empty chain".into()))?;
        let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(d);
        for w in chain {
            let current = Subspace::span(field, d, &cols);
            let next = w
                .basis_vectors()
                .into_iter()
                .find(|b| !current.contains(b))
                .ok_or_else(|| Error::DimensionMismatch("chain is not strictly increasing".into()))?;
            cols.push(next);
        }
        Self::new(Matrix::from_cols(field, d, &cols))
    }

    pub fn dim(&self) -> usize {
        self.cols.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.cols.field()
    }

    /// Column `i` (1-based) of the adapted basis.
    pub fn column(&self, i: usize) -> Vec<FieldElement> {
        self.cols.col(i - 1)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.cols
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    /// `V_i`, for `0 ≤ i ≤ dim`.
    pub fn subspace(&self, i: usize) -> Subspace {
        Subspace::column_span(&self.cols, i)
    }

    pub fn chain(&self) -> Vec<Subspace> {
        (0..=self.dim()).map(|i| self.subspace(i)).collect()
    }

    /// `C^{-1} x C`: the operator in flag coordinates.
    pub fn to_flag_coords(&self, x: &Matrix) -> Matrix {
        self.inv.mul(x).mul(&self.cols)
    }

    pub fn from_flag_coords(&self, s: &Matrix) -> Matrix {
        self.cols.mul(s).mul(&self.inv)
    }

    /// Image of the flag under an invertible `k`.
    pub fn transform(&self, k: &Matrix) -> Result<Flag> {
        Flag::new(k.mul(&self.cols))
    }

    /// Same chain of subspaces, possibly a different adapted basis.
    pub fn same_chain(&self, other: &Flag) -> bool {
        self.chain() == other.chain()
    }
}

/// The flag `(V_(2n-i))^⊥`.
pub fn perp_flag(space: &SymplecticSpace, flag: &Flag) -> Flag {
    let d = flag.dim();
    let chain: Vec<_> = (1..=d).map(|i| space.perp(&flag.subspace(d - i))).collect();
    Flag::from_chain(&chain).expect("perpendicular spaces form a flag")
}

/// A point `(v, V_•)` of `V × G/B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticPoint {
    pub space: SymplecticSpace,
    pub v: Vec<FieldElement>,
    pub flag: Flag,
}

impl SymplecticPoint {
    pub fn new(space: SymplecticSpace, v: Vec<FieldElement>, flag: Flag) -> Result<Self> {
        if v.len() != space.dim() || flag.dim() != space.dim() || flag.field() != space.field() {
            return Err(Error::DimensionMismatch("point components disagree in size".into()));
        }
        Ok(SymplecticPoint { space, v, flag })
    }

    /// `k · (v, V_•)`.
    pub fn act(&self, k: &Matrix) -> Result<Self> {
        Ok(SymplecticPoint {
            space: self.space.clone(),
            v: k.mul_vec(&self.v),
            flag: self.flag.transform(k)?,
        })
    }

    pub fn random<R: Rng + ?Sized>(space: &SymplecticSpace, rng: &mut R) -> Self {
        let f = space.field();
        let d = space.dim();
        SymplecticPoint {
            space: space.clone(),
            v: Subspace::full(f, d).sample(rng),
            flag: Flag::random(f, d, rng),
        }
    }
}

/// Measured grids `d(i, j) = dim V_i ∩ V_(2n-j)^⊥` and
/// `m(i, j) = [v ∈ V_i + V_(2n-j)^⊥]`.
pub fn measured_profile(p: &SymplecticPoint) -> RankProfile {
    let d = p.space.dim();
    let chain = p.flag.chain();
    let perps: Vec<_> = (0..=d).map(|j| p.space.perp(&chain[d - j])).collect();
    let mut r = Vec::with_capacity((d + 1) * (d + 1));
    let mut m = Vec::with_capacity((d + 1) * (d + 1));
    for vi in &chain {
        for pj in &perps {
            r.push(vi.intersection(pj).expect("same ambient").dim());
            m.push(vi.sum(pj).expect("same ambient").contains(&p.v));
        }
    }
    RankProfile::from_grids(d, r, m)
}

/// The orbit parameter `(w, α)` of a point.
pub fn orbit_of(p: &SymplecticPoint) -> Result<OrbitParam> {
    let d = p.space.dim();
    let prof = measured_profile(p);
    let mut w = Vec::with_capacity(d);
    for j in 1..=d {
        let i = (1..=d)
            .find(|&i| prof.r(i, j) - prof.r(i, j - 1) == 1)
            .ok_or(Error::InconsistentRanks)?;
        w.push(i);
    }
    let w = Permutation::new(w).map_err(|_| Error::InconsistentRanks)?;
    let mut alpha: Subset = subset_of(&(1..=d).collect::<Vec<_>>());
    for i in 0..=d {
        for j in 0..=d {
            if prof.m(i, j) {
                alpha &= allowed(&w, i, j);
            }
        }
    }
    let param = OrbitParam::new(w, alpha).map_err(|_| Error::InconsistentRanks)?;
    let expected = RankProfile::of(&param);
    for i in 0..=d {
        for j in 0..=d {
            if prof.r(i, j) != expected.r(i, j) {
                return Err(Error::InconsistentRanks);
            }
            if prof.m(i, j) != expected.m(i, j) {
                return Err(Error::InconsistentMembership);
            }
        }
    }
    Ok(param)
}

/// `{1..i} ∪ w{1..j}` as a bitmask.
fn allowed(w: &Permutation, i: usize, j: usize) -> Subset {
    let low: Subset = (1..=i).fold(0, |acc, k| acc | 1 << (k - 1));
    (1..=j).fold(low, |acc, k| acc | 1 << (w.apply(k) - 1))
}

/// Candidate flag: with `σ = w w_0` and a Darboux basis, put `e_k` and `f_k`
/// at positions `a < σ(a)`. Then `V_(2n-j)^⊥` is spanned by the columns at
/// positions `w{1..j}`, so every `V_i + V_(2n-j)^⊥` is a coordinate subspace.
fn paired_flag(space: &SymplecticSpace, w: &Permutation) -> Flag {
    let d = space.dim();
    let sigma = w.compose(&Permutation::longest(d));
    let basis = space.darboux_basis();
    let mut cols = vec![Vec::new(); d];
    let mut k = 0;
    for a in 1..=d {
        let b = sigma.apply(a);
        if a < b {
            cols[a - 1] = basis[k].0.clone();
            cols[b - 1] = basis[k].1.clone();
            k += 1;
        }
    }
    Flag::new(Matrix::from_cols(space.field(), d, &cols)).expect("Darboux basis is a basis")
}

/// The unverified first guess: the paired flag with `v` the sum of the
/// flag columns at positions in `α`.
pub fn candidate(p: &OrbitParam, space: &SymplecticSpace) -> Result<SymplecticPoint> {
    let d = space.dim();
    if p.w().len() != d {
        return Err(Error::DimensionMismatch(format!("{p} in a space of dimension {d}")));
    }
    let f = space.field();
    let flag = paired_flag(space, p.w());
    let mut v = vec![0; d];
    for a in p.alpha_members() {
        v = crate::linalg::vec_add(f, &v, &flag.column(a));
    }
    SymplecticPoint::new(space.clone(), v, flag)
}

/// Number of randomized attempts on support `α` before the exhaustive sweep.
pub const RANDOM_TRIES: usize = 16;

/// A point of the orbit `p`, verified with [`orbit_of`] before returning.
pub fn representative(p: &OrbitParam, space: &SymplecticSpace, seed: u64) -> Result<SymplecticPoint> {
    let d = space.dim();
    if p.w().len() != d {
        return Err(Error::DimensionMismatch(format!("{p} in a space of dimension {d}")));
    }
    let f = space.field();
    let flag = paired_flag(space, p.w());
    let combo = |coeffs: &dyn Fn(usize) -> FieldElement, support: Subset| -> Vec<FieldElement> {
        let mut v = vec![0; d];
        for a in 1..=d {
            if support & (1 << (a - 1)) != 0 {
                let c = coeffs(a);
                let col = flag.column(a);
                for (vi, ci) in v.iter_mut().zip(col) {
                    *vi = f.mul_add(*vi, c, ci);
                }
            }
        }
        v
    };
    let check = |v: Vec<FieldElement>| -> Option<SymplecticPoint> {
        let pt = SymplecticPoint::new(space.clone(), v, flag.clone()).ok()?;
        (orbit_of(&pt).ok()? == *p).then_some(pt)
    };

    if let Some(pt) = check(candidate(p, space)?.v) {
        return Ok(pt);
    }
    let mut rng = crate::rng::seeded(seed);
    for _ in 0..RANDOM_TRIES {
        let cs: Vec<_> = (0..d).map(|_| rng.gen_range(1..f.modulus())).collect();
        if let Some(pt) = check(combo(&|a| cs[a - 1], p.alpha())) {
            return Ok(pt);
        }
    }
    for support in 0..(1u64 << d) {
        let cs: Vec<_> = (0..d).map(|_| rng.gen_range(1..f.modulus())).collect();
        if let Some(pt) = check(combo(&|a| cs[a - 1], support as Subset)) {
            return Ok(pt);
        }
    }
    Err(Error::RepresentativeSearchFailed(p.to_string()))
}

/// `dim {z ∈ sp(V) : z v = 0, z V_i ⊆ V_i}`.
///
/// In flag coordinates `z = C s C^{-1}` with `s` upper triangular, and the
/// conditions become `s^T G + G s = 0`, `s v' = 0` for `G = C^T J C`, `v' = C^{-1} v`.
pub fn stabilizer_dim(p: &SymplecticPoint) -> usize {
    let d = p.space.dim();
    let f = p.space.field();
    let c = p.flag.matrix();
    let g = c.transpose().mul(p.space.gram()).mul(c);
    let vp = p.flag.inverse_matrix().mul_vec(&p.v);
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let (a, _) = affine_system(f, slots.len(), |x| {
        let mut s = Matrix::zeros(f, d, d);
        for (&(i, j), &val) in slots.iter().zip(x) {
            s.set(i, j, val);
        }
        let gs = g.mul(&s);
        let skew = s.transpose().mul(&g).add(&gs);
        let mut eqs: Vec<_> = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .map(|(i, j)| skew.get(i, j))
            .collect();
        eqs.extend(s.mul_vec(&vp));
        eqs
    });
    slots.len() - a.rank()
}

/// `dim K - dim Stab = n(2n+1) - stabilizer_dim`.
pub fn orbit_dim(p: &SymplecticPoint) -> usize {
    let n = p.space.n();
    n * (2 * n + 1) - stabilizer_dim(p)
}
