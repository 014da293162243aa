//! Truncated polynomial matrix models of `Cen(A)` and `Cen0(A)` for a
//! nilpotent `A` with a given Jordan block profile.
//!
//! Blocks and chain steps are 0-based here: basis vector `x_{γ,i}` of the
//! module is `JordanBase::vector(γ, i)` and `Φ` sends `z^i · 1_γ` to it.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::jordan::JordanBase;
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, PolyMatrix};

/// Jordan block sizes `k_1 >= ... >= k_m >= 1` over a fixed field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockProfile {
    field: FieldSpec,
    k: Vec<usize>,
}

impl BlockProfile {
    pub fn new(field: FieldSpec, k: Vec<usize>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidProfile("a profile needs at least one block".into()));
        }
        if k.contains(&0) {
            return Err(Error::InvalidProfile(format!("block sizes must be positive: {k:?}")));
        }
        if k.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidProfile(format!("block sizes must be weakly decreasing: {k:?}")));
        }
        Ok(BlockProfile { field, k })
    }

    pub fn of_base(field: FieldSpec, base: &JordanBase) -> Result<Self> {
        Self::new(field, base.block_sizes().to_vec())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.k.len()
    }

    /// Largest block size, the nilpotency index of the canonical matrix.
    pub fn n(&self) -> usize {
        self.k[0]
    }

    /// Module dimension `Σ k_γ`.
    pub fn total(&self) -> usize {
        self.k.iter().sum()
    }

    /// `k_γ - k_δ` when `k_δ < k_γ`, else 0.
    pub fn k_gap(&self, delta: usize, gamma: usize) -> usize {
        self.k[gamma].saturating_sub(self.k[delta])
    }

    /// Block-diagonal lower shift, `x_{γ,i} -> x_{γ,i+1}`.
    pub fn canonical_nilpotent(&self) -> ExactMatrix {
        let blocks: Vec<ExactMatrix> = self
            .k
            .iter()
            .map(|&s| {
                ExactMatrix::from_fn(
                    self.field,
                    s,
                    s,
                    |i, j| if i == j + 1 { self.field.one() } else { self.field.zero() },
                )
            })
            .collect();
        ExactMatrix::block_diag(self.field, &blocks)
    }

    /// The Jordan base of `canonical_nilpotent`, with identity base change.
    pub fn canonical_base(&self) -> JordanBase {
        JordanBase::new(self.k.clone(), ExactMatrix::identity(self.field, self.total()))
            .expect("identity is a valid base change")
    }

    fn require_size(&self, p: &PolyMatrix) {
        assert_eq!(p.size(), self.m(), "polynomial matrix size must equal the block count");
        assert_eq!(p.field(), self.field, "polynomial matrix field must equal the profile field");
    }

    fn require_base(&self, base: &JordanBase) -> Result<()> {
        if base.block_sizes() != self.k.as_slice() {
            return Err(Error::ProfileMismatch(format!(
                "profile {:?} against Jordan base with blocks {:?}",
                self.k,
                base.block_sizes()
            )));
        }
        if base.base_change().field() != self.field {
            return Err(Error::FieldMismatch(self.field, base.base_change().field()));
        }
        Ok(())
    }
}

impl fmt::Display for BlockProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.k.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// All weakly decreasing profiles with `1 <= Σ k <= max_total`, ordered by
/// total and then reverse-lexicographically.
pub fn profiles_up_to(max_total: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=cap.min(rest)).rev() {
            prefix.push(k);
            rec(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=max_total {
        rec(total, total, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ModelSet {
    /// Entry `(δ,γ)` divisible by `z^{k_γ}`; the kernel of `Λ`.
    I,
    /// Entry `(δ,γ)` divisible by `z^{k_gap(δ,γ)}`.
    N,
    /// Entry `(δ,γ)` divisible by `z^{k_γ - 1}`.
    N0,
}

impl ModelSet {
    fn required_order(self, profile: &BlockProfile, delta: usize, gamma: usize) -> usize {
        match self {
            ModelSet::I => profile.k[gamma],
            ModelSet::N => profile.k_gap(delta, gamma),
            ModelSet::N0 => profile.k[gamma] - 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModelSet::I => "I",
            ModelSet::N => "N",
            ModelSet::N0 => "N0",
        }
    }
}

/// First entry `(δ,γ)` of `p` that violates membership, in row-major order.
pub fn first_violation(p: &PolyMatrix, profile: &BlockProfile, which: ModelSet) -> Option<(usize, usize)> {
    profile.require_size(p);
    let m = profile.m();
    (0..m)
        .flat_map(|d| (0..m).map(move |g| (d, g)))
        .find(|&(d, g)| !p.get(d, g).divisible_by_z_pow(which.required_order(profile, d, g)))
}

pub fn membership(p: &PolyMatrix, profile: &BlockProfile, which: ModelSet) -> bool {
    first_violation(p, profile, which).is_none()
}

fn require_membership(p: &PolyMatrix, profile: &BlockProfile, which: ModelSet) -> Result<()> {
    match first_violation(p, profile, which) {
        None => Ok(()),
        Some((row, col)) => Err(Error::Membership { set: which.name(), row, col }),
    }
}

/// A polynomial matrix reduced modulo `I`: entry `(δ,γ)` is kept modulo
/// `z^{k_γ}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPolyMatrix {
    profile: BlockProfile,
    entries: PolyMatrix,
}

impl TruncPolyMatrix {
    pub fn new(profile: BlockProfile, p: &PolyMatrix) -> Self {
        profile.require_size(p);
        let entries = p.truncate_columns(&profile.k);
        TruncPolyMatrix { profile, entries }
    }

    pub fn profile(&self) -> &BlockProfile {
        &self.profile
    }

    pub fn entry(&self, delta: usize, gamma: usize) -> &Poly {
        self.entries.get(delta, gamma)
    }

    pub fn as_poly_matrix(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// Product of representatives, reduced again. Well defined on classes
    /// when `rhs` lies in `N`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.profile, rhs.profile, "truncated matrices must share a profile");
        Self::new(self.profile.clone(), &(&self.entries * &rhs.entries))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.profile, rhs.profile, "truncated matrices must share a profile");
        Self::new(self.profile.clone(), &(&self.entries + &rhs.entries))
    }
}

impl fmt::Debug for TruncPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.profile, self.entries)
    }
}

/// An element of `K[z]^m` with block `γ` kept modulo `z^{k_γ}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoefficientVector {
    profile: BlockProfile,
    coords: Vec<Poly>,
}

impl CoefficientVector {
    pub fn new(profile: BlockProfile, coords: Vec<Poly>) -> Result<Self> {
        if coords.len() != profile.m() {
            return Err(Error::ProfileMismatch(format!("{} coordinates for {} blocks", coords.len(), profile.m())));
        }
        let coords = coords.iter().zip(&profile.k).map(|(p, &k)| p.truncate(k)).collect();
        Ok(CoefficientVector { profile, coords })
    }

    /// `1_δ`
    pub fn unit(profile: BlockProfile, delta: usize) -> Self {
        let coords = (0..profile.m())
            .map(|g| if g == delta { Poly::constant(profile.field.one()) } else { Poly::zero(profile.field) })
            .collect();
        CoefficientVector { profile, coords }
    }

    pub fn profile(&self) -> &BlockProfile {
        &self.profile
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    /// `z^s · self`
    pub fn shift(&self, s: usize) -> Self {
        let coords = self.coords.iter().map(|p| p.shift(s)).collect();
        CoefficientVector::new(self.profile.clone(), coords).expect("same block count")
    }

    /// The row vector product `self · P`.
    pub fn times(&self, p: &PolyMatrix) -> Self {
        self.profile.require_size(p);
        let m = self.profile.m();
        let coords = (0..m)
            .map(|d| (0..m).fold(Poly::zero(self.profile.field), |acc, g| &acc + &(&self.coords[g] * p.get(g, d))))
            .collect();
        CoefficientVector::new(self.profile.clone(), coords).expect("same block count")
    }
}

/// `Φ(f) = Σ_γ Σ_i coeff_i(f_γ) x_{γ,i}` in ambient coordinates.
pub fn phi_map(f: &CoefficientVector, base: &JordanBase) -> Result<Vec<FieldElement>> {
    f.profile.require_base(base)?;
    let field = f.profile.field;
    let mut out = vec![field.zero(); base.dim()];
    for (g, poly) in f.coords.iter().enumerate() {
        for (i, c) in poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(base.vector(g, i)) {
                *o = o.add_mul(c, &x);
            }
        }
    }
    Ok(out)
}

/// The matrix of `ψ_P : Φ(f) -> Φ(f P)` in ambient coordinates.
pub fn lambda_map(p: &PolyMatrix, base: &JordanBase) -> Result<ExactMatrix> {
    let profile = BlockProfile::of_base(p.field(), base)?;
    if p.size() != profile.m() {
        return Err(Error::ProfileMismatch(format!("{0}x{0} polynomial matrix for {1} blocks", p.size(), profile.m())));
    }
    require_membership(p, &profile, ModelSet::N)?;
    let mut images = Vec::with_capacity(profile.total());
    for (g, &k) in profile.k.iter().enumerate() {
        let row = CoefficientVector::unit(profile.clone(), g).times(p);
        for i in 0..k {
            images.push(phi_map(&row.shift(i), base)?);
        }
    }
    let y = ExactMatrix::from_columns(profile.field, profile.total(), &images)?;
    let s_inv = base.base_change().inverse()?.expect("Jordan base change is invertible");
    y.try_mul(&s_inv)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModelDims {
    pub n_mod_i: usize,
    pub n0_mod_i: usize,
    pub n_mod_n0: usize,
}

pub fn model_dims(profile: &BlockProfile) -> ModelDims {
    let n_mod_i = profile.k.iter().flat_map(|&a| profile.k.iter().map(move |&b| a.min(b))).sum();
    let m2 = profile.m() * profile.m();
    ModelDims { n_mod_i, n0_mod_i: m2, n_mod_n0: n_mod_i - m2 }
}

fn monomial_basis(profile: &BlockProfile, degrees: impl Fn(usize, usize) -> std::ops::Range<usize>) -> Vec<PolyMatrix> {
    let m = profile.m();
    let mut out = Vec::new();
    for d in 0..m {
        for g in 0..m {
            for j in degrees(d, g) {
                let entry = Poly::monomial(profile.field.one(), j);
                out.push(PolyMatrix::unit(profile.field, m, d, g, entry));
            }
        }
    }
    out
}

/// Representatives `z^j E_{δγ}`, `k_gap(δ,γ) <= j < k_γ`, of a basis of `N mod I`.
pub fn n_mod_i_basis(profile: &BlockProfile) -> Vec<PolyMatrix> {
    monomial_basis(profile, |d, g| profile.k_gap(d, g)..profile.k[g])
}

/// Representatives `z^{k_γ - 1} E_{δγ}` of a basis of `N0 mod I`.
pub fn n0_mod_i_basis(profile: &BlockProfile) -> Vec<PolyMatrix> {
    monomial_basis(profile, |_, g| profile.k[g] - 1..profile.k[g])
}

/// Representatives `z^j E_{δγ}`, `k_gap(δ,γ) <= j < k_γ - 1`, of a basis of `N mod N0`.
pub fn n_mod_n0_basis(profile: &BlockProfile) -> Vec<PolyMatrix> {
    monomial_basis(profile, |d, g| profile.k_gap(d, g)..profile.k[g] - 1)
}

/// The free positions of a coordinate-pattern subalgebra of `M_m(K)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PositionSet {
    pub m: usize,
    pub positions: Vec<(usize, usize)>,
}

impl PositionSet {
    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn basis(&self, field: FieldSpec) -> Vec<ExactMatrix> {
        self.positions.iter().map(|&(d, g)| ExactMatrix::unit(field, self.m, d, g)).collect()
    }
}

fn positions(profile: &BlockProfile, keep: impl Fn(usize, usize) -> bool) -> PositionSet {
    let m = profile.m();
    let positions = (0..m).flat_map(|d| (0..m).map(move |g| (d, g))).filter(|&(d, g)| keep(d, g)).collect();
    PositionSet { m, positions }
}

/// `W(X)`: every row, columns with `k_γ = 1`.
pub fn w_space(profile: &BlockProfile) -> PositionSet {
    positions(profile, |_, g| profile.k[g] == 1)
}

/// `U0(X)`: positions with `k_δ >= k_γ >= 2`.
pub fn u0_space(profile: &BlockProfile) -> PositionSet {
    positions(profile, |d, g| profile.k[d] >= profile.k[g] && profile.k[g] >= 2)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quotient {
    /// Defined on `N0`; keeps the columns with `k_γ = 1`.
    W,
    /// Defined on `N`; keeps the columns with `k_γ >= 2`.
    U0,
}

/// Constant terms of `p` at the positions of `W(X)` or `U0(X)`.
pub fn quotient_projection(p: &PolyMatrix, profile: &BlockProfile, which: Quotient) -> Result<ExactMatrix> {
    let (set, keep_col): (ModelSet, fn(usize) -> bool) = match which {
        Quotient::W => (ModelSet::N0, |k| k == 1),
        Quotient::U0 => (ModelSet::N, |k| k >= 2),
    };
    require_membership(p, profile, set)?;
    let field = profile.field;
    Ok(ExactMatrix::from_fn(field, profile.m(), profile.m(), |d, g| {
        if keep_col(profile.k[g]) {
            p.get(d, g).coeff(0)
        } else {
            field.zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: FieldSpec = FieldSpec::Prime(2);
    const F5: FieldSpec = FieldSpec::Prime(5);

    fn prof(k: &[usize]) -> BlockProfile {
        BlockProfile::new(F5, k.to_vec()).unwrap()
    }

    fn pm(profile: &BlockProfile, entries: &[&[i64]]) -> PolyMatrix {
        let f = profile.field();
        PolyMatrix::from_entries(f, profile.m(), entries.iter().map(|c| Poly::from_i64(f, c)).collect()).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(BlockProfile::new(F5, vec![1, 2]).is_err());
        assert!(BlockProfile::new(F5, vec![2, 0]).is_err());
        assert!(BlockProfile::new(F5, vec![]).is_err());
        let p = prof(&[3, 1]);
        assert_eq!((p.m(), p.n(), p.total()), (2, 3, 4));
        assert_eq!(p.k_gap(1, 0), 2);
        assert_eq!(p.k_gap(0, 1), 0);
    }

    #[test]
    fn profile_enumeration_counts_partitions() {
        let all = profiles_up_to(6);
        // p(1) + ... + p(6)
        assert_eq!(all.len(), 1 + 2 + 3 + 5 + 7 + 11);
        assert_eq!(all[0], vec![1]);
        assert!(all.contains(&vec![3, 2, 1]));
    }

    #[test]
    fn phi_examples() {
        let p = prof(&[2]);
        let base = p.canonical_base();
        let f = CoefficientVector::new(p.clone(), vec![Poly::from_i64(F5, &[1, 2])]).unwrap();
        assert_eq!(phi_map(&f, &base).unwrap(), vec![F5.from_i64(1), F5.from_i64(2)]);
        let top = CoefficientVector::unit(p.clone(), 0).shift(2);
        assert!(phi_map(&top, &base).unwrap().iter().all(FieldElement::is_zero));
        let wrong = prof(&[1, 1]).canonical_base();
        assert!(phi_map(&f, &wrong).is_err());
    }

    #[test]
    fn membership_examples() {
        let p = prof(&[3, 1]);
        assert!(membership(&PolyMatrix::zero(F5, 2), &p, ModelSet::I));
        assert!(membership(&PolyMatrix::zero(F5, 2), &p, ModelSet::N0));
        assert!(membership(&pm(&p, &[&[], &[], &[0, 0, 1], &[]]), &p, ModelSet::N));
        let bad = pm(&p, &[&[], &[], &[0, 1], &[]]);
        assert!(!membership(&bad, &p, ModelSet::N));
        assert_eq!(first_violation(&bad, &p, ModelSet::N), Some((1, 0)));

        let q = prof(&[2, 1]);
        assert!(membership(&pm(&q, &[&[0, 1], &[], &[], &[]]), &q, ModelSet::N0));
        assert!(!membership(&pm(&q, &[&[1], &[], &[], &[]]), &q, ModelSet::N0));
    }

    #[test]
    fn lambda_examples() {
        let p = prof(&[2]);
        let base = p.canonical_base();
        assert_eq!(lambda_map(&pm(&p, &[&[0, 1]]), &base).unwrap(), ExactMatrix::from_i64(F5, 2, 2, &[0, 0, 1, 0]));
        assert_eq!(lambda_map(&pm(&p, &[&[1]]), &base).unwrap(), ExactMatrix::identity(F5, 2));
        assert!(lambda_map(&pm(&p, &[&[0, 0, 1]]), &base).unwrap().is_zero());

        let q = prof(&[3, 1]);
        let err = lambda_map(&pm(&q, &[&[], &[], &[0, 1], &[]]), &q.canonical_base()).unwrap_err();
        assert!(matches!(err, Error::Membership { set: "N", row: 1, col: 0 }));
    }

    #[test]
    fn lambda_commutes_with_canonical_nilpotent() {
        let q = prof(&[3, 1]);
        let a = q.canonical_nilpotent();
        for b in n_mod_i_basis(&q) {
            let l = lambda_map(&b, &q.canonical_base()).unwrap();
            assert_eq!(&l * &a, &a * &l, "{b:?}");
        }
    }

    #[test]
    fn lambda_in_a_conjugated_base() {
        // A = S J S^-1 with J the canonical (2,1) matrix.
        let q = BlockProfile::new(F2, vec![2, 1]).unwrap();
        let j = q.canonical_nilpotent();
        let s = ExactMatrix::from_i64(F2, 3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
        let a = &(&s * &j) * &s.inverse().unwrap().unwrap();
        let base = crate::jordan::jordan_base(&a).unwrap();
        for b in n_mod_i_basis(&q) {
            let l = lambda_map(&b, &base).unwrap();
            assert_eq!(&l * &a, &a * &l);
        }
        let z = PolyMatrix::identity(F2, 2).map(|_, _, p| p.shift(1));
        assert_eq!(lambda_map(&z, &base).unwrap(), a);
    }

    #[test]
    fn model_dims_examples() {
        let d = |k: &[usize]| {
            let m = model_dims(&prof(k));
            (m.n_mod_i, m.n0_mod_i, m.n_mod_n0)
        };
        assert_eq!(d(&[1]), (1, 1, 0));
        assert_eq!(d(&[2, 1]), (5, 4, 1));
        // 3 + 1 + 1 + 1; the centralizer computation below agrees
        assert_eq!(d(&[3, 1]), (6, 4, 2));
        for k in profiles_up_to(6) {
            let p = prof(&k);
            let dims = model_dims(&p);
            let a = p.canonical_nilpotent();
            assert_eq!(crate::centralizer::cen_basis(&a, 12).unwrap().dim(), dims.n_mod_i);
            assert_eq!(crate::centralizer::cen0_basis(&a, 12).unwrap().dim(), dims.n0_mod_i);
            assert_eq!(n_mod_i_basis(&p).len(), dims.n_mod_i);
            assert_eq!(n0_mod_i_basis(&p).len(), dims.n0_mod_i);
            assert_eq!(n_mod_n0_basis(&p).len(), dims.n_mod_n0);
        }
    }

    #[test]
    fn position_examples() {
        let p = prof(&[2, 1]);
        assert_eq!(w_space(&p).positions, vec![(0, 1), (1, 1)]);
        assert_eq!(u0_space(&p).positions, vec![(0, 0)]);
        assert_eq!(w_space(&prof(&[1, 1])).dim(), 4);
        assert_eq!(u0_space(&prof(&[1, 1])).dim(), 0);
        assert_eq!(w_space(&prof(&[2, 2])).dim(), 0);
        assert_eq!(u0_space(&prof(&[2, 2])).dim(), 4);
    }

    #[test]
    fn projection_examples() {
        let p = prof(&[2, 1]);
        assert!(quotient_projection(&PolyMatrix::zero(F5, 2), &p, Quotient::W).unwrap().is_zero());
        let w = quotient_projection(&pm(&p, &[&[], &[3], &[], &[]]), &p, Quotient::W).unwrap();
        assert_eq!(w, ExactMatrix::from_i64(F5, 2, 2, &[0, 3, 0, 0]));
        let u = quotient_projection(&pm(&p, &[&[2, 5], &[], &[], &[]]), &p, Quotient::U0).unwrap();
        assert_eq!(u, ExactMatrix::from_i64(F5, 2, 2, &[2, 0, 0, 0]));
        let err = quotient_projection(&pm(&p, &[&[1], &[], &[], &[]]), &p, Quotient::W).unwrap_err();
        assert!(matches!(err, Error::Membership { set: "N0", .. }));
    }

    #[test]
    fn truncation_is_per_column() {
        let p = prof(&[2, 1]);
        let t = TruncPolyMatrix::new(p.clone(), &pm(&p, &[&[1, 2, 3], &[4, 1], &[0, 1, 1], &[2, 2]]));
        assert_eq!(t.entry(0, 0), &Poly::from_i64(F5, &[1, 2]));
        assert_eq!(t.entry(0, 1), &Poly::from_i64(F5, &[4]));
        assert_eq!(t.entry(1, 0), &Poly::from_i64(F5, &[0, 1]));
        assert_eq!(t.entry(1, 1), &Poly::from_i64(F5, &[2]));
    }
}
