//! Seeded generators for the verification suites.
//!
//! GF(p) entries are uniform residues; rational entries are integers in
//! `[-3, 3]`. Nilpotent matrices are `S N S^-1` with `N` the canonical
//! nilpotent of a uniformly chosen block profile and `S` a rejection-sampled
//! invertible matrix.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, PolyMatrix};
use crate::structured::{profiles_up_to, BlockProfile, ModelSet};

/// The generator used for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

pub fn element(field: FieldSpec, rng: &mut impl Rng) -> FieldElement {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..i64::from(p))),
        FieldSpec::Rationals => field.from_i64(rng.random_range(-3..=3)),
    }
}

pub fn matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut impl Rng) -> ExactMatrix {
    ExactMatrix::from_fn(field, rows, cols, |_, _| element(field, rng))
}

/// A uniformly random invertible matrix, by rejection.
pub fn invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> (ExactMatrix, ExactMatrix) {
    loop {
        let s = matrix(field, n, n, rng);
        if let Some(inv) = s.inverse().expect("square") {
            return (s, inv);
        }
    }
}

/// A random block profile with `Σ k = n >= 1`, uniform over profiles.
pub fn profile(field: FieldSpec, n: usize, rng: &mut impl Rng) -> BlockProfile {
    let all: Vec<Vec<usize>> = profiles_up_to(n).into_iter().filter(|k| k.iter().sum::<usize>() == n).collect();
    let k = all[rng.random_range(0..all.len())].clone();
    BlockProfile::new(field, k).expect("enumerated profiles are valid")
}

/// A nilpotent `n x n` matrix (`n >= 1`) conjugate to the canonical matrix
/// of a random profile. Returns the matrix and the profile used.
pub fn nilpotent(field: FieldSpec, n: usize, rng: &mut impl Rng) -> (ExactMatrix, BlockProfile) {
    let p = profile(field, n, rng);
    let (s, s_inv) = invertible(field, n, rng);
    (&(&s * &p.canonical_nilpotent()) * &s_inv, p)
}

/// A polynomial with `len` random coefficients (possibly fewer after trimming).
pub fn poly(field: FieldSpec, len: usize, rng: &mut impl Rng) -> Poly {
    Poly::from_coeffs(field, (0..len).map(|_| element(field, rng)).collect())
}

/// A random element of `I`, `N` or `N0`: entry `(δ,γ)` is `z^e` times a
/// random polynomial, `e` the required order. Degrees run up to `k_γ + 1`, so
/// some entries exceed the truncation width.
pub fn model_matrix(profile: &BlockProfile, set: ModelSet, rng: &mut impl Rng) -> PolyMatrix {
    let field = profile.field();
    let k = profile.k();
    PolyMatrix::zero(field, profile.m()).map(|d, g, _| {
        let order = match set {
            ModelSet::I => k[g],
            ModelSet::N => profile.k_gap(d, g),
            ModelSet::N0 => k[g] - 1,
        };
        poly(field, k[g] + 2 - order, rng).shift(order)
    })
}

/// A random element of `z M_m(K[z])` with degrees below `max_deg`.
pub fn z_multiple(field: FieldSpec, m: usize, max_deg: usize, rng: &mut impl Rng) -> PolyMatrix {
    PolyMatrix::zero(field, m).map(|_, _, _| poly(field, max_deg.saturating_sub(1), rng).shift(1))
}
