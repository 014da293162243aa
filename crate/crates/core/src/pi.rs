//! Polynomial identities of finite algebras, and the vanishing of product
//! identities on `Cen0(A)` and on `Cen(A)/Cen0(A)` for nilpotent `A`.
//!
//! Multilinear identities are decided on basis tuples. A product of
//! polynomials in disjoint variables, `f = g_1 g_2 ⋯ g_k`, is handled factor
//! by factor: with `V_i` the span of the values of `g_i` on basis tuples, `f`
//! vanishes iff every product `v_1 ⋯ v_k` with `v_i ∈ V_i` does, which is a
//! chain of span computations instead of a walk over `dim^{deg f}` tuples.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::centralizer::{cen0_basis, MatrixSpace, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::jordan::jordan_base;
use crate::matrix::ExactMatrix;
use crate::ncpoly::{comm, product_identity, standard, Mult, NCPoly, WordTrie};
use crate::random;
use crate::structured::{lambda_map, n_mod_n0_basis, u0_space, w_space, BlockProfile};

/// Default cap on the number of substitution tuples an exhaustive check may
/// enumerate.
pub const DEFAULT_BUDGET: u128 = 200_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Substitute basis elements only; needs multilinear factors.
    ExhaustiveBasis,
    /// Substitute every algebra element; finite fields only.
    ExhaustiveAll,
    /// Random elements; a pass is not a proof.
    Randomized { trials: usize, seed: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails { witness: Vec<ExactMatrix> },
    NoCounterexampleFound { trials: usize },
}

impl Verdict {
    /// True only for a proved identity.
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// A formal product `g_1 g_2 ⋯ g_k` whose factors use disjoint, consecutive
/// blocks of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredPoly {
    label: String,
    factors: Vec<NCPoly>,
}

impl FactoredPoly {
    pub fn new(label: impl Into<String>, factors: Vec<NCPoly>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::IllPosed("a product needs at least one factor".into()));
        };
        if let Some(f) = factors.iter().find(|f| f.field() != first.field()) {
            return Err(Error::FieldMismatch(first.field(), f.field()));
        }
        Ok(FactoredPoly { label: label.into(), factors })
    }

    /// Splits `p` into its finest factorization into variable-disjoint
    /// consecutive blocks.
    pub fn from_poly(p: NCPoly) -> Self {
        let label = p.to_string();
        let mut factors = Vec::new();
        let mut rest = p;
        while let Some((g, h)) = rest.split_product() {
            factors.push(g);
            rest = h;
        }
        factors.push(rest);
        FactoredPoly { label, factors }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn factors(&self) -> &[NCPoly] {
        &self.factors
    }

    pub fn field(&self) -> FieldSpec {
        self.factors[0].field()
    }

    pub fn num_vars(&self) -> usize {
        self.factors.iter().map(NCPoly::num_vars).sum()
    }

    /// Concatenation of the factor lists, variables renamed disjointly.
    pub fn product(parts: &[FactoredPoly]) -> Result<Self> {
        let labels: Vec<&str> = parts.iter().map(|p| p.label.as_str()).collect();
        let factors = parts.iter().flat_map(|p| p.factors.iter().cloned()).collect();
        Self::new(labels.join(" · "), factors)
    }

    pub fn expand(&self) -> Result<NCPoly> {
        product_identity(&self.factors)
    }

    fn evaluate_with(&self, tries: &[WordTrie], args: &[&ExactMatrix], alg: &FiniteAlgebra) -> ExactMatrix {
        let mut offset = 0;
        let mut acc: Option<ExactMatrix> = None;
        for (f, trie) in self.factors.iter().zip(tries) {
            let v = trie.evaluate(&args[offset..offset + f.num_vars()], alg.mult()).expect("arity checked");
            offset += f.num_vars();
            acc = Some(match acc {
                None => v,
                Some(a) => alg.mul(&a, &v),
            });
        }
        acc.expect("at least one factor")
    }

    /// Product of the factor values, taken with the algebra's multiplication.
    pub fn evaluate(&self, args: &[ExactMatrix], alg: &FiniteAlgebra) -> Result<ExactMatrix> {
        if args.len() < self.num_vars() {
            return Err(Error::Arity { needed: self.num_vars(), given: args.len() });
        }
        let refs: Vec<&ExactMatrix> = args.iter().collect();
        let mut offset = 0;
        let mut acc: Option<ExactMatrix> = None;
        for f in &self.factors {
            let v = WordTrie::new(f).evaluate(&refs[offset..offset + f.num_vars()], alg.mult())?;
            offset += f.num_vars();
            acc = Some(match acc {
                None => v,
                Some(a) => alg.mul(&a, &v),
            });
        }
        Ok(acc.expect("at least one factor"))
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// Looks up `comm`, `comm2`, `s<k>`, or a `*`-separated product of these
/// such as `s4*s4`.
pub fn library(field: FieldSpec, name: &str) -> Result<FactoredPoly> {
    let mut factors = Vec::new();
    for part in name.split('*').map(str::trim) {
        match part {
            "comm" => factors.push(comm(field)),
            "comm2" => factors.extend([comm(field), comm(field)]),
            s => match s.strip_prefix('s').and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k >= 1 => factors.push(standard(field, k)),
                _ => return Err(Error::UnknownIdentity(name.to_string())),
            },
        }
    }
    FactoredPoly::new(name, factors)
}

/// Candidates tried, in order, when a factor identity is chosen
/// automatically.
pub fn default_candidates(field: FieldSpec) -> Vec<FactoredPoly> {
    ["comm", "comm2", "s4", "s4*comm", "comm*s4", "s4*s4", "s6", "s6*s6", "s8", "s8*s8"]
        .iter()
        .map(|n| library(field, n).expect("library names"))
        .collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn basis_tuple_count(dim: usize, r: usize, alternating: bool) -> u128 {
    if alternating {
        binomial(dim, r)
    } else {
        (dim as u128).checked_pow(r as u32).unwrap_or(u128::MAX)
    }
}

/// Advances positions `1..` of `t`, keeping `t[0]` fixed. With `increasing`,
/// tuples are strictly increasing.
fn next_tuple(t: &mut [usize], dim: usize, increasing: bool) -> bool {
    let r = t.len();
    for i in (1..r).rev() {
        let max = if increasing { dim - (r - i) } else { dim - 1 };
        if t[i] < max {
            t[i] += 1;
            for j in i + 1..r {
                t[j] = if increasing { t[j - 1] + 1 } else { 0 };
            }
            return true;
        }
    }
    false
}

fn first_tuple(lead: usize, dim: usize, r: usize, increasing: bool) -> Option<Vec<usize>> {
    if increasing {
        (lead + r <= dim).then(|| (lead..lead + r).collect())
    } else {
        let mut t = vec![0; r];
        t[0] = lead;
        Some(t)
    }
}

/// Values of `g` on basis tuples, thinned to a set spanning them modulo the
/// ideal, each with the tuple that produced it. For alternating `g` only
/// increasing tuples are needed.
fn factor_generators(g: &NCPoly, alg: &FiniteAlgebra) -> Result<Vec<(Vec<usize>, ExactMatrix)>> {
    let r = g.num_vars();
    let dim = alg.dim();
    let increasing = g.is_alternating();
    let trie = WordTrie::new(g);
    let thin = |items: Vec<(Vec<usize>, ExactMatrix)>| -> Result<Vec<(Vec<usize>, ExactMatrix)>> {
        let mut space = alg.ideal().clone();
        let mut kept = Vec::new();
        for (t, v) in items {
            if !space.contains(&v) {
                space = space.join(&MatrixSpace::span(alg.field(), alg.matrix_size(), std::slice::from_ref(&v))?)?;
                kept.push((t, v));
            }
        }
        Ok(kept)
    };
    let shards: Vec<Vec<(Vec<usize>, ExactMatrix)>> = (0..dim)
        .into_par_iter()
        .map(|lead| {
            let mut values = Vec::new();
            let Some(mut t) = first_tuple(lead, dim, r, increasing) else {
                return Ok(values);
            };
            let mut space = alg.ideal().clone();
            loop {
                let args: Vec<&ExactMatrix> = t.iter().map(|&i| &alg.basis()[i]).collect();
                let v = trie.evaluate(&args, alg.mult())?;
                if !space.contains(&v) {
                    space =
                        space.join(&MatrixSpace::span(alg.field(), alg.matrix_size(), std::slice::from_ref(&v))?)?;
                    values.push((t.clone(), v));
                }
                if !next_tuple(&mut t, dim, increasing) {
                    return Ok(values);
                }
            }
        })
        .collect::<Result<_>>()?;
    thin(shards.into_iter().flatten().collect())
}

/// Single-factor search that stops at the first basis tuple whose value
/// leaves the ideal.
fn first_nonvanishing(g: &NCPoly, alg: &FiniteAlgebra) -> Verdict {
    let r = g.num_vars();
    let dim = alg.dim();
    let increasing = g.is_alternating();
    let trie = WordTrie::new(g);
    let found = (0..dim).into_par_iter().find_map_first(|lead| {
        let mut t = first_tuple(lead, dim, r, increasing)?;
        loop {
            let args: Vec<&ExactMatrix> = t.iter().map(|&i| &alg.basis()[i]).collect();
            let v = trie.evaluate(&args, alg.mult()).expect("basis elements share a shape");
            if !alg.is_zero(&v) {
                return Some(t);
            }
            if !next_tuple(&mut t, dim, increasing) {
                return None;
            }
        }
    });
    match found {
        None => Verdict::Holds,
        Some(t) => Verdict::Fails { witness: t.into_iter().map(|i| alg.basis()[i].clone()).collect() },
    }
}

/// Basis-index tuple on which `v_1 ⋯ v_k` leaves the ideal, if any.
fn nonvanishing_product(gens: &[Vec<(Vec<usize>, ExactMatrix)>], alg: &FiniteAlgebra) -> Result<Option<Vec<usize>>> {
    let k = gens.len();
    if gens.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let (field, d) = (alg.field(), alg.matrix_size());
    // suffix[i] = span{v_i ⋯ v_{k-1}} + ideal
    let mut suffix: Vec<Vec<ExactMatrix>> = vec![Vec::new(); k];
    let last: Vec<ExactMatrix> = gens[k - 1].iter().map(|(_, v)| v.clone()).collect();
    suffix[k - 1] = MatrixSpace::span(field, d, &last)?.join(alg.ideal())?.basis();
    for i in (0..k - 1).rev() {
        let products: Vec<ExactMatrix> =
            gens[i].iter().flat_map(|(_, g)| suffix[i + 1].iter().map(move |s| alg.mul(g, s))).collect();
        suffix[i] = MatrixSpace::span(field, d, &products)?.join(alg.ideal())?.basis();
    }
    if suffix[0].len() == alg.ideal().dim() {
        return Ok(None);
    }
    let mut prefix: Option<ExactMatrix> = None;
    let mut witness = Vec::new();
    for i in 0..k {
        let extend = |g: &ExactMatrix| prefix.as_ref().map_or_else(|| g.clone(), |p| alg.mul(p, g));
        let (tuple, chosen) =
            gens[i]
                .iter()
                .map(|(t, g)| (t, extend(g)))
                .find(|(_, c)| {
                    if i + 1 == k {
                        !alg.is_zero(c)
                    } else {
                        suffix[i + 1].iter().any(|s| !alg.is_zero(&alg.mul(c, s)))
                    }
                })
                .expect("some generator keeps the product outside the ideal");
        witness.extend_from_slice(tuple);
        prefix = Some(chosen);
    }
    Ok(Some(witness))
}

fn exhaustive_basis(f: &FactoredPoly, alg: &FiniteAlgebra, budget: u128) -> Result<Verdict> {
    let mut needed: u128 = 0;
    for g in &f.factors {
        if g.num_vars() == 0 || !g.is_multilinear() {
            return Err(Error::NotMultilinear);
        }
        needed = needed.saturating_add(basis_tuple_count(alg.dim(), g.num_vars(), g.is_alternating()));
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if let [g] = f.factors.as_slice() {
        return Ok(first_nonvanishing(g, alg));
    }
    let gens: Vec<_> = f.factors.iter().map(|g| factor_generators(g, alg)).collect::<Result<_>>()?;
    Ok(match nonvanishing_product(&gens, alg)? {
        None => Verdict::Holds,
        Some(idx) => Verdict::Fails { witness: idx.into_iter().map(|i| alg.basis()[i].clone()).collect() },
    })
}

fn exhaustive_all(f: &FactoredPoly, alg: &FiniteAlgebra, budget: u128) -> Result<Verdict> {
    let q = alg.field().order().ok_or(Error::InfiniteField)? as u128;
    let r = f.num_vars() as u32;
    let per_var = q.checked_pow(alg.dim() as u32);
    let needed = per_var.and_then(|e| e.checked_pow(r)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let elements: Vec<ExactMatrix> = (0..per_var.expect("bounded by the budget"))
        .map(|mut code| {
            let coeffs: Vec<_> = (0..alg.dim())
                .map(|_| {
                    let digit = (code % q) as i64;
                    code /= q;
                    alg.field().from_i64(digit)
                })
                .collect();
            alg.combination(&coeffs)
        })
        .collect();
    let tries: Vec<WordTrie> = f.factors.iter().map(WordTrie::new).collect();
    let count = elements.len();
    let r = r as usize;
    if r == 0 {
        return Err(Error::IllPosed("a polynomial without variables is not an identity test".into()));
    }
    let witness = (0..count).into_par_iter().find_map_first(|lead| {
        let mut t = first_tuple(lead, count, r, false).expect("nonempty");
        loop {
            let args: Vec<&ExactMatrix> = t.iter().map(|&i| &elements[i]).collect();
            if !alg.is_zero(&f.evaluate_with(&tries, &args, alg)) {
                return Some(t.iter().map(|&i| elements[i].clone()).collect::<Vec<_>>());
            }
            if !next_tuple(&mut t, count, false) {
                return None;
            }
        }
    });
    Ok(witness.map_or(Verdict::Holds, |witness| Verdict::Fails { witness }))
}

fn randomized(f: &FactoredPoly, alg: &FiniteAlgebra, trials: usize, seed: u64) -> Verdict {
    let tries: Vec<WordTrie> = f.factors.iter().map(WordTrie::new).collect();
    for trial in 0..trials {
        let mut rng = random::trial_rng(seed, trial as u64);
        let args: Vec<ExactMatrix> = (0..f.num_vars())
            .map(|_| {
                let c: Vec<_> = (0..alg.dim()).map(|_| random::element(alg.field(), &mut rng)).collect();
                alg.combination(&c)
            })
            .collect();
        let refs: Vec<&ExactMatrix> = args.iter().collect();
        if !alg.is_zero(&f.evaluate_with(&tries, &refs, alg)) {
            return Verdict::Fails { witness: args };
        }
    }
    Verdict::NoCounterexampleFound { trials }
}

/// Decides whether the product `f` vanishes on `alg`.
pub fn factored_is_identity(f: &FactoredPoly, alg: &FiniteAlgebra, mode: Mode, budget: u128) -> Result<Verdict> {
    if f.field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field(), f.field()));
    }
    match mode {
        Mode::ExhaustiveBasis => exhaustive_basis(f, alg, budget),
        Mode::ExhaustiveAll => exhaustive_all(f, alg, budget),
        Mode::Randomized { trials, seed } => Ok(randomized(f, alg, trials, seed)),
    }
}

/// Decides whether `f` vanishes on `alg`. Products of variable-disjoint
/// blocks are detected and checked factor by factor.
pub fn is_identity(f: &NCPoly, alg: &FiniteAlgebra, mode: Mode, budget: u128) -> Result<Verdict> {
    let factored = match mode {
        Mode::ExhaustiveBasis => FactoredPoly::from_poly(f.clone()),
        _ => FactoredPoly::new(f.to_string(), vec![f.clone()])?,
    };
    factored_is_identity(&factored, alg, mode, budget)
}

/// The first candidate proved to vanish on `alg`. Candidates over budget are
/// skipped; if nothing qualifies the last budget error is returned.
pub fn select_identity(alg: &FiniteAlgebra, candidates: &[FactoredPoly], budget: u128) -> Result<FactoredPoly> {
    let mut last_budget_error = None;
    for c in candidates {
        match factored_is_identity(c, alg, Mode::ExhaustiveBasis, budget) {
            Ok(Verdict::Holds) => return Ok(c.clone()),
            Ok(_) => {}
            Err(e @ Error::BudgetExceeded { .. }) => last_budget_error = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_budget_error.unwrap_or_else(|| Error::IllPosed("no candidate identity holds on the algebra".into())))
}

/// `W(X)` with the opposite multiplication, as a subalgebra of `M_m(K)`.
pub fn w_algebra(profile: &BlockProfile) -> FiniteAlgebra {
    let f = profile.field();
    FiniteAlgebra::new(f, profile.m(), &w_space(profile).basis(f), Mult::Opposite).expect("W(X) is closed")
}

/// `U0(X)` with the opposite multiplication, as a subalgebra of `M_m(K)`.
pub fn u0_algebra(profile: &BlockProfile) -> FiniteAlgebra {
    let f = profile.field();
    FiniteAlgebra::new(f, profile.m(), &u0_space(profile).basis(f), Mult::Opposite).expect("U0(X) is closed")
}

/// `Cen0(A)` under the ordinary product.
pub fn cen0_algebra(a: &ExactMatrix, max_dim: usize) -> Result<FiniteAlgebra> {
    let c = cen0_basis(a, max_dim)?;
    FiniteAlgebra::new(a.field(), a.rows(), &c.basis(), Mult::Standard)
}

/// `Cen(A)/Cen0(A)` under the ordinary product, with coset representatives
/// `Λ(B)` for the monomial basis `B` of `N mod N0`.
pub fn quotient_algebra(a: &ExactMatrix, max_dim: usize) -> Result<FiniteAlgebra> {
    let base = jordan_base(a)?;
    let profile = BlockProfile::of_base(a.field(), &base)?;
    let reps: Vec<ExactMatrix> =
        n_mod_n0_basis(&profile).iter().map(|p| lambda_map(p, &base)).collect::<Result<_>>()?;
    FiniteAlgebra::quotient(a.field(), a.rows(), &reps, cen0_basis(a, max_dim)?, Mult::Standard)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiLimits {
    pub budget: u128,
    pub max_dim: usize,
}

impl Default for PiLimits {
    fn default() -> Self {
        PiLimits { budget: DEFAULT_BUDGET, max_dim: DEFAULT_MAX_DIM }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiOutcome {
    Holds,
    PreconditionFailed { index: usize, witness: Vec<ExactMatrix> },
    ProductFails { witness: Vec<ExactMatrix> },
}

#[derive(Clone, Debug)]
pub struct PiReport {
    pub profile: Vec<usize>,
    pub n: usize,
    pub factors: Vec<String>,
    pub precondition_algebra: &'static str,
    pub precondition_dim: usize,
    pub target: &'static str,
    pub target_dim: usize,
    pub outcome: PiOutcome,
}

impl PiReport {
    pub fn holds(&self) -> bool {
        self.outcome == PiOutcome::Holds
    }

    pub fn to_json(&self) -> Value {
        let mats = |w: &[ExactMatrix]| w.iter().map(|m| json!(m.to_string_rows())).collect::<Vec<_>>();
        let outcome = match &self.outcome {
            PiOutcome::Holds => json!({ "status": "holds" }),
            PiOutcome::PreconditionFailed { index, witness } => {
                json!({ "status": "precondition_failed", "factor": index + 1, "witness": mats(witness) })
            }
            PiOutcome::ProductFails { witness } => json!({ "status": "product_fails", "witness": mats(witness) }),
        };
        json!({
            "profile": self.profile,
            "n": self.n,
            "factors": self.factors,
            "precondition_algebra": self.precondition_algebra,
            "precondition_dim": self.precondition_dim,
            "target": self.target,
            "target_dim": self.target_dim,
            "outcome": outcome,
        })
    }
}

struct Setting {
    profile: BlockProfile,
    n: usize,
}

fn setting(a: &ExactMatrix) -> Result<Setting> {
    let base = jordan_base(a)?;
    let profile = BlockProfile::of_base(a.field(), &base)?;
    Ok(Setting { n: profile.n(), profile })
}

fn run_check(
    s: &Setting,
    factors: &[FactoredPoly],
    pre: (&'static str, FiniteAlgebra),
    target: (&'static str, FiniteAlgebra),
    budget: u128,
) -> Result<PiReport> {
    let (pre_name, pre_alg) = pre;
    let (target_name, target_alg) = target;
    let mut report = PiReport {
        profile: s.profile.k().to_vec(),
        n: s.n,
        factors: factors.iter().map(|f| f.label().to_string()).collect(),
        precondition_algebra: pre_name,
        precondition_dim: pre_alg.dim(),
        target: target_name,
        target_dim: target_alg.dim(),
        outcome: PiOutcome::Holds,
    };
    for (index, f) in factors.iter().enumerate() {
        if let Verdict::Fails { witness } = factored_is_identity(f, &pre_alg, Mode::ExhaustiveBasis, budget)? {
            report.outcome = PiOutcome::PreconditionFailed { index, witness };
            return Ok(report);
        }
    }
    let product = FactoredPoly::product(factors)?;
    if let Verdict::Fails { witness } = factored_is_identity(&product, &target_alg, Mode::ExhaustiveBasis, budget)? {
        report.outcome = PiOutcome::ProductFails { witness };
    }
    Ok(report)
}

/// Given `n` identities of `W(X)^op` (`n` the nilpotency index of `A`),
/// checks that each really is one and that their product vanishes on
/// `Cen0(A)`.
pub fn zero_level_check(a: &ExactMatrix, factors: &[FactoredPoly], limits: PiLimits) -> Result<PiReport> {
    let s = setting(a)?;
    if factors.len() != s.n {
        return Err(Error::Arity { needed: s.n, given: factors.len() });
    }
    let target = cen0_algebra(a, limits.max_dim)?;
    run_check(&s, factors, ("W(X)^op", w_algebra(&s.profile)), ("Cen0(A)", target), limits.budget)
}

/// Given `n - 1` identities of `U0(X)^op`, checks each and that their
/// product vanishes on `Cen(A)/Cen0(A)`. Rejects `n = 1`, where the product
/// would be empty.
pub fn quotient_check(a: &ExactMatrix, factors: &[FactoredPoly], limits: PiLimits) -> Result<PiReport> {
    let s = setting(a)?;
    if s.n == 1 {
        return Err(Error::IllPosed("nilpotency index 1 leaves an empty product of identities".into()));
    }
    if factors.len() != s.n - 1 {
        return Err(Error::Arity { needed: s.n - 1, given: factors.len() });
    }
    let target = quotient_algebra(a, limits.max_dim)?;
    run_check(&s, factors, ("U0(X)^op", u0_algebra(&s.profile)), ("Cen(A)/Cen0(A)", target), limits.budget)
}

/// `zero_level_check` with the factor chosen from `default_candidates`.
pub fn auto_zero_level_check(a: &ExactMatrix, limits: PiLimits) -> Result<PiReport> {
    let s = setting(a)?;
    let f = select_identity(&w_algebra(&s.profile), &default_candidates(a.field()), limits.budget)?;
    zero_level_check(a, &vec![f; s.n], limits)
}

/// `quotient_check` with the factor chosen from `default_candidates`.
pub fn auto_quotient_check(a: &ExactMatrix, limits: PiLimits) -> Result<PiReport> {
    let s = setting(a)?;
    if s.n == 1 {
        return Err(Error::IllPosed("nilpotency index 1 leaves an empty product of identities".into()));
    }
    let f = select_identity(&u0_algebra(&s.profile), &default_candidates(a.field()), limits.budget)?;
    quotient_check(a, &vec![f; s.n - 1], limits)
}
