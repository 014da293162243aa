//! Nilpotent Jordan bases and Fitting decompositions.
//!
//! A Jordan base of a nilpotent `A` is a basis organised into chains
//! `x_{g,1} -> x_{g,2} -> ... -> x_{g,k_g} -> 0` under `A`. Chains are stored
//! longest first, and within each chain in application order, as consecutive
//! columns of the base-change matrix.
//!
//! [`rank_partition`] recovers the block sizes from ranks of powers alone and
//! shares no code with [`jordan_base`]; the two are cross-checked in tests.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::subspace::{direct_sum_check, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanBase {
    block_sizes: Vec<usize>,
    base_change: ExactMatrix,
}

impl JordanBase {
    /// Wraps precomputed chain data. `block_sizes` must be weakly decreasing
    /// and sum to the dimension of `base_change`, which must be invertible.
    pub fn new(block_sizes: Vec<usize>, base_change: ExactMatrix) -> Result<Self> {
        let n = base_change.require_square()?;
        if block_sizes.iter().sum::<usize>() != n {
            return Err(Error::ShapeMismatch(format!("block sizes {block_sizes:?} do not sum to {n}")));
        }
        if block_sizes.windows(2).any(|w| w[0] < w[1]) || block_sizes.contains(&0) {
            return Err(Error::InvalidProfile(format!("{block_sizes:?} is not a decreasing list of positive sizes")));
        }
        if base_change.rank() != n {
            return Err(Error::ShapeMismatch("base change is singular".into()));
        }
        Ok(JordanBase { block_sizes, base_change })
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Columns are `x_{1,1}, ..., x_{1,k_1}, x_{2,1}, ...`.
    pub fn base_change(&self) -> &ExactMatrix {
        &self.base_change
    }

    /// `n = max k_g`, 0 for the zero-dimensional space.
    pub fn nilpotency_index(&self) -> usize {
        self.block_sizes.first().copied().unwrap_or(0)
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn dim(&self) -> usize {
        self.base_change.rows()
    }

    /// Column index of `x_{block, step + 1}` (both 0-based).
    pub fn column_index(&self, block: usize, step: usize) -> usize {
        assert!(step < self.block_sizes[block], "step beyond block size");
        self.block_sizes[..block].iter().sum::<usize>() + step
    }

    pub fn vector(&self, block: usize, step: usize) -> Vec<FieldElement> {
        self.base_change.column(self.column_index(block, step))
    }

    /// The chain starts `x_{g,1}`.
    pub fn chain_tops(&self) -> Vec<Vec<FieldElement>> {
        (0..self.block_count()).map(|g| self.vector(g, 0)).collect()
    }

    /// The chain ends `x_{g,k_g}`, which span `ker A`.
    pub fn chain_ends(&self) -> Vec<Vec<FieldElement>> {
        (0..self.block_count()).map(|g| self.vector(g, self.block_sizes[g] - 1)).collect()
    }

    /// `x_{g,i}` for `i >= 2`.
    pub fn chain_tails(&self) -> Vec<Vec<FieldElement>> {
        (0..self.block_count())
            .flat_map(|g| (1..self.block_sizes[g]).map(move |i| (g, i)))
            .map(|(g, i)| self.vector(g, i))
            .collect()
    }

    /// `A x_{g,i} = x_{g,i+1}` and `A x_{g,k_g} = 0` for every chain.
    pub fn satisfies_chain_property(&self, a: &ExactMatrix) -> bool {
        let Ok(image) = a.try_mul(&self.base_change) else {
            return false;
        };
        let zero = vec![a.field().zero(); a.rows()];
        (0..self.block_count()).all(|g| {
            (0..self.block_sizes[g]).all(|i| {
                let got = image.column(self.column_index(g, i));
                if i + 1 < self.block_sizes[g] {
                    got == self.vector(g, i + 1)
                } else {
                    got == zero
                }
            })
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "block_sizes": self.block_sizes,
            "base_change": self.base_change.to_string_rows(),
            "index": self.nilpotency_index(),
        })
    }
}

/// `rank(A^0), rank(A^1), ...` up to and including the first repeated value.
fn rank_sequence(a: &ExactMatrix) -> Result<Vec<usize>> {
    let n = a.require_square()?;
    let mut ranks = vec![n];
    let mut power = ExactMatrix::identity(a.field(), n);
    loop {
        power = &power * a;
        let r = power.rank();
        let prev = *ranks.last().unwrap();
        ranks.push(r);
        if r == prev {
            return Ok(ranks);
        }
    }
}

fn require_nilpotent(ranks: &[usize]) -> Result<()> {
    let last = *ranks.last().unwrap();
    if last == 0 {
        Ok(())
    } else {
        Err(Error::NotNilpotent { power: ranks.len() - 2, rank: last })
    }
}

/// Smallest `n` with `A^n = 0`, `None` if `A` is not nilpotent.
pub fn nilpotency_index(a: &ExactMatrix) -> Result<Option<usize>> {
    let ranks = rank_sequence(a)?;
    Ok(ranks.iter().position(|&r| r == 0))
}

/// Block sizes from ranks only: the number of blocks of size at least `j`
/// is `rank(A^(j-1)) - rank(A^j)`.
pub fn rank_partition(a: &ExactMatrix) -> Result<Vec<usize>> {
    let ranks = rank_sequence(a)?;
    require_nilpotent(&ranks)?;
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for j in (1..=at_least.len()).rev() {
        let exactly = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(j, exactly));
    }
    Ok(sizes)
}

/// Top-down greedy chain construction.
///
/// For `j = n, ..., 1` the chain tops of length `j` complete
/// `ker A^(j-1) + A^(L-j)(tops of length L > j)` to `ker A^j`, drawing
/// candidates from the canonical basis of `ker A^j` in order.
pub fn jordan_base(a: &ExactMatrix) -> Result<JordanBase> {
    let n = a.require_square()?;
    let field = a.field();
    require_nilpotent(&rank_sequence(a)?)?;

    let mut kernels = vec![Subspace::zero(field, n)];
    let mut power = ExactMatrix::identity(field, n);
    while kernels.last().unwrap().dim() < n {
        power = &power * a;
        kernels.push(power.kernel());
    }
    let index = kernels.len() - 1;

    let apply = |v: &[FieldElement], times: usize| -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for _ in 0..times {
            v = a.mul_vec(&v).expect("square operator");
        }
        v
    };

    let mut tops: Vec<(Vec<FieldElement>, usize)> = Vec::new();
    for j in (1..=index).rev() {
        let mut spanning = kernels[j - 1].vectors();
        spanning.extend(tops.iter().map(|(x, len)| apply(x, len - j)));
        let mut covered = Subspace::span(field, n, &spanning)?;
        for candidate in kernels[j].vectors() {
            if covered.dim() == kernels[j].dim() {
                break;
            }
            if !covered.contains(&candidate) {
                spanning.push(candidate.clone());
                covered = Subspace::span(field, n, &spanning)?;
                tops.push((candidate, j));
            }
        }
    }

    let mut columns = Vec::with_capacity(n);
    for (x, len) in &tops {
        let mut v = x.clone();
        for _ in 0..*len {
            let next = a.mul_vec(&v)?;
            columns.push(std::mem::replace(&mut v, next));
        }
    }
    let block_sizes = tops.iter().map(|(_, len)| *len).collect();
    JordanBase::new(block_sizes, ExactMatrix::from_columns(field, n, &columns)?)
}

/// Matrix of `A` restricted to the invariant subspace `s`, in the canonical
/// basis of `s`.
pub fn restrict(a: &ExactMatrix, s: &Subspace) -> Result<ExactMatrix> {
    let n = a.require_square()?;
    if s.ambient_dim() != n {
        return Err(Error::ShapeMismatch(format!("subspace of K^{} for a {n}x{n} operator", s.ambient_dim())));
    }
    let images = a.try_mul(s.basis())?;
    let coords =
        images.columns().iter().map(|w| s.coordinates(w).ok_or(Error::NotInvariant)).collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(a.field(), s.dim(), &coords)
}

/// `M = V + W` with `V = im A^t`, `W = ker A^t` for the minimal stabilising
/// `t`, plus the split `W = W1 + W2` read off a Jordan base of `A|W`.
#[derive(Debug, Clone)]
pub struct FittingDecomposition {
    pub t: usize,
    pub v: Subspace,
    pub w: Subspace,
    /// Spanned by the chain tops `x_{g,1}` (in ambient coordinates).
    pub w1: Subspace,
    /// Spanned by the `x_{g,i}` with `i >= 2`; equals `A(W)`.
    pub w2: Subspace,
    /// `A|W` in the canonical basis of `W`.
    pub nilpotent_part: ExactMatrix,
    /// Jordan base of `nilpotent_part`, in coordinates of the basis of `W`.
    pub jordan: JordanBase,
}

impl FittingDecomposition {
    /// `dim T = dim W1 * dim ker A`, the zero-level centralizer dimension
    /// predicted by the Fitting route.
    pub fn cen0_dim(&self) -> usize {
        self.w1.dim() * self.jordan.block_count()
    }

    /// Checks every structural property against `a`.
    pub fn verify(&self, a: &ExactMatrix) -> Result<bool> {
        let n = a.rows();
        let kernel = a.kernel();
        let restricted_nilpotent = nilpotency_index(&self.nilpotent_part)? == Some(self.jordan.nilpotency_index());
        Ok(direct_sum_check(&[self.v.clone(), self.w.clone()], Some(n))?
            && self.v.map(a)? == self.v
            && self.w.map(a)?.leq(&self.w)?
            && restricted_nilpotent
            && direct_sum_check(&[self.w1.clone(), self.w2.clone()], Some(self.w.dim()))?
            && self.w1.join(&self.w2)? == self.w
            && kernel.leq(&self.w)?
            && self.w.map(a)? == self.w2
            && self.w1.dim() == kernel.dim()
            && self.t <= n.max(1))
    }
}

pub fn fitting_decomposition(a: &ExactMatrix) -> Result<FittingDecomposition> {
    let n = a.require_square()?;
    let field = a.field();
    let ranks = rank_sequence(a)?;
    // ranks[t] == ranks[t + 1] first happens at t = len - 2, but t >= 1
    let t = (ranks.len() - 2).max(1);
    let power = a.pow(t as u64)?;
    let v = power.image();
    let w = power.kernel();
    let nilpotent_part = restrict(a, &w)?;
    let jordan = jordan_base(&nilpotent_part)?;
    let to_ambient = |vs: Vec<Vec<FieldElement>>| -> Result<Subspace> {
        let ambient = vs.iter().map(|c| w.basis().mul_vec(c)).collect::<Result<Vec<_>>>()?;
        Subspace::span(field, n, &ambient)
    };
    let w1 = to_ambient(jordan.chain_tops())?;
    let w2 = to_ambient(jordan.chain_tails())?;
    Ok(FittingDecomposition { t, v, w, w1, w2, nilpotent_part, jordan })
}
