use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

/// A linear subspace of `K^n` stored in column-reduced echelon form.
///
/// The basis columns are the nonzero rows of the reduced row-echelon form of
/// any spanning set, so two subspaces are equal exactly when their stored
/// bases are equal. Basis column `i` has a 1 at coordinate `pivots[i]` and
/// every other basis column is 0 there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let rows = if vectors.is_empty() {
            ExactMatrix::zeros(field, 0, ambient_dim)
        } else {
            ExactMatrix::from_rows(field, vectors.to_vec())?
        };
        let rref = rows.rref();
        let rank = rref.rank();
        let basis = ExactMatrix::from_fn(field, ambient_dim, rank, |i, j| rref.reduced[(j, i)].clone());
        Ok(Subspace { ambient_dim, basis, pivots: rref.pivots })
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: ExactMatrix::zeros(field, ambient_dim, 0), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: ExactMatrix::identity(field, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// `ambient_dim x dim` matrix of canonical basis columns.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<FieldElement>> {
        self.basis.columns()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` against the canonical basis, `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length must equal the ambient dimension");
        let coords: Vec<FieldElement> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = -c;
            for (i, r) in rest.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *r = r.add_mul(&neg, b);
                }
            }
        }
        rest.iter().all(FieldElement::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    fn require_compatible(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    /// `self <= other`: every basis vector of `self` lies in `other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.require_compatible(other)?;
        Ok(self.vectors().iter().all(|v| other.contains(v)))
    }

    /// `self + other`
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.require_compatible(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.field(), self.ambient_dim, &vs)
    }

    /// Image of the subspace under `a`.
    pub fn map(&self, a: &ExactMatrix) -> Result<Self> {
        let image = a.try_mul(&self.basis)?;
        Subspace::span(a.field(), a.rows(), &image.columns())
    }
}

/// True iff the parts are independent (their sum is direct) and, when
/// `expected_total` is given, their dimensions add up to it.
pub fn direct_sum_check(parts: &[Subspace], expected_total: Option<usize>) -> Result<bool> {
    let Some(first) = parts.first() else {
        return Ok(expected_total.unwrap_or(0) == 0);
    };
    let mut vectors = Vec::new();
    for p in parts {
        first.require_compatible(p)?;
        vectors.extend(p.vectors());
    }
    let total: usize = parts.iter().map(Subspace::dim).sum();
    let joint = Subspace::span(first.field(), first.ambient_dim, &vectors)?;
    Ok(joint.dim() == total && expected_total.is_none_or(|t| t == total))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(e: &[i64]) -> Vec<FieldElement> {
        e.iter().map(|&x| Q.from_i64(x)).collect()
    }

    fn span(vs: &[&[i64]], n: usize) -> Subspace {
        Subspace::span(Q, n, &vs.iter().map(|x| v(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn leq_examples() {
        let zero = Subspace::zero(Q, 3);
        let full = Subspace::full(Q, 3);
        assert!(zero.leq(&span(&[&[1, 2, 3]], 3)).unwrap());
        assert!(!full.leq(&span(&[&[1, 0, 0], &[0, 1, 0]], 3)).unwrap());
        assert!(span(&[&[0, 1, 0]], 3).leq(&span(&[&[1, 0, 0], &[0, 1, 0]], 3)).unwrap());
        assert!(zero.leq(&Subspace::zero(Q, 2)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let e1 = span(&[&[1, 0]], 2);
        let e2 = span(&[&[0, 1]], 2);
        let e12 = span(&[&[1, 1]], 2);
        assert!(direct_sum_check(&[e1.clone(), e2.clone()], Some(2)).unwrap());
        assert!(!direct_sum_check(&[e1.clone(), e12, e2], None).unwrap());
        assert!(!direct_sum_check(&[e1], Some(2)).unwrap());
    }

    #[test]
    fn canonical_form_is_representation_independent() {
        let a = span(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let b = span(&[&[2, 3, 1], &[1, 0, -1], &[3, 3, 0]], 3);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn coordinates_reconstruct_vectors() {
        let s = span(&[&[1, 2, 0, 1], &[0, 1, 1, 1]], 4);
        let w = v(&[3, 7, 1, 4]);
        let c = s.coordinates(&w).unwrap();
        let back = s.basis().mul_vec(&c).unwrap();
        assert_eq!(back, w);
        assert!(s.coordinates(&v(&[0, 0, 0, 1])).is_none());
    }
}
