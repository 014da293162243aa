//! Finite-dimensional matrix algebras, optionally taken modulo an ideal.

use crate::centralizer::MatrixSpace;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;
use crate::ncpoly::Mult;

/// A subalgebra of `M_d(K)` (under `mult`), or a quotient of one by an
/// ideal. Elements are represented by matrices; an element is zero when its
/// matrix lies in the ideal.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: FieldSpec,
    d: usize,
    mult: Mult,
    basis: Vec<ExactMatrix>,
    ideal: MatrixSpace,
    span: MatrixSpace,
}

impl FiniteAlgebra {
    /// The algebra spanned by `gens`. Fails with `NotClosed` if products of
    /// generators leave the span.
    pub fn new(field: FieldSpec, d: usize, gens: &[ExactMatrix], mult: Mult) -> Result<Self> {
        Self::quotient(field, d, gens, MatrixSpace::zero(field, d), mult)
    }

    /// `(span(reps) + ideal) / ideal`. The basis keeps the representatives
    /// that are independent modulo the ideal, in the given order.
    pub fn quotient(field: FieldSpec, d: usize, reps: &[ExactMatrix], ideal: MatrixSpace, mult: Mult) -> Result<Self> {
        if ideal.n() != d {
            return Err(Error::ShapeMismatch(format!("ideal of {0}x{0} matrices in M_{d}", ideal.n())));
        }
        if ideal.field() != field {
            return Err(Error::FieldMismatch(field, ideal.field()));
        }
        let mut span = ideal.clone();
        let mut basis = Vec::new();
        for r in reps {
            if r.field() != field {
                return Err(Error::FieldMismatch(field, r.field()));
            }
            let single = MatrixSpace::span(field, d, std::slice::from_ref(r))?;
            if !span.contains(r) {
                span = span.join(&single)?;
                basis.push(r.clone());
            }
        }
        let alg = FiniteAlgebra { field, d, mult, basis, ideal, span };
        alg.check_closure()?;
        Ok(alg)
    }

    fn check_closure(&self) -> Result<()> {
        for a in &self.basis {
            for b in &self.basis {
                if !self.span.contains(&self.mul(a, b)) {
                    return Err(Error::NotClosed);
                }
            }
            for i in self.ideal.basis() {
                if !self.ideal.contains(&(a * &i)) || !self.ideal.contains(&(&i * a)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Size of the ambient matrices.
    pub fn matrix_size(&self) -> usize {
        self.d
    }

    pub fn mult(&self) -> Mult {
        self.mult
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn ideal(&self) -> &MatrixSpace {
        &self.ideal
    }

    /// `span(basis) + ideal`
    pub fn span(&self) -> &MatrixSpace {
        &self.span
    }

    pub fn mul(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        self.mult.apply(a, b)
    }

    pub fn is_zero(&self, x: &ExactMatrix) -> bool {
        self.ideal.contains(x)
    }

    /// `Σ c_i basis_i`
    pub fn combination(&self, coeffs: &[FieldElement]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field, self.d, self.d);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.try_add(&b.scale(c)).expect("same shape");
            }
        }
        out
    }
}
