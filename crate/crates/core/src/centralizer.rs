//! Centralizers `Cen(A)`, zero-level centralizers `Cen0(A)` and level sets
//! `LCen(A)` of a square matrix, computed as kernels of explicit linear
//! systems in the `n^2` entries of an unknown matrix `X`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;
use crate::subspace::Subspace;

/// Largest operator size accepted by default; the systems have `n^2` unknowns.
pub const DEFAULT_MAX_DIM: usize = 12;

/// A subspace of `M_n(K)`, stored through row-major flattening so equality is
/// representation equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixSpace {
    n: usize,
    flat: Subspace,
}

impl MatrixSpace {
    pub fn span(field: FieldSpec, n: usize, mats: &[ExactMatrix]) -> Result<Self> {
        if let Some(bad) = mats.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix in a space of {n}x{n} matrices",
                bad.rows(),
                bad.cols()
            )));
        }
        let flat: Vec<_> = mats.iter().map(|m| m.entries().to_vec()).collect();
        Ok(MatrixSpace { n, flat: Subspace::span(field, n * n, &flat)? })
    }

    pub fn from_flat(n: usize, flat: Subspace) -> Result<Self> {
        if flat.ambient_dim() != n * n {
            return Err(Error::ShapeMismatch("flattened ambient must be n^2".into()));
        }
        Ok(MatrixSpace { n, flat })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        MatrixSpace { n, flat: Subspace::zero(field, n * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.flat.field()
    }

    pub fn dim(&self) -> usize {
        self.flat.dim()
    }

    pub fn as_subspace(&self) -> &Subspace {
        &self.flat
    }

    /// Canonical basis as matrices.
    pub fn basis(&self) -> Vec<ExactMatrix> {
        self.flat
            .vectors()
            .into_iter()
            .map(|v| ExactMatrix::from_flat(self.field(), self.n, self.n, v).expect("n^2 entries"))
            .collect()
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.flat.contains(m.entries())
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.flat.leq(&other.flat)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        Ok(MatrixSpace { n: self.n, flat: self.flat.join(&other.flat)? })
    }
}

fn bounded(a: &ExactMatrix, max_dim: usize) -> Result<usize> {
    let n = a.require_square()?;
    if n > max_dim {
        return Err(Error::SizeBound { dim: n, max: max_dim });
    }
    Ok(n)
}

/// Coefficient rows for `XA` (sign +1) and `AX` (sign -1) in the unknowns
/// `x_{ij}` at index `i * n + j`.
fn push_product_rows(a: &ExactMatrix, right: bool, left: bool, rows: &mut Vec<Vec<FieldElement>>) {
    let n = a.rows();
    let field = a.field();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![field.zero(); n * n];
            if right {
                // (XA)_{ij} = sum_k x_{ik} a_{kj}
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + &a[(k, j)];
                }
            }
            if left {
                // (AX)_{ij} = sum_k a_{ik} x_{kj}
                for k in 0..n {
                    row[k * n + j] = &row[k * n + j] - &a[(i, k)];
                }
            }
            rows.push(row);
        }
    }
}

fn solve_system(a: &ExactMatrix, rows: Vec<Vec<FieldElement>>) -> Result<MatrixSpace> {
    let n = a.rows();
    let system = if rows.is_empty() {
        ExactMatrix::zeros(a.field(), 0, n * n)
    } else {
        ExactMatrix::from_rows(a.field(), rows)?
    };
    MatrixSpace::from_flat(n, system.kernel())
}

/// `Cen(A) = {X : XA = AX}`.
pub fn cen_basis(a: &ExactMatrix, max_dim: usize) -> Result<MatrixSpace> {
    bounded(a, max_dim)?;
    let mut rows = Vec::new();
    push_product_rows(a, true, true, &mut rows);
    solve_system(a, rows)
}

/// `Cen0(A) = {X : XA = AX = 0}`.
pub fn cen0_basis(a: &ExactMatrix, max_dim: usize) -> Result<MatrixSpace> {
    bounded(a, max_dim)?;
    let mut rows = Vec::new();
    push_product_rows(a, false, true, &mut rows);
    push_product_rows(a, true, false, &mut rows);
    // the left rows were pushed negated; kernels do not care
    solve_system(a, rows)
}

/// `LCen(A) = {UA : U in Cen(A)}`.
pub fn lcen_basis(a: &ExactMatrix, max_dim: usize) -> Result<MatrixSpace> {
    let cen = cen_basis(a, max_dim)?;
    let products: Vec<_> = cen.basis().iter().map(|u| u * a).collect();
    MatrixSpace::span(a.field(), a.rows(), &products)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimFormula {
    /// `dim Cen0(A)`
    pub lhs: usize,
    /// `(dim ker A)^2`
    pub rhs: usize,
    pub ok: bool,
}

pub fn check_dim_formula(a: &ExactMatrix, max_dim: usize) -> Result<DimFormula> {
    let lhs = cen0_basis(a, max_dim)?.dim();
    let k = a.kernel().dim();
    Ok(DimFormula { lhs, rhs: k * k, ok: lhs == k * k })
}

/// All three spaces for one operator.
#[derive(Debug, Clone)]
pub struct CentralizerBasis {
    pub operator: ExactMatrix,
    pub cen: MatrixSpace,
    pub cen0: MatrixSpace,
    pub lcen: MatrixSpace,
}

impl CentralizerBasis {
    pub fn compute(a: &ExactMatrix, max_dim: usize) -> Result<Self> {
        Ok(CentralizerBasis {
            operator: a.clone(),
            cen: cen_basis(a, max_dim)?,
            cen0: cen0_basis(a, max_dim)?,
            lcen: lcen_basis(a, max_dim)?,
        })
    }

    /// `UC` and `CU` stay in `Cen0` for basis elements `U` of `Cen`, `C` of `Cen0`.
    pub fn cen0_is_ideal(&self) -> bool {
        let cen = self.cen.basis();
        let cen0 = self.cen0.basis();
        cen.iter().all(|u| cen0.iter().all(|c| self.cen0.contains(&(u * c)) && self.cen0.contains(&(c * u))))
    }

    /// Pairs of `LCen` basis elements whose product leaves `LCen`.
    pub fn lcen_closure_failures(&self) -> usize {
        let basis = self.lcen.basis();
        basis.iter().flat_map(|x| basis.iter().map(move |y| x * y)).filter(|p| !self.lcen.contains(p)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Containment {
    /// `BC = CB = 0` for every `C` in a basis of `Cen0(A)`.
    pub direct: bool,
    /// `ker A <= ker B` and `im B <= im A`.
    pub criterion: bool,
}

fn require_same_shape(a: &ExactMatrix, b: &ExactMatrix) -> Result<()> {
    a.require_square()?;
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    Ok(())
}

fn cen0_contained(a: &ExactMatrix, b: &ExactMatrix, max_dim: usize) -> Result<bool> {
    Ok(cen0_basis(a, max_dim)?.basis().iter().all(|c| (b * c).is_zero() && (c * b).is_zero()))
}

/// Is `Cen0(A) <= Cen0(B)`, computed directly and by the kernel/image criterion.
pub fn cen0_containment(a: &ExactMatrix, b: &ExactMatrix, max_dim: usize) -> Result<Containment> {
    require_same_shape(a, b)?;
    let direct = cen0_contained(a, b, max_dim)?;
    let criterion = a.kernel().leq(&b.kernel())? && b.image().leq(&a.image())?;
    Ok(Containment { direct, criterion })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoubleZeroReport {
    /// `Cen0(A) <= Cen0(B)`
    pub cond1: bool,
    /// `ker A <= ker B` and `ker A^T <= ker B^T`
    pub cond2: bool,
    /// `im B <= im A` and `im B^T <= im A^T`
    pub cond3: bool,
    pub equivalent: bool,
}

impl DoubleZeroReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "equivalent": self.equivalent,
        })
    }
}

pub fn double_zero_centralizer_check(a: &ExactMatrix, b: &ExactMatrix, max_dim: usize) -> Result<DoubleZeroReport> {
    require_same_shape(a, b)?;
    let (at, bt) = (a.transpose(), b.transpose());
    let cond1 = cen0_contained(a, b, max_dim)?;
    let cond2 = a.kernel().leq(&b.kernel())? && at.kernel().leq(&bt.kernel())?;
    let cond3 = b.image().leq(&a.image())? && bt.image().leq(&at.image())?;
    Ok(DoubleZeroReport { cond1, cond2, cond3, equivalent: cond1 == cond2 && cond2 == cond3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const MAX: usize = DEFAULT_MAX_DIM;

    fn m(n: usize, e: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(Q, n, n, e)
    }

    /// J2 + 0: e1 -> e2 -> 0, e3 -> 0
    fn j2_plus_zero() -> ExactMatrix {
        m(3, &[0, 0, 0, 1, 0, 0, 0, 0, 0])
    }

    #[test]
    fn cen_examples() {
        assert_eq!(cen_basis(&m(2, &[0; 4]), MAX).unwrap().dim(), 4);
        assert_eq!(cen_basis(&ExactMatrix::identity(Q, 3), MAX).unwrap().dim(), 9);
        assert_eq!(cen_basis(&j2_plus_zero(), MAX).unwrap().dim(), 5);
    }

    #[test]
    fn cen0_examples() {
        assert_eq!(cen0_basis(&m(2, &[0; 4]), MAX).unwrap().dim(), 4);
        assert_eq!(cen0_basis(&ExactMatrix::identity(Q, 2), MAX).unwrap().dim(), 0);
        let c = cen0_basis(&m(2, &[0, 0, 1, 0]), MAX).unwrap();
        assert_eq!(c.basis(), vec![ExactMatrix::unit(Q, 2, 1, 0)]);
    }

    #[test]
    fn size_bound_is_enforced() {
        let big = ExactMatrix::zeros(Q, 13, 13);
        assert_eq!(cen_basis(&big, MAX), Err(Error::SizeBound { dim: 13, max: 12 }));
        assert!(cen0_basis(&m(2, &[0; 4]), 1).is_err());
        assert!(cen_basis(&ExactMatrix::zeros(Q, 2, 3), MAX).is_err());
    }

    #[test]
    fn dim_formula_examples() {
        assert_eq!(check_dim_formula(&m(3, &[0; 9]), MAX).unwrap(), DimFormula { lhs: 9, rhs: 9, ok: true });
        let j4 = ExactMatrix::from_fn(Q, 4, 4, |i, j| Q.from_i64((i == j + 1) as i64));
        assert_eq!(check_dim_formula(&j4, MAX).unwrap(), DimFormula { lhs: 1, rhs: 1, ok: true });
        let c0 = cen0_basis(&j4, MAX).unwrap();
        assert!(c0.contains(&j4.pow(3).unwrap()));
        assert_eq!(check_dim_formula(&j2_plus_zero(), MAX).unwrap(), DimFormula { lhs: 4, rhs: 4, ok: true });
    }

    #[test]
    fn lcen_examples() {
        assert_eq!(lcen_basis(&m(2, &[0; 4]), MAX).unwrap().dim(), 0);
        assert_eq!(lcen_basis(&ExactMatrix::identity(Q, 2), MAX).unwrap().dim(), 4);
        let cb = CentralizerBasis::compute(&j2_plus_zero(), MAX).unwrap();
        assert_eq!(cb.lcen.dim(), 1);
        assert_eq!(cb.lcen.dim(), cb.cen.dim() - cb.cen0.dim());
        assert!(cb.cen0_is_ideal());
        assert_eq!(cb.lcen_closure_failures(), 0);
    }

    #[test]
    fn containment_examples() {
        let j2 = m(2, &[0, 0, 1, 0]);
        let both = Containment { direct: true, criterion: true };
        let neither = Containment { direct: false, criterion: false };
        assert_eq!(cen0_containment(&j2, &j2, MAX).unwrap(), both);
        assert_eq!(cen0_containment(&j2, &ExactMatrix::unit(Q, 2, 1, 0), MAX).unwrap(), both);
        // B e2 = e1 != 0
        assert_eq!(cen0_containment(&j2, &m(2, &[0, 1, 0, 0]), MAX).unwrap(), neither);
        assert!(cen0_containment(&j2, &m(3, &[0; 9]), MAX).is_err());
    }

    #[test]
    fn double_zero_examples() {
        let id = ExactMatrix::identity(Q, 2);
        let r = double_zero_centralizer_check(&id, &id, MAX).unwrap();
        assert!(r.cond1 && r.cond2 && r.cond3 && r.equivalent);
        let r = double_zero_centralizer_check(&m(2, &[0; 4]), &id, MAX).unwrap();
        assert!(!r.cond1 && !r.cond2 && !r.cond3 && r.equivalent);
        assert_eq!(r.to_json().to_string(), r#"{"cond1":false,"cond2":false,"cond3":false,"equivalent":true}"#);
    }
}
