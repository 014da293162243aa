//! Univariate polynomials in `z` and square matrices of them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A polynomial with coefficients stored constant term first and trailing
/// zeros removed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// `c * z^degree`
    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `z^j`.
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `z` with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Membership in the ideal `(z^k)`.
    pub fn divisible_by_z_pow(&self, k: usize) -> bool {
        self.order().is_none_or(|o| o >= k)
    }

    /// Remainder modulo `z^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().take(k).cloned().collect())
    }

    /// `z^k * self`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn combine(&self, rhs: &Self, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs(self.field, (0..len).map(|j| f(&self.coeff(j), &rhs.coeff(j))).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_mul(a, b);
            }
        }
        Poly::from_coeffs(self.field, out)
    }
}

/// `[c0,c1,...]`, constant term first; zero prints as `[0]`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "[0]");
        }
        write!(f, "[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An `m x m` matrix over `K[z]`, stored row-major at full degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: FieldSpec,
    m: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: FieldSpec, m: usize) -> Self {
        PolyMatrix { field, m, entries: vec![Poly::zero(field); m * m] }
    }

    pub fn identity(field: FieldSpec, m: usize) -> Self {
        let mut p = Self::zero(field, m);
        for i in 0..m {
            p.set(i, i, Poly::constant(field.one()));
        }
        p
    }

    /// The matrix with `entry` at `(row, col)` and zeros elsewhere.
    pub fn unit(field: FieldSpec, m: usize, row: usize, col: usize, entry: Poly) -> Self {
        let mut p = Self::zero(field, m);
        p.set(row, col, entry);
        p
    }

    pub fn from_entries(field: FieldSpec, m: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::ShapeMismatch(format!("{} entries for an {m}x{m} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|p| p.field != field) {
            return Err(Error::FieldMismatch(field, bad.field));
        }
        Ok(PolyMatrix { field, m, entries })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.m + col]
    }

    pub fn set(&mut self, row: usize, col: usize, entry: Poly) {
        assert_eq!(entry.field, self.field, "entry field must match the matrix field");
        self.entries[row * self.m + col] = entry;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, &Poly) -> Poly) -> Self {
        let m = self.m;
        let entries = self.entries.iter().enumerate().map(|(idx, p)| f(idx / m, idx % m, p)).collect();
        PolyMatrix { field: self.field, m, entries }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.map(|_, _, p| p.scale(c))
    }

    /// Reduces column `g` modulo `z^{widths[g]}`.
    pub fn truncate_columns(&self, widths: &[usize]) -> Self {
        self.map(|_, col, p| p.truncate(widths[col]))
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(self.m, rhs.m, "polynomial matrices must have equal size");
        assert_eq!(self.field, rhs.field, "polynomial matrices must share a field");
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.check_same(rhs);
        self.map(|i, j, p| p + rhs.get(i, j))
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.check_same(rhs);
        self.map(|i, j, p| p - rhs.get(i, j))
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.check_same(rhs);
        let m = self.m;
        let mut out = PolyMatrix::zero(self.field, m);
        for i in 0..m {
            for j in 0..m {
                let mut acc = Poly::zero(self.field);
                for t in 0..m {
                    acc = &acc + &(self.get(i, t) * rhs.get(t, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.m {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: FieldSpec = FieldSpec::Prime(5);

    #[test]
    fn arithmetic() {
        let a = Poly::from_i64(F5, &[1, 2]);
        let b = Poly::from_i64(F5, &[4, 3]);
        assert_eq!(&a * &b, Poly::from_i64(F5, &[4, 1, 1]));
        assert_eq!(&a + &b, Poly::from_i64(F5, &[0]));
        assert!((&a + &b).is_zero());
        assert_eq!(a.shift(2), Poly::from_i64(F5, &[0, 0, 1, 2]));
        assert_eq!(Poly::from_i64(F5, &[1, 2, 3]).truncate(2), a);
    }

    #[test]
    fn orders_and_divisibility() {
        let p = Poly::from_i64(F5, &[0, 0, 3]);
        assert_eq!(p.order(), Some(2));
        assert!(p.divisible_by_z_pow(2));
        assert!(!p.divisible_by_z_pow(3));
        assert!(Poly::zero(F5).divisible_by_z_pow(100));
        assert_eq!(p.to_string(), "[0,0,3]");
        assert_eq!(Poly::zero(F5).to_string(), "[0]");
    }

    #[test]
    fn matrix_product_is_associative_on_a_sample() {
        let z = |c: &[i64]| Poly::from_i64(F5, c);
        let p = PolyMatrix::from_entries(F5, 2, vec![z(&[1, 1]), z(&[0, 2]), z(&[3]), z(&[])]).unwrap();
        let q = PolyMatrix::from_entries(F5, 2, vec![z(&[0, 1]), z(&[1]), z(&[2, 0, 1]), z(&[4])]).unwrap();
        assert_eq!(&(&p * &q) * &p, &p * &(&q * &p));
        assert_eq!(&p * &PolyMatrix::identity(F5, 2), p);
    }
}
