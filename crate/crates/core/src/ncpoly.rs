//! Noncommutative polynomials over a field and their evaluation on matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

/// Which product an algebra uses: ordinary matrix product or its reverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mult {
    Standard,
    Opposite,
}

impl Mult {
    pub fn apply(self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        match self {
            Mult::Standard => a * b,
            Mult::Opposite => b * a,
        }
    }
}

/// A polynomial in noncommuting variables `x1 .. x_{num_vars}`.
///
/// Words are stored with 0-based variable indices and are kept merged and
/// free of zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    field: FieldSpec,
    num_vars: usize,
    terms: BTreeMap<Vec<usize>, FieldElement>,
}

impl NCPoly {
    pub fn zero(field: FieldSpec, num_vars: usize) -> Self {
        NCPoly { field, num_vars, terms: BTreeMap::new() }
    }

    /// The single variable `x_{i+1}`.
    pub fn var(field: FieldSpec, num_vars: usize, i: usize) -> Self {
        Self::from_terms(field, num_vars, [(field.one(), vec![i])])
    }

    /// Builds a polynomial from `(coefficient, word)` pairs, merging repeated
    /// words. `num_vars` is raised if a word uses a larger index.
    pub fn from_terms(
        field: FieldSpec,
        num_vars: usize,
        terms: impl IntoIterator<Item = (FieldElement, Vec<usize>)>,
    ) -> Self {
        let mut p = Self::zero(field, num_vars);
        for (c, w) in terms {
            p.add_term(c, w);
        }
        p
    }

    fn add_term(&mut self, c: FieldElement, word: Vec<usize>) {
        assert_eq!(c.field(), self.field, "coefficient field must match the polynomial field");
        if let Some(&max) = word.iter().max() {
            self.num_vars = self.num_vars.max(max + 1);
        }
        let sum = match self.terms.get(&word) {
            Some(d) => d + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, sum);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Every variable occurs exactly once in every word.
    pub fn is_multilinear(&self) -> bool {
        !self.is_zero()
            && self.terms.keys().all(|w| {
                let mut seen = vec![false; self.num_vars];
                w.len() == self.num_vars && w.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            })
    }

    /// Multilinear and negated by swapping any two variables. Such a
    /// polynomial vanishes whenever two arguments coincide, in every
    /// characteristic, because the two words exchanged by the swap carry
    /// opposite coefficients.
    pub fn is_alternating(&self) -> bool {
        if !self.is_multilinear() {
            return false;
        }
        (1..self.num_vars).all(|a| {
            self.terms.iter().all(|(w, c)| {
                let swapped: Vec<usize> = w
                    .iter()
                    .map(|&v| {
                        if v == a {
                            a - 1
                        } else if v == a - 1 {
                            a
                        } else {
                            v
                        }
                    })
                    .collect();
                self.terms.get(&swapped).is_some_and(|d| (d + c).is_zero())
            })
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_terms(self.field, self.num_vars, self.terms.iter().map(|(w, d)| (d * c, w.clone())))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.num_vars = out.num_vars.max(rhs.num_vars);
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-&self.field.one()))
    }

    /// Word-concatenation product, without renaming.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.field, self.num_vars.max(rhs.num_vars));
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(a * b, w);
            }
        }
        out
    }

    /// Adds `offset` to every variable index.
    pub fn shift_vars(&self, offset: usize) -> Self {
        NCPoly {
            field: self.field,
            num_vars: self.num_vars + offset,
            terms: self.terms.iter().map(|(w, c)| (w.iter().map(|v| v + offset).collect(), c.clone())).collect(),
        }
    }

    /// Splits `self = g(x1..xa) h(x_{a+1}..x_r)` for the smallest possible
    /// `a`, when `self` is multilinear and has that shape.
    pub fn split_product(&self) -> Option<(NCPoly, NCPoly)> {
        if !self.is_multilinear() || self.num_vars < 2 {
            return None;
        }
        'cut: for a in 1..self.num_vars {
            if self.terms.keys().any(|w| w[..a].iter().any(|&v| v >= a)) {
                continue;
            }
            let (w0, c0) = self.terms.iter().next().expect("nonzero");
            let (u0, v0) = w0.split_at(a);
            let mut g = Self::zero(self.field, a);
            let mut h = Self::zero(self.field, self.num_vars - a);
            for (w, c) in &self.terms {
                let (u, v) = w.split_at(a);
                if v == v0 {
                    g.add_term(c.clone(), u.to_vec());
                }
                if u == u0 {
                    let scaled = c.try_div(c0).expect("nonzero coefficient");
                    h.add_term(scaled, v.iter().map(|x| x - a).collect());
                }
            }
            if g.term_count() * h.term_count() != self.term_count() {
                continue;
            }
            for (w, c) in &self.terms {
                let (u, v) = w.split_at(a);
                let (Some(gu), Some(hv)) = (g.terms.get(u), h.terms.get(&v.iter().map(|x| x - a).collect::<Vec<_>>()))
                else {
                    continue 'cut;
                };
                if &(gu * hv) != c {
                    continue 'cut;
                }
            }
            return Some((g, h));
        }
        None
    }

    /// `Σ c_w · args[w_1] ⋯ args[w_k]`, products taken under `mult`.
    pub fn evaluate(&self, args: &[ExactMatrix], mult: Mult) -> Result<ExactMatrix> {
        let refs: Vec<&ExactMatrix> = args.iter().collect();
        WordTrie::new(self).evaluate(&refs, mult)
    }

    /// Parses text such as `+ 1 * x1 x2 - 1 * x2 x1`.
    ///
    /// A term is an optional sign, an optional coefficient (integer or
    /// fraction) followed by an optional `*`, then variables `x<i>` with
    /// `i >= 1`. Whitespace, including newlines, separates tokens.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        Parser::new(text).parse(field)
    }
}

/// Terms in word order, e.g. `+ 1 * x1 x2 - 1 * x2 x1`. Coefficients in
/// GF(p) are printed in the symmetric range, so `-1` shows as `- 1`.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let (negative, magnitude) = match c {
                FieldElement::Mod { value, modulus } if *value > modulus / 2 => (true, (modulus - value).to_string()),
                FieldElement::Rational(r) if r.is_negative() => (true, (-&**r).to_string()),
                _ => (false, c.to_string()),
            };
            write!(f, "{} {magnitude}", if negative { "-" } else { "+" })?;
            if !w.is_empty() {
                write!(f, " *")?;
            }
            for v in w {
                write!(f, " x{}", v + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Number(String),
    Var(usize),
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(&mut self) -> Result<Vec<(Token, usize, usize)>> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                '+' => {
                    self.bump();
                    Token::Plus
                }
                '-' => {
                    self.bump();
                    Token::Minus
                }
                '*' => {
                    self.bump();
                    Token::Star
                }
                'x' => {
                    self.bump();
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    match digits.parse::<usize>() {
                        Ok(i) if i >= 1 => Token::Var(i - 1),
                        _ => return Err(Error::parse(line, col, "expected a variable x1, x2, ...")),
                    }
                }
                c if c.is_ascii_digit() => Token::Number(self.take_while(|c| c.is_ascii_digit() || c == '/')),
                other => return Err(Error::parse(line, col, format!("unexpected character '{other}'"))),
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if !keep(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn parse(mut self, field: FieldSpec) -> Result<NCPoly> {
        let tokens = self.tokens()?;
        let mut poly = NCPoly::zero(field, 0);
        let mut i = 0;
        if tokens.is_empty() {
            return Err(Error::parse(1, 1, "empty polynomial"));
        }
        while i < tokens.len() {
            let (_, line, col) = tokens[i];
            let mut coeff = field.one();
            match tokens[i].0 {
                Token::Plus => i += 1,
                Token::Minus => {
                    coeff = -&coeff;
                    i += 1;
                }
                _ if i > 0 => return Err(Error::parse(line, col, "expected '+' or '-' between terms")),
                _ => {}
            }
            if let Some((Token::Number(n), l, c)) = tokens.get(i) {
                let value = field.parse_element(n).map_err(|e| Error::parse(*l, *c, e.to_string()))?;
                coeff = &coeff * &value;
                i += 1;
                if let Some((Token::Star, _, _)) = tokens.get(i) {
                    i += 1;
                }
            }
            let mut word = Vec::new();
            while let Some((Token::Var(v), _, _)) = tokens.get(i) {
                word.push(*v);
                i += 1;
            }
            match tokens.get(i) {
                None | Some((Token::Plus | Token::Minus, _, _)) => {}
                Some((_, l, c)) => return Err(Error::parse(*l, *c, "expected a variable or the next term")),
            }
            if word.is_empty() && !matches!(tokens.get(i - 1), Some((Token::Number(_), _, _))) {
                return Err(Error::parse(line, col, "empty term"));
            }
            poly.add_term(coeff, word);
        }
        Ok(poly)
    }
}

/// Terms arranged as a prefix tree, so that shared prefixes are multiplied
/// once and a zero prefix product prunes every word below it.
pub(crate) struct WordTrie {
    field: FieldSpec,
    num_vars: usize,
    root: TrieNode,
}

#[derive(Default)]
struct TrieNode {
    coeff: Option<FieldElement>,
    children: Vec<(usize, TrieNode)>,
}

impl WordTrie {
    pub(crate) fn new(p: &NCPoly) -> Self {
        let mut root = TrieNode::default();
        for (w, c) in &p.terms {
            let mut node = &mut root;
            for &v in w {
                let idx = match node.children.iter().position(|(x, _)| *x == v) {
                    Some(idx) => idx,
                    None => {
                        node.children.push((v, TrieNode::default()));
                        node.children.len() - 1
                    }
                };
                node = &mut node.children[idx].1;
            }
            node.coeff = Some(c.clone());
        }
        WordTrie { field: p.field, num_vars: p.num_vars, root }
    }

    pub(crate) fn evaluate(&self, args: &[&ExactMatrix], mult: Mult) -> Result<ExactMatrix> {
        if args.len() < self.num_vars {
            return Err(Error::Arity { needed: self.num_vars, given: args.len() });
        }
        let Some(first) = args.first() else {
            return Err(Error::ShapeMismatch("at least one argument is needed to fix the matrix size".into()));
        };
        let d = first.rows();
        for a in args {
            if a.rows() != d || a.cols() != d {
                return Err(Error::ShapeMismatch(format!("arguments must all be {d}x{d}")));
            }
            if a.field() != self.field {
                return Err(Error::FieldMismatch(self.field, a.field()));
            }
        }
        let mut acc = ExactMatrix::zeros(self.field, d, d);
        let id = ExactMatrix::identity(self.field, d);
        Self::walk(&self.root, &id, args, mult, &mut acc);
        Ok(acc)
    }

    fn walk(node: &TrieNode, prefix: &ExactMatrix, args: &[&ExactMatrix], mult: Mult, acc: &mut ExactMatrix) {
        if let Some(c) = &node.coeff {
            for i in 0..acc.rows() {
                for j in 0..acc.cols() {
                    acc[(i, j)] = acc[(i, j)].add_mul(c, &prefix[(i, j)]);
                }
            }
        }
        for (v, child) in &node.children {
            let next = mult.apply(prefix, args[*v]);
            if !next.is_zero() {
                Self::walk(child, &next, args, mult, acc);
            }
        }
    }
}

/// `[x1, x2] = x1 x2 - x2 x1`
pub fn comm(field: FieldSpec) -> NCPoly {
    let one = field.one();
    NCPoly::from_terms(field, 2, [(one.clone(), vec![0, 1]), (-&one, vec![1, 0])])
}

/// `[x1, x2][x3, x4]`
pub fn comm2(field: FieldSpec) -> NCPoly {
    product_identity(&[comm(field), comm(field)]).expect("two factors over one field")
}

/// The standard polynomial `s_k = Σ_σ sgn(σ) x_σ(1) ⋯ x_σ(k)`.
pub fn standard(field: FieldSpec, k: usize) -> NCPoly {
    let mut out = NCPoly::zero(field, k);
    let mut perm: Vec<usize> = (0..k).collect();
    let mut sign = true;
    // Heap's algorithm: consecutive permutations differ by one transposition.
    let mut c = vec![0usize; k];
    let one = field.one();
    out.add_term(one.clone(), perm.clone());
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = !sign;
            out.add_term(if sign { one.clone() } else { -&one }, perm.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The formal product of `fs`, with the variables of each factor shifted
/// past those of the factors before it.
pub fn product_identity(fs: &[NCPoly]) -> Result<NCPoly> {
    let Some(first) = fs.first() else {
        return Err(Error::IllPosed("a product identity needs at least one factor".into()));
    };
    let mut out = first.clone();
    for f in &fs[1..] {
        if f.field != out.field {
            return Err(Error::FieldMismatch(out.field, f.field));
        }
        let n = out.num_vars;
        out = out.mul(&f.shift_vars(n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: FieldSpec = FieldSpec::Prime(2);
    const Q: FieldSpec = FieldSpec::Rationals;

    fn e(i: usize, j: usize) -> ExactMatrix {
        ExactMatrix::unit(F2, 2, i, j)
    }

    #[test]
    fn evaluation_examples() {
        let a = ExactMatrix::from_i64(F2, 2, 2, &[1, 1, 0, 1]);
        assert_eq!(NCPoly::var(F2, 1, 0).evaluate(std::slice::from_ref(&a), Mult::Standard).unwrap(), a);
        assert_eq!(comm(F2).evaluate(&[e(0, 0), e(0, 1)], Mult::Standard).unwrap(), e(0, 1));
        let x1x2 = NCPoly::from_terms(F2, 2, [(F2.one(), vec![0, 1])]);
        assert_eq!(x1x2.evaluate(&[e(0, 0), e(0, 1)], Mult::Opposite).unwrap(), &e(0, 1) * &e(0, 0));
        assert!(matches!(comm(F2).evaluate(&[e(0, 0)], Mult::Standard), Err(Error::Arity { needed: 2, given: 1 })));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let c = comm(Q);
        assert_eq!(c.to_string(), "+ 1 * x1 x2 - 1 * x2 x1");
        assert_eq!(NCPoly::parse(Q, "+ 1 * x1 x2 - 1 * x2 x1").unwrap(), c);
        assert_eq!(NCPoly::parse(Q, "x1 x2 - x2 x1").unwrap(), c);
        assert_eq!(comm(FieldSpec::Prime(5)).to_string(), "+ 1 * x1 x2 - 1 * x2 x1");
        let p = NCPoly::parse(Q, "3/2 * x2 x2\n- 4").unwrap();
        assert_eq!(p.to_string(), "- 4 + 3/2 * x2 x2");
        assert_eq!(NCPoly::parse(Q, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = NCPoly::parse(Q, "x1 x2 -\n  y3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 3, .. }), "{err:?}");
        assert!(matches!(NCPoly::parse(Q, "x0"), Err(Error::Parse { line: 1, col: 1, .. })));
        assert!(NCPoly::parse(Q, "x1 x2 x3 *").is_err());
        assert!(NCPoly::parse(Q, "").is_err());
    }

    #[test]
    fn merging_cancels_terms() {
        let p = NCPoly::parse(F2, "x1 x2 + x1 x2").unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn product_renames_disjointly() {
        let p = product_identity(&[comm(Q), comm(Q)]).unwrap();
        let expected = NCPoly::parse(Q, "x1 x2 x3 x4 - x1 x2 x4 x3 - x2 x1 x3 x4 + x2 x1 x4 x3").unwrap();
        assert_eq!(p, expected);
        assert_eq!(product_identity(&[comm(Q)]).unwrap(), comm(Q));
        assert!(product_identity(&[]).is_err());
        let (g, h) = p.split_product().unwrap();
        assert_eq!((g, h), (comm(Q), comm(Q)));
        assert!(comm(Q).split_product().is_none());
    }

    #[test]
    fn standard_polynomials() {
        let s2 = standard(Q, 2);
        assert_eq!(s2, comm(Q));
        let s3 = standard(Q, 3);
        assert_eq!(s3.term_count(), 6);
        assert!(s3.is_alternating());
        assert!(standard(F2, 4).is_alternating());
        assert!(!comm2(Q).is_alternating());
        assert!(comm2(Q).is_multilinear());
        assert!(!NCPoly::parse(Q, "x1 x1").unwrap().is_multilinear());
        // sign of the cycle x2 x3 x1 is +1
        assert_eq!(s3.terms().find(|(w, _)| **w == vec![1, 2, 0]).unwrap().1, &Q.one());
    }

    #[test]
    fn split_detects_only_genuine_products() {
        let not_product = NCPoly::parse(Q, "x1 x2 x3 x4 + x2 x1 x3 x4 + x1 x2 x4 x3").unwrap();
        assert!(not_product.split_product().is_none());
        let s4s4 = product_identity(&[standard(F2, 4), standard(F2, 4)]).unwrap();
        let (g, h) = s4s4.split_product().unwrap();
        assert_eq!(g, standard(F2, 4));
        assert_eq!(h, standard(F2, 4));
    }
}
