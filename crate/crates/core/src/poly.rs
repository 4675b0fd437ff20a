//! Homogeneous polynomials in `Q[x0, ..., x_{N-1}]`.
//!
//! Every [`GradedPoly`] carries a single declared degree, including the zero
//! polynomial, so graded arithmetic never has to special-case zero. Monomials
//! are ordered graded-lexicographically with `x0 > x1 > ...`; formatting lists
//! terms from the largest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-homogeneous polynomial: term at position {pos} has degree {found}, expected {expected}")]
    NonHomogeneous { pos: usize, expected: u32, found: u32 },
    #[error("variable x{index} out of range (ring has {nvars} variables)")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i32, right: i32 },
    #[error("variable count mismatch: {left} vs {right}")]
    RingMismatch { left: usize, right: usize },
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of total degree `degree` in `nvars` variables, largest first.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn go(rest: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(rest - 1, left - e, prefix, out);
            prefix.pop();
        }
    }
    assert!(nvars >= 1, "monomial_basis needs at least one variable");
    let mut out = Vec::new();
    go(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// `C(degree + nvars - 1, nvars - 1)`, the dimension of the degree-`degree`
/// piece of a polynomial ring in `nvars` variables.
pub fn graded_dimension(nvars: usize, degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    let k = nvars as u128 - 1;
    let n = degree as u128 + k;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

/// Homogeneous polynomial with an explicit degree tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    nvars: usize,
    degree: i32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedPoly {
    pub fn zero(nvars: usize, degree: i32) -> Self {
        GradedPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars(), m.degree() as i32);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Scalar::one(), Monomial::var(nvars, i))
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, all of the
    /// given degree. Repeated monomials are summed.
    pub fn from_terms(
        nvars: usize,
        degree: i32,
        terms: impl IntoIterator<Item = (Scalar, Monomial)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars, degree);
        for (c, m) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::RingMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            if m.degree() as i32 != degree {
                return Err(PolyError::DegreeMismatch {
                    left: degree,
                    right: m.degree() as i32,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Sum `x0^d + ... + x_{nvars-1}^d`.
    pub fn fermat(nvars: usize, d: u32) -> Self {
        let mut p = Self::zero(nvars, d as i32);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = d;
            p.add_term(Monomial(e), Scalar::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &GradedPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.check_same_ring(other)?;
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        GradedPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Product with a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        GradedPoly {
            nvars: self.nvars,
            degree: self.degree + m.degree() as i32,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> GradedPoly {
        assert!(var < self.nvars, "partial: variable index out of range");
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Scalar::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Parses the ASCII grammar
    /// `poly := term (('+'|'-') term)*`, `term := coeff? ('*'? factor)*`,
    /// `factor := 'x'INDEX ('^'EXP)?`, `coeff := INT | INT '/' INT`.
    pub fn parse(text: &str, nvars: usize) -> Result<GradedPoly, PolyError> {
        Parser::new(text, nvars).parse()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly[deg {}]({})", self.degree, self)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            nvars,
        }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as BigInt"))
    }

    fn parse(mut self) -> Result<GradedPoly, PolyError> {
        let mut terms: Vec<(usize, Scalar, Monomial)> = Vec::new();
        let mut sign = Scalar::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let start = self.pos;
            let (c, m) = self.term()?;
            terms.push((start, sign * c, m));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign = Scalar::one();
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -Scalar::one();
                    self.pos += 1;
                }
                Some(ch) => return Err(self.err(format!("unexpected character '{}'", ch as char))),
            }
        }
        let degree = terms[0].2.degree();
        let mut p = GradedPoly::zero(self.nvars, degree as i32);
        for (pos, c, m) in terms {
            if m.degree() != degree {
                return Err(PolyError::NonHomogeneous {
                    pos,
                    expected: degree,
                    found: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Scalar, Monomial), PolyError> {
        let mut coeff = Scalar::one();
        let mut saw_any = false;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.integer()?;
            let mut c = Scalar::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                c /= Scalar::from_integer(den);
            }
            coeff = c;
            saw_any = true;
        }
        let mut exps = vec![0u32; self.nvars];
        loop {
            let save = self.pos;
            let mut star = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                star = true;
            }
            if self.peek() == Some(b'x') {
                self.pos += 1;
                let idx_pos = self.pos;
                let idx = self.integer()?;
                let idx: usize = idx
                    .try_into()
                    .map_err(|_| PolyError::Syntax { pos: idx_pos, msg: "variable index too large".into() })?;
                if idx >= self.nvars {
                    return Err(PolyError::VariableOutOfRange {
                        index: idx,
                        nvars: self.nvars,
                    });
                }
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let exp_pos = self.pos;
                    e = self
                        .integer()?
                        .try_into()
                        .map_err(|_| PolyError::Syntax { pos: exp_pos, msg: "exponent too large".into() })?;
                }
                exps[idx] += e;
                saw_any = true;
            } else if star {
                return Err(self.err("expected factor after '*'"));
            } else {
                self.pos = save;
                break;
            }
        }
        if !saw_any {
            return Err(self.err("expected term"));
        }
        Ok((coeff, Monomial(exps)))
    }
}
