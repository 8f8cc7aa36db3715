//! Weighted-graded multivariate polynomials with degree-reverse-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Variable names and positive integer weights of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variables {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl Variables {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::Structural(format!(
                "{} variable names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Structural("variable weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Structural(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Structural(format!("duplicate variable {n:?}")));
            }
        }
        Ok(Variables { names, weights })
    }

    /// Standard grading: every weight 1.
    pub fn standard(names: &[&str]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
        )
        .expect("valid variable names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial(&self, exps: Vec<u16>) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn one(&self) -> Monomial {
        Monomial::new(vec![0; self.len()], &self.weights)
    }

    pub fn var(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.len()];
        e[i] = 1;
        self.monomial(e)
    }

    /// All monomials of weighted degree `d`, in descending monomial order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(&self, i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if left == 0 {
                out.push(self.monomial(exps.clone()));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= left {
            exps[i] = e as u16;
            self.enumerate(i + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

/// Exponent vector together with its cached weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>, weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { degree, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
            weights,
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support is a single variable: `x_i^e` with `e > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted by strictly descending monomial; no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<E> {
    nvars: usize,
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone> Polynomial<E> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn term<K: Field<Elem = E>>(field: &K, c: E, m: Monomial) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    pub fn constant<K: Field<Elem = E>>(field: &K, vars: &Variables, c: E) -> Self {
        Self::term(field, c, vars.one())
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms<K: Field<Elem = E>>(field: &K, nvars: usize, mut terms: Vec<(Monomial, E)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, E)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Degree when homogeneous, `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Structural(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add<K: Field<Elem = E>>(&self, field: &K, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.combine(field, other, false))
    }

    pub fn sub<K: Field<Elem = E>>(&self, field: &K, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.combine(field, other, true))
    }

    fn combine<K: Field<Elem = E>>(&self, field: &K, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let b_coeff = |c: &E| if negate { field.neg(c) } else { c.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), b_coeff(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&self.terms[i].1, &b_coeff(&other.terms[j].1));
                    if !field.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg<K: Field<Elem = E>>(&self, field: &K) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale<K: Field<Elem = E>>(&self, field: &K, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(c, a))).collect(),
        }
    }

    /// Multiplication by `c * m`; order is preserved because the monomial order is multiplicative.
    pub fn mul_term<K: Field<Elem = E>>(&self, field: &K, c: &E, m: &Monomial) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.mul(m), field.mul(c, x)))
                .collect(),
        }
    }

    pub fn mul<K: Field<Elem = E>>(&self, field: &K, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc = Self::zero(self.nvars);
        for (m, c) in &other.terms {
            acc = acc.combine(field, &self.mul_term(field, c, m), false);
        }
        Ok(acc)
    }

    pub fn pow<K: Field<Elem = E>>(&self, field: &K, vars: &Variables, e: u32) -> Self {
        let mut acc = Self::constant(field, vars, field.one());
        for _ in 0..e {
            acc = acc.mul(field, self).expect("same variables");
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic<K: Field<Elem = E>>(&self, field: &K) -> Self {
        match self.terms.first() {
            Some((_, c)) => self.scale(field, &field.inv(c)),
            None => self.clone(),
        }
    }

    pub fn fmt_with<K: Field<Elem = E>>(&self, field: &K, vars: &Variables) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(vars.names());
            if m.is_one() {
                s.push_str(&field.format(&abs));
            } else if field.is_one(&abs) {
                s.push_str(&mono);
            } else {
                s.push_str(&field.format(&abs));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

/// Parses a polynomial in the given variables.
///
/// Grammar: sums and differences of products of factors, where a factor is a
/// number (`3`, `1/2`), a variable, or a parenthesized expression, optionally
/// raised to a nonnegative integer power with `^`.
pub fn parse_polynomial<K: Field>(field: &K, vars: &Variables, input: &str) -> Result<Polynomial<K::Elem>> {
    let mut p = Parser {
        field,
        vars,
        src: input.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a, K: Field> {
    field: &'a K,
    vars: &'a Variables,
    src: &'a [u8],
    pos: usize,
}

impl<K: Field> Parser<'_, K> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<K::Elem>> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            acc = if sign {
                acc.sub(self.field, &t)?
            } else {
                acc.add(self.field, &t)?
            };
            match self.peek() {
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Polynomial<K::Elem>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(self.field, &self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<K::Elem>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(self.field, self.vars, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial<K::Elem>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                }
                let c = self
                    .field
                    .from_fraction(&num, &den)
                    .map_err(|_| self.err("denominator vanishes in the field"))?;
                Ok(Polynomial::constant(self.field, self.vars, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let Some(i) = self.vars.index_of(name) else {
                    self.pos = start;
                    return Err(self.err(&format!("unknown variable {name:?}")));
                };
                Ok(Polynomial::term(self.field, self.field.one(), self.vars.var(i)))
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}
