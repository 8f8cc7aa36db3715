//! Integer Laurent polynomials, truncated power series and Hilbert series in rational form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Variables};

/// Finite integer Laurent polynomial `sum c_k t^(low + k)`, kept normalized
/// (no leading or trailing zeros; zero has `low = 0` and no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i32) -> Self {
        Self::new(e, vec![c])
    }

    pub fn new(low: i32, coeffs: Vec<i128>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Polynomial in ascending powers starting at `t^0`.
    pub fn from_coeffs(coeffs: &[i128]) -> Self {
        Self::new(0, coeffs.to_vec())
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i128 {
        let k = e - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` for nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(k, c)| (self.low + k as i32, *c))
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Self::new(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.low + other.low, coeffs)
    }

    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitution `t -> t^k` for `k != 0` (negative `k` reverses).
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0);
        let mut map: BTreeMap<i32, i128> = BTreeMap::new();
        for (e, c) in self.terms() {
            *map.entry(e * k).or_default() += c;
        }
        Self::from_map(&map)
    }

    fn from_map(map: &BTreeMap<i32, i128>) -> Self {
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Self::zero();
        };
        let coeffs = (lo..=hi).map(|e| map.get(&e).copied().unwrap_or(0)).collect();
        Self::new(lo, coeffs)
    }

    /// Keeps terms of exponent `<= max`.
    pub fn truncate(&self, max: i32) -> Self {
        if self.is_zero() || max < self.low {
            return Self::zero();
        }
        let keep = ((max - self.low + 1) as usize).min(self.coeffs.len());
        Self::new(self.low, self.coeffs[..keep].to_vec())
    }

    /// Product truncated to exponents `<= max`.
    pub fn mul_truncated(&self, other: &Self, max: i32) -> Self {
        self.truncate(max - other.low().unwrap_or(0))
            .mul(&other.truncate(max - self.low().unwrap_or(0)))
            .truncate(max)
    }

    /// Power series inverse up to `t^max` of a series whose lowest term is `t^0` with coefficient ±1.
    pub fn inverse_series(&self, max: i32) -> Result<Self> {
        if self.low() != Some(0) || self.coeffs[0].abs() != 1 {
            return Err(Error::NotApplicable(
                "series inverse needs constant term ±1".into(),
            ));
        }
        if max < 0 {
            return Ok(Self::zero());
        }
        let c0 = self.coeffs[0];
        let n = max as usize + 1;
        let mut inv = vec![0i128; n];
        inv[0] = c0;
        for k in 1..n {
            let mut s = 0i128;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += self.coeffs[j] * inv[k - j];
            }
            inv[k] = -s * c0;
        }
        Ok(Self::new(0, inv))
    }

    /// Exact division; `None` unless `other` divides `self` in `Z[t, t^-1]`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = &other.coeffs;
        let lead = *d.last().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![0i128; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            q[k] = c;
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
        if rem.iter().any(|&r| r != 0) {
            return None;
        }
        Some(Self::new(self.low - other.low, q))
    }

    /// Palindromic up to shift: `c_k = c_{n-k}`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Coefficients from `t^low` to `t^high`, ascending.
    pub fn dense(&self) -> (i32, &[i128]) {
        (self.low, &self.coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, a) => write!(f, "{a}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, a) => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Accepts the printed form and a few spellings of it: `2 + 5t - t^3`, `2/t + 5 + 2*t`, `t^-2`.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |offset: usize, message: &str| Error::Parse {
            offset,
            message: message.into(),
        };
        if text.is_empty() {
            return Err(bad(0, "empty polynomial"));
        }
        let mut map: BTreeMap<i32, i128> = BTreeMap::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let start = pos;
            let mut sign = 1i128;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad(pos, "expected + or -"));
            }
            // a sign right after `^` belongs to the exponent
            let end = (pos + 1..bytes.len())
                .find(|&j| matches!(bytes[j], b'+' | b'-') && bytes[j - 1] != b'^')
                .unwrap_or(bytes.len());
            let term = &text[pos..end];
            let (c, e) = parse_term(term).ok_or_else(|| bad(start, "malformed term"))?;
            *map.entry(e).or_default() += sign * c;
            pos = end;
        }
        map.retain(|_, c| *c != 0);
        Ok(Self::from_map(&map))
    }
}

/// `c`, `ct^e`, `c*t^e`, `t`, `c/t`, `c/t^e`.
fn parse_term(term: &str) -> Option<(i128, i32)> {
    let Some(k) = term.find('t') else {
        return term.parse().ok().map(|c| (c, 0));
    };
    let (head, tail) = (&term[..k], &term[k + 1..]);
    let (head, inverted) = match head.strip_suffix('/') {
        Some(h) => (h, true),
        None => (head.strip_suffix('*').unwrap_or(head), false),
    };
    let c: i128 = if head.is_empty() { 1 } else { head.parse().ok()? };
    let e: i32 = match tail {
        "" => 1,
        _ => tail.strip_prefix('^')?.parse().ok()?,
    };
    Some((c, if inverted { -e } else { e }))
}

/// `1 - t^a`.
pub fn one_minus_t_pow(a: u32) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(1, a as i32))
}

/// A Hilbert series `numerator / prod (1 - t^a_i)` with a truncated expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    numerator: LaurentPoly,
    denominator_exponents: Vec<u32>,
    truncation: i32,
    expansion: LaurentPoly,
}

impl RationalSeries {
    pub fn new(numerator: LaurentPoly, mut denominator_exponents: Vec<u32>, truncation: i32) -> Self {
        denominator_exponents.sort_unstable();
        let expansion = expand(&numerator, &denominator_exponents, truncation);
        RationalSeries {
            numerator,
            denominator_exponents,
            truncation,
            expansion,
        }
    }

    /// A finite (Artinian) series.
    pub fn polynomial(p: LaurentPoly) -> Self {
        let t = p.high().unwrap_or(0);
        Self::new(p, Vec::new(), t)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator_exponents(&self) -> &[u32] {
        &self.denominator_exponents
    }

    pub fn truncation(&self) -> i32 {
        self.truncation
    }

    pub fn expansion(&self) -> &LaurentPoly {
        &self.expansion
    }

    pub fn coefficient(&self, d: i32) -> i128 {
        assert!(d <= self.truncation, "degree {d} beyond truncation {}", self.truncation);
        self.expansion.coeff(d)
    }

    /// Order of the pole at `t = 1`.
    pub fn pole_order(&self) -> usize {
        let mut num = self.numerator.clone();
        let mut cancelled = 0;
        let lin = one_minus_t_pow(1);
        while !num.is_zero() && num.eval_at_one() == 0 && cancelled < self.denominator_exponents.len() {
            num = num.exact_div(&lin).expect("(1-t) divides a polynomial vanishing at 1");
            cancelled += 1;
        }
        self.denominator_exponents.len() - cancelled
    }

    /// Canonical printing: numerator in ascending powers, sorted denominator exponents.
    pub fn canonical_string(&self) -> String {
        if self.denominator_exponents.is_empty() {
            return self.numerator.to_string();
        }
        let den: Vec<String> = self
            .denominator_exponents
            .iter()
            .map(|a| if *a == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{a})") })
            .collect();
        format!("({}) / {}", self.numerator, den.join(""))
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

fn expand(num: &LaurentPoly, den: &[u32], max: i32) -> LaurentPoly {
    let mut acc = num.truncate(max);
    for &a in den {
        // multiply by 1/(1 - t^a) = sum t^{ka}
        let Some(low) = acc.low() else { break };
        let mut map: BTreeMap<i32, i128> = BTreeMap::new();
        for e in low..=max {
            let mut s = acc.coeff(e);
            if e - a as i32 >= low {
                s += map.get(&(e - a as i32)).copied().unwrap_or(0);
            }
            if s != 0 {
                map.insert(e, s);
            }
        }
        acc = LaurentPoly::from_map(&map);
    }
    acc
}

/// Multiplicity polynomial: numerator over the canonical denominator with `dim` factors.
///
/// Checks that the pole order at `t = 1` is `dim`.
pub fn multiplicity_polynomial(h: &RationalSeries, dim: usize) -> Result<LaurentPoly> {
    let found = h.pole_order();
    if found != dim {
        return Err(Error::Dimension { expected: dim, found });
    }
    let (eps, _) = canonical_form(h.numerator(), h.denominator_exponents(), dim);
    Ok(eps)
}

/// `e = eps(1)`; undefined for the zero object.
pub fn multiplicity(h: &RationalSeries) -> Result<i128> {
    if h.numerator().is_zero() {
        return Err(Error::UndefinedMultiplicity);
    }
    let eps = multiplicity_polynomial(h, h.pole_order())?;
    Ok(eps.eval_at_one())
}

/// Reduces `num / prod(1 - t^w)` to exactly `dim` denominator factors.
///
/// Tries subsets of the given exponents (kept as denominator), preferring the
/// lexicographically smallest sorted multiset; falls back to `(1 - t^L)^dim`
/// with `L` the lcm of the exponents.
pub fn canonical_form(num: &LaurentPoly, den: &[u32], dim: usize) -> (LaurentPoly, Vec<u32>) {
    let mut den = den.to_vec();
    den.sort_unstable();
    if den.len() == dim {
        return (num.clone(), den);
    }
    let n = den.len();
    let mut best: Option<(Vec<u32>, LaurentPoly)> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != dim {
            continue;
        }
        let kept: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| den[i]).collect();
        let mut q = num.clone();
        let mut ok = true;
        for i in (0..n).filter(|i| mask >> i & 1 == 0) {
            match q.exact_div(&one_minus_t_pow(den[i])) {
                Some(r) => q = r,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && best.as_ref().is_none_or(|(b, _)| kept < *b) {
            best = Some((kept, q));
        }
    }
    if let Some((kept, q)) = best {
        return (q, kept);
    }
    let l = den.iter().fold(1u32, |acc, &a| lcm(acc, a));
    let mut q = num.clone();
    for _ in 0..dim {
        q = q.mul(&one_minus_t_pow(l));
    }
    for &a in &den {
        q = q.exact_div(&one_minus_t_pow(a)).expect("pole order bounded at every root of unity");
    }
    (q, vec![l; dim])
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Numerator `N` with `H_{S/I}(t) = N(t) / prod_i (1 - t^{w_i})` for a monomial ideal `I`.
///
/// Pivot recursion `N(I) = N(I + (p)) + t^{deg p} N(I : p)` with `p` a power of
/// the variable occurring in the most generators; coprime generators are the base case.
pub fn monomial_ideal_numerator(vars: &Variables, gens: &[Monomial]) -> LaurentPoly {
    let gens = minimize(gens);
    if gens.is_empty() {
        return LaurentPoly::one();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(LaurentPoly::one(), |acc, g| acc.mul(&one_minus_t_pow(g.degree())));
    }
    let n = vars.len();
    let var = (0..n)
        .max_by_key(|&i| (gens.iter().filter(|g| g.exponents()[i] > 0).count(), std::cmp::Reverse(i)))
        .expect("nonempty variable set");
    let e = gens
        .iter()
        .filter(|g| g.exponents()[var] > 0)
        .map(|g| g.exponents()[var])
        .min()
        .expect("pivot variable occurs");
    let mut exps = vec![0u16; n];
    exps[var] = e;
    let pivot = vars.monomial(exps);

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let reduced: Vec<u16> = g
                .exponents()
                .iter()
                .zip(pivot.exponents())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect();
            vars.monomial(reduced)
        })
        .collect();
    monomial_ideal_numerator(vars, &with_pivot)
        .add(&monomial_ideal_numerator(vars, &colon).shift(pivot.degree() as i32))
}

fn minimize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in sorted {
        if !out.iter().any(|o| o.divides(&g)) {
            out.retain(|o| !g.divides(o));
            out.push(g);
        }
    }
    out
}

/// Krull dimension of `S/I` for a monomial ideal: the largest set of variables
/// no generator is supported in.
pub fn monomial_ideal_dimension(nvars: usize, gens: &[Monomial]) -> usize {
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut best = 0;
    for set in 0u64..(1 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// `Σ b_{i,j} t^j z^i` on the window `i <= max_z`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoVariableSeries {
    max_z: i32,
    coeffs: BTreeMap<(i32, i32), i128>,
}

impl TwoVariableSeries {
    pub fn new(max_z: i32) -> Self {
        TwoVariableSeries {
            max_z,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(max_z: i32, terms: impl IntoIterator<Item = ((i32, i32), i128)>) -> Self {
        let mut s = Self::new(max_z);
        for ((i, j), c) in terms {
            s.add_term(i, j, c);
        }
        s
    }

    pub fn max_z(&self) -> i32 {
        self.max_z
    }

    /// Adds `c t^j z^i`; terms beyond the window are dropped.
    pub fn add_term(&mut self, i: i32, j: i32, c: i128) {
        if i > self.max_z || c == 0 {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_default();
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i32, j: i32) -> i128 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((i, j), b_{i,j})`, ordered by `i` then `j`.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i128)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::new(self.max_z.min(other.max_z));
        for ((i, j), c) in self.terms().chain(other.terms()) {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_terms(self.max_z, self.terms().map(|(k, x)| (k, x * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.max_z.min(other.max_z));
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in other.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// `(t, z) -> (t^2, -z^2)`.
    pub fn substitute_square_negated(&self) -> Self {
        Self::from_terms(
            self.max_z,
            self.terms()
                .map(|((i, j), c)| ((2 * i, 2 * j), if i % 2 == 0 { c } else { -c })),
        )
    }

    /// `P(t, -1)`.
    pub fn at_z_minus_one(&self) -> LaurentPoly {
        let mut map: BTreeMap<i32, i128> = BTreeMap::new();
        for ((i, j), c) in self.terms() {
            *map.entry(j).or_default() += if i % 2 == 0 { c } else { -c };
        }
        LaurentPoly::from_map(&map)
    }

    /// First `(i, j)` where the two series differ, on the common window.
    pub fn first_difference(&self, other: &Self) -> Option<(i32, i32)> {
        let window = self.max_z.min(other.max_z);
        let keys: std::collections::BTreeSet<(i32, i32)> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|&(i, _)| i <= window)
            .find(|&(i, j)| self.coeff(i, j) != other.coeff(i, j))
    }
}

impl fmt::Display for TwoVariableSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((i, j), c)| {
                let mut s = c.to_string();
                if j != 0 {
                    s.push_str(&format!("t^{j}"));
                }
                if i != 0 {
                    s.push_str(&format!("z^{i}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i128]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 1]).exact_div(&p(&[1, 1])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[0, 0, 3]).low(), Some(2));
        assert_eq!(p(&[1, 2]).substitute_power(-1), LaurentPoly::new(-1, vec![2, 1]));
    }

    #[test]
    fn inverse_series() {
        // 1/(1+t)^2 = sum (i+1)(-t)^i
        let inv = p(&[1, 2, 1]).inverse_series(4).unwrap();
        assert_eq!(inv, p(&[1, -2, 3, -4, 5]));
    }

    #[test]
    fn expansion_of_rational_forms() {
        let h = RationalSeries::new(p(&[1, 1]), vec![1], 5);
        assert_eq!(h.expansion(), &p(&[1, 2, 2, 2, 2, 2]));
        assert_eq!(h.pole_order(), 1);
        assert_eq!(h.canonical_string(), "(1 + t) / (1 - t)");
    }

    #[test]
    fn multiplicity_examples() {
        let h = RationalSeries::new(p(&[1, 1]), vec![1], 4);
        assert_eq!(multiplicity_polynomial(&h, 1).unwrap(), p(&[1, 1]));
        assert_eq!(multiplicity(&h).unwrap(), 2);
        let a = RationalSeries::polynomial(p(&[1, 2, 1]));
        assert_eq!(multiplicity_polynomial(&a, 0).unwrap(), p(&[1, 2, 1]));
        assert_eq!(multiplicity(&a).unwrap(), 4);
        let line = RationalSeries::new(LaurentPoly::one(), vec![1], 3);
        assert_eq!(multiplicity(&line).unwrap(), 1);
        assert_eq!(
            multiplicity_polynomial(&line, 0),
            Err(Error::Dimension { expected: 0, found: 1 })
        );
        assert_eq!(
            multiplicity(&RationalSeries::polynomial(LaurentPoly::zero())),
            Err(Error::UndefinedMultiplicity)
        );
    }

    #[test]
    fn pivot_recursion() {
        let v = Variables::standard(&["x", "y"]);
        let m = |a, b| v.monomial(vec![a, b]);
        // (x^2, y^2): (1-t^2)^2
        let n = monomial_ideal_numerator(&v, &[m(2, 0), m(0, 2)]);
        assert_eq!(n, p(&[1, 0, -2, 0, 1]));
        // (xy): 1 - t^2
        assert_eq!(monomial_ideal_numerator(&v, &[m(1, 1)]), p(&[1, 0, -1]));
        // (x^2, xy, y^2): 1 - 3t^2 + 2t^3
        assert_eq!(
            monomial_ideal_numerator(&v, &[m(2, 0), m(1, 1), m(0, 2)]),
            p(&[1, 0, -3, 2])
        );
        assert_eq!(monomial_ideal_dimension(2, &[m(1, 1)]), 1);
        assert_eq!(monomial_ideal_dimension(2, &[m(2, 0), m(0, 2)]), 0);
        assert_eq!(monomial_ideal_dimension(2, &[]), 2);
    }

    #[test]
    fn weighted_canonical_form() {
        // k[x,y], deg y = 2, modulo xy: (1 - t^3)/((1-t)(1-t^2)) = (1+t+t^2)/(1-t^2)
        let (eps, den) = canonical_form(&p(&[1, 0, 0, -1]), &[1, 2], 1);
        assert_eq!(den, vec![2]);
        assert_eq!(eps, p(&[1, 1, 1]));
    }

    #[test]
    fn two_variable_substitutions() {
        // 1 + tz on the window z^2
        let p = TwoVariableSeries::from_terms(2, [((0, 0), 1), ((1, 1), 1)]);
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(1, 1), 2);
        assert_eq!(sq.coeff(2, 2), 1);
        let sub = p.substitute_square_negated();
        assert_eq!(sub.coeff(2, 2), -1);
        let twice_s2 = sq.add(&sub);
        assert_eq!(twice_s2, p.scale(2));
        assert_eq!(p.at_z_minus_one(), LaurentPoly::from_coeffs(&[1, -1]));
        assert_eq!(p.first_difference(&sq), Some((1, 1)));
    }
}
