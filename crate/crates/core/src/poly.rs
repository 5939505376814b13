//! Monomials and polynomials with exact rational coefficients.
//!
//! Polynomials are read and written in a small grammar: terms joined by `+`/`-`, factors joined
//! by `*`, coefficients as integers or fractions `a/b`, powers with `^`, e.g. `x^2 - 1/2*x*y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::format_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: impl Into<Vec<u32>>) -> Self {
        Monomial(e.into())
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

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables with positive exponent, as a bitmask.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Graded order used for display and for basis listings: lower degree first, then
    /// lexicographically larger exponent vectors first (so `x` precedes `y`).
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials in `nvars` variables of total degree exactly `d`, in graded order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_terms(m.nvars(), [(m, BigRational::one())])
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The monomial, if this polynomial is a single monomial with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    /// Single term with any nonzero coefficient: it generates the same ideal as its monomial.
    pub fn as_scaled_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, _)) if self.terms.len() == 1 => Some(m),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Drops every term of degree at least `order`.
    pub fn truncate(&self, order: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the polynomial in another ring: variable `i` becomes variable `map[i]` there.
    pub fn remap(&self, target_nvars: usize, map: &[usize]) -> Polynomial {
        let mut out = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target_nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        // Highest degree first; within a degree, `x` before `y`.
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                s.push_str(&m.render(vars));
            } else {
                s.push_str(&format_rational(&abs));
                s.push('*');
                s.push_str(&m.render(vars));
            }
        }
        s
    }

    /// Parses a polynomial over the given variables.
    pub fn parse(text: &str, vars: &[String]) -> Result<Polynomial> {
        Parser::new(text, vars).polynomial()
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '§' || c == '\''
}

pub fn is_valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [String]) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            vars,
            text,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad number"))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut p = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -BigRational::one()
            }
            Some('+') => {
                self.pos += 1;
                BigRational::one()
            }
            _ => BigRational::one(),
        };
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, sign * c);
            match self.peek() {
                Some('+') => sign = BigRational::one(),
                Some('-') => sign = -BigRational::one(),
                None => return Ok(p),
                Some(_) => return Err(self.err("unexpected character")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coef = BigRational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.number()?;
                    let q = if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.number()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        BigRational::new(num, den)
                    } else {
                        BigRational::from_integer(num)
                    };
                    coef *= q;
                }
                Some(c) if is_ident_start(c) => {
                    let start = self.pos;
                    while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or(Error::UnknownVariable(name))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        e = self
                            .number()?
                            .try_into()
                            .map_err(|_| self.err("exponent too large"))?;
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((Monomial(exps), coef));
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_render() {
        let v = vars(&["x", "y"]);
        let p = Polynomial::parse("x^2 + y^2", &v).unwrap();
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.render(&v), "x^2 + y^2");
        let p = Polynomial::parse("-1/2*x*y + 3 - x*x", &v).unwrap();
        assert_eq!(p.render(&v), "-x^2 - 1/2*x*y + 3");
        assert_eq!(Polynomial::parse(&p.render(&v), &v).unwrap(), p);
        let z = Polynomial::parse("x*y - y*x", &v).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.render(&v), "0");
    }

    #[test]
    fn parse_errors() {
        let v = vars(&["x"]);
        assert!(matches!(Polynomial::parse("z", &v), Err(Error::UnknownVariable(_))));
        assert!(Polynomial::parse("x +", &v).is_err());
        assert!(Polynomial::parse("1/0*x", &v).is_err());
        assert!(Polynomial::parse("x ^", &v).is_err());
    }

    #[test]
    fn primed_and_polarized_names() {
        let v = vars(&["x", "x§1", "y'"]);
        let p = Polynomial::parse("x*x§1 + y'^2", &v).unwrap();
        assert_eq!(p.render(&v), "x*x§1 + y'^2");
    }

    #[test]
    fn monomial_basics() {
        let a = Monomial(vec![1, 1, 0]);
        let b = Monomial(vec![2, 1, 1]);
        assert!(a.divides(&b));
        assert_eq!(b.div(&a), Some(Monomial(vec![1, 0, 1])));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.lcm(&Monomial(vec![0, 2, 0])), Monomial(vec![1, 2, 0]));
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 2)[0], Monomial(vec![2, 0]));
    }
}
