//! Homogeneous polynomials in `C`, `ζ(2)` and odd zeta values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::constants::{even_zeta_ratio, euler_gamma, zeta_value};
use crate::error::{Error, Result};
use crate::real::{bits_for_digits, Real};

/// `C^euler · ζ(2)^zeta2 · Π ζ(k)^e` over odd `k ≥ 3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaMonomial {
    pub euler: u32,
    pub zeta2: u32,
    /// `(k, exponent)` with `k` odd, increasing, exponents positive.
    pub odd: Vec<(u32, u32)>,
}

impl ZetaMonomial {
    pub fn one() -> ZetaMonomial {
        ZetaMonomial::default()
    }

    pub fn weight(&self) -> u32 {
        self.euler + 2 * self.zeta2 + self.odd.iter().map(|(k, e)| k * e).sum::<u32>()
    }

    pub fn is_one(&self) -> bool {
        self.euler == 0 && self.zeta2 == 0 && self.odd.is_empty()
    }

    pub fn mul(&self, other: &ZetaMonomial) -> ZetaMonomial {
        let mut odd: BTreeMap<u32, u32> = self.odd.iter().copied().collect();
        for &(k, e) in &other.odd {
            *odd.entry(k).or_default() += e;
        }
        ZetaMonomial { euler: self.euler + other.euler, zeta2: self.zeta2 + other.zeta2, odd: odd.into_iter().collect() }
    }

    pub fn eval(&self, digits: u32) -> Real {
        let prec = bits_for_digits(digits + 5);
        let mut x = Real::one(prec);
        if self.euler > 0 {
            x = &x * &euler_gamma(digits).powi(self.euler);
        }
        if self.zeta2 > 0 {
            x = &x * &zeta_value(2, digits).powi(self.zeta2);
        }
        for &(k, e) in &self.odd {
            x = &x * &zeta_value(k, digits).powi(e);
        }
        x
    }

    /// Factors as displayed: `C`, then `ζ(2k)` for the `ζ(2)` power, then
    /// odd zetas, each with its exponent.
    fn display_factors(&self) -> Vec<(String, u32, u32)> {
        let mut f = Vec::new();
        if self.euler > 0 {
            f.push(("C".to_string(), 1, self.euler));
        }
        if self.zeta2 > 0 {
            f.push((format!("ζ({})", 2 * self.zeta2), 2 * self.zeta2, 1));
        }
        for &(k, e) in &self.odd {
            f.push((format!("ζ({k})"), k, e));
        }
        f.sort_by_key(|x| x.1);
        f
    }
}

/// Generators of weight at most `weight`: `C` (optional), `ζ(2)`, odd
/// `ζ(k)`. Monomials come out in a fixed order: fewer `C`, then fewer `ζ(2)`,
/// then by the odd part.
pub fn monomial_basis(weight: u32, include_euler: bool) -> Vec<ZetaMonomial> {
    fn odd_parts(w: u32, min: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if w == 0 {
            out.push(acc.clone());
            return;
        }
        let mut k = min;
        while k <= w {
            for e in 1..=w / k {
                acc.push((k, e));
                odd_parts(w - k * e, k + 2, acc, out);
                acc.pop();
            }
            k += 2;
        }
    }
    let mut out = Vec::new();
    let max_c = if include_euler { weight } else { 0 };
    for c in 0..=max_c {
        for z2 in 0..=(weight - c) / 2 {
            let rest = weight - c - 2 * z2;
            let mut parts = Vec::new();
            odd_parts(rest, 3, &mut Vec::new(), &mut parts);
            for odd in parts {
                out.push(ZetaMonomial { euler: c, zeta2: z2, odd });
            }
        }
    }
    out.sort();
    out
}

/// Rational combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaPolynomial {
    pub terms: BTreeMap<ZetaMonomial, BigRational>,
}

impl ZetaPolynomial {
    pub fn zero() -> ZetaPolynomial {
        ZetaPolynomial::default()
    }

    pub fn constant(q: BigRational) -> ZetaPolynomial {
        ZetaPolynomial::monomial(ZetaMonomial::one(), q)
    }

    pub fn monomial(m: ZetaMonomial, q: BigRational) -> ZetaPolynomial {
        let mut p = ZetaPolynomial::zero();
        p.add_term(m, q);
        p
    }

    /// `ζ(k)` for any `k ≥ 2`, with even values through powers of `ζ(2)`.
    pub fn zeta(k: u32) -> ZetaPolynomial {
        if k.is_multiple_of(2) {
            ZetaPolynomial::monomial(ZetaMonomial { zeta2: k / 2, ..Default::default() }, even_zeta_ratio(k as usize / 2))
        } else {
            ZetaPolynomial::monomial(ZetaMonomial { odd: vec![(k, 1)], ..Default::default() }, BigRational::one())
        }
    }

    pub fn euler() -> ZetaPolynomial {
        ZetaPolynomial::monomial(ZetaMonomial { euler: 1, ..Default::default() }, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: ZetaMonomial, q: BigRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ZetaPolynomial) -> ZetaPolynomial {
        let mut p = self.clone();
        for (m, q) in &other.terms {
            p.add_term(m.clone(), q.clone());
        }
        p
    }

    pub fn scale(&self, q: &BigRational) -> ZetaPolynomial {
        let mut p = ZetaPolynomial::zero();
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c * q);
        }
        p
    }

    pub fn mul(&self, other: &ZetaPolynomial) -> ZetaPolynomial {
        let mut p = ZetaPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.mul(b), x * y);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> ZetaPolynomial {
        let mut p = ZetaPolynomial::constant(BigRational::one());
        for _ in 0..e {
            p = p.mul(self);
        }
        p
    }

    /// Common weight of the monomials, `None` if mixed; zero has weight `None`.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn eval(&self, digits: u32) -> Real {
        let prec = bits_for_digits(digits + 5);
        self.terms
            .iter()
            .fold(Real::zero(prec), |acc, (m, q)| &acc + &(&Real::from_rational(q, prec) * &m.eval(digits)))
    }

    /// Coefficient vector against `basis`; `None` if a monomial is missing.
    pub fn coefficients(&self, basis: &[ZetaMonomial]) -> Option<Vec<BigRational>> {
        if self.terms.keys().any(|m| !basis.contains(m)) {
            return None;
        }
        Some(basis.iter().map(|m| self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)).collect())
    }

    /// Internal form, e.g. `27/10*z2^2`, `-1/2*z3^2 + 3*C*z2`.
    pub fn internal_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, q) in self.terms.iter().rev() {
            let mut f = Vec::new();
            if m.euler > 0 {
                f.push(pow_str("C", m.euler));
            }
            if m.zeta2 > 0 {
                f.push(pow_str("z2", m.zeta2));
            }
            for &(k, e) in &m.odd {
                f.push(pow_str(&format!("z{k}"), e));
            }
            let body = if f.is_empty() { String::new() } else { format!("*{}", f.join("*")) };
            parts.push(format!("{q}{body}"));
        }
        parts.join(" + ")
    }

    /// Display form: `ζ(2)^k` parts become `ζ(2k)` with the Bernoulli factor
    /// moved into the coefficient; terms with more factors first, ties by
    /// increasing smallest argument.
    pub fn display_form(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut rows: Vec<(Vec<(String, u32, u32)>, BigRational)> = self
            .terms
            .iter()
            .map(|(m, q)| (m.display_factors(), q / even_zeta_ratio(m.zeta2 as usize)))
            .collect();
        rows.sort_by(|a, b| {
            let na: u32 = a.0.iter().map(|f| f.2).sum();
            let nb: u32 = b.0.iter().map(|f| f.2).sum();
            let ka: Vec<u32> = a.0.iter().map(|f| f.1).collect();
            let kb: Vec<u32> = b.0.iter().map(|f| f.1).collect();
            nb.cmp(&na).then(ka.cmp(&kb))
        });
        let mut out = String::new();
        for (i, (factors, q)) in rows.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body: String = factors.iter().map(|(s, _, e)| pow_str(s, *e)).collect();
            let coef = if a.is_integer() { a.numer().to_string() } else { format!("{}/{} ", a.numer(), a.denom()) };
            if body.is_empty() {
                out.push_str(coef.trim_end());
            } else if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&coef);
                out.push_str(&body);
            }
        }
        out
    }

    /// Parses the display form and common table notation: `27/4 ζ(4)`,
    /// `-9/2(ζ(2)ζ(3) + ζ(5))`, `(C² + 7ζ(2))/2`, `zeta(3)^2`, `0`.
    pub fn parse(s: &str) -> Result<ZetaPolynomial> {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

fn pow_str(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_form())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let v: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&v) {
            self.pos += v.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        let rest: String = self.chars[self.pos..].iter().collect();
        Err(Error::Parse(format!("{what} at {rest:?}")))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ZetaPolynomial> {
        let neg = self.sign().unwrap_or(false);
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&-BigRational::one());
        }
        while let Some(neg) = self.sign() {
            let t = self.term()?;
            acc = acc.add(&if neg { t.scale(&-BigRational::one()) } else { t });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZetaPolynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('/') {
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("division by zero");
                }
                acc = acc.scale(&BigRational::new(BigInt::one(), d));
            } else if self.eat('*')
                || self.eat('·')
                || matches!(self.peek(), Some(c) if c == '(' || c == 'ζ' || c == 'z' || c == 'C' || c.is_ascii_digit())
            {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            return self.integer()?.to_u32().map_or_else(|| self.err("exponent too large"), Ok);
        }
        let mut e: Option<u32> = None;
        while let Some(d) = self.peek().and_then(|c| SUPERSCRIPTS.iter().position(|&s| s == c)) {
            e = Some(e.unwrap_or(0) * 10 + d as u32);
            self.pos += 1;
        }
        Ok(e.unwrap_or(1))
    }

    fn factor(&mut self) -> Result<ZetaPolynomial> {
        let base = if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            v
        } else if self.eat('ζ') || self.eat_str("zeta") {
            if !self.eat('(') {
                return self.err("expected '('");
            }
            let k = self.integer()?.to_u32().filter(|&k| k >= 2);
            let Some(k) = k else { return self.err("zeta argument must be at least 2") };
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            ZetaPolynomial::zeta(k)
        } else if self.peek() == Some('z') {
            self.pos += 1;
            let k = self.integer()?.to_u32().filter(|&k| k >= 2);
            let Some(k) = k else { return self.err("zeta argument must be at least 2") };
            ZetaPolynomial::zeta(k)
        } else if self.eat('C') {
            ZetaPolynomial::euler()
        } else if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            ZetaPolynomial::constant(BigRational::from_integer(self.integer()?))
        } else {
            return self.err("unexpected input");
        };
        let e = self.exponent()?;
        Ok(base.pow(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(2, false), vec![ZetaMonomial { zeta2: 1, ..Default::default() }]);
        let w5 = monomial_basis(5, false);
        assert_eq!(w5.len(), 2);
        assert!(w5.iter().all(|m| m.weight() == 5));
        assert_eq!(monomial_basis(2, true).len(), 2);
    }

    #[test]
    fn display_converts_even_powers() {
        let p = ZetaPolynomial::monomial(ZetaMonomial { zeta2: 2, ..Default::default() }, q(27, 10));
        assert_eq!(p.display_form(), "27/4 ζ(4)");
        assert_eq!(ZetaPolynomial::zero().display_form(), "0");
        let m = ZetaPolynomial::zeta(2).mul(&ZetaPolynomial::zeta(3));
        assert_eq!(m.display_form(), "ζ(2)ζ(3)");
    }

    #[test]
    fn parse_table_notation() {
        let p = ZetaPolynomial::parse("-49/2 ζ(3)² - 945/16 ζ(6)").unwrap();
        let z3sq = ZetaMonomial { odd: vec![(3, 2)], ..Default::default() };
        let z2cube = ZetaMonomial { zeta2: 3, ..Default::default() };
        assert_eq!(p.terms[&z3sq], q(-49, 2));
        assert_eq!(p.terms[&z2cube], q(-27, 2));
        let c = ZetaPolynomial::parse("(C² + 7ζ(2))/2").unwrap();
        assert_eq!(c.weight(), Some(2));
        let d = ZetaPolynomial::parse("−9/2(ζ(2)ζ(3) + ζ(5))").unwrap();
        assert_eq!(d.terms.len(), 2);
        assert!(ZetaPolynomial::parse("0").unwrap().is_zero());
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["27/4 ζ(4)", "-8ζ(2)ζ(3) - 4ζ(5)", "36ζ(3)^3 + 360ζ(3)ζ(6) + 332ζ(9)", "1/2 C^2 + 7/2 ζ(2)", "-C"] {
            let p = ZetaPolynomial::parse(s).unwrap();
            assert_eq!(p.display_form(), s);
        }
    }
}
