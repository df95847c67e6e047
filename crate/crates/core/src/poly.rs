//! Small integer polynomial types: univariate (chromatic polynomials,
//! quotient presentations), Laurent in one variable, and bivariate Laurent in
//! `t, q` for Poincaré series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::integer::Integer;

/// Dense univariate polynomial, coefficient `i` of `x^i`. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Integer>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Poly::new(vec![c.into()])
    }

    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    /// `x^k`.
    pub fn monomial(k: usize, c: impl Into<Integer>) -> Self {
        let mut v = vec![Integer::ZERO; k + 1];
        v[k] = c.into();
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn leading(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Integer::from(i as i64)).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::constant(1), |acc, _| &acc * self)
    }

    /// `self(other)`.
    pub fn compose(&self, other: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * other) + &Poly::constant(c.clone()))
    }

    /// Drops every term of degree above `bound`.
    pub fn truncate(&self, bound: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(bound + 1).cloned().collect())
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::ZERO, |acc, c| c.add_mul(&acc, x))
    }

    fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::ZERO, |g, c| g.gcd(c))
    }

    fn primitive(&self) -> Poly {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let mut p = Poly::new(self.coeffs.iter().map(|c| c.div_exact(&g)).collect());
        if p.leading().is_negative() {
            p = -&p;
        }
        p
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading();
            let shifted = &Poly::monomial(rd - dd, c) * d;
            r = &(&r * &Poly::constant(lead.clone())) - &shifted;
        }
        r
    }

    /// Greatest common divisor over the rationals, returned primitive with
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        let terms: BTreeMap<i64, Integer> = self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())).collect();
        render_terms(terms.iter().rev().map(|(e, c)| (c.clone(), monomial_text(&[(var, *e)]))))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Integer::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_mul(a, b);
            }
        }
        Poly::new(out)
    }
}

/// Laurent polynomial in one variable.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Integer>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(e: i64, c: impl Into<Integer>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, &c.into());
        p
    }

    pub fn add_term(&mut self, e: i64, c: &Integer) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Integer> {
        &self.terms
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> LaurentPoly {
        (0..k).fold(LaurentPoly::monomial(0, 1), |acc, _| acc.mul(self))
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn display_in(&self, var: &str) -> String {
        render_terms(self.terms.iter().map(|(e, c)| (c.clone(), monomial_text(&[(var, *e)]))))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("q"))
    }
}

/// Bivariate Laurent polynomial `Σ c_{i,j} t^i q^j`, used for Poincaré series.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(i64, i64), Integer>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn add_term(&mut self, t: i64, q: i64, c: &Integer) {
        let slot = self.terms.entry((t, q)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coeff(&self, t: i64, q: i64) -> Integer {
        self.terms.get(&(t, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Integer> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets `t = -1`, leaving a Laurent polynomial in `q`.
    pub fn at_t_minus_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((t, q), c) in &self.terms {
            let c = if t.rem_euclid(2) == 1 { -c } else { c.clone() };
            out.add_term(*q, &c);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_terms(self.terms.iter().map(|((t, q), c)| (c.clone(), monomial_text(&[("t", *t), ("q", *q)]))));
        write!(f, "{s}")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn monomial_text(vars: &[(&str, i64)]) -> String {
    let mut s = String::new();
    for (v, e) in vars {
        match e {
            0 => {}
            1 => s.push_str(v),
            e if *e < 0 => s.push_str(&format!("{v}^({e})")),
            e => s.push_str(&format!("{v}^{e}")),
        }
    }
    s
}

fn render_terms(terms: impl Iterator<Item = (Integer, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms.filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let abs = c.abs();
        let body = match (mono.is_empty(), abs.is_one()) {
            (true, _) => abs.to_string(),
            (false, true) => mono,
            (false, false) => format!("{abs}{mono}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
