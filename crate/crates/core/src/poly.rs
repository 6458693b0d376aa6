//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector, so iteration is
//! in lexicographic order; printing uses graded-lex (see [`Polynomial::terms_grlex`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
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

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn as_point(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Graded-lex comparison: total degree first, then lexicographic.
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `z_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "monomial arity");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (canonical print order).
    pub fn terms_grlex(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().map(Monomial::as_point).collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Some(d) when every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to the variable with 0-based index `i`.
    pub fn derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * rat(e as i64));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute the variable `i` by the polynomial `q` (same arity).
    pub fn substitute(&self, i: usize, q: &Polynomial) -> Polynomial {
        assert_eq!(q.nvars, self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.nvars)];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            let t = powers[e].mul_monomial(&rest).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Apply `z_i -> q_i` simultaneously; `images` has one entry per variable,
    /// all of arity `target_nvars`.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|q| q.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (q, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &q.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Monomial substitution `z_i -> prod_k u_k^{M[k][i]}` with the common
    /// monomial factor extracted: returns `(e, q)` with image `= u^e * q`.
    pub fn substitute_monomial_map(&self, map: &[Vec<u32>]) -> (Vec<u32>, Polynomial) {
        let k = map.len();
        for row in map {
            assert_eq!(row.len(), self.nvars, "matrix must have one column per variable");
        }
        if self.is_zero() {
            return (Vec::new(), Polynomial::zero(k));
        }
        let images: Vec<(Vec<u32>, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = map
                    .iter()
                    .map(|row| row.iter().zip(&m.0).map(|(a, b)| a * b).sum())
                    .collect();
                (e, c)
            })
            .collect();
        let factor: Vec<u32> = (0..k)
            .map(|r| images.iter().map(|(e, _)| e[r]).min().unwrap())
            .collect();
        let mut q = Polynomial::zero(k);
        for (e, c) in images {
            let shifted = e.iter().zip(&factor).map(|(a, b)| a - b).collect();
            q.add_term(Monomial(shifted), c.clone());
        }
        (factor, q)
    }

    /// Keep only the variables listed in `keep` (others must not occur).
    pub fn project(&self, keep: &[usize]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(keep.len());
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                if m.0[i] > 0 && !keep.contains(&i) {
                    return None;
                }
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        Some(out)
    }

    /// Terms whose exponents vanish outside `subset`, kept in the full arity.
    pub fn restrict_to_coordinates(&self, subset: &[usize]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (0..self.nvars).all(|i| subset.contains(&i) || m.0[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embed into a larger ring, placing variable `i` at position `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &p) in positions.iter().enumerate() {
                e[p] = m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scale so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let tm = m.div(&lm);
            let tc = c / &lc;
            let t = Polynomial::term(tm, tc);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Coefficients with respect to variable `v`: entry `k` is the coefficient
    /// of `z_v^k`, as a polynomial not involving `z_v`.
    fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    fn content_in(&self, v: usize) -> Polynomial {
        self.coefficients_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .fold(Polynomial::zero(self.nvars), |acc, c| acc.gcd(&c))
    }

    fn pseudo_rem(&self, b: &Polynomial, v: usize) -> Polynomial {
        let db = b.degree_in(v).unwrap_or(0);
        let bc = b.coefficients_in(v);
        let lc = bc[db as usize].clone();
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v).unwrap_or(0);
            if dr < db {
                break;
            }
            let rc = r.coefficients_in(v)[dr as usize].clone();
            let mut shift = Monomial::one(self.nvars);
            shift.0[v] = dr - db;
            r = &(&r * &lc) - (&(b * &rc).mul_monomial(&shift));
        }
        r
    }

    /// Greatest common divisor over the rationals, normalized to be monic in
    /// lex order. Recursive primitive remainder sequence on the last variable
    /// that occurs, with contents computed in the remaining variables.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let main = (0..self.nvars)
            .rev()
            .find(|&i| self.involves(i) || other.involves(i));
        let Some(v) = main else {
            return Polynomial::one(self.nvars);
        };
        if !self.involves(v) {
            return self.gcd(&other.content_in(v));
        }
        if !other.involves(v) {
            return other.gcd(&self.content_in(v));
        }
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let content = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b, v);
            if r.is_zero() {
                break;
            }
            if !r.involves(v) {
                b = Polynomial::one(self.nvars);
                break;
            }
            let cr = r.content_in(v);
            a = b;
            b = r.div_exact(&cr).expect("content divides");
        }
        (&content * &b).monic()
    }

    /// True iff no irreducible factor occurs squared: `gcd(p, dp/dz_1, ..)` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = self.clone();
        for i in 0..self.nvars {
            if g.is_constant() {
                break;
            }
            g = g.gcd(&self.derivative(i)?);
        }
        Ok(g.is_constant())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn variable_name(i: usize) -> String {
    format!("z{}", i + 1)
}

fn fmt_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = variable_name(i);
            if e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Canonical text form: graded-lex descending, explicit `*`, rational
/// coefficients as `a/b`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_grlex().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
