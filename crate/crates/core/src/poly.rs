//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted by strictly decreasing monomial under the ring's
//! term order, so the leading term is always `terms[0]`. No stored
//! coefficient is zero.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::RingRef;

#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Coeff)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn variable(ring: &RingRef, var: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.nvars(), var), ring.field().one())],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial) -> Self {
        Polynomial { ring: ring.clone(), terms: vec![(m, ring.field().one())] }
    }

    /// Builds a polynomial from arbitrary terms: like monomials are combined,
    /// zeros dropped, and the result sorted.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms that are already sorted and nonzero.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Coeff)> {
        (!self.terms.is_empty()).then(|| self.terms.remove(0))
    }

    /// Parses a sum of products such as `x^2*y - 3/2*z + 1`.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        let field = ring.field();
        let bad = |msg: String| Error::Precondition(format!("cannot parse polynomial `{text}`: {msg}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input".into()));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                negative = true;
                rest = r;
            } else if !first {
                return Err(bad(format!("expected `+` or `-` before `{rest}`")));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(bad("dangling sign".into()));
            }
            let mut coeff = BigRational::from_integer(BigInt::from(if negative { -1 } else { 1 }));
            let mut exps = vec![0u32; ring.nvars()];
            for factor in term.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let q = match factor.split_once('/') {
                        Some((n, d)) => {
                            let n: BigInt = n.parse().map_err(|_| bad(format!("bad literal `{factor}`")))?;
                            let d: BigInt = d.parse().map_err(|_| bad(format!("bad literal `{factor}`")))?;
                            if d == BigInt::from(0) {
                                return Err(bad("zero denominator".into()));
                            }
                            BigRational::new(n, d)
                        }
                        None => BigRational::from_integer(
                            factor.parse().map_err(|_| bad(format!("bad literal `{factor}`")))?,
                        ),
                    };
                    coeff *= q;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad(format!("bad exponent in `{factor}`")))?),
                        None => (factor, 1),
                    };
                    let idx = ring
                        .var_index(name)
                        .ok_or_else(|| bad(format!("unknown variable `{name}`")))?;
                    exps[idx] += exp;
                }
            }
            terms.push((Monomial::new(exps), field.from_rational(&coeff)?));
        }
        Ok(Self::from_terms(ring, terms))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// A single term (coefficient allowed).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Variables occurring in any term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                used[v] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplication by `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inverse().unwrap()),
            _ => self.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub_multiple(&other.ring.field().one(), &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::IncompatibleRing)
        }
    }

    /// `self + other`, or `self - c*m*other` when `scaled` is given.
    fn merge(&self, other: &Self, scaled: Option<(&Coeff, &Monomial)>) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, c)| match scaled {
            None => (m.clone(), c.clone()),
            Some((k, shift)) => (m.mul(shift), -&(c * k)),
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), &next_b) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = b.next();
                }
                (Some((ma, ca)), Some((mb, cb))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(next_b.take().unwrap());
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let c = ca + cb;
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        next_b = b.next();
                    }
                },
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    /// `self - c * m * other` in a single merge pass.
    pub fn sub_multiple(&self, c: &Coeff, m: &Monomial, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        self.merge(other, Some((c, m)))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        Self::from_terms(
            &self.ring,
            small
                .terms
                .iter()
                .flat_map(|(m, c)| big.terms.iter().map(move |(t, d)| (m.mul(t), c * d))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().map_err(|_| Error::DivisionByZero)?;
        let lc_inv = lc.inverse().unwrap();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let shift = lm.quotient_of(m).ok_or(Error::InexactDivision)?;
            let k = c * &lc_inv;
            rem = rem.sub_multiple(&k, &shift, divisor);
            quotient.push((shift, k));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms: quotient })
    }

    /// Reinterprets the polynomial in `target`, sending variable `i` to
    /// variable `map[i]`.
    pub fn remap(&self, target: &RingRef, map: &[usize]) -> Self {
        let n = target.nvars();
        if self.ring.order() == target.order() && map.iter().enumerate().all(|(i, &j)| i == j) && n == self.ring.nvars() {
            return Polynomial { ring: target.clone(), terms: self.terms.clone() };
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.remap(map, n), c.clone())).collect();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Same polynomial viewed in a ring that shares the variable list but
    /// may use a different order.
    pub fn reorder(&self, target: &RingRef) -> Self {
        let id: Vec<usize> = (0..self.ring.nvars()).collect();
        self.remap(target, &id)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Input-language form: `x^2*y - 3/2*z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.variables();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_display();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}
