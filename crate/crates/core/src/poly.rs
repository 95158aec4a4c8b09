//! Sparse multivariate polynomials over a generic coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Range, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    integer_gcd, integer_lcm, Coeff, ExactDiv, FieldCoeff, Integer, PrimeField, PrimeFieldElem,
    Rational, Unital,
};
use crate::error::Result;
use crate::monomial::Monomial;

/// Degree with a distinguished value for the zero polynomial, so that
/// `max`-based degree bookkeeping never confuses it with a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree of a product.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl serde::Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u64(*d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Map from monomial to nonzero coefficient. Iteration follows the canonical
/// graded-lex order (ascending).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> Default for Polynomial<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Sums up the given terms, dropping anything that cancels.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add_ref(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term, if nonzero.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&Monomial::one())
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    pub fn block_degree(&self, block: Range<usize>) -> Degree {
        self.terms
            .keys()
            .map(|m| m.block_degree(block.clone()))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.block_degree(var..var + 1)
    }

    /// One past the largest variable index that occurs.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    /// True if no variable outside `block` occurs.
    pub fn lives_in(&self, block: Range<usize>) -> bool {
        self.terms.keys().all(|m| m.iter().all(|(i, _)| block.contains(&i)))
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &c.neg_ref());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))))
    }

    pub fn mul_term(&self, mono: &Monomial, k: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.mul(mono), c.mul_ref(k))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    /// `self^e` by repeated squaring; `e >= 1` (use [`Polynomial::pow`] when
    /// the ring has context-free constants).
    pub fn pow_positive(&self, e: u32) -> Self {
        assert!(e >= 1);
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => Polynomial::mul(&r, &base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = Polynomial::mul(&base, &base);
        }
        result.unwrap()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Leading term under an arbitrary monomial comparison.
    pub fn leading_term_by(
        &self,
        cmp: impl Fn(&Monomial, &Monomial) -> Ordering,
    ) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| cmp(a.0, b.0))
    }

    /// Substitute polynomial values for the variables listed in `subs`.
    pub fn compose(&self, subs: &[(usize, Polynomial<C>)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut factor: Option<Self> = None;
            for (i, e) in m.iter() {
                match subs.iter().find(|(v, _)| *v == i) {
                    Some((_, val)) => {
                        let p = val.pow_positive(e);
                        factor = Some(match factor {
                            None => p,
                            Some(f) => Polynomial::mul(&f, &p),
                        });
                    }
                    None => {
                        if rest.len() <= i {
                            rest.resize(i + 1, 0);
                        }
                        rest[i] = e;
                    }
                }
            }
            let mono = Self::term(Monomial::from_exponents(rest), c.clone());
            let t = match factor {
                None => mono,
                Some(f) => Polynomial::mul(&f, &mono),
            };
            out = Polynomial::add(&out, &t);
        }
        out
    }
}

impl<C: Unital> Polynomial<C> {
    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), C::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_integer(&BigInt::from(n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            self.pow_positive(e)
        }
    }

    /// Evaluate at a full point (missing coordinates count as zero).
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter() {
                let v = point.get(i).cloned().unwrap_or_else(C::zero);
                for _ in 0..e {
                    t = t.mul_ref(&v);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitute constants for the listed variables; the variables disappear.
    pub fn substitute(&self, values: &[(usize, C)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (i, v) in values {
                let e = m.exp(*i);
                if e > 0 {
                    for _ in 0..e {
                        coeff = coeff.mul_ref(v);
                    }
                    exps[*i] = 0;
                }
            }
            out.add_term(Monomial::from_exponents(exps), &coeff);
        }
        out
    }
}

impl<C: FieldCoeff> Polynomial<C> {
    /// Divide by `divisor` using lex leading terms. Returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let (lm, lc) = divisor
            .leading_term_by(Monomial::cmp_lex)
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("division by zero polynomial");
        let lc_inv = lc.inv();
        let mut q = Self::zero();
        let mut r = Self::zero();
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term_by(Monomial::cmp_lex).map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(t) => {
                    let k = c.mul_ref(&lc_inv);
                    p = Polynomial::sub(&p, &divisor.mul_term(&t, &k));
                    q.add_term(t, &k);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, &c);
                }
            }
        }
        (q, r)
    }

    /// `self / divisor` when the division is exact.
    pub fn div_exact_checked(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Scale so the leading coefficient (lex) is one.
    pub fn make_monic(&self) -> Self {
        match self.leading_term_by(Monomial::cmp_lex) {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl<C: Unital> Coeff for Polynomial<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_some_and(Coeff::is_one)
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Polynomial::add(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Polynomial::sub(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Polynomial::mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        Polynomial::neg(self)
    }
}

impl<C: Unital> Unital for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn from_integer(n: &Integer) -> Self {
        Polynomial::constant(C::from_integer(n))
    }
}

impl ExactDiv for Polynomial<Rational> {
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl ExactDiv for Polynomial<Integer> {
    fn div_exact(&self, rhs: &Self) -> Self {
        let q = to_rational(self).div_exact(&to_rational(rhs));
        let (den, qi) = clear_rational(&q);
        debug_assert!(One::is_one(&den), "quotient not integral");
        qi
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev().map(|(m, c)| (m.exponents(), c))).finish()
    }
}

macro_rules! forward_ops {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<C: Coeff> $tr<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                Polynomial::$inner(self, rhs)
            }
        }
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                Polynomial::$inner(&self, &rhs)
            }
        }
    };
}

forward_ops!(Add, add, add);
forward_ops!(Sub, sub, sub);
forward_ops!(Mul, mul, mul);

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(self)
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(&self)
    }
}

pub fn to_rational(p: &Polynomial<Integer>) -> Polynomial<Rational> {
    p.map_coeffs(|c| Rational::from_integer(c.clone()))
}

/// Smallest positive integer `L` with `L * p` integral, and that product.
pub fn clear_rational(p: &Polynomial<Rational>) -> (Integer, Polynomial<Integer>) {
    let l = p
        .terms()
        .fold(<BigInt as One>::one(), |acc, (_, c)| integer_lcm(&acc, c.denom()));
    let lq = Rational::from_integer(l.clone());
    let q = p.map_coeffs(|c| (c * &lq).to_integer());
    (l, q)
}

/// Gcd of the coefficients, signed like the canonical leading coefficient
/// (zero for the zero polynomial).
pub fn content(p: &Polynomial<Integer>) -> Integer {
    let g = p.terms().fold(<BigInt as Zero>::zero(), |acc, (_, c)| integer_gcd(&acc, c));
    match p.terms().next_back() {
        Some((_, lc)) if lc.is_negative() => -g,
        _ => g,
    }
}

/// `p / content(p)`: integral, coprime coefficients, positive leading coefficient.
pub fn primitive_part(p: &Polynomial<Integer>) -> Polynomial<Integer> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p);
    p.map_coeffs(|x| x / &c)
}

/// Reduce integer coefficients into the prime field `F_p`.
pub fn reduce_mod_p(f: &Polynomial<Integer>, p: u64) -> Result<Polynomial<PrimeFieldElem>> {
    let field = PrimeField::new(p)?;
    Ok(f.map_coeffs(|c| field.from_integer(c)))
}
