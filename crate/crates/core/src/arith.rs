//! Coefficient domains: arbitrary-precision integers and rationals, prime
//! fields, and the small trait hierarchy the polynomial code is generic over.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Element of a commutative ring with identity.
///
/// Elements carry whatever context they need (a prime field element knows its
/// modulus), so `zero_like`/`one_like` build constants compatible with `self`.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// Rings whose constants need no context.
pub trait Unital: Coeff {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: &Integer) -> Self;
}

pub trait FieldCoeff: Coeff {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv())
    }
}

/// Integral domains with exact division (used by fraction-free elimination).
pub trait ExactDiv: Unital {
    /// `self / rhs`, assuming `rhs` divides `self`.
    fn div_exact(&self, rhs: &Self) -> Self;
}

macro_rules! num_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn is_one(&self) -> bool {
                One::is_one(self)
            }
            fn zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$t as One>::one()
            }
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

num_coeff!(BigInt);
num_coeff!(BigRational);

impl Unital for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }
}

impl Unital for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_integer(n: &Integer) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)), "inexact integer division");
        self / rhs
    }
}

impl ExactDiv for BigRational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Residue modulo a prime `p`, stored in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElem {
    /// Panics if `modulus` is zero. Primality is checked by [`PrimeField::new`].
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 1, "modulus must exceed 1");
        Self { value: value % modulus, modulus }
    }

    pub fn from_integer(n: &Integer, modulus: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(modulus));
        Self { value: r.to_u64().expect("residue fits u64"), modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "mixing distinct prime moduli");
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for PrimeFieldElem {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn zero_like(&self) -> Self {
        Self { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Self { value: 1, modulus: self.modulus }
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Self { value: s as u64, modulus: self.modulus }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 + self.modulus as u128 - rhs.value as u128)
            % self.modulus as u128;
        Self { value: s as u64, modulus: self.modulus }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self { value: s as u64, modulus: self.modulus }
    }
    fn neg_ref(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Self { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

impl FieldCoeff for PrimeFieldElem {
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat: a^(p-2)
        self.pow(self.modulus - 2)
    }
}

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.p)
    }

    pub fn from_integer(&self, n: &Integer) -> PrimeFieldElem {
        PrimeFieldElem::from_integer(n, self.p)
    }
}

/// Trial division; fine for the moduli used here (well below 2^40).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in `lo..=hi`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    if hi <= 10_000_000 {
        let n = hi as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (lo as usize..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    } else {
        (lo..=hi).filter(|&n| is_prime(n)).collect()
    }
}

/// Numerator and denominator of a rational as integers, denominator positive.
pub fn rational_parts(q: &Rational) -> (Integer, Integer) {
    (q.numer().clone(), q.denom().clone())
}

pub fn integer_lcm(a: &Integer, b: &Integer) -> Integer {
    if Zero::is_zero(a) || Zero::is_zero(b) {
        return <BigInt as Zero>::zero();
    }
    a.lcm(b).abs()
}

pub fn integer_gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}
