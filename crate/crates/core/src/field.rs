//! Exact ground fields: prime fields `F_p` with a machine-word modulus and the rationals.
//!
//! The modulus of a prime field is a runtime value (it comes from input files), so
//! scalars are manipulated through a small context object implementing [`Field`]
//! rather than through operator overloading on the element type.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Which ground field an algebra lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }
}

/// Arithmetic context for an exact field.
///
/// Elements are plain values; every operation goes through the context so that the
/// prime-field modulus never has to be stored per element.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `acc - a * b`, the inner step of every elimination loop.
    fn mul_sub(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(acc, &self.mul(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_i64(&self, v: i64) -> Self::Elem;

    /// The image of `num / den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    fn parse_scalar(&self, s: &str) -> Result<Self::Elem> {
        let bad = || Error::InvalidScalar(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(n).map_err(|_| bad())?;
        let den = BigInt::from_str(d).map_err(|_| bad())?;
        self.from_ratio(&num, &den).map_err(|_| bad())
    }

    fn format(&self, a: &Self::Elem) -> String;

    /// Canonical residue `0..p` for prime-field elements; `None` over the rationals.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    /// Number of elements when the field is finite.
    fn order(&self) -> Option<u64> {
        None
    }

    /// The `i`-th element in a fixed enumeration (residue `i` over `F_p`, the integer `i` over Q).
    fn nth(&self, i: u64) -> Self::Elem;

    /// A random element: uniform over `F_p`, an integer in `[-9, 9]` over Q.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Distinct roots in the field of the polynomial with coefficients `poly` (lowest
    /// degree first). Over Q the search is limited to coefficients of bounded size and
    /// reports [`Error::SplitUndecided`] beyond that.
    fn roots(&self, poly: &[Self::Elem]) -> Result<Vec<Self::Elem>>;
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            (self.p - b) + a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i128(t0))
    }
    #[inline]
    fn mul_sub(&self, acc: &u64, a: &u64, b: &u64) -> u64 {
        self.sub(acc, &self.mul(a, b))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64().expect("residue fits");
        let d = den.mod_floor(&p).to_u64().expect("residue fits");
        let di = self
            .inv(&d)
            .ok_or_else(|| Error::InvalidScalar(format!("{num}/{den} mod {}", self.p)))?;
        Ok(self.mul(&n, &di))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth(&self, i: u64) -> u64 {
        i % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn roots(&self, f: &[u64]) -> Result<Vec<u64>> {
        Ok(poly::prime_field_roots(self, f))
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn mul_sub(&self, acc: &BigRational, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return acc.clone();
        }
        acc - a * b
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::InvalidScalar(format!("{num}/{den}")));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn nth(&self, i: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(i))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn roots(&self, f: &[BigRational]) -> Result<Vec<BigRational>> {
        poly::rational_roots(f)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `|x|` as `u64` when it fits.
pub(crate) fn abs_u64(x: &BigInt) -> Option<u64> {
    x.abs().to_u64()
}
