//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Every algebraic object in the crate is generic over [`Field`]. The field is
//! a runtime value (a prime field carries its modulus), so elements never
//! carry their own modulus and zero is always `field.zero()`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 251;

/// Runtime description of a scalar domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => u64::from(*p),
        }
    }

    /// Parses `Q` or `F<p>` (also `Fp` spelled as `F_7`, `GF7`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('F'))
            .map(|d| d.trim_start_matches('_'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Format(format!(
                "unknown field {text:?}; expected Q or F<p>"
            ))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field with a runtime-chosen instance.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// A random element; over the rationals numerators lie in `-3..=3` and
    /// denominators in `1..=3` so that test tensors stay small.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `acc += a * b`
    fn add_mul(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^k` as a field element, for any integer `k`.
    fn sign(&self, k: i64) -> Self::Elem {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
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

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let t = text.trim();
        let bad = |reason: &str| Error::ParseScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-3..=3);
        let d: i64 = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}

/// The prime field `Z/pZ` for a prime `p <= 251`; elements are canonical
/// representatives in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// All field elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.p
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(*a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i64(t0))
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn parse(&self, text: &str) -> Result<u32> {
        let n: BigInt = text.trim().parse().map_err(|_| Error::ParseScalar {
            text: text.to_string(),
            reason: format!("expected an integer for F{}", self.p),
        })?;
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        Ok(r.to_string().parse().expect("reduced residue fits in u32"))
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Helper so `Rationals` elements can be compared against small integers in tests.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
