use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactField {
    Rationals,
    Prime(u64),
}

/// An exact field element.
///
/// Modular values carry their modulus so that stray mixing of fields is caught
/// at the operation that does it rather than much later as a wrong answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ExactField {
    /// `F_p`; `p` must be prime and below `2^32` so products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ExactField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ExactField::Rationals => 0,
            ExactField::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, ExactField::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ExactField::Prime(p) => Scalar::Modular { value: n.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    /// `n / d` in the field; `None` when `d` vanishes in it.
    pub fn from_fraction(&self, n: i64, d: i64) -> Option<Scalar> {
        self.from_i64(d).inv().map(|inv| self.from_i64(n) * inv)
    }

    /// `(-1)^k`.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            -self.one()
        }
    }

    /// Uniform over `F_p`; small integers in `[-3, 3]` over `Q` to keep entries readable.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            ExactField::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            ExactField::Prime(p) => Scalar::Modular { value: rng.gen_range(0..*p), modulus: *p },
        }
    }

    /// All elements of a prime field in the order `0, 1, ..., p-1`; `None` over `Q`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            ExactField::Rationals => None,
            ExactField::Prime(p) => Some((0..*p).map(|v| Scalar::Modular { value: v, modulus: *p }).collect()),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (ExactField::Rationals, Scalar::Rational(_)) => true,
            (ExactField::Prime(p), Scalar::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactField::Rationals => write!(f, "Q"),
            ExactField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for ExactField {
    type Err = Error;

    /// Accepts `Q`, `F101`, `F_101` and `F 101`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(ExactField::Rationals);
        }
        let rest = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Unsupported(format!("field `{s}`")))?
            .trim_start_matches('_')
            .trim();
        let p: u64 = rest.parse().map_err(|_| Error::Unsupported(format!("field `{s}`")))?;
        ExactField::prime(p)
    }
}

impl Scalar {
    pub fn field(&self) -> ExactField {
        match self {
            Scalar::Rational(_) => ExactField::Rationals,
            Scalar::Modular { modulus, .. } => ExactField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Parses an integer or `n/d` literal into `field`.
    pub fn parse(field: ExactField, s: &str) -> Option<Scalar> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            field.from_fraction(n, d)
        } else {
            s.parse::<i64>().ok().map(|n| field.from_i64(n))
        }
    }

    /// True for a rational that is a negative number; modular values are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}
