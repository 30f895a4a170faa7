//! Coefficient fields: exact rationals and prime fields.
//!
//! Every field comes with an engine domain in which standard-basis
//! computations run fraction-free: rationals are cleared to primitive integer
//! vectors, prime-field elements are used as they are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::coeff::{Coeff, Int};
use crate::error::{Error, Result};

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientField {
    Rational,
    Prime(u32),
}

impl CoefficientField {
    /// Builds a prime field, rejecting composite or out-of-range moduli.
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..=(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime below 2^31")));
        }
        Ok(CoefficientField::Prime(p))
    }

    pub fn is_certifying(self) -> bool {
        matches!(self, CoefficientField::Rational)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            CoefficientField::Rational => 0,
            CoefficientField::Prime(p) => p,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => f.write_str("rational"),
            CoefficientField::Prime(p) => write!(f, "prime-{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A coefficient field usable in [`crate::Polynomial`].
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Fraction-free domain used inside the standard-basis engine.
    type Dom: Coeff;

    fn from_i64(n: i64, field: CoefficientField) -> Self;
    fn from_rational(r: &BigRational, field: CoefficientField) -> Result<Self>;
    fn field(&self) -> CoefficientField;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Whether the printed form carries a leading minus sign.
    fn is_negative(&self) -> bool;

    /// Maps a coefficient vector into the engine domain, up to one common
    /// nonzero scalar.
    fn to_domain(coeffs: &[Self]) -> Vec<Self::Dom>;
    fn from_domain(d: &Self::Dom, field: CoefficientField) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Exact arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    type Dom = Int;

    fn from_i64(n: i64, _field: CoefficientField) -> Self {
        Rational::integer(n)
    }

    fn from_rational(r: &BigRational, _field: CoefficientField) -> Result<Self> {
        Ok(Rational(r.clone()))
    }

    fn field(&self) -> CoefficientField {
        CoefficientField::Rational
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn to_domain(coeffs: &[Self]) -> Vec<Int> {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.0.denom()));
        coeffs
            .iter()
            .map(|c| Int::from_big(c.0.numer() * (&lcm / c.0.denom())))
            .collect()
    }

    fn from_domain(d: &Int, _field: CoefficientField) -> Self {
        Rational(BigRational::from_integer(d.to_big()))
    }
}

/// Element of the prime field `Z/pZ`; the modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(n: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Fp {
            value: n.rem_euclid(m) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn prime_of(field: CoefficientField) -> u32 {
    match field {
        CoefficientField::Prime(p) => p,
        CoefficientField::Rational => panic!("prime-field element requested over the rationals"),
    }
}

impl Field for Fp {
    type Dom = Fp;

    fn from_i64(n: i64, field: CoefficientField) -> Self {
        Fp::new(n, prime_of(field))
    }

    fn from_rational(r: &BigRational, field: CoefficientField) -> Result<Self> {
        let p = prime_of(field);
        let pb = BigInt::from(p);
        let num = r.numer().mod_floor(&pb).to_i64().expect("reduced below p");
        let den = r.denom().mod_floor(&pb).to_i64().expect("reduced below p");
        if den == 0 {
            return Err(Error::Coefficient(format!("{r} (denominator divisible by {p})")));
        }
        Ok(Field::mul(&Fp::new(num, p), &Fp::new(den, p).inv().expect("nonzero")))
    }

    fn field(&self) -> CoefficientField {
        CoefficientField::Prime(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, other: &Self) -> Self {
        let v = (self.value as u64 + other.value as u64) % self.modulus as u64;
        Fp {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.modulus as u64;
        let v = (self.value as u64 + p - other.value as u64) % p;
        Fp {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let v = (self.value as u64 * other.value as u64) % self.modulus as u64;
        Fp {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }

    fn is_negative(&self) -> bool {
        false
    }

    fn to_domain(coeffs: &[Self]) -> Vec<Fp> {
        coeffs.to_vec()
    }

    fn from_domain(d: &Fp, _field: CoefficientField) -> Self {
        *d
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        Field::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }

    fn neg(&self) -> Self {
        Field::neg(self)
    }

    fn cancel(x: &Self, y: &Self) -> (Self, Self) {
        let one = Fp {
            value: 1,
            modulus: x.modulus,
        };
        (one, Field::mul(x, &y.inv().expect("nonzero leading coefficient")))
    }

    fn normalize(cs: &mut [Self]) {
        if let Some(lead) = cs.first() {
            if lead.value != 1 {
                let inv = lead.inv().expect("nonzero leading coefficient");
                for c in cs.iter_mut() {
                    *c = Field::mul(c, &inv);
                }
            }
        }
    }

    fn is_unit_scalar(&self) -> bool {
        self.value != 0
    }

    fn content(cs: &[Self]) -> Self {
        Fp {
            value: 1,
            modulus: cs.first().map_or(2, |c| c.modulus),
        }
    }

    fn div_exact(&self, d: &Self) -> Self {
        Field::mul(self, &d.inv().expect("nonzero divisor"))
    }
}
