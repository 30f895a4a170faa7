//! Engine coefficient domains.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::field::Fp;

/// Coefficient domain of the standard-basis engine.
///
/// Reductions are performed fraction-free: to cancel leading coefficients
/// `x` (of the reducee) and `y` (of the reducer) the engine forms
/// `a * h - b * g` with `(a, b) = cancel(x, y)`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `(a, b)` with `a * x == b * y`.
    fn cancel(x: &Self, y: &Self) -> (Self, Self);
    /// Canonical scaling of a coefficient vector (leading coefficient first).
    fn normalize(cs: &mut [Self]);
    fn is_unit_scalar(&self) -> bool;
    /// A common divisor of all entries that may be divided out exactly.
    fn content(cs: &[Self]) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    /// Whether coefficient growth warrants an early content reduction.
    fn is_large(&self) -> bool {
        false
    }
    /// Image in `Z/pZ`, for domains that reduce modulo primes.
    fn modular(&self, _p: u32) -> Option<Fp> {
        None
    }
}

/// Integer with an inline fast path for values that fit in `i64`.
#[derive(Clone, PartialEq, Eq)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn gcd(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => {
                let g = gcd_u64(a.unsigned_abs(), b.unsigned_abs());
                if g <= i64::MAX as u64 {
                    Int::Small(g as i64)
                } else {
                    Int::from_big(BigInt::from(g))
                }
            }
            _ => Int::from_big(self.to_big().gcd(&o.to_big())),
        }
    }

    /// Exact quotient; `o` must divide `self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(q) => Int::Small(q),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() / o.to_big()),
        }
    }

    fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Coeff for Int {
    fn is_zero(&self) -> bool {
        match self {
            Int::Small(v) => *v == 0,
            Int::Big(b) => b.is_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Int::Small(v) => *v == 1,
            Int::Big(b) => b.is_one(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    fn sub(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    fn mul(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_mul(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Self {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }

    fn cancel(x: &Self, y: &Self) -> (Self, Self) {
        let g = x.gcd(y);
        let mut a = y.div_exact(&g);
        let mut b = x.div_exact(&g);
        if a.is_negative() {
            a = a.neg();
            b = b.neg();
        }
        (a, b)
    }

    fn normalize(cs: &mut [Self]) {
        if cs.is_empty() {
            return;
        }
        let mut g = Int::Small(0);
        // Start from the smallest coefficients so the gcd collapses early.
        let mut order: Vec<usize> = (0..cs.len()).collect();
        order.sort_by_key(|&i| cs[i].bits());
        for &i in &order {
            g = g.gcd(&cs[i]);
            if g.is_one() {
                break;
            }
        }
        if cs[0].is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for c in cs.iter_mut() {
                *c = c.div_exact(&g);
            }
        }
    }

    fn is_unit_scalar(&self) -> bool {
        !Coeff::is_zero(self)
    }

    fn content(cs: &[Self]) -> Self {
        let mut order: Vec<&Int> = cs.iter().collect();
        order.sort_by_key(|c| c.bits());
        let mut g = Int::Small(0);
        for c in order {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if Coeff::is_zero(&g) {
            Int::Small(1)
        } else {
            g
        }
    }

    fn div_exact(&self, d: &Self) -> Self {
        Int::div_exact(self, d)
    }

    fn is_large(&self) -> bool {
        matches!(self, Int::Big(_))
    }

    fn modular(&self, p: u32) -> Option<Fp> {
        let r = match self {
            Int::Small(v) => v.rem_euclid(p as i64),
            Int::Big(b) => b.mod_floor(&BigInt::from(p)).to_i64().expect("reduced below p"),
        };
        Some(Fp::new(r, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_to_big() {
        let a = Int::Small(i64::MAX);
        let b = Coeff::mul(&a, &Int::Small(4));
        assert!(matches!(b, Int::Big(_)));
        let c = b.div_exact(&Int::Small(4));
        assert_eq!(c, Int::Small(i64::MAX));
    }

    #[test]
    fn cancel_and_normalize() {
        let (a, b) = Int::cancel(&Int::Small(6), &Int::Small(-4));
        assert_eq!(Coeff::mul(&a, &Int::Small(6)), Coeff::mul(&b, &Int::Small(-4)));
        let mut cs = vec![Int::Small(-6), Int::Small(9), Int::Small(3)];
        Int::normalize(&mut cs);
        assert_eq!(cs, vec![Int::Small(2), Int::Small(-3), Int::Small(-1)]);
    }
}
