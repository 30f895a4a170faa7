use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Total degrees above this bound are rejected before any exponent can wrap.
pub const MAX_DEGREE: u32 = 1 << 30;

pub type Exponents = SmallVec<[u32; 8]>;

/// Exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m.degree = e;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u64, |acc, &e| {
                let s = acc + e as u64;
                (s <= MAX_DEGREE as u64).then_some(s)
            })
            .ok_or(Error::ExponentOverflow)?;
        Ok(Monomial {
            exps: SmallVec::from_slice(exps),
            degree: degree as u32,
        })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product, or `ExponentOverflow` if the degree bound is exceeded.
    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.degree as u64 + other.degree as u64 > MAX_DEGREE as u64 {
            return Err(Error::ExponentOverflow);
        }
        Ok(self.mul(other))
    }

    /// Product; callers guarantee the degree bound (the engine checks degrees
    /// against its own, much smaller, budget).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn try_pow(&self, e: u32) -> Result<Monomial> {
        if self.degree as u64 * e as u64 > MAX_DEGREE as u64 {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
            degree: self.degree * e,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; requires `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a power of a single variable, returns `(index, exponent)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u32) {
        self.degree = self.degree - self.exps[i] + e;
        self.exps[i] = e;
    }

    /// Exponents restricted to the given variable indices, in that order.
    pub fn project(&self, idx: &[usize]) -> Monomial {
        let exps: Exponents = idx.iter().map(|&i| self.exps[i]).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// Places the exponents into a larger ring: variable `i` goes to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
