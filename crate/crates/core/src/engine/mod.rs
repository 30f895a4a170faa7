//! Standard-basis engine over free modules `R^s`.
//!
//! Global orderings run Buchberger's algorithm with the Gebauer–Möller
//! criteria; local and mixed orderings run Mora's algorithm with écart-based
//! normal forms. Ideals are rank-one modules.

pub mod coeff;
mod reduce;
mod sb;
mod staircase;

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Resource, Result};
use crate::ring::{Monomial, MonomialOrdering};

pub use coeff::{Coeff, Int};
pub use sb::{standard_basis, StdBasis};

/// Module ordering: a monomial ordering combined with positions.
///
/// Positions below `pot_prefix` are compared before monomials
/// (position-over-term, smaller index is bigger); the remaining positions
/// are compared after monomials (term-over-position). `pot_prefix == 0` is
/// plain TOP, `pot_prefix >= rank` plain POT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrdering {
    pub mono: MonomialOrdering,
    pub pot_prefix: usize,
}

impl ModuleOrdering {
    pub fn top(mono: MonomialOrdering) -> Self {
        ModuleOrdering { mono, pot_prefix: 0 }
    }

    pub fn pot(mono: MonomialOrdering) -> Self {
        ModuleOrdering {
            mono,
            pot_prefix: usize::MAX,
        }
    }

    pub fn with_prefix(mono: MonomialOrdering, pot_prefix: usize) -> Self {
        ModuleOrdering { mono, pot_prefix }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, pa: usize, b: &Monomial, pb: usize) -> Ordering {
        let (ka, kb) = (pa.min(self.pot_prefix), pb.min(self.pot_prefix));
        if ka != kb {
            return kb.cmp(&ka);
        }
        self.mono.compare(a, b).then_with(|| pb.cmp(&pa))
    }
}

impl fmt::Display for ModuleOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pot_prefix {
            0 => write!(f, "{}/top", self.mono),
            usize::MAX => write!(f, "{}/pot", self.mono),
            k => write!(f, "{}/pot{}", self.mono, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub m: Monomial,
    pub pos: usize,
    pub c: C,
}

/// Element of `R^s` as a list of terms sorted decreasingly in the module
/// ordering it was built for.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<C> {
    pub terms: Vec<Term<C>>,
}

impl<C: Coeff> Vector<C> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(mut terms: Vec<Term<C>>, ord: &ModuleOrdering) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.m, b.pos, &a.m, a.pos));
        let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.m == t.m => last.c = last.c.add(&t.c),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.c.is_zero());
        Vector { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term<C> {
        &self.terms[0]
    }

    /// Maximal total degree of a term.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.m.degree()).max().unwrap_or(0)
    }

    pub fn ecart(&self) -> u32 {
        if self.terms.is_empty() {
            0
        } else {
            self.degree() - self.terms[0].m.degree()
        }
    }

    /// Divides out the content (integers) or makes the vector monic (fields).
    pub fn normalize(&mut self) {
        let mut cs: Vec<C> = self.terms.iter().map(|t| t.c.clone()).collect();
        C::normalize(&mut cs);
        for (t, c) in self.terms.iter_mut().zip(cs) {
            t.c = c;
        }
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&mut self, bound: u32) {
        self.terms.retain(|t| t.m.degree() < bound);
    }

    pub fn resort(&mut self, ord: &ModuleOrdering) {
        let terms = std::mem::take(&mut self.terms);
        *self = Vector::from_terms(terms, ord);
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos).max()
    }
}

/// Limits on a computation; exceeding one is reported as
/// [`Error::ResourceExhausted`], never as a wrong answer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_degree: u32,
    pub max_basis: usize,
    pub max_staircase: usize,
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 256,
            max_basis: 20_000,
            max_staircase: 2_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.deadline = Some(Instant::now() + t);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::resource(Resource::Timeout)),
            _ => Ok(()),
        }
    }

    pub fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.max_degree {
            Err(Error::ResourceExhausted {
                resource: Resource::Degree,
                detail: Some(format!("degree {d} exceeds {}", self.max_degree)),
            })
        } else {
            Ok(())
        }
    }
}

/// Dimension of a quotient as a vector space: a number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuotientDimension::Finite(_))
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => f.write_str("infinite"),
        }
    }
}
