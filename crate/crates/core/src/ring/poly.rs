use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rational};
use super::monomial::Monomial;
use super::order::MonomialOrdering;
use super::spec::RingSpec;
use crate::error::{Error, Result};

/// Sparse polynomial in canonical form: nonzero coefficients, distinct
/// monomials, terms sorted decreasingly in degrevlex.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field = Rational> {
    ring: Arc<RingSpec>,
    terms: Vec<(Monomial, F)>,
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrdering::DegRevLex.compare(b, a)
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: F) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<RingSpec>, n: i64) -> Self {
        Polynomial::constant(ring, F::from_i64(n, ring.field()))
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Polynomial::from_i64(ring, 1)
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<RingSpec>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i, 1), F::from_i64(1, ring.field()))
    }

    pub fn variable(ring: &Arc<RingSpec>, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.var_index(name)?))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<RingSpec>, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted and combined; only checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &Arc<RingSpec>, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Less));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn constant_term(&self) -> F {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => F::from_i64(0, self.ring.field()),
        }
    }

    /// Value at the origin is nonzero, i.e. a unit in the local ring.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (da, db) = (self.degree().unwrap_or(0), other.degree().unwrap_or(0));
        if da as u64 + db as u64 > super::monomial::MAX_DEGREE as u64 {
            return Err(Error::ExponentOverflow);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len());
        for (t, c) in &self.terms {
            terms.push((t.try_mul(m)?, c.clone()));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Polynomial::one(&self.ring);
        if e == 0 {
            return Ok(acc);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            let mut cp = F::from_i64(1, self.ring.field());
            for _ in 0..e {
                cp = cp.mul(c);
            }
            return Ok(Polynomial::monomial(&self.ring, m.try_pow(e)?, cp));
        }
        if self.degree().unwrap_or(0) as u64 * e as u64 > super::monomial::MAX_DEGREE as u64 {
            return Err(Error::ExponentOverflow);
        }
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut d = m.clone();
                d.set_exponent(i, e - 1);
                (d, c.mul(&F::from_i64(e as i64, field)))
            })
            .collect();
        // Lowering one exponent can break the order in degrevlex ties, and in
        // positive characteristic coefficients may vanish.
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        Ok(self.derivative(self.ring.var_index(var)?))
    }

    /// Gradient with respect to the given variables.
    pub fn gradient(&self, vars: &[usize]) -> Vec<Self> {
        vars.iter().map(|&i| self.derivative(i)).collect()
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Validation(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Err(Error::Validation("substitution into a ring without variables".into())),
        };
        for p in images {
            if p.ring != target {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Sets the given variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&i| m.exponent(i) == 0))
            .cloned()
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Arc<RingSpec>, map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.embed(target.nvars(), map), c.clone()))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in another ring by matching variable
    /// names; fails if a used variable is missing there.
    pub fn rename_into(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names().iter().enumerate() {
            match target.var_index(name) {
                Ok(j) => map.push(j),
                Err(e) => {
                    if self.terms.iter().any(|(m, _)| m.exponent(i) > 0) {
                        return Err(e);
                    }
                    map.push(0);
                }
            }
        }
        Ok(self.embed(target, &map))
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0))
            .collect()
    }

    /// Exact quotient `self / q`, or `None` if `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Self) -> Result<Option<Self>> {
        self.same_ring(q)?;
        let (lm, lc) = match q.leading_term() {
            Some(t) => t.clone(),
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = lc.inv().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let t = lm.quotient_of(&m);
            let k = c.mul(&lc_inv);
            rem = rem.try_sub(&q.mul_monomial(&t)?.scale(&k))?;
            quot.push((t, k));
        }
        Ok(Some(Polynomial::from_sorted_terms(&self.ring, quot)))
    }

    /// Makes the leading coefficient 1 (or leaves zero alone).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| F::from_i64(0, self.ring.field()), |(_, c)| c.clone())
    }

    /// Scalar multiple with integer coefficients of gcd 1 and positive
    /// leading coefficient over Q; monic over prime fields.
    pub fn primitive(&self) -> Self {
        let cs: Vec<F> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        let mut dom = F::to_domain(&cs);
        crate::engine::Coeff::normalize(&mut dom);
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .zip(&dom)
            .map(|((m, _), d)| (m.clone(), F::from_domain(d, field)))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// The same terms over another ring with the same number of variables.
    pub fn rehome(&self, target: &Arc<RingSpec>) -> Self {
        assert_eq!(
            self.ring.nvars(),
            target.nvars(),
            "rehome between rings of different size"
        );
        Polynomial {
            ring: target.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl Polynomial<Rational> {
    /// Converts coefficients into another field over the same variables.
    pub fn to_field<G: Field>(&self, ring: &Arc<RingSpec>) -> Result<Polynomial<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), G::from_rational(&c.0, ring.field())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.fmt_with(names))?;
            } else {
                write!(f, "{}*{}", abs, m.fmt_with(names))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(&["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &ring()).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert!((&p("x") + &p("-x")).is_zero());
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(&p("1/2*x") * &p("2/3*x"), p("1/3*x^2"));
    }

    #[test]
    fn ring_mismatch() {
        let other = RingSpec::new(&["x"]).unwrap();
        let q = Polynomial::<Rational>::variable(&other, "x").unwrap();
        assert!(matches!(p("x").try_add(&q), Err(Error::RingMismatch)));
    }

    #[test]
    fn division() {
        assert_eq!(p("x^2-y^2").exact_divide(&p("x-y")).unwrap(), Some(p("x+y")));
        assert_eq!(p("3*x^4").exact_divide(&p("3*x^2")).unwrap(), Some(p("x^2")));
        assert_eq!(p("x^2").exact_divide(&p("y")).unwrap(), None);
        assert!(matches!(p("x").exact_divide(&p("0")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn derivatives() {
        let g = p("x^3+y^3-z^2");
        assert_eq!(g.partial_derivative("z").unwrap(), p("-2*z"));
        assert!(p("7").partial_derivative("x").unwrap().is_zero());
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert!(p("x").partial_derivative("w").is_err());
    }

    #[test]
    fn substitution() {
        let src = RingSpec::new(&["t"]).unwrap();
        let t = Polynomial::<Rational>::variable(&src, "t").unwrap();
        let images = vec![t.pow(2).unwrap(), t.pow(3).unwrap(), Polynomial::zero(&src)];
        let g = p("y^2 - x^3 + z");
        assert!(g.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn printing() {
        assert_eq!(p("-z + 3/4*x^2*y").to_string(), "3/4*x^2*y - z");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2 - x").to_string(), "-x + 2");
    }
}
