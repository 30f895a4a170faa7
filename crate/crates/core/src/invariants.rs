//! Milnor and Tjurina numbers, and weighted homogeneity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::{Budget, QuotientDimension};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{local_module_vdim, FreeModuleElement};
use crate::ring::{Field, Polynomial};

fn at_origin<F: Field>(g: &Polynomial<F>) -> Result<()> {
    if g.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{g} does not vanish at the origin")))
    }
}

fn jacobian_ideal<F: Field>(g: &Polynomial<F>) -> Result<Ideal<F>> {
    let vars: Vec<usize> = (0..g.ring().nvars()).collect();
    Ideal::local(g.ring(), g.gradient(&vars))
}

/// `dim O / J(g)` at the origin.
pub fn milnor_number<F: Field>(g: &Polynomial<F>, budget: &Budget) -> Result<QuotientDimension> {
    at_origin(g)?;
    jacobian_ideal(g)?.vdim(budget)
}

/// `dim O / (J(g) + (g))` at the origin.
pub fn tjurina_hypersurface<F: Field>(g: &Polynomial<F>, budget: &Budget) -> Result<QuotientDimension> {
    at_origin(g)?;
    let mut gens = jacobian_ideal(g)?.generators().to_vec();
    gens.push(g.clone());
    Ideal::local(g.ring(), gens)?.vdim(budget)
}

/// Tjurina number of the complete intersection `h = 0`: the length of
/// `O^k / (dh(vector fields) + (h) O^k)`.
pub fn tjurina_icis<F: Field>(h: &[Polynomial<F>], budget: &Budget) -> Result<QuotientDimension> {
    let Some(first) = h.first() else {
        return Ok(QuotientDimension::Finite(0));
    };
    let ring = first.ring().clone();
    for p in h {
        if **p.ring() != *ring {
            return Err(Error::RingMismatch);
        }
        at_origin(p)?;
    }
    let k = h.len();
    let mut gens = Vec::new();
    for i in 0..ring.nvars() {
        gens.push(FreeModuleElement::new(h.iter().map(|p| p.derivative(i)).collect())?);
    }
    for p in h {
        for l in 0..k {
            gens.push(FreeModuleElement::single(p.clone(), k, l));
        }
    }
    local_module_vdim(&ring, k, &gens, budget)
}

/// Positive weights with `<weights, a> = degree` for every exponent vector.
/// Weights are integers with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCertificate {
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl WeightCertificate {
    pub fn check<F: Field>(&self, g: &Polynomial<F>) -> bool {
        self.weights.len() == g.ring().nvars()
            && self.weights.iter().all(|&w| w > 0)
            && g.terms().iter().all(|(m, _)| {
                m.exponents()
                    .iter()
                    .zip(&self.weights)
                    .map(|(&e, &w)| e as u64 * w)
                    .sum::<u64>()
                    == self.degree
            })
    }
}

/// Unique solution of `A x = b` restricted to `cols`, if the columns are
/// independent and the system is consistent.
fn solve_unique(rows: &[Vec<BigRational>], cols: &[usize]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<BigRational> = cols.iter().map(|&c| r[c].clone()).collect();
            v.push(BigRational::one());
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..k {
        let p = (rank..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let d = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - d;
                }
            }
        }
        rank += 1;
    }
    if m[rank..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Weights making `g` weighted homogeneous in the given coordinates, if
/// any. Variables not occurring in `g` get weight 1.
pub fn weighted_homogeneous_weights<F: Field>(g: &Polynomial<F>) -> Option<WeightCertificate> {
    if g.is_zero() || g.is_constant() || !g.constant_term().is_zero() {
        return None;
    }
    let n = g.ring().nvars();
    let present: Vec<usize> = g.support();
    let rows: Vec<Vec<BigRational>> = g
        .terms()
        .iter()
        .map(|(m, _)| {
            (0..n)
                .map(|i| BigRational::from_integer(BigInt::from(m.exponent(i))))
                .collect()
        })
        .collect();
    // Vertices of {w >= 0 : <w, a> = 1} are the nonnegative unique
    // solutions on some support; their average is positive iff a positive
    // solution exists.
    let p = present.len();
    let mut sum = vec![BigRational::zero(); n];
    let mut count = 0u64;
    for mask in 1u32..(1 << p) {
        let cols: Vec<usize> = (0..p).filter(|b| mask >> b & 1 == 1).map(|b| present[b]).collect();
        if let Some(sol) = solve_unique(&rows, &cols) {
            if sol.iter().all(|x| x.is_positive()) {
                for (c, x) in cols.iter().zip(sol) {
                    sum[*c] = &sum[*c] + x;
                }
                count += 1;
            }
        }
    }
    if count == 0 || present.iter().any(|&i| !sum[i].is_positive()) {
        return None;
    }
    let avg: Vec<BigRational> = sum
        .into_iter()
        .map(|x| x / BigRational::from_integer(BigInt::from(count)))
        .collect();
    // Clear denominators: weights w_i / d with d the common denominator.
    let mut den = BigInt::one();
    for &i in &present {
        den = den.lcm(avg[i].denom());
    }
    let mut weights: Vec<BigInt> = (0..n)
        .map(|i| {
            if present.contains(&i) {
                (&avg[i] * BigRational::from_integer(den.clone())).to_integer()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    let mut gcd = den.clone();
    for &i in &present {
        gcd = gcd.gcd(&weights[i]);
    }
    for &i in &present {
        weights[i] = &weights[i] / &gcd;
    }
    let degree: u64 = (&den / &gcd).try_into().ok()?;
    let weights: Vec<u64> = weights
        .into_iter()
        .map(|w| if w.is_zero() { Some(1) } else { w.try_into().ok() })
        .collect::<Option<_>>()?;
    let cert = WeightCertificate { weights, degree };
    debug_assert!(cert.check(g));
    cert.check(g).then_some(cert)
}

/// Whether `g` lies in its own Jacobian ideal at the origin; by Saito this
/// is weighted homogeneity up to a coordinate change, for isolated `g`.
pub fn in_own_jacobian<F: Field>(g: &Polynomial<F>, budget: &Budget) -> Result<bool> {
    jacobian_ideal(g)?.contains(g, budget)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::{Polynomial, RingSpec};

    fn p(s: &str, r: &Arc<RingSpec>) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    fn fin(n: u64) -> QuotientDimension {
        QuotientDimension::Finite(n)
    }

    #[test]
    fn milnor_and_tjurina() {
        let r = RingSpec::new(&["x", "y"]).unwrap();
        let b = Budget::default();
        assert_eq!(milnor_number(&p("x^2+y^2", &r), &b).unwrap(), fin(1));
        assert_eq!(milnor_number(&p("x^3+y^3", &r), &b).unwrap(), fin(4));
        assert_eq!(milnor_number(&p("x^2*y", &r), &b).unwrap(), QuotientDimension::Infinite);
        let g = p("x^4+y^5+x^2*y^3", &r);
        let mu = milnor_number(&g, &b).unwrap().finite().unwrap();
        assert_eq!(tjurina_hypersurface(&g, &b).unwrap(), fin(mu - 1));
        assert_eq!(tjurina_hypersurface(&p("x^2+y^2", &r), &b).unwrap(), fin(1));
        assert!(milnor_number(&p("x + 1", &r), &b).is_err());
    }

    #[test]
    fn icis_tjurina() {
        let b = Budget::default();
        let r = RingSpec::new(&["x", "y", "z"]).unwrap();
        let g = p("x^3+y^3-z^2", &r);
        assert_eq!(tjurina_icis(std::slice::from_ref(&g), &b).unwrap(), fin(4));
        assert_eq!(tjurina_hypersurface(&g, &b).unwrap(), fin(4));
        assert_eq!(tjurina_icis(&[p("x", &r)], &b).unwrap(), fin(0));
        let r4 = RingSpec::new(&["x", "y", "z", "w"]).unwrap();
        assert_eq!(tjurina_icis(&[p("x^2+y^2+z^2", &r4), p("w", &r4)], &b).unwrap(), fin(1));
    }

    #[test]
    fn weights() {
        let r = RingSpec::new(&["x", "y", "z"]).unwrap();
        let c = weighted_homogeneous_weights(&p("x^3+y^3-z^2", &r)).unwrap();
        assert_eq!(
            c,
            WeightCertificate {
                weights: vec![2, 2, 3],
                degree: 6
            }
        );
        assert!(weighted_homogeneous_weights(&p("x^2+x^3", &r)).is_none());
        let c = weighted_homogeneous_weights(&p("x^2*y", &r)).unwrap();
        assert!(c.check(&p("x^2*y", &r)));
        assert!(weighted_homogeneous_weights(&p("x^4+y^5+x^2*y^3", &r)).is_none());
        let b = Budget::default();
        assert!(in_own_jacobian(&p("x^3+y^3-z^2", &r), &b).unwrap());
        assert!(!in_own_jacobian(&p("x^4+y^5+x^2*y^3+z^2", &r), &b).unwrap());
        // Semi-quasihomogeneous without upper monomials: equivalent to x^4 + y^4.
        assert!(in_own_jacobian(&p("x^4+y^4+x^2*y^3", &r), &b).unwrap());
    }
}
