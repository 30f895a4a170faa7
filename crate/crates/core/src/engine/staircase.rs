use std::collections::{HashSet, VecDeque};

use super::reduce::sev;
use super::{Budget, Coeff, QuotientDimension, StdBasis};
use crate::error::{Error, Resource, Result};
use crate::ring::Monomial;

impl<C: Coeff> StdBasis<C> {
    /// Leading monomials by position, with divisibility masks.
    fn leads_by_position(&self) -> Vec<Vec<(Monomial, u64)>> {
        let mut out = vec![Vec::new(); self.rank()];
        for (m, pos) in self.leading_terms() {
            let s = sev(&m);
            out[pos].push((m, s));
        }
        out
    }

    /// Whether the quotient `R^rank / module` is finite-dimensional: every
    /// position either contains a unit or pure powers of all variables.
    pub fn is_finite_quotient(&self) -> bool {
        let n = self.nvars();
        self.leads_by_position().iter().all(|leads| {
            if leads.iter().any(|(m, _)| m.is_one()) {
                return true;
            }
            (0..n).all(|i| leads.iter().any(|(m, _)| m.pure_power().is_some_and(|(j, _)| j == i)))
        })
    }

    /// Monomials (with positions) outside the leading module, sorted
    /// decreasingly; `None` if there are infinitely many.
    pub fn standard_monomials(&self, budget: &Budget) -> Result<Option<Vec<(Monomial, usize)>>> {
        if !self.is_finite_quotient() {
            return Ok(None);
        }
        let n = self.nvars();
        let mut out = Vec::new();
        for (pos, leads) in self.leads_by_position().into_iter().enumerate() {
            let outside = |m: &Monomial| {
                let s = sev(m);
                !leads.iter().any(|(l, ls)| ls & !s == 0 && l.divides(m))
            };
            let one = Monomial::one(n);
            if !outside(&one) {
                continue;
            }
            let mut seen: HashSet<Monomial> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(one.clone());
            queue.push_back(one);
            while let Some(m) = queue.pop_front() {
                for i in 0..n {
                    let mut next = m.clone();
                    next.set_exponent(i, m.exponent(i) + 1);
                    if !seen.contains(&next) && outside(&next) {
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
                if seen.len() + out.len() > budget.max_staircase {
                    return Err(Error::resource(Resource::StaircaseSize));
                }
            }
            out.extend(seen.into_iter().map(|m| (m, pos)));
        }
        let ord = self.ordering();
        out.sort_by(|a, b| ord.cmp(&b.0, b.1, &a.0, a.1));
        Ok(Some(out))
    }

    /// Vector-space dimension of `R^rank / module`.
    pub fn vdim(&self, budget: &Budget) -> Result<QuotientDimension> {
        Ok(match self.standard_monomials(budget)? {
            Some(v) => QuotientDimension::Finite(v.len() as u64),
            None => QuotientDimension::Infinite,
        })
    }
}
