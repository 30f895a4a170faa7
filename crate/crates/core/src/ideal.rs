//! Ideals of polynomial rings and of their localizations at the origin.

use std::sync::{Arc, OnceLock};

use crate::engine::{standard_basis, Budget, ModuleOrdering, QuotientDimension, StdBasis, Term, Vector};
use crate::error::{Error, Result};
use crate::ring::{Field, Monomial, MonomialOrdering, Polynomial, Rational, RingSpec};

/// Moves polynomial components (one per position) into the engine domain.
pub(crate) fn to_vector<F: Field>(comps: &[(usize, &Polynomial<F>)], ord: &ModuleOrdering) -> Vector<F::Dom> {
    let coeffs: Vec<F> = comps
        .iter()
        .flat_map(|(_, p)| p.terms().iter().map(|(_, c)| c.clone()))
        .collect();
    let dom = F::to_domain(&coeffs);
    let mut k = 0;
    let mut terms = Vec::with_capacity(dom.len());
    for (pos, p) in comps {
        for (m, _) in p.terms() {
            terms.push(Term {
                m: m.clone(),
                pos: *pos,
                c: dom[k].clone(),
            });
            k += 1;
        }
    }
    Vector::from_terms(terms, ord)
}

/// Components of an engine vector as polynomials over `ring`.
pub(crate) fn from_vector<F: Field>(v: &Vector<F::Dom>, ring: &Arc<RingSpec>, rank: usize) -> Vec<Polynomial<F>> {
    let mut parts: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); rank];
    for t in &v.terms {
        parts[t.pos].push((t.m.clone(), F::from_domain(&t.c, ring.field())));
    }
    parts
        .into_iter()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

pub(crate) fn poly_vector<F: Field>(p: &Polynomial<F>, ord: &ModuleOrdering) -> Vector<F::Dom> {
    to_vector(&[(0, p)], ord)
}

/// An ideal with a monomial ordering; a local ordering means the ideal is
/// read in the localization at the origin.
#[derive(Debug)]
pub struct Ideal<F: Field = Rational> {
    ring: Arc<RingSpec>,
    ordering: MonomialOrdering,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<StdBasis<F::Dom>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            ordering: self.ordering.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<RingSpec>, ordering: MonomialOrdering, generators: Vec<Polynomial<F>>) -> Result<Self> {
        ordering.validate(ring.nvars())?;
        for g in &generators {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            ordering,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
        })
    }

    /// Ideal of the local ring at the origin (negative degree reverse lex).
    pub fn local(ring: &Arc<RingSpec>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        Ideal::new(ring, MonomialOrdering::NegDegRevLex, generators)
    }

    /// Ideal of the polynomial ring (degree reverse lex).
    pub fn global(ring: &Arc<RingSpec>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        Ideal::new(ring, MonomialOrdering::DegRevLex, generators)
    }

    /// The same generators under another ordering.
    pub fn with_ordering(&self, ordering: MonomialOrdering) -> Result<Self> {
        Ideal::new(&self.ring, ordering, self.generators.clone())
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_local(&self) -> bool {
        !self.ordering.is_global(self.ring.nvars())
    }

    fn module_ordering(&self) -> ModuleOrdering {
        ModuleOrdering::top(self.ordering.clone())
    }

    /// Completed standard basis (cached).
    pub fn standard_basis(&self, budget: &Budget) -> Result<&StdBasis<F::Dom>> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let ord = self.module_ordering();
        let gens = self.generators.iter().map(|g| poly_vector(g, &ord)).collect();
        let sb = standard_basis(gens, &ord, self.ring.nvars(), 1, true, budget)?;
        Ok(self.basis.get_or_init(|| sb))
    }

    /// Standard basis as polynomials with leading coefficient 1.
    pub fn basis_polynomials(&self, budget: &Budget) -> Result<Vec<Polynomial<F>>> {
        let sb = self.standard_basis(budget)?;
        Ok(sb
            .elements()
            .map(|v| from_vector::<F>(v, &self.ring, 1).remove(0).monic())
            .collect())
    }

    pub fn leading_monomials(&self, budget: &Budget) -> Result<Vec<Monomial>> {
        Ok(self
            .standard_basis(budget)?
            .leading_terms()
            .into_iter()
            .map(|(m, _)| m)
            .collect())
    }

    /// Normal form of `p`: `p - nf` lies in the ideal and no term of `nf` is
    /// divisible by a leading monomial. For local orderings this needs a
    /// finite quotient; otherwise Mora's weak normal form is returned (zero
    /// exactly for members, leading term standard).
    pub fn normal_form(&self, p: &Polynomial<F>, budget: &Budget) -> Result<Polynomial<F>> {
        self.check_ring(p)?;
        let sb = self.standard_basis(budget)?;
        let ord = self.module_ordering();
        let v = poly_vector(p, &ord);
        if !sb.has_full_reduction() {
            let w = sb.weak_normal_form(v, budget)?;
            return Ok(from_vector::<F>(&w, &self.ring, 1).remove(0));
        }
        Ok(normal_form_components(sb, &[(0, p)], &self.ring, 1, budget)?.remove(0))
    }

    pub fn contains(&self, p: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        self.check_ring(p)?;
        let sb = self.standard_basis(budget)?;
        sb.contains(&poly_vector(p, &self.module_ordering()), budget)
    }

    /// Every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (of the localization, for local orderings).
    pub fn same_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_unit_ideal(&self, budget: &Budget) -> Result<bool> {
        Ok(self.leading_monomials(budget)?.iter().any(|m| m.is_one()))
    }

    pub fn vdim(&self, budget: &Budget) -> Result<QuotientDimension> {
        self.standard_basis(budget)?.vdim(budget)
    }

    /// Monomials outside the leading ideal, decreasing; `None` if infinite.
    pub fn standard_monomials(&self, budget: &Budget) -> Result<Option<Vec<Monomial>>> {
        Ok(self
            .standard_basis(budget)?
            .standard_monomials(budget)?
            .map(|v| v.into_iter().map(|(m, _)| m).collect()))
    }

    fn check_ring(&self, p: &Polynomial<F>) -> Result<()> {
        if **p.ring() != *self.ring {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }
}

/// Fully reduced normal form of the element with the given components,
/// scaled so that `input - nf` lies in the module.
pub(crate) fn normal_form_components<F: Field>(
    sb: &StdBasis<F::Dom>,
    comps: &[(usize, &Polynomial<F>)],
    ring: &Arc<RingSpec>,
    rank: usize,
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>> {
    let v = to_vector(comps, sb.ordering());
    if v.is_zero() {
        return Ok(vec![Polynomial::zero(ring); rank]);
    }
    // The engine vector is s * input for a nonzero scalar s.
    let t = v.lead();
    let (_, p) = comps.iter().find(|(pos, _)| *pos == t.pos).expect("lead position");
    let field = ring.field();
    let s = F::from_domain(&t.c, field)
        .div(&p.coefficient(&t.m))
        .expect("nonzero coefficient");
    let red = sb.reduce(v, budget)?;
    let one = || F::from_i64(1, field);
    let num = red.num.as_ref().map_or_else(one, |n| F::from_domain(n, field));
    let den = red.den.as_ref().map_or_else(one, |d| F::from_domain(d, field));
    let factor = den.div(&num.mul(&s)).expect("nonzero scalars");
    Ok(from_vector::<F>(&red.rem, ring, rank)
        .into_iter()
        .map(|q| q.scale(&factor))
        .collect())
}

/// Kept ideal of the elimination of `drop`: generators of `I ∩ k[rest]`,
/// moved to the ring without the dropped variables. Computed with an
/// elimination ordering on polynomial representatives.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, drop: &[usize], budget: &Budget) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if drop.iter().any(|&i| i >= n) {
        return Err(Error::Validation("elimination variable out of range".into()));
    }
    let ord = MonomialOrdering::elimination(n, drop);
    let mord = ModuleOrdering::top(ord.clone());
    let gens = ideal.generators().iter().map(|g| poly_vector(g, &mord)).collect();
    let sb = standard_basis(gens, &mord, n, 1, false, budget)?;
    let reduced = ring.without(drop);
    let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
    let mut out = Vec::new();
    for v in sb.elements() {
        if v.terms.iter().any(|t| drop.iter().any(|&i| t.m.exponent(i) > 0)) {
            continue;
        }
        let p = from_vector::<F>(v, ring, 1).remove(0);
        let terms = p.terms().iter().map(|(m, c)| (m.project(&keep), c.clone())).collect();
        out.push(Polynomial::from_terms(&reduced, terms).monic());
    }
    let ordering = if ideal.is_local() {
        MonomialOrdering::NegDegRevLex
    } else {
        MonomialOrdering::DegRevLex
    };
    Ideal::new(&reduced, ordering, out)
}

/// `I ∩ J` via `t*I + (1-t)*J` and elimination of `t`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
    if **i.ring() != **j.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = i.ring();
    let n = ring.nvars();
    let ext = ring.extend("aux", &["t".to_string()]);
    let map: Vec<usize> = (0..n).collect();
    let t = Polynomial::<F>::var(&ext, n);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(&t * &g.embed(&ext, &map));
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.embed(&ext, &map));
    }
    let big = Ideal::new(&ext, MonomialOrdering::DegRevLex, gens)?;
    let el = eliminate(&big, &[n], budget)?;
    let gens = el.generators().iter().map(|g| g.embed(ring, &map)).collect();
    Ideal::new(ring, i.ordering().clone(), gens)
}

/// `(I : q) = (I ∩ (q)) / q`.
pub fn colon_by_element<F: Field>(i: &Ideal<F>, q: &Polynomial<F>, budget: &Budget) -> Result<Ideal<F>> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let principal = Ideal::new(i.ring(), i.ordering().clone(), vec![q.clone()])?;
    let cap = intersect(i, &principal, budget)?;
    let mut gens = Vec::new();
    for g in cap.generators() {
        match g.exact_divide(q)? {
            Some(r) => gens.push(r),
            None => {
                return Err(Error::Internal(format!(
                    "intersection element {g} is not divisible by {q}"
                )))
            }
        }
    }
    Ideal::new(i.ring(), i.ordering().clone(), gens)
}

/// Greatest common divisor (up to a scalar) via `ab / lcm(a, b)`.
pub fn gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, budget: &Budget) -> Result<Polynomial<F>> {
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.ring()));
    }
    let ia = Ideal::global(a.ring(), vec![a.clone()])?;
    let ib = Ideal::global(b.ring(), vec![b.clone()])?;
    let cap = intersect(&ia, &ib, budget)?;
    let basis = cap.basis_polynomials(budget)?;
    if basis.len() != 1 {
        return Err(Error::Internal(
            "intersection of principal ideals is not principal".into(),
        ));
    }
    let prod = a.try_mul(b)?;
    match prod.exact_divide(&basis[0])? {
        Some(g) => Ok(g.monic()),
        None => Err(Error::Internal("lcm does not divide the product".into())),
    }
}

/// Whether `p` is squarefree: the joint gcd of `p` and all its partial
/// derivatives is a unit.
pub fn squarefree_check<F: Field>(p: &Polynomial<F>, budget: &Budget) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::Validation("squarefree check of the zero polynomial".into()));
    }
    let mut g = p.monic();
    for i in 0..p.ring().nvars() {
        if g.is_constant() {
            break;
        }
        let d = p.derivative(i);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d, budget)?;
    }
    Ok(g.is_constant())
}
