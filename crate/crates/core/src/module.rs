//! Submodules of free modules over a polynomial ring or its localization at
//! the origin: syzygies, subquotient dimensions, pushforward presentations
//! and Fitting ideals.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::engine::{standard_basis, Budget, ModuleOrdering, QuotientDimension, StdBasis, Vector};
use crate::error::{Error, Result};
use crate::ideal::{from_vector, normal_form_components, to_vector, Ideal};
use crate::ring::{Field, Monomial, MonomialOrdering, Polynomial, Rational, RingMap, RingSpec};

/// Element of `R^rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModuleElement<F: Field = Rational> {
    components: Vec<Polynomial<F>>,
}

impl<F: Field> FreeModuleElement<F> {
    pub fn new(components: Vec<Polynomial<F>>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Validation("free module element of rank 0".into()));
        };
        if components.iter().any(|c| c.ring() != first.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeModuleElement { components })
    }

    pub fn zero(ring: &Arc<RingSpec>, rank: usize) -> Self {
        FreeModuleElement {
            components: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The `i`-th basis vector.
    pub fn unit(ring: &Arc<RingSpec>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.components[i] = Polynomial::one(ring);
        v
    }

    /// `p * e_i`.
    pub fn single(p: Polynomial<F>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(p.ring(), rank);
        v.components[i] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.components[0].ring()
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<F> {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, p: &Polynomial<F>) -> Result<Self> {
        Ok(FreeModuleElement {
            components: self.components.iter().map(|c| c.try_mul(p)).collect::<Result<_>>()?,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::Validation("rank mismatch".into()));
        }
        Ok(FreeModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_>>()?,
        })
    }

    /// `sum coeffs[i] * gens[i]`.
    pub fn combination(coeffs: &[Polynomial<F>], gens: &[Self]) -> Result<Self> {
        if coeffs.len() != gens.len() || gens.is_empty() {
            return Err(Error::Validation(
                "combination needs one coefficient per generator".into(),
            ));
        }
        let mut acc = Self::zero(gens[0].ring(), gens[0].rank());
        for (c, g) in coeffs.iter().zip(gens) {
            if !c.is_zero() {
                acc = acc.try_add(&g.scale(c)?)?;
            }
        }
        Ok(acc)
    }

    pub(crate) fn to_vector(&self, offset: usize, ord: &ModuleOrdering) -> Vector<F::Dom> {
        let comps: Vec<(usize, &Polynomial<F>)> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, p)| (offset + i, p))
            .collect();
        to_vector(&comps, ord)
    }

    fn from_engine(v: &Vector<F::Dom>, ring: &Arc<RingSpec>, rank: usize) -> Self {
        FreeModuleElement {
            components: from_vector(v, ring, rank),
        }
    }
}

impl<F: Field> fmt::Display for FreeModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Generators of a submodule; the zero module is marked explicitly.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleGenerators<F: Field = Rational> {
    Zero,
    Generated(Vec<FreeModuleElement<F>>),
}

/// A submodule of `R^ambient_rank` with known relations among its
/// generators (columns over the generator index set).
#[derive(Clone, Debug)]
pub struct SubmodulePresentation<F: Field = Rational> {
    ring: Arc<RingSpec>,
    ambient_rank: usize,
    generators: ModuleGenerators<F>,
    relations: Vec<FreeModuleElement<F>>,
}

impl<F: Field> SubmodulePresentation<F> {
    /// Validates that every relation annihilates the generators.
    pub fn new(
        ring: &Arc<RingSpec>,
        ambient_rank: usize,
        generators: Vec<FreeModuleElement<F>>,
        relations: Vec<FreeModuleElement<F>>,
    ) -> Result<Self> {
        for g in &generators {
            if g.rank() != ambient_rank || **g.ring() != **ring {
                return Err(Error::Validation("generator outside the ambient module".into()));
            }
        }
        for r in &relations {
            if r.rank() != generators.len() || !FreeModuleElement::combination(r.components(), &generators)?.is_zero() {
                return Err(Error::Validation(format!(
                    "relation {r} does not annihilate the generators"
                )));
            }
        }
        let generators = if generators.iter().all(|g| g.is_zero()) {
            ModuleGenerators::Zero
        } else {
            ModuleGenerators::Generated(generators)
        };
        Ok(SubmodulePresentation {
            ring: ring.clone(),
            ambient_rank,
            generators,
            relations,
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.generators, ModuleGenerators::Zero)
    }

    /// Generators; empty exactly for the zero module.
    pub fn generators(&self) -> &[FreeModuleElement<F>] {
        match &self.generators {
            ModuleGenerators::Zero => &[],
            ModuleGenerators::Generated(g) => g,
        }
    }

    pub fn relations(&self) -> &[FreeModuleElement<F>] {
        &self.relations
    }
}

/// Completed standard basis of a submodule.
#[derive(Clone, Debug)]
pub struct ModuleBasis<F: Field = Rational> {
    ring: Arc<RingSpec>,
    rank: usize,
    basis: StdBasis<F::Dom>,
}

impl<F: Field> ModuleBasis<F> {
    pub fn elements(&self) -> Vec<FreeModuleElement<F>> {
        self.basis
            .elements()
            .map(|v| FreeModuleElement::from_engine(v, &self.ring, self.rank))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Leading monomials with their positions.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.basis.leading_terms()
    }

    pub fn contains(&self, v: &FreeModuleElement<F>, budget: &Budget) -> Result<bool> {
        self.basis.contains(&v.to_vector(0, self.basis.ordering()), budget)
    }

    /// `dim R^rank / module` (local for local orderings).
    pub fn vdim(&self, budget: &Budget) -> Result<QuotientDimension> {
        self.basis.vdim(budget)
    }

    pub fn standard_monomials(&self, budget: &Budget) -> Result<Option<Vec<(Monomial, usize)>>> {
        self.basis.standard_monomials(budget)
    }

    /// Normal form: `v - nf` lies in the module and every term of `nf` is a
    /// standard monomial. Needs a global ordering or a finite quotient.
    pub fn normal_form(&self, v: &FreeModuleElement<F>, budget: &Budget) -> Result<FreeModuleElement<F>> {
        if !self.basis.has_full_reduction() {
            return Err(Error::Validation(
                "normal forms need a global ordering or a finite-dimensional quotient".into(),
            ));
        }
        let comps: Vec<(usize, &Polynomial<F>)> = v.components().iter().enumerate().collect();
        Ok(FreeModuleElement {
            components: normal_form_components(&self.basis, &comps, &self.ring, self.rank, budget)?,
        })
    }
}

fn common_ring<F: Field>(gens: &[FreeModuleElement<F>], rank: usize) -> Result<()> {
    if let Some(g) = gens.first() {
        for h in gens {
            if h.rank() != rank {
                return Err(Error::Validation(format!(
                    "element of rank {} in a rank {rank} module",
                    h.rank()
                )));
            }
            if h.ring() != g.ring() {
                return Err(Error::RingMismatch);
            }
        }
    }
    Ok(())
}

pub fn module_standard_basis<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    gens: &[FreeModuleElement<F>],
    ord: &ModuleOrdering,
    budget: &Budget,
) -> Result<ModuleBasis<F>> {
    common_ring(gens, rank)?;
    ord.mono.validate(ring.nvars())?;
    let vs = gens.iter().map(|g| g.to_vector(0, ord)).collect();
    let basis = standard_basis(vs, ord, ring.nvars(), rank, true, budget)?;
    Ok(ModuleBasis {
        ring: ring.clone(),
        rank,
        basis,
    })
}

/// `dim_C O^rank / <gens>` over the local ring at the origin.
pub fn local_module_vdim<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    gens: &[FreeModuleElement<F>],
    budget: &Budget,
) -> Result<QuotientDimension> {
    if rank == 0 {
        return Ok(QuotientDimension::Finite(0));
    }
    let ord = ModuleOrdering::top(MonomialOrdering::NegDegRevLex);
    module_standard_basis(ring, rank, gens, &ord, budget)?.vdim(budget)
}

/// Removes generators of `O^rank / <rels>` that a relation with a nonzero
/// constant entry expresses through the others. The quotient is unchanged
/// up to isomorphism; returns the new rank and relations.
pub fn prune_presentation<F: Field>(
    rank: usize,
    rels: &[FreeModuleElement<F>],
) -> Result<(usize, Vec<FreeModuleElement<F>>)> {
    let mut rank = rank;
    let mut rows: Vec<Vec<Polynomial<F>>> = rels
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.components().to_vec())
        .collect();
    loop {
        let pick = rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.iter().position(|p| p.is_constant() && !p.is_zero()).map(|j| (i, j)));
        let Some((i, j)) = pick else {
            break;
        };
        let r = rows.swap_remove(i);
        let inv = r[j].constant_term().inv().expect("nonzero constant");
        let mut next = Vec::with_capacity(rows.len());
        for mut row in rows {
            if !row[j].is_zero() {
                let q = row[j].scale(&inv);
                row = row
                    .iter()
                    .zip(&r)
                    .map(|(a, b)| a.try_sub(&q.try_mul(b)?))
                    .collect::<Result<_>>()?;
            }
            row.remove(j);
            if row.iter().any(|p| !p.is_zero()) {
                next.push(row);
            }
        }
        rows = next;
        rank -= 1;
    }
    let out = rows
        .into_iter()
        .map(FreeModuleElement::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((rank, out))
}

/// Standard basis of `<(g_i | e_i)>` in `R^(r+m)`, ambient positions first.
fn tagged_basis<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    gens: &[FreeModuleElement<F>],
    mono: MonomialOrdering,
    budget: &Budget,
) -> Result<StdBasis<F::Dom>> {
    let m = gens.len();
    let ord = ModuleOrdering::with_prefix(mono, rank);
    let one = Polynomial::<F>::one(ring);
    let vs = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut comps: Vec<(usize, &Polynomial<F>)> = g.components().iter().enumerate().collect();
            comps.push((rank + i, &one));
            to_vector(&comps, &ord)
        })
        .collect();
    standard_basis(vs, &ord, ring.nvars(), rank + m, false, budget)
}

/// The tag part `w` of an element `(0 | w)`, as a vector over the generators.
fn tag_part<F: Field>(v: &Vector<F::Dom>, ring: &Arc<RingSpec>, rank: usize, m: usize) -> FreeModuleElement<F> {
    let parts = from_vector::<F>(v, ring, rank + m);
    FreeModuleElement {
        components: parts[rank..].to_vec(),
    }
}

/// Generators of `{a : sum a_i g_i = 0}`.
pub fn syzygies<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    gens: &[FreeModuleElement<F>],
    budget: &Budget,
) -> Result<SubmodulePresentation<F>> {
    common_ring(gens, rank)?;
    let m = gens.len();
    if m == 0 {
        return SubmodulePresentation::new(ring, 0, Vec::new(), Vec::new());
    }
    let sb = tagged_basis(ring, rank, gens, MonomialOrdering::DegRevLex, budget)?;
    let syz: Vec<FreeModuleElement<F>> = sb
        .elements()
        .filter(|v| v.lead().pos >= rank)
        .map(|v| tag_part(v, ring, rank, m))
        .collect();
    for s in &syz {
        if !FreeModuleElement::combination(s.components(), gens)?.is_zero() {
            return Err(Error::Internal(format!(
                "syzygy {s} does not annihilate the generators"
            )));
        }
    }
    SubmodulePresentation::new(ring, m, syz, Vec::new())
}

/// Relations presenting `<outer> / <inner>` (local) as a quotient of
/// `O^|outer|`: the syzygies of `outer` together with lifts of `inner`.
pub fn quotient_relations<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    outer: &[FreeModuleElement<F>],
    inner: &[FreeModuleElement<F>],
    budget: &Budget,
) -> Result<Vec<FreeModuleElement<F>>> {
    common_ring(outer, rank)?;
    common_ring(inner, rank)?;
    let m = outer.len();
    if m == 0 {
        if inner.iter().all(|h| h.is_zero()) {
            return Ok(Vec::new());
        }
        return Err(Error::Containment(
            "inner module is not contained in the zero module".into(),
        ));
    }
    let global = tagged_basis(ring, rank, outer, MonomialOrdering::DegRevLex, budget)?;
    let gord = global.ordering().clone();
    let mut rels: Vec<FreeModuleElement<F>> = global
        .elements()
        .filter(|v| v.lead().pos >= rank)
        .map(|v| tag_part(v, ring, rank, m))
        .collect();
    let mut local: Option<StdBasis<F::Dom>> = None;
    for h in inner {
        if h.is_zero() {
            continue;
        }
        let red = global.reduce(h.to_vector(0, &gord), budget)?;
        let rem = if red.rem.is_zero() || red.rem.lead().pos >= rank {
            red.rem
        } else {
            // Not a global member; the lift may need units of the local ring.
            if local.is_none() {
                local = Some(tagged_basis(ring, rank, outer, MonomialOrdering::NegDegRevLex, budget)?);
            }
            let lb = local.as_ref().unwrap();
            let w = lb.weak_normal_form(h.to_vector(0, lb.ordering()), budget)?;
            if !w.is_zero() && w.lead().pos < rank {
                return Err(Error::Containment(format!("{h} is not in the outer module")));
            }
            w
        };
        // u*h = -sum w_i outer_i for a unit u; -w generates the same lift.
        let lift = tag_part(&rem, ring, rank, m);
        if !lift.is_zero() {
            rels.push(lift);
        }
    }
    Ok(rels)
}

/// `dim_C <outer>/<inner>` over the local ring at the origin; `inner` must
/// lie in `outer`.
pub fn subquotient_dim<F: Field>(
    ring: &Arc<RingSpec>,
    rank: usize,
    outer: &[FreeModuleElement<F>],
    inner: &[FreeModuleElement<F>],
    budget: &Budget,
) -> Result<QuotientDimension> {
    let rels = quotient_relations(ring, rank, outer, inner, budget)?;
    local_module_vdim(ring, outer.len(), &rels, budget)
}

/// Presentation of the source ring of a finite map germ as a module over
/// the target ring: `generators[i]` are source monomials, column `j` lists
/// target-ring coefficients with `sum_i columns[j][i](phi) * generators[i] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationMatrix<F: Field = Rational> {
    pub target: Arc<RingSpec>,
    pub generators: Vec<Polynomial<F>>,
    pub columns: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> PresentationMatrix<F> {
    pub fn rows(&self) -> usize {
        self.generators.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.columns[j][i]
    }
}

/// Checks that `phi` is finite at the origin with the whole fiber over 0
/// concentrated there, and returns the local standard monomials of
/// `source / phi^* m`, largest first.
pub fn finite_fiber_basis<F: Field>(phi: &RingMap<F>, budget: &Budget) -> Result<Vec<Monomial>> {
    if !phi.preserves_origin() {
        return Err(Error::Validation("map does not send the origin to the origin".into()));
    }
    let src = phi.source();
    let local = Ideal::local(src, phi.images().to_vec())?;
    let Some(mons) = local.standard_monomials(budget)? else {
        return Err(Error::NotFinite("the fiber over the origin is not finite".into()));
    };
    let global = Ideal::global(src, phi.images().to_vec())?;
    let gd = global.vdim(budget)?;
    if gd != QuotientDimension::Finite(mons.len() as u64) {
        return Err(Error::NotFinite(format!(
            "the fiber over the origin has points away from the origin (global length {gd}, local length {})",
            mons.len()
        )));
    }
    Ok(mons)
}

/// Presentation of the pushforward of the source ring along a finite map.
pub fn pushforward_presentation<F: Field>(phi: &RingMap<F>, budget: &Budget) -> Result<PresentationMatrix<F>> {
    let mons = finite_fiber_basis(phi, budget)?;
    let src = phi.source();
    let tgt = phi.target();
    let n = src.nvars();
    let m = mons.len();
    let graph = phi.graph_ring();
    let gr = &graph.ring;
    let mono = MonomialOrdering::elimination(gr.nvars(), &graph.source_vars);
    let ord = ModuleOrdering::with_prefix(mono, 1);
    let one = Polynomial::<F>::one(gr);
    let mut gens = Vec::new();
    for (i, b) in mons.iter().enumerate() {
        let bp = Polynomial::<F>::monomial(gr, b.embed(gr.nvars(), &graph.source_vars), F::from_i64(1, gr.field()));
        gens.push(to_vector(&[(0, &bp), (1 + i, &one)], &ord));
    }
    for g in phi.graph_generators(&graph) {
        gens.push(to_vector(&[(0, &g)], &ord));
    }
    let sb = standard_basis(gens, &ord, gr.nvars(), 1 + m, false, budget)?;
    let mut columns = Vec::new();
    for v in sb.elements() {
        if v.lead().pos == 0 || v.terms.iter().any(|t| (0..n).any(|i| t.m.exponent(i) > 0)) {
            continue;
        }
        let parts = from_vector::<F>(v, gr, 1 + m);
        let col: Vec<Polynomial<F>> = parts[1..]
            .iter()
            .map(|p| {
                let terms = p
                    .terms()
                    .iter()
                    .map(|(mo, c)| (mo.project(&graph.target_vars), c.clone()))
                    .collect();
                Polynomial::from_terms(tgt, terms)
            })
            .collect();
        columns.push(col);
    }
    let generators = mons
        .iter()
        .map(|b| Polynomial::monomial(src, b.clone(), F::from_i64(1, src.field())))
        .collect();
    let pm = PresentationMatrix {
        target: tgt.clone(),
        generators,
        columns,
    };
    for col in &pm.columns {
        let mut acc = Polynomial::zero(src);
        for (c, b) in col.iter().zip(&pm.generators) {
            acc = acc.try_add(&phi.pullback(c)?.try_mul(b)?)?;
        }
        if !acc.is_zero() {
            return Err(Error::Internal("pushforward relation does not vanish".into()));
        }
    }
    Ok(pm)
}

/// Determinant of a square matrix of polynomials (Laplace expansion with
/// memoization over column subsets).
pub fn determinant<F: Field>(rows: &[Vec<Polynomial<F>>], ring: &Arc<RingSpec>) -> Result<Polynomial<F>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation("determinant of a non-square matrix".into()));
    }
    if n > 63 {
        return Err(Error::Validation("matrix too large for minor expansion".into()));
    }
    let p = PresentationMatrix {
        target: ring.clone(),
        generators: vec![Polynomial::zero(ring); n],
        columns: (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect(),
    };
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    Minors {
        p: &p,
        memo: HashMap::new(),
    }
    .det(all, all)
}

struct Minors<'a, F: Field> {
    p: &'a PresentationMatrix<F>,
    memo: HashMap<(u64, u64), Polynomial<F>>,
}

impl<F: Field> Minors<'_, F> {
    /// Determinant of the submatrix on `rows` x `cols` (bitmasks of equal
    /// popcount), by expansion along the first row.
    fn det(&mut self, rows: u64, cols: u64) -> Result<Polynomial<F>> {
        if rows == 0 {
            return Ok(Polynomial::one(&self.p.target));
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return Ok(d.clone());
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut acc = Polynomial::zero(&self.p.target);
        let mut sign = false;
        let mut c = cols;
        while c != 0 {
            let j = c.trailing_zeros() as usize;
            c &= !(1 << j);
            let e = self.p.entry(r, j);
            if !e.is_zero() {
                let sub = self.det(rest, cols & !(1 << j))?;
                if !sub.is_zero() {
                    let t = e.try_mul(&sub)?;
                    acc = if sign { acc.try_sub(&t)? } else { acc.try_add(&t)? };
                }
            }
            sign = !sign;
        }
        self.memo.insert((rows, cols), acc.clone());
        Ok(acc)
    }
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    if k <= n {
        go(0, n, k, 0, &mut out);
    }
    out
}

/// The `i`-th Fitting ideal: all `(rows - i)`-minors, as a local ideal of
/// the target ring. `i >= rows` gives the unit ideal.
pub fn fitting_ideal<F: Field>(p: &PresentationMatrix<F>, i: usize) -> Result<Ideal<F>> {
    let m = p.rows();
    if i >= m {
        return Ideal::local(&p.target, vec![Polynomial::one(&p.target)]);
    }
    if m > 63 || p.cols() > 63 {
        return Err(Error::Validation("presentation too large for minor expansion".into()));
    }
    let k = m - i;
    let mut mins = Minors {
        p,
        memo: HashMap::new(),
    };
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for rows in subsets(m, k) {
        for cols in subsets(p.cols(), k) {
            let d = mins.det(rows, cols)?;
            if !d.is_zero() {
                let d = d.monic();
                if !gens.contains(&d) {
                    gens.push(d);
                }
            }
        }
    }
    Ideal::local(&p.target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(v: &[&str]) -> Arc<RingSpec> {
        RingSpec::new(v).unwrap()
    }

    fn el(r: &Arc<RingSpec>, s: &[&str]) -> FreeModuleElement {
        FreeModuleElement::new(s.iter().map(|x| Polynomial::parse(x, r).unwrap()).collect()).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn module_bases() {
        let r = ring(&["x", "y"]);
        let ord = ModuleOrdering::top(MonomialOrdering::DegRevLex);
        let mb = module_standard_basis(&r, 2, &[el(&r, &["x", "0"]), el(&r, &["0", "y"])], &ord, &b()).unwrap();
        assert_eq!(mb.len(), 2);
        let mb = module_standard_basis(&r, 2, &[el(&r, &["x", "y"]), el(&r, &["x", "y"])], &ord, &b()).unwrap();
        assert_eq!(mb.len(), 1);
        let mb = module_standard_basis(&r, 2, &[el(&r, &["y", "-x"])], &ord, &b()).unwrap();
        assert_eq!(mb.elements(), vec![el(&r, &["-y", "x"])]);
    }

    #[test]
    fn koszul_syzygies() {
        let r = ring(&["x", "y"]);
        let s = syzygies(&r, 1, &[el(&r, &["x"]), el(&r, &["y"])], &b()).unwrap();
        assert_eq!(s.generators().len(), 1);
        let g = &s.generators()[0];
        assert!(g == &el(&r, &["y", "-x"]) || g == &el(&r, &["-y", "x"]));
        let s = syzygies(&r, 1, &[el(&r, &["x"])], &b()).unwrap();
        assert!(s.is_zero());
        let s = syzygies(&r, 1, &[el(&r, &["x"]), el(&r, &["x"])], &b()).unwrap();
        assert_eq!(s.generators().len(), 1);
        let g = &s.generators()[0];
        assert!(g == &el(&r, &["1", "-1"]) || g == &el(&r, &["-1", "1"]));
    }

    #[test]
    fn subquotients() {
        let r = ring(&["x", "y"]);
        let e = |s: &[&str]| s.iter().map(|x| el(&r, &[x])).collect::<Vec<_>>();
        let d = |o: &[&str], i: &[&str]| subquotient_dim(&r, 1, &e(o), &e(i), &b()).unwrap();
        assert_eq!(d(&["x", "y"], &["x", "y"]), QuotientDimension::Finite(0));
        assert_eq!(d(&["x", "y"], &["x^2", "x*y", "y^2"]), QuotientDimension::Finite(2));
        let r1 = ring(&["x"]);
        let o = vec![el(&r1, &["x"])];
        let i = vec![el(&r1, &["x^3"])];
        assert_eq!(
            subquotient_dim(&r1, 1, &o, &i, &b()).unwrap(),
            QuotientDimension::Finite(2)
        );
        // Contained only after inverting 1 + x.
        let o = vec![el(&r1, &["x + x^2"])];
        let i = vec![el(&r1, &["x"])];
        assert_eq!(
            subquotient_dim(&r1, 1, &o, &i, &b()).unwrap(),
            QuotientDimension::Finite(0)
        );
        let err = subquotient_dim(&r1, 1, &i, &[el(&r1, &["1"])], &b()).unwrap_err();
        assert!(matches!(err, Error::Containment(_)));
    }

    #[test]
    fn cusp_pushforward() {
        let src = ring(&["x"]);
        let tgt = ring(&["y1", "y2"]);
        let images = vec![
            Polynomial::parse("x^2", &src).unwrap(),
            Polynomial::parse("x^3", &src).unwrap(),
        ];
        let phi: RingMap = RingMap::new(src.clone(), tgt.clone(), images).unwrap();
        let p = pushforward_presentation(&phi, &b()).unwrap();
        assert_eq!(
            p.generators,
            vec![Polynomial::one(&src), Polynomial::parse("x", &src).unwrap()]
        );
        let f0 = fitting_ideal(&p, 0).unwrap();
        let det = Polynomial::parse("y2^2 - y1^3", &tgt).unwrap();
        let expect = Ideal::local(&tgt, vec![det]).unwrap();
        assert!(f0.same_ideal(&expect, &b()).unwrap());
        let f1 = fitting_ideal(&p, 1).unwrap();
        let m = Ideal::local(&tgt, vec![Polynomial::var(&tgt, 0), Polynomial::var(&tgt, 1)]).unwrap();
        assert!(f1.same_ideal(&m, &b()).unwrap());
        assert!(fitting_ideal(&p, 2).unwrap().is_unit_ideal(&b()).unwrap());
    }

    #[test]
    fn determinants() {
        let r = ring(&["x", "y"]);
        let q = |s: &str| Polynomial::<Rational>::parse(s, &r).unwrap();
        let m = vec![vec![q("x"), q("y")], vec![q("y"), q("x")]];
        assert_eq!(determinant(&m, &r).unwrap(), q("x^2 - y^2"));
        let m = vec![
            vec![q("1"), q("2"), q("3")],
            vec![q("4"), q("5"), q("6")],
            vec![q("7"), q("8"), q("10")],
        ];
        assert_eq!(determinant(&m, &r).unwrap(), q("-3"));
        assert_eq!(determinant::<Rational>(&[], &r).unwrap(), q("1"));
    }

    #[test]
    fn module_normal_forms() {
        let r = ring(&["x"]);
        let ord = ModuleOrdering::top(MonomialOrdering::NegDegRevLex);
        let mb = module_standard_basis(&r, 2, &[el(&r, &["x", "1"]), el(&r, &["x^2", "0"])], &ord, &b()).unwrap();
        let nf = mb.normal_form(&el(&r, &["0", "3"]), &b()).unwrap();
        let back = nf.try_add(&el(&r, &["0", "-3"])).unwrap();
        assert!(mb.contains(&back, &b()).unwrap());
        assert_eq!(mb.vdim(&b()).unwrap(), QuotientDimension::Finite(2));
    }

    #[test]
    fn identity_pushforward() {
        let src = ring(&["x"]);
        let tgt = ring(&["y"]);
        let phi: RingMap = RingMap::new(src.clone(), tgt.clone(), vec![Polynomial::var(&src, 0)]).unwrap();
        let p = pushforward_presentation(&phi, &b()).unwrap();
        assert_eq!(p.rows(), 1);
        assert_eq!(p.cols(), 0);
        assert!(fitting_ideal(&p, 0).unwrap().generators().is_empty());
    }

    #[test]
    fn non_finite_maps_are_rejected() {
        let src = ring(&["x", "y"]);
        let tgt = ring(&["u"]);
        let phi: RingMap = RingMap::new(src.clone(), tgt.clone(), vec![Polynomial::var(&src, 0)]).unwrap();
        assert!(matches!(pushforward_presentation(&phi, &b()), Err(Error::NotFinite(_))));
        let src = ring(&["x"]);
        let phi: RingMap = RingMap::new(src.clone(), tgt, vec![Polynomial::parse("x^2 + x^3", &src).unwrap()]).unwrap();
        assert!(matches!(pushforward_presentation(&phi, &b()), Err(Error::NotFinite(_))));
    }
}
