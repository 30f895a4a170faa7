use super::reduce::{mora_nf, reduce_full, step, Elem, Reduced};
use super::{Budget, Coeff, ModuleOrdering, Term, Vector};
use crate::error::{Error, Resource, Result};
use crate::ring::Monomial;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A completed standard basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct StdBasis<C> {
    pub(crate) elems: Vec<Elem<C>>,
    ord: ModuleOrdering,
    nvars: usize,
    rank: usize,
    global: bool,
    corner: Option<u32>,
}

struct Builder<'a, C> {
    store: Vec<Elem<C>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    ord: &'a ModuleOrdering,
    nvars: usize,
    rank: usize,
    global: bool,
    want_corner: bool,
    corner: Option<u32>,
    budget: &'a Budget,
}

impl<C: Coeff> Builder<'_, C> {
    fn active_elems(&self) -> Vec<Elem<C>> {
        self.store
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(e, _)| e.clone())
            .collect()
    }

    fn reduce(&self, v: Vector<C>, active: &[Elem<C>]) -> Result<Vector<C>> {
        // Modulo m^corner the local ring is finite-dimensional and plain
        // top reduction terminates; no ecart bookkeeping is needed.
        if self.global || self.corner.is_some() {
            let mut h = v;
            if let Some(d) = self.corner {
                h.truncate(d);
            }
            let mut steps = 0u64;
            while !h.is_zero() {
                steps += 1;
                if steps.is_multiple_of(256) {
                    self.budget.check_time()?;
                }
                let lead = h.lead();
                let s = super::reduce::sev(&lead.m);
                match active.iter().find(|e| e.divides(&lead.m, lead.pos, s)) {
                    Some(g) => {
                        step(&mut h, &g.v, self.ord);
                        if let Some(d) = self.corner {
                            h.truncate(d);
                        }
                        if h.terms.iter().any(|t| t.c.is_large()) {
                            h.normalize();
                        }
                    }
                    None => break,
                }
            }
            if !h.is_zero() {
                h.normalize();
            }
            Ok(h)
        } else {
            mora_nf(v, active, self.ord, self.corner, self.budget)
        }
    }

    fn add(&mut self, mut h: Vector<C>) -> Result<()> {
        h.normalize();
        self.budget.check_degree(h.degree())?;
        if self.store.len() >= self.budget.max_basis {
            return Err(Error::resource(Resource::BasisSize));
        }
        self.budget.check_time()?;
        let idx = self.store.len();
        self.store.push(Elem::new(h));
        self.active.push(true);
        self.update(idx);
        if self.want_corner {
            self.refresh_corner();
        }
        Ok(())
    }

    /// Gebauer–Möller pair update for the new element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.store[h].v.lead().clone();
        let rank_one = self.rank == 1;
        let cand: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.active[g] && self.store[g].v.lead().pos == hl.pos)
            .map(|g| {
                let gm = &self.store[g].v.lead().m;
                (g, hl.m.lcm(gm), rank_one && hl.m.is_coprime(gm))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g, l, coprime)) in cand.iter().enumerate() {
            let chained =
                cand[k + 1..].iter().any(|(_, l2, _)| l2.divides(l)) || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *coprime || !chained {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        let store = &self.store;
        self.pairs.retain(|p| {
            let pos = store[p.i].v.lead().pos;
            if pos != hl.pos || !hl.m.divides(&p.lcm) {
                return true;
            }
            let li = store[p.i].v.lead().m.lcm(&hl.m);
            let lj = store[p.j].v.lead().m.lcm(&hl.m);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, coprime) in kept {
            if !coprime && self.corner.is_none_or(|d| l.degree() < d) {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        for g in 0..h {
            if self.active[g] {
                let gl = self.store[g].v.lead();
                if gl.pos == hl.pos && hl.m.divides(&gl.m) {
                    self.active[g] = false;
                }
            }
        }
    }

    /// Detects a full staircase below some degree and truncates everything
    /// above it.
    fn refresh_corner(&mut self) {
        let Some(bound) = self.staircase_bound() else {
            return;
        };
        if self.corner.is_some_and(|c| c <= bound) {
            return;
        }
        self.corner = Some(bound);
        for (e, a) in self.store.iter_mut().zip(self.active.iter_mut()) {
            let mut v = e.v.clone();
            v.truncate(bound);
            if v.is_zero() {
                // Lead degree is at least the bound, so all its pairs are
                // dropped below.
                *a = false;
            } else {
                *e = Elem::new(v);
            }
        }
        self.pairs.retain(|p| p.lcm.degree() < bound);
    }

    /// Truncation degree certified by the current leading terms, if every
    /// position has a full staircase.
    fn staircase_bound(&self) -> Option<u32> {
        let n = self.nvars;
        let mut bound = 0u32;
        for pos in 0..self.rank {
            let mut best: Vec<Option<u32>> = vec![None; n];
            let mut unit = false;
            for (e, a) in self.store.iter().zip(&self.active) {
                if !*a {
                    continue;
                }
                let l = e.v.lead();
                if l.pos != pos {
                    continue;
                }
                if l.m.is_one() {
                    unit = true;
                    break;
                }
                if let Some((i, k)) = l.m.pure_power() {
                    best[i] = Some(best[i].map_or(k, |b| b.min(k)));
                }
            }
            if unit {
                bound = bound.max(2);
                continue;
            }
            if best.iter().any(|b| b.is_none()) {
                return None;
            }
            // Every monomial of degree `d` is a leading monomial, so m^d lies
            // in the module. Truncating one degree higher keeps the pure
            // powers themselves, and with them the staircase.
            let d: u32 = best.iter().map(|b| b.unwrap() - 1).sum::<u32>() + 1;
            bound = bound.max(d + 1);
        }
        Some(bound)
    }

    fn spoly(&self, p: &Pair) -> Vector<C> {
        let fi = &self.store[p.i].v;
        let fj = &self.store[p.j].v;
        let qi = fi.lead().m.quotient_of(&p.lcm);
        let mut v = Vector {
            terms: fi
                .terms
                .iter()
                .map(|t| Term {
                    m: t.m.mul(&qi),
                    pos: t.pos,
                    c: t.c.clone(),
                })
                .collect(),
        };
        step(&mut v, fj, self.ord);
        if let Some(d) = self.corner {
            v.truncate(d);
        }
        v
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let store = &self.store;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| {
                    let pa = store[a.i].v.lead().pos;
                    let pb = store[b.i].v.lead().pos;
                    ord.cmp(&a.lcm, pa, &b.lcm, pb)
                })
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Computes a standard basis of the submodule of `R^rank` generated by
/// `gens` (coefficients already in the engine domain, terms sorted for
/// `ord`).
///
/// With `corner` set, the ordering must be a local degree ordering with
/// term-over-position; once all pure powers appear in every position the
/// computation continues modulo the corresponding power of the maximal
/// ideal, which leaves the quotient unchanged.
pub fn standard_basis<C: Coeff>(
    gens: Vec<Vector<C>>,
    ord: &ModuleOrdering,
    nvars: usize,
    rank: usize,
    corner: bool,
    budget: &Budget,
) -> Result<StdBasis<C>> {
    let global = ord.mono.is_global(nvars);
    let want_corner = corner && !global && ord.mono.is_local_degree() && ord.pot_prefix == 0;
    // Exact local computations suffer from coefficient swell in Mora's
    // normal form. A modular run predicts the corner; the exact run then
    // works modulo that power of m and is accepted only if its own
    // staircase certifies the same truncation.
    if want_corner {
        if let Some(hint) = modular_corner(&gens, ord, nvars, rank, budget) {
            let sb = run(gens.clone(), ord, nvars, rank, true, Some(hint), budget)?;
            if sb.corner.is_some_and(|c| c <= hint) {
                return Ok(sb);
            }
        }
    }
    run(gens, ord, nvars, rank, want_corner, None, budget)
}

const MODULAR_PRIME: u32 = 2_147_483_647;

fn modular_corner<C: Coeff>(
    gens: &[Vector<C>],
    ord: &ModuleOrdering,
    nvars: usize,
    rank: usize,
    budget: &Budget,
) -> Option<u32> {
    let mut images = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut terms = Vec::with_capacity(g.terms.len());
        for t in &g.terms {
            let c = t.c.modular(MODULAR_PRIME)?;
            if !Coeff::is_zero(&c) {
                terms.push(Term {
                    m: t.m.clone(),
                    pos: t.pos,
                    c,
                });
            }
        }
        // A vanishing leading coefficient makes the prime unlucky.
        if terms
            .first()
            .is_none_or(|t| t.m != g.terms[0].m || t.pos != g.terms[0].pos)
        {
            return None;
        }
        images.push(Vector { terms });
    }
    // Truncated runs with growing bounds terminate quickly even where
    // Mora's normal form expands long tails; the first certified bound wins.
    let mut c = 8;
    while c <= MAX_TRUNCATION {
        match run(images.clone(), ord, nvars, rank, true, Some(c), budget) {
            Ok(sb) if sb.corner.is_some() => return sb.corner,
            Ok(_) => c *= 2,
            Err(_) => return None,
        }
    }
    None
}

const MAX_TRUNCATION: u32 = 32;

fn run<C: Coeff>(
    gens: Vec<Vector<C>>,
    ord: &ModuleOrdering,
    nvars: usize,
    rank: usize,
    want_corner: bool,
    hint: Option<u32>,
    budget: &Budget,
) -> Result<StdBasis<C>> {
    let global = ord.mono.is_global(nvars);
    let mut b = Builder {
        store: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ord,
        nvars,
        rank,
        global,
        want_corner,
        corner: hint,
        budget,
    };
    let mut gens: Vec<Vector<C>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if let Some(p) = gens.iter().filter_map(|g| g.max_position()).max() {
        if p >= rank {
            return Err(Error::Internal(format!("position {p} outside rank {rank}")));
        }
    }
    // Small leading terms first: fewer intermediate elements.
    gens.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        ord.cmp(&la.m, la.pos, &lb.m, lb.pos)
    });
    for g in gens {
        let active = b.active_elems();
        let h = b.reduce(g, &active)?;
        if !h.is_zero() {
            b.add(h)?;
        }
    }
    while let Some(p) = b.next_pair() {
        budget.check_degree(p.lcm.degree())?;
        let s = b.spoly(&p);
        if s.is_zero() {
            continue;
        }
        let active = b.active_elems();
        let h = b.reduce(s, &active)?;
        if !h.is_zero() {
            b.add(h)?;
        }
    }
    if let Some(c) = hint {
        // Nakayama: m^(d-1) in M + m^c with d <= c gives m^(d-1) in M.
        match b.staircase_bound() {
            Some(d) if d <= c => b.corner = Some(d.min(b.corner.unwrap())),
            _ => b.corner = None,
        }
    }
    let corner = b.corner;
    let mut elems: Vec<Elem<C>> = b.active_elems();
    // Minimalize: drop elements whose lead is divisible by another lead.
    let mut keep = vec![true; elems.len()];
    for i in 0..elems.len() {
        for j in 0..elems.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (li, lj) = (elems[i].v.lead(), elems[j].v.lead());
            if li.pos == lj.pos && lj.m.divides(&li.m) && (lj.m != li.m || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut k = 0;
    elems.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    // Tail inter-reduction; skipped for position-over-term prefixes, whose
    // tag components only grow under it.
    if (global || corner.is_some()) && ord.pot_prefix == 0 {
        for i in 0..elems.len() {
            let v = elems[i].v.clone();
            let lead = v.terms[0].clone();
            let tail = Vector {
                terms: v.terms[1..].to_vec(),
            };
            let others: Vec<Elem<C>> = elems
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| e.clone())
                .collect();
            let Reduced { rem, num, den } = reduce_full(tail, &others, ord, corner, budget)?;
            // num * tail - den * rem lies in the module, hence so does
            // num * v - (num * lead + den * rem).
            let mut terms = Vec::with_capacity(rem.terms.len() + 1);
            let mut lead = lead;
            if let Some(n) = &num {
                lead.c = lead.c.mul(n);
            }
            terms.push(lead);
            terms.extend(rem.terms.into_iter().map(|mut t| {
                if let Some(d) = &den {
                    t.c = t.c.mul(d);
                }
                t
            }));
            let mut nv = Vector { terms };
            nv.normalize();
            elems[i] = Elem::new(nv);
        }
    }
    elems.sort_by(|a, b| {
        let (la, lb) = (a.v.lead(), b.v.lead());
        ord.cmp(&lb.m, lb.pos, &la.m, la.pos)
    });
    Ok(StdBasis {
        elems,
        ord: ord.clone(),
        nvars,
        rank,
        global,
        corner,
    })
}

impl<C: Coeff> StdBasis<C> {
    pub fn ordering(&self) -> &ModuleOrdering {
        &self.ord
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_global(&self) -> bool {
        self.global
    }

    /// Degree `D` with `m^D R^rank` inside the module, when detected.
    pub fn corner(&self) -> Option<u32> {
        self.corner
    }

    pub fn elements(&self) -> impl Iterator<Item = &Vector<C>> {
        self.elems.iter().map(|e| &e.v)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elems
            .iter()
            .map(|e| (e.v.lead().m.clone(), e.v.lead().pos))
            .collect()
    }

    /// Whether full reductions (not only Mora's weak normal form) are
    /// available.
    pub fn has_full_reduction(&self) -> bool {
        self.global || self.corner.is_some()
    }

    /// Full normal form, when available: `num * v - den * rem` is in the
    /// module and no term of `rem` lies in the leading module.
    pub(crate) fn reduce(&self, v: Vector<C>, budget: &Budget) -> Result<Reduced<C>> {
        debug_assert!(self.has_full_reduction());
        reduce_full(v, &self.elems, &self.ord, self.corner, budget)
    }

    /// Mora's weak normal form (for global orderings, top reduction).
    pub fn weak_normal_form(&self, v: Vector<C>, budget: &Budget) -> Result<Vector<C>> {
        if self.global || self.corner.is_some() {
            return Ok(self.reduce(v, budget)?.rem);
        }
        mora_nf(v, &self.elems, &self.ord, self.corner, budget)
    }

    /// Membership in the module (in the localization for local orderings).
    pub fn contains(&self, v: &Vector<C>, budget: &Budget) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        if self.global {
            let mut h = v.clone();
            while !h.is_zero() {
                let lead = h.lead();
                let s = super::reduce::sev(&lead.m);
                match self.elems.iter().find(|e| e.divides(&lead.m, lead.pos, s)) {
                    Some(g) => {
                        step(&mut h, &g.v, &self.ord);
                        if h.terms.iter().any(|t| t.c.is_large()) {
                            h.normalize();
                        }
                    }
                    None => return Ok(false),
                }
            }
            budget.check_time()?;
            return Ok(true);
        }
        Ok(mora_nf(v.clone(), &self.elems, &self.ord, self.corner, budget)?.is_zero())
    }
}
