use std::cmp::Ordering;

use super::{Coeff, ModuleOrdering, Term, Vector};
use crate::error::Result;
use crate::ring::Monomial;

use super::Budget;

/// Bit `i mod 64` is set when variable `i` occurs; a cheap necessary
/// condition for divisibility.
pub(crate) fn sev(m: &Monomial) -> u64 {
    let mut s = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            s |= 1 << (i % 64);
        }
    }
    s
}

/// Basis element with cached divisibility mask and écart.
#[derive(Clone, Debug)]
pub(crate) struct Elem<C> {
    pub v: Vector<C>,
    pub sev: u64,
    pub ecart: u32,
}

impl<C: Coeff> Elem<C> {
    pub fn new(v: Vector<C>) -> Self {
        let sev = sev(&v.lead().m);
        let ecart = v.ecart();
        Elem { v, sev, ecart }
    }

    #[inline]
    pub fn divides(&self, m: &Monomial, pos: usize, msev: u64) -> bool {
        let l = self.v.lead();
        l.pos == pos && self.sev & !msev == 0 && l.m.divides(m)
    }
}

/// `a*h - b*q*g` where the leading terms cancel; both leads are skipped.
pub(crate) fn combine<C: Coeff>(
    h: &[Term<C>],
    a: &C,
    b: &C,
    q: &Monomial,
    g: &[Term<C>],
    ord: &ModuleOrdering,
) -> Vec<Term<C>> {
    let mut out = Vec::with_capacity(h.len() + g.len());
    let scale_h = !a.is_one();
    let (mut i, mut j) = (1, 1);
    let next_g = |j: usize| -> Term<C> {
        let t = &g[j];
        Term {
            m: t.m.mul(q),
            pos: t.pos,
            c: t.c.mul(b).neg(),
        }
    };
    let mut pending: Option<Term<C>> = if j < g.len() { Some(next_g(j)) } else { None };
    while i < h.len() {
        let Some(gt) = pending.as_ref() else { break };
        let ht = &h[i];
        match ord.cmp(&ht.m, ht.pos, &gt.m, gt.pos) {
            Ordering::Greater => {
                let c = if scale_h { ht.c.mul(a) } else { ht.c.clone() };
                out.push(Term {
                    m: ht.m.clone(),
                    pos: ht.pos,
                    c,
                });
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = if j < g.len() { Some(next_g(j)) } else { None };
            }
            Ordering::Equal => {
                let hc = if scale_h { ht.c.mul(a) } else { ht.c.clone() };
                let gt = pending.take().unwrap();
                let c = hc.add(&gt.c);
                if !c.is_zero() {
                    out.push(Term {
                        m: gt.m,
                        pos: gt.pos,
                        c,
                    });
                }
                i += 1;
                j += 1;
                pending = if j < g.len() { Some(next_g(j)) } else { None };
            }
        }
    }
    while i < h.len() {
        let ht = &h[i];
        let c = if scale_h { ht.c.mul(a) } else { ht.c.clone() };
        out.push(Term {
            m: ht.m.clone(),
            pos: ht.pos,
            c,
        });
        i += 1;
    }
    if let Some(t) = pending {
        out.push(t);
        j += 1;
        while j < g.len() {
            out.push(next_g(j));
            j += 1;
        }
    }
    out
}

/// One reduction step of `h` by `g` (whose leading term divides `h`'s).
/// Returns the multiplier applied to `h`.
pub(crate) fn step<C: Coeff>(h: &mut Vector<C>, g: &Vector<C>, ord: &ModuleOrdering) -> C {
    let (hl, gl) = (h.lead(), g.lead());
    let q = gl.m.quotient_of(&hl.m);
    let (a, b) = C::cancel(&hl.c, &gl.c);
    let terms = combine(&h.terms, &a, &b, &q, &g.terms, ord);
    h.terms = terms;
    a
}

fn find_reducer<'a, C: Coeff>(elems: impl Iterator<Item = &'a Elem<C>>, lead: &Term<C>) -> Option<&'a Elem<C>> {
    let s = sev(&lead.m);
    let mut best: Option<&Elem<C>> = None;
    for e in elems {
        if e.divides(&lead.m, lead.pos, s) && best.is_none_or(|b| e.ecart < b.ecart) {
            best = Some(e);
            if e.ecart == 0 {
                break;
            }
        }
    }
    best
}

/// Reduction result: `num * input - den * rem` lies in the module, where a
/// missing factor means 1.
pub(crate) struct Reduced<C> {
    pub rem: Vector<C>,
    pub num: Option<C>,
    pub den: Option<C>,
}

fn mul_into<C: Coeff>(acc: &mut Option<C>, a: &C) {
    *acc = Some(match acc.take() {
        Some(x) => x.mul(a),
        None => a.clone(),
    });
}

/// Full (top and tail) reduction. Valid for global orderings, and for local
/// ones when `corner` bounds the degrees of standard monomials.
pub(crate) fn reduce_full<C: Coeff>(
    v: Vector<C>,
    elems: &[Elem<C>],
    ord: &ModuleOrdering,
    corner: Option<u32>,
    budget: &Budget,
) -> Result<Reduced<C>> {
    let mut h = v;
    if let Some(d) = corner {
        h.truncate(d);
    }
    let mut rem: Vec<Term<C>> = Vec::new();
    let mut num = None;
    let mut den = None;
    let mut steps = 0u64;
    while !h.is_zero() {
        steps += 1;
        if steps.is_multiple_of(256) {
            budget.check_time()?;
        }
        let hit = h
            .terms
            .iter()
            .enumerate()
            .find_map(|(k, t)| find_reducer(elems.iter(), t).map(|g| (k, g)));
        let Some((k, g)) = hit else {
            rem.append(&mut h.terms);
            break;
        };
        if k > 0 {
            rem.extend(h.terms.drain(..k));
        }
        let a = step(&mut h, &g.v, ord);
        if !a.is_one() {
            mul_into(&mut num, &a);
            for t in rem.iter_mut() {
                t.c = t.c.mul(&a);
            }
        }
        if let Some(d) = corner {
            h.truncate(d);
        }
        if h.terms.iter().any(|t| t.c.is_large()) {
            let all: Vec<C> = rem.iter().chain(&h.terms).map(|t| t.c.clone()).collect();
            let g = C::content(&all);
            if !g.is_one() {
                for t in rem.iter_mut().chain(h.terms.iter_mut()) {
                    t.c = t.c.div_exact(&g);
                }
                mul_into(&mut den, &g);
            }
        }
    }
    Ok(Reduced {
        rem: Vector { terms: rem },
        num,
        den,
    })
}

/// Mora's weak normal form: `u * input - rem` lies in the module for a unit
/// `u`, and `rem` is zero or has a leading term outside the leading module.
pub(crate) fn mora_nf<C: Coeff>(
    v: Vector<C>,
    elems: &[Elem<C>],
    ord: &ModuleOrdering,
    corner: Option<u32>,
    budget: &Budget,
) -> Result<Vector<C>> {
    let mut h = v;
    if let Some(d) = corner {
        h.truncate(d);
    }
    let mut extra: Vec<Elem<C>> = Vec::new();
    let mut steps = 0u64;
    while !h.is_zero() {
        steps += 1;
        if steps.is_multiple_of(256) {
            budget.check_time()?;
        }
        let lead = h.lead();
        let g = match find_reducer(elems.iter().chain(extra.iter()), lead) {
            Some(g) => g.clone(),
            None => break,
        };
        let he = h.ecart();
        if g.ecart > he {
            let mut keep = h.clone();
            keep.normalize();
            extra.push(Elem::new(keep));
        }
        step(&mut h, &g.v, ord);
        if let Some(d) = corner {
            h.truncate(d);
        }
        if h.terms.iter().any(|t| t.c.is_large()) {
            h.normalize();
        }
    }
    if !h.is_zero() {
        h.normalize();
    }
    Ok(h)
}
