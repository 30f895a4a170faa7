use serde::{Deserialize, Serialize};

use super::GermSpec;
use crate::engine::{standard_basis, Budget, ModuleOrdering, QuotientDimension};
use crate::error::{Error, Result};
use crate::ideal::{from_vector, to_vector};
use crate::module::{local_module_vdim, module_standard_basis, syzygies, FreeModuleElement};
use crate::ring::{Field, Monomial, MonomialOrdering, Polynomial, RingMap};

/// `codim_Ae(X, f) = dim theta(f) / (tf(theta_X) + wf(theta_(n+1))) + tau(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimAe {
    pub normal_space: QuotientDimension,
    pub tau: u64,
    pub codim: QuotientDimension,
}

/// Vector fields on the source tangent to `X = h^-1(0)`.
fn tangent_fields<F: Field>(spec: &GermSpec<F>, budget: &Budget) -> Result<Vec<FreeModuleElement<F>>> {
    let src = spec.source();
    let m = src.nvars();
    let k = spec.k();
    if k == 0 {
        return Ok((0..m).map(|i| FreeModuleElement::unit(src, m, i)).collect());
    }
    // Syzygies (xi, b) of [dh | h I_k]: xi(h_l) = -sum_j b_jl h_j.
    let mut gens = Vec::new();
    for i in 0..m {
        gens.push(FreeModuleElement::new(
            spec.h().iter().map(|p| p.derivative(i)).collect(),
        )?);
    }
    for p in spec.h() {
        for l in 0..k {
            gens.push(FreeModuleElement::single(p.clone(), k, l));
        }
    }
    let syz = syzygies(src, k, &gens, budget)?;
    let mut out: Vec<FreeModuleElement<F>> = Vec::new();
    for s in syz.generators() {
        let xi = FreeModuleElement::new(s.components()[..m].to_vec())?;
        if !xi.is_zero() && !out.contains(&xi) {
            out.push(xi);
        }
    }
    Ok(out)
}

/// `tf(xi) = (xi(f_1), ..., xi(f_p))`.
fn tf<F: Field>(f: &[Polynomial<F>], xi: &FreeModuleElement<F>) -> Result<FreeModuleElement<F>> {
    let comps = f
        .iter()
        .map(|fj| {
            let mut acc = Polynomial::zero(fj.ring());
            for (i, c) in xi.components().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.try_add(&c.try_mul(&fj.derivative(i))?)?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    FreeModuleElement::new(comps)
}

/// The `A_e`-codimension computed from its definition: the normal space is
/// finite over the target ring through `f`, presented by module
/// elimination on the graph, and its length is added to `tau(X)`.
pub fn codim_ae_direct<F: Field>(spec: &GermSpec<F>, budget: &Budget) -> Result<CodimAe> {
    let src = spec.source();
    let p = spec.n() + 1;
    let tau = spec.check_icis(budget)?;
    let fields = tangent_fields(spec, budget)?;
    let mut w: Vec<FreeModuleElement<F>> = Vec::new();
    for xi in &fields {
        let v = tf(spec.f(), xi)?;
        if !v.is_zero() {
            w.push(v);
        }
    }
    for h in spec.h() {
        for j in 0..p {
            w.push(FreeModuleElement::single(h.clone(), p, j));
        }
    }
    // Generators over the target ring: a basis of W / f^* m W plus e_j.
    let mut fiber = w.clone();
    for fl in spec.f() {
        for j in 0..p {
            fiber.push(FreeModuleElement::single(fl.clone(), p, j));
        }
    }
    let ord = ModuleOrdering::top(MonomialOrdering::NegDegRevLex);
    let fb = module_standard_basis(src, p, &fiber, &ord, budget)?;
    let Some(mut basis) = fb.standard_monomials(budget)? else {
        return Err(Error::NotFinite("f is not finite on X".into()));
    };
    let one = Monomial::one(src.nvars());
    for j in 0..p {
        if !basis.contains(&(one.clone(), j)) {
            basis.push((one.clone(), j));
        }
    }
    let nb = basis.len();
    let yring = super::target_ring(spec.n(), 0, &[], src.field());
    let phi = RingMap::new(src.clone(), yring.clone(), spec.f().to_vec())?;
    let graph = phi.graph_ring();
    let gr = &graph.ring;
    let emb = |q: &Polynomial<F>| graph.source_of(q);
    let mono = MonomialOrdering::elimination(gr.nvars(), &graph.source_vars);
    let mord = ModuleOrdering::with_prefix(mono, p);
    let onep = Polynomial::<F>::one(gr);
    let mut gens = Vec::new();
    for (i, (m, j)) in basis.iter().enumerate() {
        let mp = Polynomial::monomial(gr, m.embed(gr.nvars(), &graph.source_vars), F::from_i64(1, gr.field()));
        gens.push(to_vector(&[(*j, &mp), (p + i, &onep)], &mord));
    }
    for v in &w {
        let comps: Vec<Polynomial<F>> = v.components().iter().map(emb).collect();
        let refs: Vec<(usize, &Polynomial<F>)> = comps.iter().enumerate().collect();
        gens.push(to_vector(&refs, &mord));
    }
    for g in phi.graph_generators(&graph) {
        for j in 0..p {
            gens.push(to_vector(&[(j, &g)], &mord));
        }
    }
    let sb = standard_basis(gens, &mord, gr.nvars(), p + nb, false, budget)?;
    let nsrc = src.nvars();
    let mut rels: Vec<FreeModuleElement<F>> = Vec::new();
    for v in sb.elements() {
        if v.lead().pos < p || v.terms.iter().any(|t| (0..nsrc).any(|i| t.m.exponent(i) > 0)) {
            continue;
        }
        let parts = from_vector::<F>(v, gr, p + nb);
        let comps = parts[p..]
            .iter()
            .map(|q| {
                let terms = q
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.project(&graph.target_vars), c.clone()))
                    .collect();
                Polynomial::from_terms(&yring, terms)
            })
            .collect();
        rels.push(FreeModuleElement::new(comps)?);
    }
    for j in 0..p {
        let i = basis
            .iter()
            .position(|b| b == &(one.clone(), j))
            .expect("e_j is a generator");
        rels.push(FreeModuleElement::unit(&yring, nb, i));
    }
    let normal_space = local_module_vdim(&yring, nb, &rels, budget)?;
    let codim = match normal_space {
        QuotientDimension::Finite(d) => QuotientDimension::Finite(d + tau),
        QuotientDimension::Infinite => QuotientDimension::Infinite,
    };
    Ok(CodimAe {
        normal_space,
        tau,
        codim,
    })
}

/// Directions `v_i` such that `f^ + sum u_i v_i` is a stable unfolding:
/// monomial vectors completing the constant vectors to a basis of
/// `theta(f^) / (tf^(theta) + f^* m theta(f^))` (Mather's criterion).
pub fn stable_unfolding_directions<F: Field>(spec: &GermSpec<F>, budget: &Budget) -> Result<Vec<Vec<Polynomial<F>>>> {
    let src = spec.source();
    let fh = spec.fhat_components();
    let p = fh.len();
    let mut gens = Vec::new();
    for xi in (0..src.nvars()).map(|i| FreeModuleElement::unit(src, src.nvars(), i)) {
        gens.push(tf(&fh, &xi)?);
    }
    for c in &fh {
        for j in 0..p {
            gens.push(FreeModuleElement::single(c.clone(), p, j));
        }
    }
    let ord = ModuleOrdering::top(MonomialOrdering::NegDegRevLex);
    let mb = module_standard_basis(src, p, &gens, &ord, budget)?;
    let Some(basis) = mb.standard_monomials(budget)? else {
        return Err(Error::NotFinite("f^ is not finite".into()));
    };
    let field = src.field();
    let coords =
        |v: &FreeModuleElement<F>| -> Vec<F> { basis.iter().map(|(m, j)| v.component(*j).coefficient(m)).collect() };
    let mut echelon: Vec<(usize, Vec<F>)> = Vec::new();
    let mut insert = |mut row: Vec<F>| -> bool {
        for (pc, r) in &echelon {
            if !row[*pc].is_zero() {
                let f = row[*pc].div(&r[*pc]).expect("nonzero pivot");
                for (x, y) in row.iter_mut().zip(r) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                echelon.push((pc, row));
                true
            }
            None => false,
        }
    };
    for j in 0..p {
        let nf = mb.normal_form(&FreeModuleElement::unit(src, p, j), budget)?;
        insert(coords(&nf));
    }
    let mut dirs = Vec::new();
    for (i, (m, j)) in basis.iter().enumerate() {
        let mut row = vec![F::from_i64(0, field); basis.len()];
        row[i] = F::from_i64(1, field);
        if insert(row) {
            let mono = Polynomial::monomial(src, m.clone(), F::from_i64(1, field));
            dirs.push(FreeModuleElement::single(mono, p, *j).components().to_vec());
        }
    }
    Ok(dirs)
}

/// Whether an unfolding is stable, i.e. needs no further parameters.
pub fn is_stable_unfolding<F: Field>(unf: &super::UnfoldingSpec<F>, budget: &Budget) -> Result<bool> {
    let src = unf.source();
    let nb = unf.base().source().nvars();
    let mut f = unf.components().to_vec();
    f.extend((0..unf.r()).map(|i| Polynomial::var(src, nb + i)));
    let whole = GermSpec::new(src.nvars(), 0, src, Vec::new(), f)?;
    Ok(stable_unfolding_directions(&whole, budget)?.is_empty())
}
