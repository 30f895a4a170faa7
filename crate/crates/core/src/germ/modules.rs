use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::image::{image_equation, preimage, ImageData};
use super::{GermSpec, UnfoldingSpec};
use crate::engine::{Budget, QuotientDimension};
use crate::error::{Error, Resource, Result};
use crate::ideal::{colon_by_element, Ideal};
use crate::module::{local_module_vdim, prune_presentation, quotient_relations, subquotient_dim, FreeModuleElement};
use crate::ring::{Field, Monomial, Polynomial, RingMap, RingSpec};

fn rank_one<F: Field>(ps: &[Polynomial<F>]) -> Vec<FreeModuleElement<F>> {
    ps.iter().map(|p| FreeModuleElement::single(p.clone(), 1, 0)).collect()
}

fn pullbacks<F: Field>(phi: &RingMap<F>, ps: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    ps.iter().map(|p| phi.pullback(p)).collect()
}

/// `P / (J_y + params * P)` where `P` is the preimage of `J_{y,z}` and the
/// parameters are the target variables past the `y` block.
fn specialised_dim<F: Field>(
    ring: &Arc<RingSpec>,
    p: &[Polynomial<F>],
    jy: &[Polynomial<F>],
    params: &[usize],
    budget: &Budget,
) -> Result<QuotientDimension> {
    let mut inner = jy.to_vec();
    for &v in params {
        let z = Polynomial::var(ring, v);
        for q in p {
            inner.push(z.try_mul(q)?);
        }
    }
    subquotient_dim(ring, 1, &rank_one(p), &rank_one(&inner), budget)
}

/// `N(ghat) = P / J_y(ghat)` with `P = (f^*)^-1(J(ghat) O_source)`, and
/// `dim M(g)`.
#[derive(Clone, Debug)]
pub struct ModuleM<F: Field> {
    pub p: Vec<Polynomial<F>>,
    pub jy: Vec<Polynomial<F>>,
    pub dim_m: QuotientDimension,
}

pub fn module_n_and_m<F: Field>(
    spec: &GermSpec<F>,
    phi: &RingMap<F>,
    data: &ImageData<F>,
    budget: &Budget,
) -> Result<ModuleM<F>> {
    let target = &data.target;
    let n1 = spec.n() + 1;
    let jac: Vec<Polynomial<F>> = (0..target.nvars()).map(|i| data.ghat.derivative(i)).collect();
    let p = preimage(phi, &pullbacks(phi, &jac)?, budget)?;
    let jy: Vec<Polynomial<F>> = jac[..n1].iter().filter(|q| !q.is_zero()).cloned().collect();
    let pl = Ideal::local(target, p.clone())?;
    for q in &jy {
        if !pl.contains(q, budget)? {
            return Err(Error::Containment(format!("{q} is not in the preimage of J(ghat)")));
        }
    }
    for q in &p {
        if !data.fitting1.contains(q, budget)? {
            return Err(Error::Containment(format!("preimage generator {q} is not in F1")));
        }
    }
    let params: Vec<usize> = (n1..target.nvars()).collect();
    let dim_m = specialised_dim(target, &p, &jy, &params, budget)?;
    Ok(ModuleM { p, jy, dim_m })
}

/// `dim K(g) = dim O / (J(g) : g)`.
pub fn dim_k<F: Field>(g: &Polynomial<F>, budget: &Budget) -> Result<QuotientDimension> {
    if g.is_zero() || !g.constant_term().is_zero() {
        return Err(Error::Validation(
            "dim K needs a nonzero g vanishing at the origin".into(),
        ));
    }
    let vars: Vec<usize> = (0..g.ring().nvars()).collect();
    let j = Ideal::local(g.ring(), g.gradient(&vars))?;
    colon_by_element(&j, g, budget)?.vdim(budget)
}

/// `M_rel(G) = P_rel / J_y(G)` for an unfolding, with
/// `P_rel = (F^*)^-1(J_{y,z}(G) O_source)`.
#[derive(Clone, Debug)]
pub struct RelativeModule<F: Field> {
    pub target: Arc<RingSpec>,
    /// Reduced image equation of the unfolding.
    pub g_big: Polynomial<F>,
    pub p_rel: Vec<Polynomial<F>>,
    pub jy: Vec<Polynomial<F>>,
    /// Target parameters `z, u`.
    pub params: Vec<usize>,
    /// `G(y, z, 0)` is a scalar multiple of `ghat`.
    pub restricts_to_ghat: bool,
    /// `J_{y,z}(G) O_source == J(G) O_source`.
    pub pullback_identity: bool,
}

pub fn module_mrel<F: Field>(
    unf: &UnfoldingSpec<F>,
    ghat: &Polynomial<F>,
    budget: &Budget,
) -> Result<RelativeModule<F>> {
    let phi = unf.map()?;
    let target = phi.target().clone();
    let g_big = image_equation(&phi, budget)?;
    let n1 = unf.base().n() + 1;
    let nyz = n1 + unf.base().k();
    let jac: Vec<Polynomial<F>> = (0..target.nvars()).map(|i| g_big.derivative(i)).collect();
    let jyz_pulled = pullbacks(&phi, &jac[..nyz])?;
    let p_rel = preimage(&phi, &jyz_pulled, budget)?;
    let jy: Vec<Polynomial<F>> = jac[..n1].iter().filter(|q| !q.is_zero()).cloned().collect();
    let pl = Ideal::local(&target, p_rel.clone())?;
    for q in &jy {
        if !pl.contains(q, budget)? {
            return Err(Error::Containment(format!("{q} is not in the relative preimage")));
        }
    }
    let src = phi.source();
    let a = Ideal::local(src, jyz_pulled)?;
    let b = Ideal::local(src, pullbacks(&phi, &jac)?)?;
    let pullback_identity = a.same_ideal(&b, budget)?;
    let us: Vec<usize> = (nyz..target.nvars()).collect();
    let keep: Vec<usize> = (0..nyz).collect();
    let restricted = g_big.set_zero(&us);
    let restricted = Polynomial::from_terms(
        ghat.ring(),
        restricted
            .terms()
            .iter()
            .map(|(m, c)| (m.project(&keep), c.clone()))
            .collect(),
    );
    let restricts_to_ghat = restricted.primitive() == ghat.primitive() || restricted.primitive() == (-ghat).primitive();
    Ok(RelativeModule {
        target,
        g_big,
        p_rel,
        jy,
        params: unf.parameter_vars(),
        restricts_to_ghat,
        pullback_identity,
    })
}

/// Dimension of `M_rel(G) / m_{k+r} M_rel(G)` against `dim M(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Specialisation {
    pub specialised: QuotientDimension,
    pub dim_m: QuotientDimension,
    pub holds: bool,
}

pub fn specialisation_check<F: Field>(
    rel: &RelativeModule<F>,
    dim_m: QuotientDimension,
    budget: &Budget,
) -> Result<Specialisation> {
    let specialised = specialised_dim(&rel.target, &rel.p_rel, &rel.jy, &rel.params, budget)?;
    Ok(Specialisation {
        specialised,
        dim_m,
        holds: specialised == dim_m && specialised.is_finite(),
    })
}

/// Hilbert–Samuel data of `M_rel(G)` with respect to the parameter ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamuelResult {
    /// Number of parameters `k + r`.
    pub d: usize,
    /// `H(t) = dim M_rel / m^t M_rel` for `t = 1, 2, ...`.
    pub table: Vec<u64>,
    pub multiplicity: u64,
}

fn monomials_of_degree(vars: &[usize], nvars: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn go(vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur).expect("small exponents"));
                }
            }
            [v, rest @ ..] => {
                for e in (0..=left).rev() {
                    cur[*v] = e;
                    go(rest, left - e, cur, out);
                }
                cur[*v] = 0;
            }
        }
    }
    go(vars, t, &mut vec![0; nvars], &mut out);
    out
}

/// Samuel multiplicity `e(m_{k+r}, M_rel(G))`, read off from the `d`-th
/// differences of `H(t)` once they agree for three consecutive `t`.
pub fn samuel_multiplicity<F: Field>(rel: &RelativeModule<F>, max_t: u32, budget: &Budget) -> Result<SamuelResult> {
    let ring = &rel.target;
    let d = rel.params.len();
    let s = rel.p_rel.len();
    let rels = quotient_relations(ring, 1, &rank_one(&rel.p_rel), &rank_one(&rel.jy), budget)?;
    let (s, rels) = prune_presentation(s, &rels)?;
    if d == 0 {
        let h = local_module_vdim(ring, s, &rels, budget)?
            .finite()
            .ok_or_else(|| Error::NotFinite("M_rel is infinite-dimensional".into()))?;
        return Ok(SamuelResult {
            d,
            table: vec![h],
            multiplicity: h,
        });
    }
    let mut table: Vec<u64> = Vec::new();
    let mut diffs: Vec<i64> = Vec::new();
    for t in 1..=max_t {
        let mut gens = rels.clone();
        for m in monomials_of_degree(&rel.params, ring.nvars(), t) {
            let p = Polynomial::monomial(ring, m, F::from_i64(1, ring.field()));
            for i in 0..s {
                gens.push(FreeModuleElement::single(p.clone(), s, i));
            }
        }
        let h = local_module_vdim(ring, s, &gens, budget)?
            .finite()
            .ok_or_else(|| Error::NotFinite("M_rel / m^t M_rel is infinite-dimensional".into()))?;
        table.push(h);
        if table.len() > d {
            // d-th backward difference at the newest point.
            let mut row: Vec<i64> = table[table.len() - d - 1..].iter().map(|&x| x as i64).collect();
            for _ in 0..d {
                row = row.windows(2).map(|w| w[1] - w[0]).collect();
            }
            diffs.push(row[0]);
            let n = diffs.len();
            if n >= 3 && diffs[n - 1] == diffs[n - 2] && diffs[n - 2] == diffs[n - 3] && diffs[n - 1] >= 0 {
                return Ok(SamuelResult {
                    d,
                    table,
                    multiplicity: diffs[n - 1] as u64,
                });
            }
        }
    }
    Err(Error::ResourceExhausted {
        resource: Resource::HilbertSamuelBudget,
        detail: format!("H(t) for t = 1..{max_t}: {table:?}").into(),
    })
}

/// A good defining equation `G' = e^t G` on the unfolding extended by a
/// parameter `t`, kept symbolically: `J(G') = J(G) + (G)` and
/// `J_y(G') = J_y(G)` up to the unit `e^t`.
#[derive(Clone, Debug)]
pub struct GoodEquation<F: Field> {
    pub g: Polynomial<F>,
    pub unit_factor: bool,
}

impl<F: Field> GoodEquation<F> {
    /// Generators of `J(G')`, restricted to `t = 0` (the ideal does not
    /// involve `t` otherwise).
    pub fn jacobian(&self) -> Vec<Polynomial<F>> {
        let ring = self.g.ring();
        let mut out: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| self.g.derivative(i)).collect();
        if self.unit_factor {
            out.push(self.g.clone());
        }
        out
    }

    /// `G' in J(G')`.
    pub fn is_good(&self, budget: &Budget) -> Result<bool> {
        if self.unit_factor {
            return Ok(true);
        }
        Ideal::local(self.g.ring(), self.jacobian())?.contains(&self.g, budget)
    }
}

pub fn good_equation_transform<F: Field>(g: &Polynomial<F>) -> GoodEquation<F> {
    GoodEquation {
        g: g.clone(),
        unit_factor: true,
    }
}

impl<F: Field> RelativeModule<F> {
    /// For a stable unfolding: `M_rel(G') = J(G') / J_y(G')` with the good
    /// equation `G'`, i.e. `P_rel = J(G) + (G)`.
    pub fn jacobian_quotient_identity(&self, budget: &Budget) -> Result<bool> {
        let good = good_equation_transform(&self.g_big);
        let a = Ideal::local(&self.target, self.p_rel.clone())?;
        let b = Ideal::local(&self.target, good.jacobian())?;
        a.same_ideal(&b, budget)
    }
}
