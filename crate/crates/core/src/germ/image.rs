use std::sync::Arc;

use super::GermSpec;
use crate::engine::Budget;
use crate::error::{Error, Result};
use crate::ideal::{eliminate, squarefree_check, Ideal};
use crate::module::{determinant, finite_fiber_basis, fitting_ideal, pushforward_presentation, PresentationMatrix};
use crate::ring::{Field, MonomialOrdering, Polynomial, RingMap, RingSpec};

/// `f^ = (f, h)` as a map into `y, z` space, checked to be finite.
pub fn build_fhat<F: Field>(spec: &GermSpec<F>, budget: &Budget) -> Result<RingMap<F>> {
    let phi = RingMap::new(spec.source().clone(), spec.target_ring(), spec.fhat_components())?;
    finite_fiber_basis(&phi, budget)?;
    Ok(phi)
}

/// Generators of `(phi^*)^-1(I)` for `I` generated by `gens` in the source
/// ring, computed on polynomial representatives by elimination.
pub fn preimage<F: Field>(phi: &RingMap<F>, gens: &[Polynomial<F>], budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    let graph = phi.graph_ring();
    let mut all = phi.graph_generators(&graph);
    for g in gens {
        all.push(graph.source_of(g));
    }
    let ideal = Ideal::new(&graph.ring, MonomialOrdering::DegRevLex, all)?;
    let el = eliminate(&ideal, &graph.source_vars, budget)?;
    Ok(el.generators().iter().map(|p| p.rehome(phi.target())).collect())
}

/// Reduced equation of the image of a finite map from `C^m` to `C^(m+1)`.
pub fn image_equation<F: Field>(phi: &RingMap<F>, budget: &Budget) -> Result<Polynomial<F>> {
    let gens = preimage(phi, &[], budget)?;
    let g = match gens.as_slice() {
        [g] => g.primitive(),
        [] => return Err(Error::Validation("the image is not a hypersurface".into())),
        _ => {
            return Err(Error::Validation(format!(
                "the elimination ideal of the image has {} generators; expected a principal ideal",
                gens.len()
            )))
        }
    };
    if !phi.pullback(&g)?.is_zero() {
        return Err(Error::Internal("image equation does not vanish on the map".into()));
    }
    if !squarefree_check(&g, budget)? {
        return Err(Error::Validation(
            "the image equation is not reduced; the map is not generically one-to-one".into(),
        ));
    }
    Ok(g)
}

/// `(-1)^l * det(df^ without row l)` for `l = 1..N`.
fn signed_minors<F: Field>(phi: &RingMap<F>) -> Result<Vec<Polynomial<F>>> {
    let jac = phi.jacobian();
    let src = phi.source();
    (0..jac.len())
        .map(|l| {
            let rows: Vec<Vec<Polynomial<F>>> = jac
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != l)
                .map(|(_, r)| r.clone())
                .collect();
            let d = determinant(&rows, src)?;
            Ok(if l % 2 == 0 { -&d } else { d })
        })
        .collect()
}

/// The conductor generator `lambda` with
/// `d ghat / d w_l (f^) = (-1)^l * lambda * minor_l` for every target
/// coordinate `w_l` (1-based `l`).
pub fn conductor_lambda<F: Field>(phi: &RingMap<F>, ghat: &Polynomial<F>) -> Result<Polynomial<F>> {
    let minors = signed_minors(phi)?;
    let partials: Vec<Polynomial<F>> = (0..phi.target().nvars())
        .map(|l| phi.pullback(&ghat.derivative(l)))
        .collect::<Result<_>>()?;
    let Some(l) = minors.iter().position(|m| !m.is_zero()) else {
        return Err(Error::Validation(
            "the Jacobian of the map has no nonzero maximal minor".into(),
        ));
    };
    let lambda = partials[l]
        .exact_divide(&minors[l])?
        .ok_or_else(|| Error::Internal(format!("minor {} does not divide the pulled-back partial", l + 1)))?;
    for (j, (p, m)) in partials.iter().zip(&minors).enumerate() {
        if !p.try_sub(&lambda.try_mul(m)?)?.is_zero() {
            return Err(Error::IdentityFailure(format!(
                "the conductor identity fails for coordinate {}",
                j + 1
            )));
        }
    }
    Ok(lambda)
}

/// Image equation, conductor and Fitting data of `f^`.
#[derive(Clone, Debug)]
pub struct ImageData<F: Field> {
    pub target: Arc<RingSpec>,
    /// `ghat` in `y, z`.
    pub ghat: Polynomial<F>,
    /// `g = ghat(y, 0)` in the `y` variables alone.
    pub g: Polynomial<F>,
    pub lambda: Polynomial<F>,
    pub conductor: Ideal<F>,
    pub presentation: PresentationMatrix<F>,
    pub fitting1: Ideal<F>,
    /// `F1(f^) O_source == (lambda)`.
    pub conductor_identity: bool,
}

pub fn image_data<F: Field>(spec: &GermSpec<F>, phi: &RingMap<F>, budget: &Budget) -> Result<ImageData<F>> {
    let target = phi.target().clone();
    let presentation = pushforward_presentation(phi, budget)?;
    let ghat = image_equation(phi, budget)?;
    let f0 = fitting_ideal(&presentation, 0)?;
    let principal = Ideal::local(&target, vec![ghat.clone()])?;
    if !f0.same_ideal(&principal, budget)? {
        return Err(Error::Validation(
            "the image is not covered once: F0 differs from the reduced image equation".into(),
        ));
    }
    let n1 = spec.n() + 1;
    let zs: Vec<usize> = (n1..target.nvars()).collect();
    let yring = target.without(&zs);
    let keep: Vec<usize> = (0..n1).collect();
    let g = Polynomial::from_terms(
        &yring,
        ghat.set_zero(&zs)
            .terms()
            .iter()
            .map(|(m, c)| (m.project(&keep), c.clone()))
            .collect(),
    );
    let lambda = conductor_lambda(phi, &ghat)?;
    let conductor = Ideal::local(phi.source(), vec![lambda.clone()])?;
    let fitting1 = fitting_ideal(&presentation, 1)?;
    let pulled = fitting1
        .generators()
        .iter()
        .map(|p| phi.pullback(p))
        .collect::<Result<Vec<_>>>()?;
    let pulled = Ideal::local(phi.source(), pulled)?;
    let conductor_identity = pulled.same_ideal(&conductor, budget)?;
    Ok(ImageData {
        target,
        ghat,
        g,
        lambda,
        conductor,
        presentation,
        fitting1,
        conductor_identity,
    })
}
