//! Map germs on complete intersections: the image equation, conductor,
//! the modules N, M, K and their relative versions over unfoldings.

mod codim;
mod image;
mod modules;

use std::sync::Arc;

use crate::engine::{Budget, QuotientDimension};
use crate::error::{Error, Result};
use crate::invariants::tjurina_icis;
use crate::ring::{CoefficientField, Field, Polynomial, Rational, RingMap, RingSpec};

pub use codim::{codim_ae_direct, is_stable_unfolding, stable_unfolding_directions, CodimAe};
pub use image::{build_fhat, conductor_lambda, image_data, image_equation, preimage, ImageData};
pub use modules::{
    dim_k, good_equation_transform, module_mrel, module_n_and_m, samuel_multiplicity, specialisation_check,
    GoodEquation, ModuleM, RelativeModule, SamuelResult, Specialisation,
};

/// A map germ `f: (X, 0) -> (C^(n+1), 0)` on the complete intersection
/// `X = h^-1(0)` in `C^(n+k)`; `k = 0` is a smooth source.
#[derive(Clone, Debug)]
pub struct GermSpec<F: Field = Rational> {
    n: usize,
    k: usize,
    source: Arc<RingSpec>,
    h: Vec<Polynomial<F>>,
    f: Vec<Polynomial<F>>,
}

impl<F: Field> GermSpec<F> {
    pub fn new(
        n: usize,
        k: usize,
        source: &Arc<RingSpec>,
        h: Vec<Polynomial<F>>,
        f: Vec<Polynomial<F>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("n must be at least 1".into()));
        }
        if source.nvars() != n + k {
            return Err(Error::Validation(format!(
                "expected n + k = {} source variables, got {}",
                n + k,
                source.nvars()
            )));
        }
        if h.len() != k {
            return Err(Error::Validation(format!("expected {k} equations h, got {}", h.len())));
        }
        if f.len() != n + 1 {
            return Err(Error::Validation(format!(
                "expected {} components f, got {}",
                n + 1,
                f.len()
            )));
        }
        for p in h.iter().chain(&f) {
            if **p.ring() != **source {
                return Err(Error::RingMismatch);
            }
            if !p.constant_term().is_zero() {
                return Err(Error::Validation(format!("{p} does not vanish at the origin")));
            }
        }
        Ok(GermSpec {
            n,
            k,
            source: source.clone(),
            h,
            f,
        })
    }

    /// Parses the equations over the given field.
    pub fn parse<S: AsRef<str>>(
        n: usize,
        k: usize,
        vars: &[S],
        h: &[S],
        f: &[S],
        field: CoefficientField,
    ) -> Result<Self> {
        let source = RingSpec::with_field(vars, field)?;
        let parse = |s: &[S]| -> Result<Vec<Polynomial<F>>> {
            s.iter().map(|t| Polynomial::parse(t.as_ref(), &source)).collect()
        };
        GermSpec::new(n, k, &source, parse(h)?, parse(f)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn h(&self) -> &[Polynomial<F>] {
        &self.h
    }

    pub fn f(&self) -> &[Polynomial<F>] {
        &self.f
    }

    /// Components of `f^ = (f, h)`.
    pub fn fhat_components(&self) -> Vec<Polynomial<F>> {
        self.f.iter().chain(&self.h).cloned().collect()
    }

    /// Target ring of `f^`: `y1..y(n+1)` then `z1..zk`.
    pub fn target_ring(&self) -> Arc<RingSpec> {
        target_ring(self.n, self.k, &[], self.source.field())
    }

    /// Tjurina number of `X`; fails unless `X` is an isolated complete
    /// intersection singularity.
    pub fn check_icis(&self, budget: &Budget) -> Result<u64> {
        match tjurina_icis(&self.h, budget)? {
            QuotientDimension::Finite(t) => Ok(t),
            QuotientDimension::Infinite => {
                Err(Error::NotIcis("the Tjurina module of h is infinite-dimensional".into()))
            }
        }
    }

    /// The same germ with another extension: `f_1 + x_last * h_1`. Only
    /// meaningful for `k >= 1`.
    pub fn with_perturbed_extension(&self) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::Validation("a smooth source has a unique extension".into()));
        }
        let x0 = Polynomial::var(&self.source, 0);
        let mut f = self.f.clone();
        let last = f.len() - 1;
        f[last] = f[last].try_add(&x0.try_mul(&self.h[0])?)?;
        GermSpec::new(self.n, self.k, &self.source, self.h.clone(), f)
    }
}

pub(crate) fn target_ring(n: usize, k: usize, u: &[String], field: CoefficientField) -> Arc<RingSpec> {
    let ys: Vec<String> = (1..=n + 1).map(|i| format!("y{i}")).collect();
    let zs: Vec<String> = (1..=k).map(|i| format!("z{i}")).collect();
    RingSpec::from_blocks(&[("y", ys), ("z", zs), ("u", u.to_vec())], field).expect("valid target names")
}

/// An unfolding `F(x, u) = (F_y, F_z, u)` of `f^` with `r` parameters.
#[derive(Clone, Debug)]
pub struct UnfoldingSpec<F: Field = Rational> {
    base: GermSpec<F>,
    u_vars: Vec<String>,
    source: Arc<RingSpec>,
    components: Vec<Polynomial<F>>,
}

impl<F: Field> UnfoldingSpec<F> {
    /// `components` live in the source ring extended by `u_vars` and must
    /// restrict to `f^` at `u = 0`.
    pub fn new(
        base: GermSpec<F>,
        u_vars: Vec<String>,
        source: Arc<RingSpec>,
        components: Vec<Polynomial<F>>,
    ) -> Result<Self> {
        let nb = base.source().nvars();
        let r = u_vars.len();
        if source.nvars() != nb + r || source.names()[..nb] != base.source().names()[..] {
            return Err(Error::Validation(
                "unfolding source must be the germ source followed by the parameters".into(),
            ));
        }
        if source.names()[nb..] != u_vars[..] {
            return Err(Error::Validation(
                "parameter names do not match the unfolding source".into(),
            ));
        }
        let fh = base.fhat_components();
        if components.len() != fh.len() {
            return Err(Error::Validation(format!(
                "expected {} unfolding components, got {}",
                fh.len(),
                components.len()
            )));
        }
        let us: Vec<usize> = (nb..nb + r).collect();
        let map: Vec<usize> = (0..nb).collect();
        for (c, f) in components.iter().zip(&fh) {
            if **c.ring() != *source {
                return Err(Error::RingMismatch);
            }
            if c.set_zero(&us) != f.embed(&source, &map) {
                return Err(Error::Validation(format!(
                    "unfolding component {c} does not restrict to {f}"
                )));
            }
        }
        Ok(UnfoldingSpec {
            base,
            u_vars,
            source,
            components,
        })
    }

    /// Parses components given in the germ variables plus `u_vars`.
    pub fn parse<S: AsRef<str>>(base: GermSpec<F>, u_vars: &[S], components: &[S]) -> Result<Self> {
        let names: Vec<String> = u_vars.iter().map(|s| s.as_ref().to_string()).collect();
        let source = extend_source(base.source(), &names)?;
        let comps = components
            .iter()
            .map(|s| Polynomial::parse(s.as_ref(), &source))
            .collect::<Result<Vec<_>>>()?;
        UnfoldingSpec::new(base, names, source, comps)
    }

    /// The trivial unfolding (`r = 0`).
    pub fn trivial(base: GermSpec<F>) -> Self {
        let source = base.source().clone();
        let components = base.fhat_components();
        UnfoldingSpec {
            base,
            u_vars: Vec::new(),
            source,
            components,
        }
    }

    pub fn base(&self) -> &GermSpec<F> {
        &self.base
    }

    pub fn r(&self) -> usize {
        self.u_vars.len()
    }

    pub fn u_vars(&self) -> &[String] {
        &self.u_vars
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    /// Target ring `y, z, u`.
    pub fn target_ring(&self) -> Arc<RingSpec> {
        target_ring(self.base.n(), self.base.k(), &self.u_vars, self.source.field())
    }

    /// `F` as a ring map, with the identity on the parameters.
    pub fn map(&self) -> Result<RingMap<F>> {
        let nb = self.base.source().nvars();
        let mut images = self.components.clone();
        for i in 0..self.r() {
            images.push(Polynomial::var(&self.source, nb + i));
        }
        RingMap::new(self.source.clone(), self.target_ring(), images)
    }

    /// Indices of the target parameters `z` and `u`.
    pub fn parameter_vars(&self) -> Vec<usize> {
        let n1 = self.base.n() + 1;
        (n1..n1 + self.base.k() + self.r()).collect()
    }
}

fn extend_source(source: &Arc<RingSpec>, u: &[String]) -> Result<Arc<RingSpec>> {
    for name in u {
        if source.var_index(name).is_ok() {
            return Err(Error::Validation(format!(
                "parameter {name} clashes with a source variable"
            )));
        }
    }
    let mut names: Vec<String> = source.names().to_vec();
    names.extend(u.iter().cloned());
    RingSpec::with_field(&names, source.field())
}

/// `f^ + sum u_i * directions[i]`, with fresh parameter names `u1, u2, ...`.
pub fn make_unfolding<F: Field>(spec: &GermSpec<F>, directions: &[Vec<Polynomial<F>>]) -> Result<UnfoldingSpec<F>> {
    let taken = |s: &str| spec.source().var_index(s).is_ok();
    let mut prefix = "u".to_string();
    while (1..=directions.len()).any(|i| taken(&format!("{prefix}{i}"))) {
        prefix.push('u');
    }
    let names: Vec<String> = (1..=directions.len()).map(|i| format!("{prefix}{i}")).collect();
    let source = extend_source(spec.source(), &names)?;
    let nb = spec.source().nvars();
    let map: Vec<usize> = (0..nb).collect();
    let mut comps: Vec<Polynomial<F>> = spec.fhat_components().iter().map(|p| p.embed(&source, &map)).collect();
    for (i, dir) in directions.iter().enumerate() {
        if dir.len() != comps.len() {
            return Err(Error::Validation(format!(
                "direction {} has {} components, expected {}",
                i + 1,
                dir.len(),
                comps.len()
            )));
        }
        let u = Polynomial::var(&source, nb + i);
        for (c, d) in comps.iter_mut().zip(dir) {
            if **d.ring() != **spec.source() {
                return Err(Error::RingMismatch);
            }
            *c = c.try_add(&u.try_mul(&d.embed(&source, &map))?)?;
        }
    }
    UnfoldingSpec::new(spec.clone(), names, source, comps)
}
