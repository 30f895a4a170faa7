//! Pipeline orchestration, the JSON report and the corpus runner.

mod corpus;
mod input;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use corpus::{run_corpus, CorpusEntry, CorpusSummary, Mismatch};
pub use input::{load_germ, GermInput, UnfoldingInput, SCHEMA_VERSION};

use crate::engine::{Budget, QuotientDimension};
use crate::error::{Error, Result};
use crate::germ::{
    build_fhat, codim_ae_direct, dim_k, image_data, is_stable_unfolding, make_unfolding, module_mrel, module_n_and_m,
    samuel_multiplicity, specialisation_check, stable_unfolding_directions, GermSpec, ImageData, ModuleM,
    RelativeModule, UnfoldingSpec,
};
use crate::invariants::{in_own_jacobian, weighted_homogeneous_weights, WeightCertificate};
use crate::ring::{CoefficientField, Field, Fp, Polynomial, Rational, RingMap};

/// Runs `$f::<F>(args)` with `F` matching the coefficient field.
macro_rules! dispatch {
    ($field:expr, $f:ident($($arg:expr),*)) => {
        match $field {
            CoefficientField::Rational => $f::<Rational>($($arg),*),
            CoefficientField::Prime(_) => $f::<Fp>($($arg),*),
        }
    };
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub budget: Budget,
    pub timeout: Option<Duration>,
    pub field: CoefficientField,
    /// Largest `t` tried for the Hilbert–Samuel function.
    pub hs_budget: u32,
    /// The Samuel multiplicity is skipped when `k + r` exceeds this.
    pub samuel_max_params: usize,
    pub perturb_extension: bool,
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            budget: Budget::default(),
            timeout: None,
            field: CoefficientField::Rational,
            hs_budget: 12,
            samuel_max_params: 3,
            perturb_extension: false,
            timings: false,
        }
    }
}

impl ReportOptions {
    fn start(&self) -> Budget {
        match self.timeout {
            Some(t) => self.budget.clone().with_timeout(t),
            None => self.budget.clone(),
        }
    }

    fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            local_ordering: "negdegrevlex".into(),
            global_ordering: "degrevlex, block elimination".into(),
            coefficients: match self.field {
                CoefficientField::Rational => "QQ".into(),
                CoefficientField::Prime(p) => format!("GF({p})"),
            },
            certifying: self.field == CoefficientField::Rational,
            max_degree: self.budget.max_degree,
            max_basis: self.budget.max_basis,
            max_staircase: self.budget.max_staircase,
            timeout_secs: self.timeout.map(|t| t.as_secs()),
            hs_budget: self.hs_budget,
            samuel_max_params: self.samuel_max_params,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct EngineConfig {
    pub local_ordering: String,
    pub global_ordering: String,
    pub coefficients: String,
    /// False in prime-field mode: results are evidence, not proofs.
    pub certifying: bool,
    pub max_degree: u32,
    pub max_basis: usize,
    pub max_staircase: usize,
    pub timeout_secs: Option<u64>,
    pub hs_budget: u32,
    pub samuel_max_params: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateSummary {
    pub valid: bool,
    pub n: usize,
    pub k: usize,
    pub tau: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ImageSummary {
    pub ghat: String,
    pub g: String,
    /// Rows of the presentation of the pushforward, one string per entry.
    pub presentation: Vec<Vec<String>>,
    pub fitting1: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ConductorSummary {
    pub lambda: String,
    pub fitting1_pullback: Vec<String>,
    /// `(lambda) == F1(f^) O_source`.
    pub identity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimMRoute {
    /// `(f^*)^-1(J(ghat) O) / J_y(ghat)` specialised to `z = 0`.
    Direct,
    /// `M_rel(G)` of a stable unfolding specialised to the origin.
    Relative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ModuleSummary {
    #[serde(rename = "dimM")]
    pub dim_m: u64,
    #[serde(rename = "dimM-route")]
    pub route: DimMRoute,
    #[serde(rename = "dimM-direct")]
    pub dim_m_direct: u64,
    pub preimage: Vec<String>,
    pub jacobian_y: Vec<String>,
    /// Dimension of the specialised relative module.
    pub specialised: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CodimSummary {
    #[serde(rename = "codimAe-direct")]
    pub codim_ae: u64,
    pub normal_space: u64,
    pub tau: u64,
    #[serde(rename = "dimK")]
    pub dim_k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct UnfoldingSummary {
    /// `input` or `constructed`.
    pub origin: String,
    pub r: usize,
    pub u_vars: Vec<String>,
    #[serde(rename = "F")]
    pub components: Vec<String>,
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ProvedN2,
    SmoothSource,
    SamuelEvidence,
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuI {
    pub value: u64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MuSummary {
    #[serde(rename = "muI")]
    pub mu_i: MuI,
    pub samuel: Option<u64>,
    pub samuel_table: Option<Vec<u64>>,
    pub specialised: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCheck {
    fn eq<T: PartialEq + ToString>(name: &str, lhs: T, rhs: T) -> Self {
        IdentityCheck {
            name: name.into(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    fn holds(name: &str, pass: bool, lhs: String, rhs: String) -> Self {
        IdentityCheck {
            name: name.into(),
            pass,
            lhs,
            rhs,
        }
    }
}

/// Mond's conjecture `mu_I >= codim_Ae`, with equality for weighted
/// homogeneous images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsWithEquality,
    HoldsStrict,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct InvariantReport {
    pub schema: u32,
    pub input_echo: GermInput,
    pub engine_config: EngineConfig,
    pub image: ImageSummary,
    pub conductor: ConductorSummary,
    #[serde(rename = "dimM")]
    pub dim_m: u64,
    #[serde(rename = "dimM-route")]
    pub dim_m_route: DimMRoute,
    #[serde(rename = "dimM-direct")]
    pub dim_m_direct: u64,
    #[serde(rename = "dimK")]
    pub dim_k: u64,
    pub tau: u64,
    pub normal_space: u64,
    #[serde(rename = "codimAe-direct")]
    pub codim_ae_direct: u64,
    #[serde(rename = "codimAe-derived")]
    pub codim_ae_derived: i64,
    pub unfolding: UnfoldingSummary,
    pub specialised: u64,
    pub samuel: Option<u64>,
    pub samuel_table: Option<Vec<u64>>,
    #[serde(rename = "muI")]
    pub mu_i: MuI,
    pub weights: Option<WeightCertificate>,
    pub g_in_jacobian: bool,
    #[serde(rename = "dimM-perturbed", default, skip_serializing_if = "Option::is_none")]
    pub dim_m_perturbed: Option<u64>,
    pub identities: Vec<IdentityCheck>,
    pub conjecture_verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl InvariantReport {
    /// 0 when every identity holds and the conjecture is not violated,
    /// otherwise the identity-failure code.
    pub fn exit_code(&self) -> i32 {
        if self.identities.iter().all(|i| i.pass) && self.conjecture_verdict != Verdict::Violated {
            0
        } else {
            crate::error::ErrorClass::IdentityFailure.exit_code()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let rows: Vec<(&str, String)> = vec![
            ("n, k", format!("{}, {}", self.input_echo.n, self.input_echo.k)),
            ("h", self.input_echo.h.join(", ")),
            ("f", self.input_echo.f.join(", ")),
            ("image ghat", self.image.ghat.clone()),
            ("conductor lambda", self.conductor.lambda.clone()),
            (
                "dim M(g)",
                format!("{} ({:?})", self.dim_m, self.dim_m_route).to_lowercase(),
            ),
            ("dim K(g)", self.dim_k.to_string()),
            ("tau(X)", self.tau.to_string()),
            ("codim_Ae", self.codim_ae_direct.to_string()),
            (
                "unfolding r",
                format!("{} ({})", self.unfolding.r, self.unfolding.origin),
            ),
            (
                "Samuel e",
                self.samuel.map(|e| e.to_string()).unwrap_or_else(|| "skipped".into()),
            ),
            (
                "mu_I",
                format!("{} [{}]", self.mu_i.value, json_tag(&self.mu_i.provenance)),
            ),
            ("verdict", json_tag(&self.conjecture_verdict)),
            ("certifying", self.engine_config.certifying.to_string()),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k:<18} {v}");
        }
        let _ = writeln!(s, "identities:");
        for i in &self.identities {
            let mark = if i.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} {:<24} {} = {}", i.name, i.lhs, i.rhs);
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "timings (ms):");
            for (k, v) in t {
                let _ = writeln!(s, "  {k:<24} {v}");
            }
        }
        s
    }
}

fn json_tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn finite(d: QuotientDimension, what: &str) -> Result<u64> {
    d.finite()
        .ok_or_else(|| Error::NotFinite(format!("{what} is infinite-dimensional; the germ is not A-finite")))
}

fn strings<F: Field>(ps: &[Polynomial<F>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

struct Timer {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, u64>,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer {
            on,
            last: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        *self.laps.entry(stage.into()).or_default() += (now - self.last).as_millis() as u64;
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, u64>> {
        self.on.then_some(self.laps)
    }
}

fn image_summary<F: Field>(data: &ImageData<F>) -> ImageSummary {
    let p = &data.presentation;
    ImageSummary {
        ghat: data.ghat.to_string(),
        g: data.g.to_string(),
        presentation: (0..p.rows())
            .map(|i| (0..p.cols()).map(|j| p.entry(i, j).to_string()).collect())
            .collect(),
        fitting1: strings(data.fitting1.generators()),
    }
}

fn conductor_summary<F: Field>(phi: &RingMap<F>, data: &ImageData<F>) -> Result<ConductorSummary> {
    let pulled = data
        .fitting1
        .generators()
        .iter()
        .map(|p| phi.pullback(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConductorSummary {
        lambda: data.lambda.to_string(),
        fitting1_pullback: strings(&pulled),
        identity: data.conductor_identity,
    })
}

/// The stable unfolding used for `M_rel`: the input one or a constructed one.
fn choose_unfolding<F: Field>(
    input: &GermInput,
    germ: &GermSpec<F>,
    budget: &Budget,
) -> Result<(UnfoldingSpec<F>, &'static str)> {
    match input.unfolding(germ)? {
        Some(u) => Ok((u, "input")),
        None => {
            let dirs = stable_unfolding_directions(germ, budget)?;
            Ok((make_unfolding(germ, &dirs)?, "constructed"))
        }
    }
}

fn unfolding_summary<F: Field>(unf: &UnfoldingSpec<F>, origin: &str, stable: bool) -> UnfoldingSummary {
    UnfoldingSummary {
        origin: origin.into(),
        r: unf.r(),
        u_vars: unf.u_vars().to_vec(),
        components: strings(unf.components()),
        stable,
    }
}

struct Core<F: Field> {
    germ: GermSpec<F>,
    tau: u64,
    phi: RingMap<F>,
    data: ImageData<F>,
    m: ModuleM<F>,
    unf: UnfoldingSpec<F>,
    origin: &'static str,
    stable: bool,
    rel: RelativeModule<F>,
    specialised: u64,
    dim_m: u64,
    route: DimMRoute,
}

/// Image, conductor, the modules and the relative module; the common part
/// of the `module-m`, `mu` and `report` commands.
fn core<F: Field>(input: &GermInput, opts: &ReportOptions, budget: &Budget, timer: &mut Timer) -> Result<Core<F>> {
    let (germ, tau) = input.validate::<F>(opts.field, budget)?;
    let phi = build_fhat(&germ, budget)?;
    timer.lap("validate");
    let data = image_data(&germ, &phi, budget)?;
    timer.lap("image");
    let m = module_n_and_m(&germ, &phi, &data, budget)?;
    timer.lap("module-m");
    let (unf, origin) = choose_unfolding(input, &germ, budget)?;
    let stable = is_stable_unfolding(&unf, budget)?;
    timer.lap("unfolding");
    let rel = module_mrel(&unf, &data.ghat, budget)?;
    let specialised = finite(
        specialisation_check(&rel, m.dim_m, budget)?.specialised,
        "the specialised M_rel",
    )?;
    timer.lap("relative-module");
    let (dim_m, route) = if germ.n() == 1 {
        (specialised, DimMRoute::Relative)
    } else {
        (finite(m.dim_m, "M(g)")?, DimMRoute::Direct)
    };
    Ok(Core {
        germ,
        tau,
        phi,
        data,
        m,
        unf,
        origin,
        stable,
        rel,
        specialised,
        dim_m,
        route,
    })
}

fn mu_summary<F: Field>(c: &Core<F>, opts: &ReportOptions, budget: &Budget) -> Result<MuSummary> {
    let d = c.germ.k() + c.unf.r();
    let samuel = if d <= opts.samuel_max_params {
        match samuel_multiplicity(&c.rel, opts.hs_budget, budget) {
            Ok(s) => Some(s),
            Err(Error::ResourceExhausted {
                resource: crate::error::Resource::HilbertSamuelBudget,
                ..
            }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let e = samuel.as_ref().map(|s| s.multiplicity);
    let mu_i = if c.germ.n() == 2 {
        MuI {
            value: c.dim_m,
            provenance: Provenance::ProvedN2,
        }
    } else if let Some(e) = e {
        let provenance = if c.germ.k() == 0 && e == c.dim_m {
            Provenance::SmoothSource
        } else {
            Provenance::SamuelEvidence
        };
        MuI { value: e, provenance }
    } else {
        MuI {
            value: c.dim_m,
            provenance: Provenance::Conjectural,
        }
    };
    Ok(MuSummary {
        mu_i,
        samuel: e,
        samuel_table: samuel.map(|s| s.table),
        specialised: c.specialised,
    })
}

fn module_summary<F: Field>(c: &Core<F>) -> Result<ModuleSummary> {
    Ok(ModuleSummary {
        dim_m: c.dim_m,
        route: c.route,
        dim_m_direct: finite(c.m.dim_m, "M(g)")?,
        preimage: strings(&c.m.p),
        jacobian_y: strings(&c.m.jy),
        specialised: c.specialised,
    })
}

fn codim_summary<F: Field>(germ: &GermSpec<F>, g: &Polynomial<F>, budget: &Budget) -> Result<CodimSummary> {
    let c = codim_ae_direct(germ, budget)?;
    Ok(CodimSummary {
        codim_ae: finite(c.codim, "the normal space")?,
        normal_space: finite(c.normal_space, "the normal space")?,
        tau: c.tau,
        dim_k: finite(dim_k(g, budget)?, "K(g)")?,
    })
}

fn verdict(mu: &MuI, codim: u64, quasi_homogeneous: bool) -> Verdict {
    if mu.provenance == Provenance::Conjectural {
        return Verdict::NotApplicable;
    }
    match mu.value.cmp(&codim) {
        std::cmp::Ordering::Less => Verdict::Violated,
        std::cmp::Ordering::Equal => Verdict::HoldsWithEquality,
        std::cmp::Ordering::Greater if quasi_homogeneous => Verdict::Violated,
        std::cmp::Ordering::Greater => Verdict::HoldsStrict,
    }
}

fn report<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<InvariantReport> {
    let budget = opts.start();
    let mut timer = Timer::new(opts.timings);
    let c = core::<F>(input, opts, &budget, &mut timer)?;
    let codim = codim_summary(&c.germ, &c.data.g, &budget)?;
    timer.lap("codim");
    let mu = mu_summary(&c, opts, &budget)?;
    timer.lap("samuel");
    let g_in_jacobian = in_own_jacobian(&c.data.g, &budget)?;
    let weights = weighted_homogeneous_weights(&c.data.g);

    let mut ids = vec![
        IdentityCheck::holds(
            "conductor",
            c.data.conductor_identity,
            format!("({})", c.data.lambda),
            "F1(f^) O".into(),
        ),
        IdentityCheck::eq("cross-path", c.dim_m, codim.dim_k + codim.codim_ae),
        IdentityCheck::eq("stability", c.dim_m == 0, codim.codim_ae == 0),
        IdentityCheck::holds(
            "pullback-jacobian",
            c.rel.pullback_identity,
            "J_yz(G) O".into(),
            "J(G) O".into(),
        ),
        IdentityCheck::holds(
            "unfolding-restricts",
            c.rel.restricts_to_ghat,
            "G(y, z, 0)".into(),
            c.data.ghat.to_string(),
        ),
        IdentityCheck::holds(
            "unfolding-stable",
            c.stable,
            format!("r = {}", c.unf.r()),
            "stable".into(),
        ),
    ];
    if c.germ.n() >= 2 {
        ids.push(IdentityCheck::eq("specialisation", c.specialised, c.dim_m));
    }
    if c.stable {
        ids.push(IdentityCheck::holds(
            "mrel-jacobian-quotient",
            c.rel.jacobian_quotient_identity(&budget)?,
            "P_rel".into(),
            "J(G) + (G)".into(),
        ));
    }
    if let Some(e) = mu.samuel {
        ids.push(IdentityCheck::eq("cohen-macaulay", e, c.dim_m));
    }
    let mut dim_m_perturbed = None;
    if opts.perturb_extension && c.germ.k() > 0 {
        let other = perturbed_dim_m(&c.germ, &budget)?;
        ids.push(IdentityCheck::eq("extension-independence", other, c.dim_m));
        dim_m_perturbed = Some(other);
    }
    timer.lap("identities");

    let conjecture_verdict = verdict(&mu.mu_i, codim.codim_ae, g_in_jacobian);
    Ok(InvariantReport {
        schema: SCHEMA_VERSION,
        input_echo: input.clone(),
        engine_config: opts.engine_config(),
        image: image_summary(&c.data),
        conductor: conductor_summary(&c.phi, &c.data)?,
        dim_m: c.dim_m,
        dim_m_route: c.route,
        dim_m_direct: finite(c.m.dim_m, "M(g)")?,
        dim_k: codim.dim_k,
        tau: c.tau,
        normal_space: codim.normal_space,
        codim_ae_direct: codim.codim_ae,
        codim_ae_derived: c.dim_m as i64 - codim.dim_k as i64,
        unfolding: unfolding_summary(&c.unf, c.origin, c.stable),
        specialised: c.specialised,
        samuel: mu.samuel,
        samuel_table: mu.samuel_table,
        mu_i: mu.mu_i,
        weights,
        g_in_jacobian,
        dim_m_perturbed,
        identities: ids,
        conjecture_verdict,
        timings: timer.finish(),
    })
}

/// `dim M(g)` recomputed with the extension `f_1 + x_last h_1`.
fn perturbed_dim_m<F: Field>(germ: &GermSpec<F>, budget: &Budget) -> Result<u64> {
    let other = germ.with_perturbed_extension()?;
    let phi = build_fhat(&other, budget)?;
    let data = image_data(&other, &phi, budget)?;
    let m = module_n_and_m(&other, &phi, &data, budget)?;
    if other.n() >= 2 {
        return finite(m.dim_m, "M(g)");
    }
    let dirs = stable_unfolding_directions(&other, budget)?;
    let rel = module_mrel(&make_unfolding(&other, &dirs)?, &data.ghat, budget)?;
    finite(
        specialisation_check(&rel, m.dim_m, budget)?.specialised,
        "the specialised M_rel",
    )
}

/// Full report: every stage with its cross-checks.
pub fn run_report(input: &GermInput, opts: &ReportOptions) -> Result<InvariantReport> {
    dispatch!(opts.field, report(input, opts))
}

fn validate<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<ValidateSummary> {
    let (germ, tau) = input.validate::<F>(opts.field, &opts.start())?;
    Ok(ValidateSummary {
        valid: true,
        n: germ.n(),
        k: germ.k(),
        tau,
    })
}

pub fn run_validate(input: &GermInput, opts: &ReportOptions) -> Result<ValidateSummary> {
    dispatch!(opts.field, validate(input, opts))
}

fn image_stage<F: Field>(
    input: &GermInput,
    opts: &ReportOptions,
    budget: &Budget,
) -> Result<(GermSpec<F>, RingMap<F>, ImageData<F>)> {
    let (germ, _) = input.validate::<F>(opts.field, budget)?;
    let phi = build_fhat(&germ, budget)?;
    let data = image_data(&germ, &phi, budget)?;
    Ok((germ, phi, data))
}

fn image<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<ImageSummary> {
    Ok(image_summary(&image_stage::<F>(input, opts, &opts.start())?.2))
}

pub fn run_image(input: &GermInput, opts: &ReportOptions) -> Result<ImageSummary> {
    dispatch!(opts.field, image(input, opts))
}

fn conductor<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<ConductorSummary> {
    let (_, phi, data) = image_stage::<F>(input, opts, &opts.start())?;
    conductor_summary(&phi, &data)
}

pub fn run_conductor(input: &GermInput, opts: &ReportOptions) -> Result<ConductorSummary> {
    dispatch!(opts.field, conductor(input, opts))
}

fn module_m<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<ModuleSummary> {
    let c = core::<F>(input, opts, &opts.start(), &mut Timer::new(false))?;
    module_summary(&c)
}

pub fn run_module_m(input: &GermInput, opts: &ReportOptions) -> Result<ModuleSummary> {
    dispatch!(opts.field, module_m(input, opts))
}

fn codim<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<CodimSummary> {
    let budget = opts.start();
    let (germ, _, data) = image_stage::<F>(input, opts, &budget)?;
    codim_summary(&germ, &data.g, &budget)
}

pub fn run_codim(input: &GermInput, opts: &ReportOptions) -> Result<CodimSummary> {
    dispatch!(opts.field, codim(input, opts))
}

fn mu<F: Field>(input: &GermInput, opts: &ReportOptions) -> Result<MuSummary> {
    let budget = opts.start();
    let c = core::<F>(input, opts, &budget, &mut Timer::new(false))?;
    mu_summary(&c, opts, &budget)
}

pub fn run_mu(input: &GermInput, opts: &ReportOptions) -> Result<MuSummary> {
    dispatch!(opts.field, mu(input, opts))
}
