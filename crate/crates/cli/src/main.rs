use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use icis_core::report::{self, GermInput, ReportOptions, SCHEMA_VERSION};
use icis_core::{CoefficientField, Error, ErrorClass};

/// Jacobian-module invariants of finite map germs on ICIS.
#[derive(Parser)]
#[command(name = "icis", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest degree any standard-basis computation may reach.
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<u32>,
    /// Wall-clock limit per germ, in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    timeout: Option<u64>,
    /// Compute over Z/P instead of the rationals (evidence only).
    #[arg(long = "char", global = true, value_name = "P")]
    characteristic: Option<u32>,
    /// Largest t for the Hilbert-Samuel function.
    #[arg(long, global = true, value_name = "T", default_value_t = 12)]
    hs_budget: u32,
    /// Recompute dim M with a perturbed extension of f.
    #[arg(long, global = true)]
    perturb_extension: bool,
    /// Include per-stage timings in the report (not deterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the input: ICIS, finiteness, Tjurina number.
    Validate { input: PathBuf },
    /// Image equation, pushforward presentation and F1.
    Image { input: PathBuf },
    /// Conductor computed two ways.
    Conductor { input: PathBuf },
    /// The module M(g).
    ModuleM { input: PathBuf },
    /// A_e-codimension and dim K(g).
    Codim { input: PathBuf },
    /// Image Milnor number with provenance.
    Mu { input: PathBuf },
    /// Every stage with cross-checks.
    Report { input: PathBuf },
    /// Run every germ in a directory against its expected-value sidecar.
    Corpus {
        dir: PathBuf,
        /// Germs computed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

impl Global {
    fn options(&self) -> Result<ReportOptions> {
        let mut opts = ReportOptions::default();
        if let Some(d) = self.max_degree {
            opts.budget.max_degree = d;
        }
        opts.timeout = self.timeout.map(Duration::from_secs);
        if let Some(p) = self.characteristic {
            opts.field = CoefficientField::prime(p)?;
        }
        opts.hs_budget = self.hs_budget;
        opts.perturb_extension = self.perturb_extension;
        opts.timings = self.timings;
        Ok(opts)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn load(path: &Path) -> Result<GermInput> {
    report::load_germ(path).with_context(|| format!("reading {}", path.display()))
}

/// Stage output: the summary object tagged with schema and stage name.
fn stage_json(stage: &str, mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), SCHEMA_VERSION.into());
        m.insert("stage".into(), stage.into());
    }
    v
}

fn table(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(m) = v {
        let w = m.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, x) in m {
            let text = match x {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k:<w$}  {text}\n"));
        }
    }
    s
}

fn run(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    let opts = g.options()?;
    let stage = |name: &str, summary: Value| -> Result<i32> {
        let v = stage_json(name, summary);
        let text = if g.pretty {
            table(&v)
        } else {
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        };
        g.emit(&text)?;
        Ok(0)
    };
    match &cli.command {
        Command::Validate { input } => stage(
            "validate",
            serde_json::to_value(report::run_validate(&load(input)?, &opts)?)?,
        ),
        Command::Image { input } => stage("image", serde_json::to_value(report::run_image(&load(input)?, &opts)?)?),
        Command::Conductor { input } => {
            let c = report::run_conductor(&load(input)?, &opts)?;
            let code = if c.identity {
                0
            } else {
                ErrorClass::IdentityFailure.exit_code()
            };
            stage("conductor", serde_json::to_value(&c)?)?;
            Ok(code)
        }
        Command::ModuleM { input } => stage(
            "module-m",
            serde_json::to_value(report::run_module_m(&load(input)?, &opts)?)?,
        ),
        Command::Codim { input } => stage("codim", serde_json::to_value(report::run_codim(&load(input)?, &opts)?)?),
        Command::Mu { input } => stage("mu", serde_json::to_value(report::run_mu(&load(input)?, &opts)?)?),
        Command::Report { input } => {
            let r = report::run_report(&load(input)?, &opts)?;
            let text = if g.pretty {
                r.to_table()
            } else {
                format!("{}\n", r.to_json())
            };
            g.emit(&text)?;
            Ok(r.exit_code())
        }
        Command::Corpus { dir, jobs } => {
            let s = report::run_corpus(dir, &opts, *jobs)?;
            let text = if g.pretty {
                s.to_table()
            } else {
                format!("{}\n", serde_json::to_string_pretty(&s)?)
            };
            g.emit(&text)?;
            Ok(s.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            // Unreadable or malformed input counts as a validation failure.
            let code = e
                .downcast_ref::<Error>()
                .map_or(ErrorClass::Validation.exit_code(), Error::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
