use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hecke_core::params::derive_params;
use hecke_core::scalars::{find_prime_field, Field, FieldKind, FieldSpec, Order, Scalars, WithScalars};
use hecke_workbench::config::{parse_checks, CapsPatch, ConfigError, Expect, FamilyChoice, ScenarioConfig, VariantChoice};
use hecke_workbench::dump::{DumpJob, GbJob, Preset};
use hecke_workbench::{pres, run, Scenario};
use serde_json::json;

const CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact checks for cyclotomic Hecke and quiver Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derived parameters p', eta, omega for (e, p, d).
    Params(ScenarioArgs),
    /// The prime field chosen for (e, p).
    Fields(ScenarioArgs),
    /// Complete a presentation and report its dimension.
    Gb(GbArgs),
    /// Dimensions and graded dimensions of the presentations of a scenario.
    Dims(ScenarioArgs),
    /// Run one check suite, or all of them.
    Verify(VerifyArgs),
    /// Write left multiplication matrices as CSV.
    DumpMatrices(DumpArgs),
    /// Run a scenario from a TOML file and flags.
    Run(RunArgs),
}

#[derive(Args, Clone, Default)]
struct ScenarioArgs {
    /// Quantum characteristic: an integer >= 2 or `inf`.
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    /// Weight on K as `i,j,value;i,j,value`.
    #[arg(long)]
    lambda: Option<String>,
    /// Explicit prime field; needs --q and --zeta.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    zeta: Option<i64>,
    /// Smallest prime the automatic field search considers.
    #[arg(long)]
    min_prime: Option<u64>,
    #[arg(long, value_enum)]
    family: Option<FamilyChoice>,
    #[arg(long, value_enum)]
    variant: Option<VariantChoice>,
    /// Cap overrides, `max_rules=..,max_degree=..,max_steps=..,max_basis=..`.
    #[arg(long)]
    caps: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Check id whose failure is expected (repeatable).
    #[arg(long = "expect-fail")]
    expect_fail: Vec<String>,
}

#[derive(Args)]
struct GbArgs {
    #[arg(long, value_enum, default_value = "ariki-koike")]
    preset: Preset,
    /// Read the presentation from a `.pres` file instead of a preset.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the rewrite rules, one per line.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Write the presentation in `.pres` format.
    #[arg(long)]
    emit_pres: Option<PathBuf>,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// bk, shift, grpn, morita, appendix, independence, dims, grading, params or all.
    what: String,
    #[command(flatten)]
    out: OutputArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// `all` or a comma separated list of suites.
    #[arg(long)]
    checks: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent suites.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Leave timings out of the report.
    #[arg(long)]
    no_timings: bool,
    /// Print one line per check instead of JSON.
    #[arg(long)]
    text: bool,
}

impl ScenarioArgs {
    fn to_config(&self) -> Result<ScenarioConfig, ConfigError> {
        let e = match &self.e {
            None => None,
            Some(s) if s == "inf" => Some(Order::Infinite),
            Some(s) => Some(Order::Finite(
                s.parse().map_err(|_| ConfigError::new("e", format!("expected an integer or inf, got '{s}'")))?,
            )),
        };
        let lambda = match &self.lambda {
            None => None,
            Some(s) => Some(parse_lambda(s)?),
        };
        let field = match (self.modulus, self.q, self.zeta) {
            (None, None, None) => None,
            (Some(modulus), Some(q), Some(zeta)) => Some(FieldSpec {
                kind: FieldKind::Prime { modulus },
                q,
                zeta,
                e: e.ok_or_else(|| ConfigError::new("e", "missing"))?,
                p: self.p.ok_or_else(|| ConfigError::new("p", "missing"))?,
            }),
            _ => return Err(ConfigError::new("field", "--modulus, --q and --zeta go together")),
        };
        let caps = self.caps.as_deref().map(str::parse::<CapsPatch>).transpose()?;
        Ok(ScenarioConfig {
            e,
            p: self.p,
            d: self.d,
            n: self.n,
            lambda,
            field,
            min_prime: self.min_prime,
            family: self.family,
            variant: self.variant,
            caps,
            checks: None,
            seed: self.seed,
            expect: self.expect_fail.iter().map(|id| (id.clone(), Expect::Fail)).collect(),
        })
    }

    fn resolve(&self) -> Result<Scenario, ConfigError> {
        self.to_config()?.resolve(std::env::var("WORKBENCH_CAPS").ok().as_deref())
    }
}

fn parse_lambda(s: &str) -> Result<Vec<(i64, u32, u64)>, ConfigError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            let bad = || ConfigError::new("lambda", format!("expected i,j,value, got '{t}'"));
            if parts.len() != 3 {
                return Err(bad());
            }
            Ok((
                parts[0].parse().map_err(|_| bad())?,
                parts[1].parse().map_err(|_| bad())?,
                parts[2].parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if let Some(c) = err.downcast_ref::<ConfigError>() {
                eprintln!("{c}");
                ExitCode::from(CONFIG_ERROR)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        }
    }
}

/// Write to stdout; a reader that went away early is not an error.
fn write_stdout(text: &str) -> anyhow::Result<()> {
    let mut lock = std::io::stdout().lock();
    match lock.write_all(text.as_bytes()).and_then(|_| lock.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    write_stdout(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn dispatch(cmd: Cmd) -> anyhow::Result<u8> {
    match cmd {
        Cmd::Params(a) => {
            let sc = a.resolve()?;
            struct P(u64);
            impl WithScalars for P {
                type Output = hecke_core::Result<hecke_core::params::Params>;
                fn run<F: Field + 'static>(self, s: Scalars<F>) -> Self::Output {
                    derive_params(&s, self.0)
                }
            }
            let params = sc
                .field
                .dispatch(P(sc.d))?
                .map_err(|e| ConfigError::new("params", e.to_string()))?;
            print_json(&params)?;
            Ok(0)
        }
        Cmd::Fields(a) => {
            let e = a.to_config()?.e.ok_or_else(|| ConfigError::new("e", "missing"))?;
            let p = a.p.ok_or_else(|| ConfigError::new("p", "missing"))?;
            let spec = match e {
                Order::Infinite => FieldSpec::rationals(p),
                Order::Finite(ev) => find_prime_field(ev, p, a.min_prime.unwrap_or(2)),
            }
            .map_err(|err| ConfigError::new("field", err.to_string()))?;
            print_json(&spec)?;
            Ok(0)
        }
        Cmd::Gb(a) => {
            let text = a
                .input
                .as_ref()
                .map(|p| fs::read_to_string(p).with_context(|| format!("reading {}", p.display())))
                .transpose()?;
            let (sc, spec) = match &text {
                Some(t) => {
                    let spec = pres::read_field(t)?;
                    let mut cfg = a.scenario.to_config()?;
                    cfg.e = Some(spec.e);
                    cfg.p = Some(spec.p);
                    cfg.field = Some(spec.clone());
                    (cfg.resolve(std::env::var("WORKBENCH_CAPS").ok().as_deref())?, spec)
                }
                None => {
                    let sc = a.scenario.resolve()?;
                    let spec = sc.field.clone();
                    (sc, spec)
                }
            };
            let res = spec.dispatch(GbJob {
                sc: &sc,
                preset: a.preset,
                input: text.as_deref(),
            })??;
            if let Some(path) = &a.dump {
                let mut body = res.rules.join("\n");
                body.push('\n');
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = &a.emit_pres {
                fs::write(path, &res.pres_text).with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&res.summary)?;
            Ok(0)
        }
        Cmd::Dims(a) => {
            let sc = a.resolve()?;
            let mut out = serde_json::Map::new();
            for preset in [Preset::ArikiKoike, Preset::QuiverHecke, Preset::QuiverHeckeFixed] {
                let res = sc.field.dispatch(GbJob {
                    sc: &sc,
                    preset,
                    input: None,
                })??;
                let key = serde_json::to_value(preset)?.as_str().unwrap_or_default().to_string();
                out.insert(key, serde_json::to_value(&res.summary)?);
            }
            print_json(&out)?;
            Ok(0)
        }
        Cmd::Verify(a) => {
            let checks = parse_checks(&a.what)?;
            let sc = a.scenario.resolve()?.with_checks(&checks);
            emit(&sc, &a.out)
        }
        Cmd::DumpMatrices(a) => {
            let sc = a.scenario.resolve()?;
            let index = sc.field.dispatch(DumpJob { sc: &sc, dir: a.out.clone() })??;
            print_json(&json!({
                "dimension": index.dimension,
                "out": a.out.display().to_string(),
                "files": index.generators.len() + index.jucys_murphy.len() + index.idempotents.len(),
            }))?;
            Ok(0)
        }
        Cmd::Run(a) => {
            let mut cfg = match &a.config {
                Some(path) => ScenarioConfig::from_toml(
                    &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
                )?,
                None => ScenarioConfig::default(),
            };
            cfg = cfg.overlay(a.scenario.to_config()?);
            if let Some(c) = &a.checks {
                cfg.checks = Some(parse_checks(c)?);
            }
            let sc = cfg.resolve(std::env::var("WORKBENCH_CAPS").ok().as_deref())?;
            emit(&sc, &a.out)
        }
    }
}

fn emit(sc: &Scenario, out: &OutputArgs) -> anyhow::Result<u8> {
    let report = run(sc, out.jobs)?;
    let body = if out.text { report.text() } else { report.json(!out.no_timings) + "\n" };
    match &out.out {
        Some(path) => {
            fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            eprint!("{}", report.text());
        }
        None => write_stdout(&body)?,
    }
    Ok(report.exit_code() as u8)
}
