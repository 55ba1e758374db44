//! Command-line surface and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use transverse_hopf::coeff_ring::{Diffeo, MAX_CONFLUENT_DIM, MAX_DIM};
use transverse_hopf::cyclic_module::{self, CyclicCochain, HopfInstance, Parity, Verdict};
use transverse_hopf::hopf_structure::{self, TensorElement};
use transverse_hopf::jet_model::{self, JetTable};
use transverse_hopf::van_est;
use transverse_hopf::weil_complex::{self, WeilForm};
use transverse_hopf::Scalar;

use crate::parse::{self, ParseError};
use crate::report::{Report, RunConfig};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "transverse-hopf", version, about = "Exact computations in the Hopf algebra of transverse differential operators")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Dimension of the frame bundle.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: u8,
    /// Cap on cyclic degrees.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,
    /// Curvature weight at which the Weil complex is truncated (defaults to n).
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Seed of the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random cases per suite.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a generator expression.
    Normalize { expr: String },
    /// Product of two elements.
    Mul { a: String, b: String },
    /// Coproduct of an element.
    Coproduct { expr: String },
    /// Counit of an element.
    Counit { expr: String },
    /// Twisted antipode of an element.
    Antipode { expr: String },
    /// Checks the Hopf-algebroid axioms on generators and random words.
    CheckHopfAxioms {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Cyclic-module operators on the Hopf instance.
    #[command(subcommand)]
    Cyclic(CyclicOp),
    /// Checks (b + B)c = 0 for components given as `q:expr`.
    CocycleCheck {
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Truncated Weil complex.
    #[command(subcommand)]
    Weil(WeilOp),
    /// The van Est pipeline.
    #[command(subcommand)]
    Vanest(VanestOp),
    /// Coordinate model of the jet symbols.
    #[command(subcommand)]
    Jets(JetsOp),
    /// Runs every invariant suite.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum CyclicOp {
    /// δ_i: C^{q-1} → C^q.
    Face {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        q: usize,
        tensor: String,
    },
    /// σ_i: C^{q+1} → C^q.
    Degen {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        q: usize,
        tensor: String,
    },
    /// τ_q: C^q → C^q.
    Tau {
        #[arg(long)]
        q: usize,
        tensor: String,
    },
    /// Hochschild b: C^{q-1} → C^q.
    #[command(name = "b")]
    HochschildB {
        #[arg(long)]
        q: usize,
        tensor: String,
    },
    /// Horizontal boundary B: C^{q+1} → C^q.
    #[command(name = "B")]
    HorizontalB {
        #[arg(long)]
        q: usize,
        tensor: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WeilOp {
    /// Differential of a form.
    D { form: String },
    /// Whether a form is closed.
    Closed { form: String },
    /// Whether a form is basic for so(n).
    Basic { form: String },
    /// A named class: h1, gv, c<k> or chern(<k>).
    Class { name: String },
}

#[derive(Debug, Args)]
pub struct WeilSource {
    /// A Weil form, e.g. "th[1,1]*R[1,1]".
    pub form: Option<String>,
    /// A named class instead of a form.
    #[arg(long, conflicts_with = "form")]
    pub class: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum VanestOp {
    /// The form pulled back along the interpolated connection.
    Pullback {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[command(flatten)]
        source: WeilSource,
    },
    /// The pull-back integrated over the simplex.
    Integrate {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[command(flatten)]
        source: WeilSource,
    },
    /// The (p, m) group cochain.
    Cochain {
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[command(flatten)]
        source: WeilSource,
    },
    /// The cyclic cochain of a form and its cocycle verdict.
    TildeC {
        #[command(flatten)]
        source: WeilSource,
    },
    /// Compares the cochain of d(form) with (b + B) of the cochain.
    ChainCheck {
        #[command(flatten)]
        source: WeilSource,
    },
}

#[derive(Debug, Subcommand)]
pub enum JetsOp {
    /// γ as jets around a point.
    Gamma {
        #[arg(long)]
        table: PathBuf,
        /// Base point, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Frame, rows separated by ';' (defaults to the identity).
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value_t = 0)]
        order: u32,
    },
    /// Verifies the pull-back identity on sampled points.
    Verify {
        #[arg(long)]
        table: PathBuf,
    },
}

/// Errors that stop a command before a report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(String),
}

fn engine<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Engine(e.to_string())
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        let c = &self.config;
        RunConfig { n: c.n, max_degree: c.max_degree, truncation: c.truncation.unwrap_or(c.n as u32), seed: c.seed, samples: c.samples }
    }
}

fn command_name(cmd: &Command) -> String {
    let sub = |s: &str, t: &str| format!("{s} {t}");
    match cmd {
        Command::Normalize { .. } => "normalize".into(),
        Command::Mul { .. } => "mul".into(),
        Command::Coproduct { .. } => "coproduct".into(),
        Command::Counit { .. } => "counit".into(),
        Command::Antipode { .. } => "antipode".into(),
        Command::CheckHopfAxioms { .. } => "check-hopf-axioms".into(),
        Command::Cyclic(op) => sub(
            "cyclic",
            match op {
                CyclicOp::Face { .. } => "face",
                CyclicOp::Degen { .. } => "degen",
                CyclicOp::Tau { .. } => "tau",
                CyclicOp::HochschildB { .. } => "b",
                CyclicOp::HorizontalB { .. } => "B",
            },
        ),
        Command::CocycleCheck { .. } => "cocycle-check".into(),
        Command::Weil(op) => sub(
            "weil",
            match op {
                WeilOp::D { .. } => "d",
                WeilOp::Closed { .. } => "closed",
                WeilOp::Basic { .. } => "basic",
                WeilOp::Class { .. } => "class",
            },
        ),
        Command::Vanest(op) => sub(
            "vanest",
            match op {
                VanestOp::Pullback { .. } => "pullback",
                VanestOp::Integrate { .. } => "integrate",
                VanestOp::Cochain { .. } => "cochain",
                VanestOp::TildeC { .. } => "tilde-c",
                VanestOp::ChainCheck { .. } => "chain-check",
            },
        ),
        Command::Jets(op) => sub(
            "jets",
            match op {
                JetsOp::Gamma { .. } => "gamma",
                JetsOp::Verify { .. } => "verify",
            },
        ),
        Command::Selftest => "selftest".into(),
    }
}

fn check_dimension(cli: &Cli, cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.n == 0 || cfg.n > MAX_DIM {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_DIM}")));
    }
    let weil_only = matches!(cli.command, Command::Weil(_));
    if !weil_only && cfg.n > MAX_CONFLUENT_DIM {
        return Err(CliError::Usage(format!(
            "--n {} exceeds {MAX_CONFLUENT_DIM}, the largest dimension with unique normal forms of derivation words",
            cfg.n
        )));
    }
    Ok(())
}

fn weil_form(src: &WeilSource, cfg: &RunConfig) -> Result<WeilForm, CliError> {
    match (&src.form, &src.class) {
        (Some(f), None) => Ok(parse::parse_weil(f, cfg.n, cfg.truncation)?),
        (None, Some(c)) => Ok(weil_complex::class_builder(cfg.n, c).map_err(engine)?.with_cap(cfg.truncation)),
        _ => Err(CliError::Usage("give either a form or --class".into())),
    }
}

fn labels(names: &[String]) -> Vec<Diffeo> {
    names.iter().map(|s| Diffeo::named(s.trim())).collect()
}

fn record_cochain(report: &mut Report, c: &CyclicCochain<TensorElement>) {
    report.record("parity", c.parity);
    for (q, x) in &c.components {
        report.labelled_result(&format!("component {q}"), x);
    }
}

fn record_verdict(report: &mut Report, v: &Verdict<TensorElement>) {
    report.record("cocycle", v.is_cocycle());
    let witness = match v {
        Verdict::Cocycle => None,
        Verdict::NotCocycle { degree, residual } => Some(format!("(b + B)c in degree {degree}: {residual}")),
    };
    report.check("cyclic", "cocycle", 1, v.is_cocycle(), witness);
}

fn parse_frame(src: &str, n: usize) -> Result<Vec<Vec<Scalar>>, CliError> {
    let rows: Vec<Vec<Scalar>> = src.split(';').map(parse::parse_rationals).collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Usage(format!("--y must be a {n}x{n} matrix")));
    }
    Ok(rows)
}

fn cyclic_degree(cfg: &RunConfig, q: usize) -> Result<(), CliError> {
    if q > cfg.max_degree {
        return Err(CliError::Usage(format!("degree {q} exceeds --max-degree {}", cfg.max_degree)));
    }
    Ok(())
}

/// Runs one command and assembles its report.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = cli.run_config();
    check_dimension(cli, &cfg)?;
    let n = cfg.n;
    let mut report = Report::new(cfg.clone(), &command_name(&cli.command));
    match &cli.command {
        Command::Normalize { expr } => report.result(parse::parse_element(expr, n)?),
        Command::Mul { a, b } => {
            let (a, b) = (parse::parse_element(a, n)?, parse::parse_element(b, n)?);
            report.result(a.mul(&b));
        }
        Command::Coproduct { expr } => report.result(hopf_structure::coproduct(&parse::parse_element(expr, n)?)),
        Command::Counit { expr } => report.result(hopf_structure::counit(&parse::parse_element(expr, n)?)),
        Command::Antipode { expr } => report.result(hopf_structure::antipode(&parse::parse_element(expr, n)?)),
        Command::CheckHopfAxioms { max_len } => {
            report.suite(&hopf_structure::axiom_suite(n, cfg.samples, *max_len, cfg.seed));
        }
        Command::Cyclic(op) => {
            let inst = HopfInstance::new(n);
            let out = match op {
                CyclicOp::Face { i, q, tensor } => {
                    cyclic_degree(&cfg, *q)?;
                    let x = parse::parse_component(tensor, n, q.checked_sub(1).ok_or_else(|| CliError::Usage("--q must be positive".into()))?)?;
                    cyclic_module::face(&inst, *i, *q, &x).map_err(engine)?
                }
                CyclicOp::Degen { i, q, tensor } => {
                    cyclic_degree(&cfg, q + 1)?;
                    let x = parse::parse_component(tensor, n, q + 1)?;
                    cyclic_module::degeneracy(&inst, *i, *q, &x).map_err(engine)?
                }
                CyclicOp::Tau { q, tensor } => {
                    cyclic_degree(&cfg, *q)?;
                    let x = parse::parse_component(tensor, n, *q)?;
                    cyclic_module::cyclic(&inst, *q, &x).map_err(engine)?
                }
                CyclicOp::HochschildB { q, tensor } => {
                    cyclic_degree(&cfg, *q)?;
                    let x = parse::parse_component(tensor, n, q.checked_sub(1).ok_or_else(|| CliError::Usage("--q must be positive".into()))?)?;
                    cyclic_module::hochschild_b(&inst, *q, &x)
                }
                CyclicOp::HorizontalB { q, tensor } => {
                    cyclic_degree(&cfg, q + 1)?;
                    let x = parse::parse_component(tensor, n, q + 1)?;
                    cyclic_module::horizontal_b(&inst, *q, &x)
                }
            };
            report.result(out);
        }
        Command::CocycleCheck { components } => {
            let mut parsed = Vec::new();
            for c in components {
                let (q, src) = c.split_once(':').ok_or_else(|| CliError::Usage(format!("component '{c}' is not of the form q:expr")))?;
                let q: usize = q.trim().parse().map_err(|_| CliError::Usage(format!("invalid degree '{q}'")))?;
                cyclic_degree(&cfg, q)?;
                parsed.push((q, parse::parse_component(src, n, q)?));
            }
            let parity = Parity::of(parsed[0].0);
            if parsed.iter().any(|(q, _)| Parity::of(*q) != parity) {
                return Err(CliError::Usage("all components must have the same parity".into()));
            }
            let mut cochain = CyclicCochain::new(parity);
            for (q, x) in parsed {
                let prev = cochain.components.remove(&q).unwrap_or_else(|| TensorElement::zero(n, q));
                cochain = cochain.with(q, prev.add(&x));
            }
            record_cochain(&mut report, &cochain);
            record_verdict(&mut report, &cyclic_module::cocycle_check(&HopfInstance::new(n), &cochain));
        }
        Command::Weil(op) => match op {
            WeilOp::D { form } => report.result(parse::parse_weil(form, n, cfg.truncation)?.d()),
            WeilOp::Closed { form } => {
                let w = parse::parse_weil(form, n, cfg.truncation)?;
                let dw = w.d();
                report.record("closed", dw.is_zero());
                report.labelled_result("d", &dw);
                report.check("weil", "closed", 1, dw.is_zero(), (!dw.is_zero()).then(|| format!("d = {dw}")));
            }
            WeilOp::Basic { form } => {
                let w = parse::parse_weil(form, n, cfg.truncation)?;
                let basic = w.is_basic(&weil_complex::so_basis(n));
                report.record("basic", basic);
                report.check("weil", "basic for so(n)", 1, basic, (!basic).then(|| format!("{w}")));
            }
            WeilOp::Class { name } => {
                let w = weil_complex::class_builder(n, name).map_err(engine)?.with_cap(cfg.truncation);
                report.result(&w);
                report.record("closed", w.is_closed());
                report.record("basic", w.is_basic(&weil_complex::so_basis(n)));
                report.check("weil", "closed", 1, w.is_closed(), (!w.is_closed()).then(|| format!("d = {}", w.d())));
            }
        },
        Command::Vanest(op) => match op {
            VanestOp::Pullback { labels: l, source } => {
                report.result(van_est::pullback_weil(&weil_form(source, &cfg)?, &labels(l)).map_err(engine)?);
            }
            VanestOp::Integrate { labels: l, source } => {
                let f = van_est::pullback_weil(&weil_form(source, &cfg)?, &labels(l)).map_err(engine)?;
                report.result(van_est::simplex_integrate(&f));
            }
            VanestOp::Cochain { p, m, labels: l, source } => {
                report.result(van_est::group_cochain(&weil_form(source, &cfg)?, *p, *m, &labels(l)).map_err(engine)?);
            }
            VanestOp::TildeC { source } => {
                let w = weil_form(source, &cfg)?;
                let c = van_est::tilde_c(&w).map_err(engine)?;
                record_cochain(&mut report, &c);
                record_verdict(&mut report, &cyclic_module::cocycle_check(&HopfInstance::new(n), &c));
            }
            VanestOp::ChainCheck { source } => {
                let w = weil_form(source, &cfg)?;
                let r = van_est::chain_map_check(&w).map_err(engine)?;
                for (q, x) in &r.lhs.components {
                    report.labelled_result(&format!("lhs {q}"), x);
                }
                for (q, x) in &r.rhs {
                    report.labelled_result(&format!("rhs {q}"), x);
                }
                let witness = r.residuals.iter().next().map(|(q, x)| format!("degree {q}: {x}"));
                report.check("van est", "chain map", 1, r.passed(), witness);
            }
        },
        Command::Jets(op) => {
            let path = match op {
                JetsOp::Gamma { table, .. } | JetsOp::Verify { table } => table,
            };
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let table = JetTable::parse(&text).map_err(engine)?;
            if table.n() != n {
                return Err(CliError::Usage(format!("table has n={}, but --n is {n}", table.n())));
            }
            match op {
                JetsOp::Gamma { x, y, order, .. } => {
                    let nn = n as usize;
                    let x = match x {
                        Some(s) => parse::parse_rationals(s)?,
                        None => vec![Scalar::from_integer(0.into()); nn],
                    };
                    let y = match y {
                        Some(s) => parse_frame(s, nn)?,
                        None => (0..nn).map(|i| (0..nn).map(|j| Scalar::from_integer(((i == j) as i32).into())).collect()).collect(),
                    };
                    let g = jet_model::gamma_from_jets(&table, &x, &y, *order).map_err(engine)?;
                    for i in 1..=n {
                        for j in 1..=n {
                            for k in 1..=n {
                                report.labelled_result(&format!("gamma[{i};{j},{k}]"), g.get(i, j, k));
                            }
                        }
                    }
                }
                JetsOp::Verify { .. } => report.suite(&jet_model::verify_pullback_identity(&table, cfg.samples, cfg.seed)),
            }
        }
        Command::Selftest => {
            for s in selftest::selftest(&cfg) {
                report.suite(&s);
            }
        }
    }
    Ok(report)
}
