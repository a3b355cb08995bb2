//! `prp`: forests, Hopf algebras, arborification, signatures, sewing and
//! the Lie–Butcher integrator from the command line.

mod commands;
mod config;
mod inputs;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Config;
use inputs::{MODEL_HELP, PATH_HELP};
use report::{Failure, Inputs, Report};

#[derive(Parser, Debug)]
#[command(name = "prp", version, about = "Planar forests, arborification and planarly branched rough paths")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit the full report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// JSON configuration file; flags below override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Alphabet size.
    #[arg(long, global = true, value_name = "D")]
    alphabet: Option<usize>,
    /// Degree cap, at most the PRP_MAX_DEGREE ceiling.
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,
    /// Hölder exponent γ as a rational.
    #[arg(long, global = true)]
    gamma: Option<String>,
    /// Dyadic depth for sewing grids.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Working precision for interval arithmetic.
    #[arg(long, global = true, value_name = "BITS")]
    precision_bits: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the table (CSV) here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Algebra {
    Shuffle,
    Quasi,
    Mkw,
    Bck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Basis {
    Word,
    Planar,
    Nonplanar,
}

#[derive(Args, Debug)]
pub struct PathArgs {
    #[arg(long, help = PATH_HELP)]
    path: String,
    /// Domain start for built-in paths.
    #[arg(long, default_value = "0")]
    start: String,
    /// Domain end for built-in paths.
    #[arg(long, default_value = "1")]
    end: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or count the planar forests of degree n over d letters.
    Forests {
        n: usize,
        d: usize,
        #[arg(long)]
        count: bool,
        /// Non-planar forests instead.
        #[arg(long)]
        nonplanar: bool,
    },
    /// Planar (or hook) factorial of a forest, cross-checked against linear extensions.
    Factorial {
        forest: String,
        #[arg(long)]
        nonplanar: bool,
        /// Also estimate the inverse factorial by Monte Carlo.
        #[arg(long, value_name = "N")]
        samples: Option<u64>,
    },
    /// Coproduct (and optionally antipode) of a basis element.
    Coproduct {
        element: String,
        #[arg(long, value_enum, default_value = "mkw")]
        algebra: Algebra,
        #[arg(long)]
        antipode: bool,
    },
    /// Grossman–Larson product u ∗ v, or the iterated product of a word's letters.
    Gl {
        u: Option<String>,
        v: Option<String>,
        /// Expand •_{in} ∗ ⋯ ∗ •_{i1} for this word instead.
        #[arg(long)]
        word: Option<String>,
    },
    /// Planar, non-planar or contracting arborification of a forest.
    Arborify {
        forest: String,
        #[arg(long)]
        nonplanar: bool,
        /// Contract simultaneous letters in the free commutative semigroup.
        #[arg(long)]
        contracting: bool,
    },
    /// Symmetrization Ω of a non-planar forest.
    Omega { forest: String },
    /// Exhaustive Hopf-axiom check.
    Axioms {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long)]
        degree: usize,
    },
    /// Exact iterated integral ⟨X_st, w⟩.
    Signature {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "0")]
        s: String,
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Tabulate a lift at every pair of the given times (CSV).
    Lift {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "planar")]
        basis: Basis,
        #[arg(long)]
        degree: usize,
        /// Comma-separated rational times.
        #[arg(long)]
        times: String,
    },
    /// Exact Chen identity X_st = X_su ⋆ X_ut on every element up to a degree.
    ChenCheck {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "planar")]
        basis: Basis,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "0")]
        s: String,
        #[arg(long, default_value = "1/2")]
        u: String,
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Empirical Hölder constants against q_γ on dyadic pairs (CSV).
    Holder {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "planar")]
        basis: Basis,
        #[arg(long)]
        degree: usize,
    },
    /// Extend a degree-N truncation by one degree with the sewing map.
    Extend {
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, value_enum, default_value = "word")]
        basis: Basis,
        /// Degree of the truncated input lift.
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Base point o of the sewing germ.
        #[arg(long, default_value = "0")]
        origin: String,
    },
    /// Integrate Y' = Σ f_i(Y) dX^i with the truncated Lie–Butcher step (CSV).
    Solve {
        #[arg(long, help = MODEL_HELP)]
        model: String,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        steps: usize,
        /// Comma-separated initial point.
        #[arg(long)]
        y0: String,
    },
    /// Global error against a fine reference for several truncation degrees (CSV).
    OrderStudy {
        #[arg(long, help = MODEL_HELP)]
        model: String,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, default_value = "1,2,3")]
        degrees: String,
        #[arg(long, default_value = "8,16,32,64")]
        steps: String,
        /// Reference mesh refinement factor over the finest step count.
        #[arg(long, default_value_t = 64)]
        ratio: usize,
        #[arg(long)]
        y0: String,
        /// Fail unless every fitted slope is within this distance of N.
        #[arg(long)]
        slope_tolerance: Option<f64>,
    },
    /// Run the acceptance suite.
    Repro {
        /// Run only this criterion (1..=9).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Forests { .. } => "forests",
            Command::Factorial { .. } => "factorial",
            Command::Coproduct { .. } => "coproduct",
            Command::Gl { .. } => "gl",
            Command::Arborify { .. } => "arborify",
            Command::Omega { .. } => "omega",
            Command::Axioms { .. } => "axioms",
            Command::Signature { .. } => "signature",
            Command::Lift { .. } => "lift",
            Command::ChenCheck { .. } => "chen-check",
            Command::Holder { .. } => "holder",
            Command::Extend { .. } => "extend",
            Command::Solve { .. } => "solve",
            Command::OrderStudy { .. } => "order-study",
            Command::Repro { .. } => "repro",
        }
    }
}

fn resolve_config(g: &Global, inputs: &mut Inputs) -> Result<Config, Failure> {
    let mut cfg: Config = match &g.config {
        Some(p) => {
            let text = inputs.read(&p.to_string_lossy())?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        None => Config::default(),
    };
    if g.alphabet.is_some() {
        cfg.alphabet = g.alphabet;
    }
    if let Some(n) = g.max_degree {
        cfg.max_degree = n;
    }
    if let Some(x) = &g.gamma {
        cfg.gamma = x.clone();
    }
    if let Some(x) = g.depth {
        cfg.depth = x;
    }
    if let Some(x) = g.precision_bits {
        cfg.precision_bits = x;
    }
    if let Some(x) = g.seed {
        cfg.seed = x;
    }
    if g.output.is_some() {
        cfg.output = g.output.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let started = Instant::now();
    let mut inputs = Inputs::default();
    let cfg = resolve_config(&cli.global, &mut inputs)?;
    inputs.feed("command", format!("{:?}", cli.command).as_bytes());
    inputs.feed(
        "config",
        serde_json::to_string(&cfg).expect("config serializes").as_bytes(),
    );
    let out = commands::dispatch(&cli.command, &cfg, &mut inputs)?;
    let passed = out.checks.iter().all(|c| c.passed);
    Ok(Report {
        command: cli.command.name().into(),
        inputs_digest: inputs.finish(),
        config: cfg,
        passed,
        checks: out.checks,
        result: out.result,
        timings_ms: cli.global.timings.then(|| started.elapsed().as_secs_f64() * 1e3),
        text: out.text,
    })
}

fn emit(report: &Report, json: bool) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if json {
        serde_json::to_writer_pretty(&mut out, report)?;
        writeln!(out)?;
        return Ok(());
    }
    out.write_all(report.text.as_bytes())?;
    if !report.text.is_empty() && !report.text.ends_with('\n') {
        writeln!(out)?;
    }
    let mut err = std::io::stderr().lock();
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(err, "check {}: {status} ({})", c.name, c.witness)?;
    }
    if let Some(ms) = report.timings_ms {
        writeln!(err, "elapsed: {ms:.1} ms")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.global.json) {
                eprintln!("prp: {e}");
                return ExitCode::from(1);
            }
            report.exit_code()
        }
        Err(f) => {
            if cli.global.json {
                let v = serde_json::json!({
                    "command": cli.command.name(),
                    "error": f.kind(),
                    "message": f.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("prp: {f}");
            ExitCode::from(f.code())
        }
    }
}
