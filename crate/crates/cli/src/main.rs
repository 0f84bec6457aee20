use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use shiftalg::algebra::{parse_element, Element, ShiftVariant};
use shiftalg::audit::{self, AuditConfig, ReportFormat};
use shiftalg::cohomology::truncated_h2;
use shiftalg::error::Error;
use shiftalg::oracle::{edge_eigen_sweep, heatmap_csv, linspace, sweep_csv};

#[derive(Parser)]
#[command(name = "shiftalg", version, about = "Boundary algebra of the deformed shift: audit and utilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Claim audit.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Element arithmetic.
    #[command(subcommand)]
    Elem(ElemCommand),
    /// Truncated matrices.
    #[command(subcommand)]
    Mat(MatCommand),
    /// Eigenvalue sweeps.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// Brute-force H2 of the closed corner window.
    H2 {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Subcommand)]
enum AuditCommand {
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 5)]
    window: u32,
    /// Rational deformation parameter, p/q or decimal.
    #[arg(long, default_value = "3/10", allow_hyphen_values = true)]
    eps: String,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated claim ids.
    #[arg(long, value_delimiter = ',')]
    claims: Option<Vec<String>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: String,
    /// Exit 1 if any status differs from the expected table.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum ElemCommand {
    /// Print the canonical form of an expression.
    Eval { expr: String },
    /// Print the commutator [X, Y].
    Comm { x: String, y: String },
}

#[derive(Subcommand)]
enum MatCommand {
    /// Heatmap CSV of the N x N truncation.
    Dump {
        expr: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.3", allow_hyphen_values = true)]
        eps: String,
    },
}

#[derive(Subcommand)]
enum SpectrumCommand {
    Sweep {
        #[arg(long)]
        variant: ShiftVariant,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps_from: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps_to: f64,
        #[arg(long)]
        steps: usize,
    },
}

/// Errors that should be reported as bad input rather than tool failures.
struct Usage(String);

fn parse_expr(src: &str) -> std::result::Result<Element, Usage> {
    parse_element(src).map_err(|e| match e {
        Error::Parse { pos, token, message } => {
            Usage(format!("cannot parse {src:?}: {message} at position {pos} (token {token:?})"))
        }
        other => Usage(format!("cannot parse {src:?}: {other}")),
    })
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
    Findings(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage_err(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn run_audit(args: RunArgs) -> std::result::Result<(), Failure> {
    let format: ReportFormat = args.format.parse().map_err(usage_err)?;
    let cfg = AuditConfig {
        window: args.window,
        eps: audit::parse_rational(&args.eps).map_err(usage_err)?,
        n: args.n,
        seed: args.seed,
        claims: args.claims,
    };
    cfg.validate().map_err(usage_err)?;
    let reports = audit::run_audit(&cfg).context("audit run")?;
    let doc = audit::render_report(&reports, &cfg, format);
    match &args.out {
        Some(path) => fs::write(path, &doc).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{doc}"),
    }
    let crashed: Vec<&str> = reports
        .iter()
        .filter(|r| r.witness.get("panic").is_some() || r.witness.get("error").is_some())
        .map(|r| r.id.as_str())
        .collect();
    if !crashed.is_empty() {
        return Err(Failure::Runtime(anyhow::anyhow!("checks crashed: {}", crashed.join(", "))));
    }
    if args.strict {
        let unexpected = audit::unexpected_statuses(&reports);
        if !unexpected.is_empty() {
            let lines: Vec<String> =
                unexpected.iter().map(|(id, want, got)| format!("{id}: expected {want}, got {got}")).collect();
            return Err(Failure::Findings(lines.join("\n")));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Audit(AuditCommand::Run(args)) => run_audit(args),
        Command::Elem(ElemCommand::Eval { expr }) => {
            println!("{}", parse_expr(&expr)?);
            Ok(())
        }
        Command::Elem(ElemCommand::Comm { x, y }) => {
            let (x, y) = (parse_expr(&x)?, parse_expr(&y)?);
            println!("{}", x.commutator(&y));
            Ok(())
        }
        Command::Mat(MatCommand::Dump { expr, n, eps }) => {
            let x = parse_expr(&expr)?;
            let eps = audit::parse_rational(&eps).map_err(usage_err)?;
            print!("{}", heatmap_csv(&x, n, eps.to_complex()).map_err(usage_err)?);
            Ok(())
        }
        Command::Spectrum(SpectrumCommand::Sweep { variant, n, eps_from, eps_to, steps }) => {
            if steps == 0 {
                return Err(Failure::Usage("--steps must be positive".into()));
            }
            let rows = edge_eigen_sweep(&linspace(eps_from, eps_to, steps), n, variant).map_err(usage_err)?;
            print!("{}", sweep_csv(&rows));
            Ok(())
        }
        Command::H2 { m } => {
            let report = truncated_h2(m).map_err(usage_err)?;
            println!("{}", serde_json::to_string_pretty(&report).context("serializing report")?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Findings(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
