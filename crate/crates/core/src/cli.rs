//! Command-line front end. All arithmetic happens in the library; this layer
//! parses arguments, converts degrees when asked, formats output, and maps
//! failures onto the documented exit codes:
//!
//! 0 success (certify: all pairs independent) · 2 bad arguments or domain
//! error · 3 certify found forced dependence · 4 output path not writable.
//!
//! Numbers are printed with 6 decimals in text and 17 significant digits
//! (`{:.16e}`) in CSV and JSON, so machine formats round-trip exactly.

use std::f64::consts::{LN_2, PI};
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::independence::{
    certify_ensemble, is_independent, search_independent_configurations, DependenceReport,
    Ensemble, Verdict, DEFAULT_FLOW_TOLERANCE,
};
use crate::information::info_report;
use crate::measurement::{
    born_joint_distribution, closed_form_distribution, correlation, max_component_deviation,
};
use crate::operator::{BellKind, BipartiteState, GateAngles};
use crate::Result;

#[derive(Parser)]
#[command(
    name = "bellflow",
    version,
    about = "Joint measurement statistics and information flow for gate pairs on Bell states",
    after_help = "Angles are radians unless --degrees is given. Exit codes: \
                  0 ok, 2 bad arguments, 3 dependence forced (certify), 4 unwritable output."
)]
struct Cli {
    /// Interpret every angle argument (including --grid-step) as degrees
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Joint outcome distribution of one gate pair
    Dist(DistArgs),
    /// Entropy, information flow, and degree of dependence of one gate pair
    Info(InfoArgs),
    /// Certify pairwise independence of a polar-angle ensemble
    Certify(CertifyArgs),
    /// Tabulate a full (mu, nu) grid to CSV or JSON
    Sweep(SweepArgs),
    /// Exhaustive grid search for pairwise-independent configurations
    Search(SearchArgs),
}

#[derive(clap::Args)]
struct DistArgs {
    /// Polar angle of the first gate, in [0, pi]
    #[arg(long)]
    mu: f64,
    /// Polar angle of the second gate, in [0, pi]
    #[arg(long)]
    nu: f64,
    /// Bell state selector: 0 (triplet-type) or 1 (singlet)
    #[arg(long)]
    s: u8,
    /// Azimuth of the first gate, used by the --oracle route
    #[arg(long, default_value_t = 0.0, requires = "oracle")]
    eta: f64,
    /// Azimuth of the second gate, used by the --oracle route
    #[arg(long, default_value_t = 0.0, requires = "oracle")]
    zeta: f64,
    /// Also evaluate the Born-rule oracle and print the deviation
    #[arg(long)]
    oracle: bool,
}

#[derive(clap::Args)]
struct InfoArgs {
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    s: u8,
    /// Display entropy and flow in bits instead of nats (display only)
    #[arg(long)]
    log2: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct CertifyArgs {
    /// Comma-separated polar angles, at least two
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    angles: Vec<f64>,
    #[arg(long)]
    s: u8,
    /// Independence tolerance on information flow, in nats
    #[arg(long, default_value_t = DEFAULT_FLOW_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long)]
    s: u8,
    /// Grid points per axis over [0, pi]; at least 2
    #[arg(long)]
    steps: usize,
    /// Output file path
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Tuple size
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: u8,
    /// Grid step; must divide pi
    #[arg(long, default_value_t = PI / 32.0)]
    grid_step: f64,
}

enum CommandError {
    Domain(Error),
    Output { path: PathBuf, source: io::Error },
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

/// Parse std::env::args and execute; returns the process exit code.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; help/version exit 0, usage errors 2
            let _ = e.print();
            return ExitCode::from(if e.exit_code() == 0 { 0 } else { 2 });
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CommandError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CommandError::Output { path, source }) => {
            eprintln!("error: cannot write {}: {source}", path.display());
            ExitCode::from(4)
        }
    }
}

fn dispatch(cli: Cli) -> std::result::Result<ExitCode, CommandError> {
    let convert = |angle: f64| if cli.degrees { angle.to_radians() } else { angle };
    match cli.command {
        Command::Dist(args) => cmd_dist(args, convert),
        Command::Info(args) => cmd_info(args, convert),
        Command::Certify(args) => cmd_certify(args, convert),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Search(args) => cmd_search(args, convert),
    }
}

fn cmd_dist(
    args: DistArgs,
    convert: impl Fn(f64) -> f64,
) -> std::result::Result<ExitCode, CommandError> {
    let (mu, nu) = (convert(args.mu), convert(args.nu));
    let kind = BellKind::from_index(args.s)?;
    let closed = closed_form_distribution(mu, nu, kind)?;
    let xi = closed.xi();
    println!("s = {}   mu = {mu:.6}   nu = {nu:.6}", kind.index());
    let outcomes = ["(+1,+1)", "(+1,-1)", "(-1,+1)", "(-1,-1)"];
    for (k, (p, outcome)) in xi.iter().zip(outcomes).enumerate() {
        println!("xi{} {outcome} = {p:.6}", k + 1);
    }
    println!("theta = {:.6}", xi[0]);
    println!("correlation = {:.6}", correlation(&closed));
    if args.oracle {
        let (eta, zeta) = (convert(args.eta), convert(args.zeta));
        let born = born_joint_distribution(
            &BipartiteState::bell(kind),
            GateAngles::new(mu, eta)?,
            GateAngles::new(nu, zeta)?,
        )?;
        let oracle_xi = born.xi();
        println!("oracle eta = {eta:.6}   zeta = {zeta:.6}");
        println!(
            "oracle xi = {:.6} {:.6} {:.6} {:.6}",
            oracle_xi[0], oracle_xi[1], oracle_xi[2], oracle_xi[3]
        );
        println!(
            "max |closed-form - oracle| = {:.3e}",
            max_component_deviation(&closed, &born)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_info(
    args: InfoArgs,
    convert: impl Fn(f64) -> f64,
) -> std::result::Result<ExitCode, CommandError> {
    let (mu, nu) = (convert(args.mu), convert(args.nu));
    let kind = BellKind::from_index(args.s)?;
    let report = info_report(mu, nu, kind)?;
    let (scale, unit) = if args.log2 { (LN_2, "bits") } else { (1.0, "nats") };
    println!("s = {}   mu = {mu:.6}   nu = {nu:.6}", kind.index());
    println!("theta = {:.6}", report.theta.value());
    println!("entropy = {:.6} {unit}", report.entropy / scale);
    println!("flow = {:.6} {unit}", report.flow / scale);
    println!("degree = {:.6}", report.degree);
    println!("class = {}", report.class);
    Ok(ExitCode::SUCCESS)
}

fn print_certify_text(report: &DependenceReport) {
    println!(
        "s = {}   tolerance = {:.3e} nats   n = {}",
        report.s.index(),
        report.tolerance,
        report.angles.len()
    );
    let angles: Vec<String> = report.angles.iter().map(|a| format!("{a:.6}")).collect();
    println!("angles: {}", angles.join(" "));
    println!("flow matrix (nats):");
    for row in &report.flow_matrix {
        let cells: Vec<String> = row.iter().map(|f| format!("{f:.6}")).collect();
        println!("  {}", cells.join(" "));
    }
    if report.independent_pairs.is_empty() {
        println!("independent pairs: none");
    } else {
        let pairs: Vec<String> = report
            .independent_pairs
            .iter()
            .map(|[i, j]| format!("({i},{j})"))
            .collect();
        println!("independent pairs: {}", pairs.join(" "));
    }
    if report.dependent_pairs.is_empty() {
        println!("dependent pairs: none");
    } else {
        let pairs: Vec<String> = report
            .dependent_pairs
            .iter()
            .map(|p| format!("({},{}) flow = {:.6}", p.i, p.j, p.flow))
            .collect();
        println!("dependent pairs: {}", pairs.join(" "));
    }
    if let Some(witness) = report.min_positive_flow {
        println!(
            "weakest dependent pair: ({},{}) flow = {:.6}",
            witness.i, witness.j, witness.flow
        );
    }
    if let Some(note) = &report.locus_note {
        println!("note: {note}");
    }
    println!("verdict: {}", verdict_name(report.verdict));
}

fn verdict_name(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::AllPairsIndependent => "all_pairs_independent",
        Verdict::DependenceForced => "dependence_forced",
    }
}

fn cmd_certify(
    args: CertifyArgs,
    convert: impl Fn(f64) -> f64,
) -> std::result::Result<ExitCode, CommandError> {
    let kind = BellKind::from_index(args.s)?;
    let angles: Vec<f64> = args.angles.iter().map(|&a| convert(a)).collect();
    let ensemble = Ensemble::new(angles, kind)?;
    let report = certify_ensemble(&ensemble, args.tol);
    match args.format {
        ReportFormat::Text => print_certify_text(&report),
        ReportFormat::Json => println!("{}", to_sci_json(&report)),
    }
    Ok(match report.verdict {
        Verdict::AllPairsIndependent => ExitCode::SUCCESS,
        Verdict::DependenceForced => ExitCode::from(3),
    })
}

fn cmd_sweep(args: SweepArgs) -> std::result::Result<ExitCode, CommandError> {
    let kind = BellKind::from_index(args.s)?;
    let rows = sweep_rows(kind, args.steps)?;
    let body = match args.format {
        TableFormat::Csv => render_csv(&rows),
        TableFormat::Json => {
            let mut json = to_sci_json(&rows);
            json.push('\n');
            json
        }
    };
    std::fs::write(&args.out, body).map_err(|source| CommandError::Output {
        path: args.out.clone(),
        source,
    })?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(
    args: SearchArgs,
    convert: impl Fn(f64) -> f64,
) -> std::result::Result<ExitCode, CommandError> {
    let kind = BellKind::from_index(args.s)?;
    let grid_step = convert(args.grid_step);
    let configs = search_independent_configurations(args.n, kind, grid_step)?;
    println!(
        "search: n = {}, s = {}, grid step = {grid_step:.6}",
        args.n,
        kind.index()
    );
    println!(
        "found {} pairwise-independent configuration{} (flow tolerance {:.0e} nats)",
        configs.len(),
        if configs.len() == 1 { "" } else { "s" },
        DEFAULT_FLOW_TOLERANCE
    );
    for config in &configs {
        let angles: Vec<String> = config.angles.iter().map(|a| format!("{a:.6}")).collect();
        let tag = if config.uses_extra_branch {
            "  [derived extra branch]"
        } else {
            ""
        };
        println!("  ({}){tag}", angles.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

/// Fixed CSV column order; JSON records use the same snake_case names.
pub const CSV_HEADER: &str = "mu,nu,s,xi1,xi2,xi3,xi4,theta,entropy,flow,degree,independent";

/// One sweep grid point. Fields mirror the CSV columns exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub mu: f64,
    pub nu: f64,
    pub s: BellKind,
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub xi4: f64,
    pub theta: f64,
    pub entropy: f64,
    pub flow: f64,
    pub degree: f64,
    pub independent: bool,
}

impl SweepRow {
    pub fn compute(mu: f64, nu: f64, kind: BellKind) -> Result<Self> {
        let xi = closed_form_distribution(mu, nu, kind)?.xi();
        let report = info_report(mu, nu, kind)?;
        Ok(Self {
            mu,
            nu,
            s: kind,
            xi1: xi[0],
            xi2: xi[1],
            xi3: xi[2],
            xi4: xi[3],
            theta: report.theta.value(),
            entropy: report.entropy,
            flow: report.flow,
            degree: report.degree,
            independent: is_independent(mu, nu, kind, DEFAULT_FLOW_TOLERANCE)?,
        })
    }

    /// Re-derive every field from (mu, nu, s) and compare; guards emission.
    pub fn validate(&self) -> Result<()> {
        let fresh = Self::compute(self.mu, self.nu, self.s)?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
        let consistent = close(self.xi1, fresh.xi1)
            && close(self.xi2, fresh.xi2)
            && close(self.xi3, fresh.xi3)
            && close(self.xi4, fresh.xi4)
            && close(self.theta, fresh.theta)
            && close(self.entropy, fresh.entropy)
            && close(self.flow, fresh.flow)
            && close(self.degree, fresh.degree)
            && self.independent == fresh.independent;
        if consistent {
            Ok(())
        } else {
            Err(Error::InvalidDistribution {
                xi: [self.xi1, self.xi2, self.xi3, self.xi4],
                reason: format!(
                    "sweep row at (mu, nu, s) = ({}, {}, {}) is not self-consistent",
                    self.mu,
                    self.nu,
                    self.s.index()
                ),
            })
        }
    }
}

/// Row-major grid (μ outer, ν inner) of `steps` points per axis over [0, π];
/// every row is re-validated before being returned.
pub fn sweep_rows(kind: BellKind, steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::TooFewSteps(steps));
    }
    let step = PI / (steps - 1) as f64;
    let angle = |k: usize| (k as f64 * step).min(PI);
    let mut rows = Vec::with_capacity(steps * steps);
    for i in 0..steps {
        for j in 0..steps {
            let row = SweepRow::compute(angle(i), angle(j), kind)?;
            row.validate()?;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Render rows as CSV with the fixed header; floats carry 17 significant
/// digits so parsing them back reproduces the exact f64.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.mu,
            r.nu,
            r.s.index(),
            r.xi1,
            r.xi2,
            r.xi3,
            r.xi4,
            r.theta,
            r.entropy,
            r.flow,
            r.degree,
            r.independent
        ));
    }
    out
}

struct SciFormatter;

// 17 significant digits: the shortest width that always round-trips f64.
impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to JSON with all floats in `{:.16e}` scientific notation, so a
/// parse → re-emit cycle is byte-identical.
pub fn to_sci_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
