//! Command-line driver shared by the `isozeta` binary and tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tracing::{debug, info};

use crate::arith::IntPolynomial;
use crate::error::{Error, Result};
use crate::field::{prime, FieldTower};
use crate::graph::{brandt_matrix, build_vertices, check_level, export_graph, ihara_zeta};
use crate::graph::{ExportFormat, LevelGraph};
use crate::modsym::ManinSpace;
use crate::verify::{check_parameters, hasse_weil_from, VerificationJob, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "isozeta", version, about = "Supersingular isogeny graphs and the zeta functions of X₀(N)")]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized root finding.
    #[arg(long, global = true, env = "ISOZETA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Structured JSON logs on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build X_p^q(N) and export it.
    Graph {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The Brandt matrix B_ℓ on the vertices for (q, N).
    Brandt {
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Ihara zeta of the graph and Hasse–Weil zeta of X₀(qN), X₀(N).
    Zeta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Characteristic polynomial of T_ℓ on the plus part of S₂(Γ₀(M)).
    Hecke {
        /// Level M; defaults to qN.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check every identity for (p, q, N).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        /// Primes for the Hecke-module comparison (default 2, 3, 5, 7 prime to qN).
        #[arg(long, value_delimiter = ',')]
        ell: Option<Vec<u64>>,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Run `verify` for every tuple in a JSON manifest.
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
}

/// A sweep manifest: explicit tuples and/or a grid whose product is filtered
/// to valid triples.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SweepManifest {
    #[serde(default)]
    pub jobs: Vec<Triple>,
    #[serde(default)]
    pub grid: Option<Grid>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Grid {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
}

impl SweepManifest {
    pub fn triples(&self) -> Result<Vec<Triple>> {
        for t in &self.jobs {
            check_parameters(t.p, t.q, t.n)?;
        }
        let mut out = self.jobs.clone();
        if let Some(g) = &self.grid {
            for &p in &g.p {
                for &q in &g.q {
                    for &n in &g.n {
                        if check_parameters(p, q, n).is_ok() {
                            out.push(Triple { p, q, n });
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn check_ell(l: u64, modulus: u64) -> Result<()> {
    if !prime::is_prime(l) || modulus.is_multiple_of(l) {
        return Err(usage(format!("ell = {l} must be a prime not dividing {modulus}")));
    }
    Ok(())
}

/// All parameter checks for a command; runs before any field is built.
pub fn validate(command: &Command) -> Result<()> {
    match command {
        Command::Graph { p, q, n, .. } => check_parameters(*p, *q, *n),
        Command::Brandt { q, n, ell, output } => {
            check_level(*q, *n)?;
            check_ell(*ell, q * n)?;
            match output.format {
                Format::Dot => Err(usage("brandt supports json, csv and text")),
                _ => Ok(()),
            }
        }
        Command::Zeta { p, q, n, output } | Command::Verify { p, q, n, output, .. } => {
            check_parameters(*p, *q, *n)?;
            if let Command::Verify { ell: Some(ls), .. } = command {
                for &l in ls {
                    check_ell(l, q * n)?;
                }
            }
            match output.format {
                Format::Json | Format::Text => Ok(()),
                _ => Err(usage("only json and text output are available here")),
            }
        }
        Command::Hecke { level, q, n, ell, output } => {
            let m = match (level, q) {
                (Some(m), _) => *m,
                (None, Some(q)) => q * n,
                (None, None) => return Err(usage("hecke needs --level or --q")),
            };
            if m == 0 {
                return Err(usage("level must be positive"));
            }
            check_ell(*ell, m)?;
            match output.format {
                Format::Json | Format::Text => Ok(()),
                _ => Err(usage("only json and text output are available here")),
            }
        }
        Command::Sweep { output, .. } => match output.format {
            Format::Json | Format::Text => Ok(()),
            _ => Err(usage("only json and text output are available here")),
        },
    }
}

/// Output bytes and the exit status they imply.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub status: i32,
}

fn report_status(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(VerificationReport::has_internal_error) {
        EXIT_INTERNAL
    } else if reports.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s.into_bytes())
}

/// Executes an already validated command.
pub fn execute(command: &Command, seed: u64) -> Result<Outcome> {
    let ok = |bytes| Ok(Outcome { bytes, status: EXIT_PASS });
    match command {
        Command::Graph { p, q, n, output } => {
            let tower = FieldTower::new(*q, seed)?;
            let g = LevelGraph::build(&tower, *p, *n)?;
            info!(vertices = g.vertices.len(), "graph built");
            let manifest = g.manifest(&tower);
            let bytes = match output.format {
                Format::Json => export_graph(&g, &manifest, ExportFormat::Json)?,
                Format::Dot => export_graph(&g, &manifest, ExportFormat::Dot)?,
                Format::Csv => export_graph(&g, &manifest, ExportFormat::Csv)?,
                Format::Text => graph_text(&g).into_bytes(),
            };
            ok(bytes)
        }
        Command::Brandt { q, n, ell, output } => {
            let tower = FieldTower::new(*q, seed)?;
            let vertices = build_vertices(&tower, *n)?;
            let b = brandt_matrix(&tower, &vertices, *ell)?;
            let bytes = match output.format {
                Format::Json => json_bytes(&serde_json::json!({
                    "schema": 1,
                    "q": q,
                    "N": n,
                    "ell": ell,
                    "matrix": b,
                }))?,
                _ => {
                    let g = LevelGraph { q: *q, p: *ell, n: *n, vertices, brandt: b };
                    let manifest = g.manifest(&tower);
                    export_graph(&g, &manifest, ExportFormat::Csv)?
                }
            };
            ok(bytes)
        }
        Command::Zeta { p, q, n, output } => {
            let tower = FieldTower::new(*q, seed)?;
            let (graph, spaces) = rayon::join(
                || LevelGraph::build(&tower, *p, *n),
                || -> Result<_> { Ok((ManinSpace::new(q * n)?, ManinSpace::new(*n)?)) },
            );
            let (graph, (at_qn, at_n)) = (graph?, spaces?);
            let ihara = ihara_zeta(&graph)?;
            let w_qn = hasse_weil_from(&at_qn, *p)?;
            let w_n = hasse_weil_from(&at_n, *p)?;
            let bytes = match output.format {
                Format::Text => format!(
                    "Z(X_{p}^{q}({n}), S) = (1 - S^2)^({}/2) / ({})\nW(X_0({}), S) = {}\nW(X_0({n}), S) = {}\n",
                    ihara.euler_char_times_2,
                    ihara.denominator.display_with("S"),
                    q * n,
                    w_qn.value.display_with("S"),
                    w_n.value.display_with("S"),
                )
                .into_bytes(),
                _ => json_bytes(&serde_json::json!({
                    "schema": 1,
                    "p": p,
                    "q": q,
                    "N": n,
                    "ihara": ihara,
                    "hasse_weil_qN": w_qn,
                    "hasse_weil_N": w_n,
                }))?,
            };
            ok(bytes)
        }
        Command::Hecke { level, q, n, ell, output } => {
            let m = level.unwrap_or_else(|| q.expect("validated") * n);
            let space = ManinSpace::new(m)?;
            space.check_dimension()?;
            let chi = space.hecke_charpoly(*ell)?;
            let bytes = match output.format {
                Format::Text => format!("T_{ell} on S_2(Γ₀({m}))+ : {chi}\n").into_bytes(),
                _ => json_bytes(&serde_json::json!({
                    "level": m,
                    "ell": ell,
                    "charpoly": poly_strings(&chi),
                }))?,
            };
            ok(bytes)
        }
        Command::Verify { p, q, n, ell, timings, output } => {
            let mut job = VerificationJob::new(*p, *q, *n, seed)?;
            if let Some(ls) = ell {
                job = job.with_hecke_primes(ls.clone())?;
            }
            job.record_timings = *timings;
            let report = job.run();
            debug!(passed = report.passed, "verification finished");
            let status = report_status(std::slice::from_ref(&report));
            let bytes = match output.format {
                Format::Text => report.to_text().into_bytes(),
                _ => report.to_json().into_bytes(),
            };
            Ok(Outcome { bytes, status })
        }
        Command::Sweep { manifest, timings, output } => {
            let text = std::fs::read_to_string(manifest)?;
            let manifest: SweepManifest = serde_json::from_str(&text)?;
            let triples = manifest.triples()?;
            info!(jobs = triples.len(), "sweep");
            let reports: Vec<VerificationReport> = triples
                .par_iter()
                .map(|t| -> Result<VerificationReport> {
                    let mut job = VerificationJob::new(t.p, t.q, t.n, seed)?;
                    job.record_timings = *timings;
                    let r = job.run();
                    debug!(p = t.p, q = t.q, N = t.n, passed = r.passed, "job finished");
                    Ok(r)
                })
                .collect::<Result<_>>()?;
            let status = report_status(&reports);
            let bytes = match output.format {
                Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n").into_bytes(),
                _ => json_bytes(&reports)?,
            };
            Ok(Outcome { bytes, status })
        }
    }
}

fn graph_text(g: &LevelGraph) -> String {
    let mut out = format!("X_{}^{}({}): {} vertices\n", g.p, g.q, g.n, g.vertices.len());
    for v in &g.vertices {
        out.push_str(&format!("  {}: j = {}, C = {}\n", v.index, v.key.j, kernel_text(&v.key.kernel)));
    }
    out.push_str("Brandt matrix:\n");
    for i in 0..g.brandt.rows() {
        let row: Vec<String> = (0..g.brandt.cols()).map(|j| g.brandt.get(i, j).to_string()).collect();
        out.push_str(&format!("  {}\n", row.join(" ")));
    }
    out.push_str(&format!("2χ = {}\n", g.euler_char_times_2()));
    out
}

fn kernel_text(k: &crate::field::FieldPoly) -> String {
    let coeffs: Vec<String> = k.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", coeffs.join(", "))
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Graph { output, .. }
        | Command::Brandt { output, .. }
        | Command::Zeta { output, .. }
        | Command::Hecke { output, .. }
        | Command::Verify { output, .. }
        | Command::Sweep { output, .. } => output,
    }
}

fn usage_message(e: &Error) -> String {
    match e {
        Error::Precondition(msg) => msg.clone(),
        other => other.to_string(),
    }
}

fn init_logging(verbose: bool) {
    let builder = tracing_subscriber::fmt().with_writer(std::io::stderr);
    let _ = if verbose {
        builder.json().with_max_level(tracing::Level::DEBUG).try_init()
    } else {
        builder.with_max_level(tracing::Level::WARN).try_init()
    };
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    init_logging(cli.verbose);
    if let Err(e) = validate(&cli.command) {
        eprintln!("error: {}", usage_message(&e));
        return EXIT_USAGE;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let outcome = pool.install(|| execute(&cli.command, cli.seed));
    match outcome {
        Ok(Outcome { bytes, status }) => {
            let written = match &output_of(&cli.command).out {
                Some(path) => std::fs::write(path, &bytes),
                None => std::io::stdout().write_all(&bytes),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
            status
        }
        Err(e @ (Error::Precondition(_) | Error::UnknownFormat(_) | Error::Io(_) | Error::Json(_))) => {
            eprintln!("error: {}", usage_message(&e));
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INTERNAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("isozeta").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn validation_names_the_constraint() {
        let cli = parse(&["verify", "--p", "2", "--q", "12", "--N", "1"]);
        let err = validate(&cli.command).unwrap_err();
        assert_eq!(usage_message(&err), "q must be prime ≡ 1 (mod 12)");
        let cli = parse(&["brandt", "--q", "37", "--ell", "37"]);
        assert!(validate(&cli.command).is_err());
        let cli = parse(&["hecke", "--ell", "2"]);
        assert!(validate(&cli.command).is_err());
    }

    #[test]
    fn brandt_csv() {
        let cli = parse(&["brandt", "--q", "37", "--N", "1", "--ell", "2", "--format", "csv"]);
        validate(&cli.command).unwrap();
        let out = execute(&cli.command, 0).unwrap();
        let text = String::from_utf8(out.bytes).unwrap();
        let rows: Vec<Vec<i64>> = text
            .lines()
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.len() == 3 && r.iter().sum::<i64>() == 3));
    }

    #[test]
    fn hecke_json_shape() {
        let cli = parse(&["hecke", "--level", "37", "--ell", "2"]);
        let out = execute(&cli.command, 0).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.bytes).unwrap();
        assert_eq!(v["level"], 37);
        assert_eq!(v["ell"], 2);
        assert_eq!(v["charpoly"], serde_json::json!(["0", "2", "1"]));
    }

    #[test]
    fn manifest_grid_filters_invalid_tuples() {
        let m: SweepManifest =
            serde_json::from_str(r#"{"grid": {"p": [2, 3], "q": [13], "N": [1, 2, 3]}}"#).unwrap();
        let t = m.triples().unwrap();
        assert_eq!(t.len(), 4);
        let bad: SweepManifest = serde_json::from_str(r#"{"jobs": [{"p": 2, "q": 12, "N": 1}]}"#).unwrap();
        assert!(bad.triples().is_err());
    }
}
