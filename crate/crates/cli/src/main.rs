mod format;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use powersum_core::dissect::{check_certificate, generate, CheckStage, Construction, FailureDetail};
use powersum_core::figurate::{IdentityName, IdentityParams};
use powersum_core::pyramid::{build_pyramid, main_sections, secondary_sections, CellSet};
use powersum_core::render::{emit_figure, FigureName, FigureSpec, Format};
use powersum_core::{evaluate_identity, faulhaber, sum_powers_bruteforce, BernoulliTable, Rat};

/// Exact checks of sums-of-powers identities and their dissection proofs.
#[derive(Parser)]
#[command(name = "powersum", version)]
struct Cli {
    /// Print more detail.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both sides of a named identity.
    Identity {
        name: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Print B_0..B_M.
    Bernoulli {
        #[arg(long)]
        upto: usize,
    },
    /// Evaluate S_p(n) with Faulhaber's formula.
    Faulhaber {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u64,
    },
    /// Section sizes of the d-dimensional lattice pyramid.
    Sections {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        n: u32,
        /// Slice along this cube axis (2..=dim) instead of the stacking axis.
        #[arg(long)]
        secondary: Option<u32>,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Write the certificate of a construction as JSON.
    Certificate {
        construction: String,
        #[arg(long)]
        n: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Check { path: PathBuf },
    /// Draw a figure.
    Figure {
        name: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "svg")]
        format: String,
        /// Layer of FIVE_PYR_SECTION.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 20)]
        unit_px: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check at scale n <= MAX_N.
    VerifyAll {
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum)]
        report: Option<Report>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Cells,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Json,
}

/// Everything that ends with a non-zero exit code.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    Cover(String),
    Malformed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Cover(_) => 2,
            Failure::Malformed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Cover(m) | Failure::Malformed(m) => m,
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure::Malformed(e.to_string())
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| malformed(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(malformed),
    }
}

fn identity(name: &str, params: IdentityParams) -> Result<(), Failure> {
    let name: IdentityName = name.parse().map_err(malformed)?;
    let report = evaluate_identity(name, &params).map_err(malformed)?;
    println!("{report}");
    if report.holds() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{name}: {} != {}", report.lhs, report.rhs)))
    }
}

fn bernoulli(upto: usize) -> Result<(), Failure> {
    let table = BernoulliTable::upto(upto);
    for (m, b) in table.values().iter().enumerate() {
        println!("B_{m} = {b}");
    }
    if table.satisfies_recursion() {
        Ok(())
    } else {
        Err(Failure::Mismatch(String::from("table fails its defining recursion")))
    }
}

fn faulhaber_cmd(p: u32, n: u64, verbose: bool) -> Result<(), Failure> {
    let value = faulhaber(p, n);
    println!("{value}");
    if verbose {
        let brute = Rat::from_integer(sum_powers_bruteforce(p, n));
        if brute != value {
            return Err(Failure::Mismatch(format!("brute force gives {brute}")));
        }
        eprintln!("brute force agrees");
    }
    Ok(())
}

fn print_cells(section: &CellSet) {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    for c in section.iter() {
        let _ = writeln!(lock, "{c}");
    }
}

fn sections(dim: u32, n: u32, axis: Option<u32>, emit: Option<Emit>) -> Result<(), Failure> {
    let p = build_pyramid(dim, n).map_err(malformed)?;
    let (list, key) = match axis {
        Some(a) => (secondary_sections(&p, a).map_err(malformed)?, "m"),
        None => (main_sections(&p).map_err(malformed)?, "k"),
    };
    let mut total = 0;
    for (i, s) in list.iter().enumerate() {
        println!("{key}={}: {}", i + 1, s.len());
        if emit.is_some() {
            print_cells(s);
        }
        total += s.len();
    }
    println!("total: {total}");
    let expected = sum_powers_bruteforce(dim - 1, u64::from(n));
    if expected != total.into() {
        return Err(Failure::Mismatch(format!("sections hold {total} cells, S_{}({n}) = {expected}", dim - 1)));
    }
    Ok(())
}

fn certificate(name: &str, n: u32, out: Option<&Path>) -> Result<(), Failure> {
    let construction: Construction = name.parse().map_err(malformed)?;
    let cert = generate(construction, n).map_err(malformed)?;
    write_output(out, &format::to_json(&cert))
}

fn check(path: &Path, verbose: bool) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    let cert = format::from_json(&text).map_err(malformed)?;
    match check_certificate(&cert) {
        Ok(report) => {
            println!("PASS {report}");
            if verbose {
                for layer in cert.target_layers() {
                    println!("  {layer}: area {}", cert.target_area_in(&layer));
                }
            }
            Ok(())
        }
        Err(f) => {
            println!("FAIL {} n={}: {f}", cert.construction, cert.n);
            let msg = f.to_string();
            match f.detail {
                FailureDetail::Malformed(_) => Err(Failure::Malformed(msg)),
                _ if f.stage == CheckStage::Structure => Err(Failure::Malformed(msg)),
                _ => Err(Failure::Cover(msg)),
            }
        }
    }
}

fn figure(name: &str, n: u32, format: &str, t: Option<u32>, unit_px: u32, out: Option<&Path>) -> Result<(), Failure> {
    let mut figure: FigureName = name.parse().map_err(malformed)?;
    if let (FigureName::FivePyrSection(_), Some(t)) = (figure, t) {
        figure = FigureName::FivePyrSection(t);
    }
    let format: Format = format.parse().map_err(malformed)?;
    let text = emit_figure(&FigureSpec { figure, n, format, unit_px }).map_err(malformed)?;
    write_output(out, &text)
}

fn verify_all(max_n: u32, report: Option<Report>) -> Result<(), Failure> {
    if max_n == 0 {
        return Err(malformed("--max-n must be at least 1"));
    }
    let outcomes = verify::run_all(max_n);
    match report {
        Some(Report::Json) => {
            let doc = serde_json::json!({
                "max_n": max_n,
                "passed": outcomes.iter().all(|o| o.passed),
                "checks": outcomes,
            });
            println!("{}", serde_json::to_string_pretty(&doc).map_err(malformed)?);
        }
        None => {
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("{status} {:<28} {} ({} ms)", o.name, o.detail, o.millis);
            }
        }
    }
    verify::exit_failure(&outcomes).map_or(Ok(()), Err)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Identity { name, n, m, p, d } => identity(&name, IdentityParams { n: Some(n), m, p, d }),
        Command::Bernoulli { upto } => bernoulli(upto),
        Command::Faulhaber { p, n } => faulhaber_cmd(p, n, verbose),
        Command::Sections { dim, n, secondary, emit } => sections(dim, n, secondary, emit),
        Command::Certificate { construction, n, out } => certificate(&construction, n, out.as_deref()),
        Command::Check { path } => check(&path, verbose),
        Command::Figure { name, n, format, t, unit_px, out } => figure(&name, n, &format, t, unit_px, out.as_deref()),
        Command::VerifyAll { max_n, report } => verify_all(max_n, report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
