use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use deltak_cli::commands::{cmd_family, cmd_growth, cmd_resolve, cmd_yoneda, ComputeOpts, FamilyKind};
use deltak_cli::dsl::parse_algebra;
use deltak_cli::error::CliError;
use deltak_cli::report::ReportDocument;

/// Exact computations with graded quotients of path algebras: minimal
/// resolutions, degree maps, and Ext-algebra generators.
#[derive(Parser)]
#[command(name = "deltak", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimal graded resolution of the degree-zero module,
    /// extract the degree map, and classify the algebra.
    Resolve {
        /// Presentation file.
        file: PathBuf,
        /// Number of resolution steps beyond step 0.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Degree cap (default: the file's cap, then steps + 3).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Emit a presentation file for a witness algebra.
    Family {
        /// Zigzag family parameter (at least 3).
        #[arg(long, conflicts_with_all = ["koszul", "d_koszul"])]
        n0: Option<usize>,
        /// One loop with its square zero.
        #[arg(long, conflicts_with = "d_koszul")]
        koszul: bool,
        /// One loop with its d-th power zero.
        #[arg(long = "d-koszul")]
        d_koszul: Option<usize>,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute Ext groups, Yoneda products, and minimal generator degrees.
    Yoneda {
        /// Presentation file.
        file: PathBuf,
        /// Largest cohomological degree (default: 2 * vertices + 1).
        #[arg(long = "n-max")]
        nmax: Option<usize>,
        /// Degree cap (default: the file's cap, then n-max + 3).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tabulate top Ext generator degrees across the zigzag family.
    Growth {
        /// Inclusive parameter range `a..b` (or a single parameter `a`).
        #[arg(long = "n0-range")]
        n0_range: String,
        /// Allow parameters above the desk-scale bound 6.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn compute_opts(cap: Option<usize>) -> ComputeOpts {
    ComputeOpts {
        cap,
        field_env: std::env::var("DELTAK_FIELD").ok(),
    }
}

fn emit(doc: &ReportDocument, format: Format) {
    use std::io::Write;
    let rendered = match format {
        Format::Text => doc.to_text(),
        Format::Json => {
            let mut json = doc.to_json();
            json.push('\n');
            json
        }
    };
    // Exit quietly when the reader goes away (e.g. piping into `head`).
    let mut out = std::io::stdout().lock();
    if out
        .write_all(rendered.as_bytes())
        .and_then(|()| out.flush())
        .is_err()
    {
        std::process::exit(0);
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Resolve { file, steps, cap, format } => {
            let text = read_input(&file)?;
            let parsed = parse_algebra(&text)?;
            let doc = cmd_resolve(&parsed, steps, &compute_opts(cap))?;
            emit(&doc, format);
            Ok(())
        }
        Command::Family { n0, koszul, d_koszul, out } => {
            let kind = match (n0, koszul, d_koszul) {
                (Some(n), false, None) => FamilyKind::Zigzag(n),
                (None, true, None) => FamilyKind::Koszul,
                (None, false, Some(d)) => FamilyKind::DKoszul(d),
                _ => {
                    return Err(CliError::Invalid(
                        "pick exactly one of --n0 K, --koszul, --d-koszul D".into(),
                    ))
                }
            };
            let text = cmd_family(kind)?;
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Other(format!("cannot write {}: {e}", path.display())))?,
                None => {
                    std::io::stdout().write_all(text.as_bytes())?;
                }
            }
            Ok(())
        }
        Command::Yoneda { file, nmax, cap, format } => {
            let text = read_input(&file)?;
            let parsed = parse_algebra(&text)?;
            let doc = cmd_yoneda(&parsed, nmax, &compute_opts(cap))?;
            emit(&doc, format);
            Ok(())
        }
        Command::Growth { n0_range, allow_large, format } => {
            let (a, b) = parse_range(&n0_range)?;
            let doc = cmd_growth(a, b, allow_large, &compute_opts(None))?;
            emit(&doc, format);
            Ok(())
        }
    }
}

fn read_input(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || {
        CliError::Invalid(format!(
            "--n0-range takes `a..b` or a single parameter, not {text:?}"
        ))
    };
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        Ok((a, b))
    } else {
        let a: usize = text.trim().parse().map_err(|_| bad())?;
        Ok((a, a))
    }
}
