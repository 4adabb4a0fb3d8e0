use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bezout_cli::commands::{
    self, combine_codes, CmdError, DegreeTarget, FieldArg, Outcome, PlotArgs, VerifyArgs, EXIT_PASS, EXIT_USAGE,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "bezout", version, about = "Enriched Bezout counts for plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// JSON on stdout (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for coordinate changes and factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Euler number identity and its arithmetic consequences.
    Verify {
        #[arg(long, default_value = "Q")]
        field: FieldArg,
        #[arg(long, required_unless_present = "batch", allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, required_unless_present = "batch", allow_hyphen_values = true)]
        g: Option<String>,
        /// Report local degrees relative to x0 = 0 when N is odd.
        #[arg(long)]
        relative: bool,
        /// File with one `field ; f ; g` instance per line.
        #[arg(long, conflicts_with_all = ["f", "g"])]
        batch: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Local degrees: at a point, at every intersection point, or of a x^d.
    Degree {
        #[arg(long, default_value = "Q")]
        field: FieldArg,
        #[arg(long, allow_hyphen_values = true, requires = "g", conflicts_with = "monomial")]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        g: Option<String>,
        /// Projective point x0:x1:x2 with coordinates in the base field.
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        point: Option<String>,
        /// Closed form of deg_0(a x^d), given as a=<coefficient>,d=<degree>.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "f")]
        monomial: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Arithmetic in GW(k) for a diagonal form.
    Gw {
        #[arg(long, default_value = "Q")]
        field: FieldArg,
        /// Comma-separated diagonal entries.
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
        /// Include the invariant vector.
        #[arg(long)]
        invariants: bool,
        /// Compare with another diagonal form.
        #[arg(long, allow_hyphen_values = true)]
        equal: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// The Euler number (d_1 ... d_n / 2) H of O(d_1) + ... + O(d_n) on P^n.
    Euler {
        #[arg(long, default_value = "Q")]
        field: FieldArg,
        #[arg(long)]
        degrees: String,
        #[command(flatten)]
        out: Output,
    },
    /// Closed points of F = G = 0 with multiplicities.
    Intersect {
        #[arg(long, default_value = "Q")]
        field: FieldArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        out: Output,
    },
    /// SVG picture of two real curves with exact crossing signs.
    Plot {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// xmin,xmax,ymin,ymax
        #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2")]
        window: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        no_labels: bool,
        /// Two comma-separated stroke colors.
        #[arg(long)]
        colors: Option<String>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(outcome: &Outcome, pretty: bool) {
    let mut stdout = std::io::stdout().lock();
    if pretty {
        let _ = write!(stdout, "{}", outcome.text);
    } else {
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.json).unwrap_or_default());
    }
    if let Some(err) = outcome.json.get("error").and_then(Value::as_str) {
        eprintln!("error: {err}");
    } else if outcome.code == commands::EXIT_NOT_APPLICABLE {
        if let Some(reason) = outcome.json.get("reason").and_then(Value::as_str) {
            eprintln!("{reason}");
        }
    }
}

fn finish(command: &str, result: Result<Outcome, CmdError>, out: Output) -> u8 {
    let outcome = result.unwrap_or_else(|e| Outcome::from_error(command, &e));
    emit(&outcome, out.pretty);
    outcome.code
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Verify { field, f, g, relative, batch, out } => {
            if let Some(path) = batch {
                let text = match fs::read_to_string(&path) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: cannot read {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                };
                let jobs = match commands::parse_batch(&text) {
                    Ok(j) => j,
                    Err(e) => return finish("verify", Err(e), out),
                };
                let outcomes: Vec<Outcome> = jobs
                    .par_iter()
                    .map(|(field, f, g)| {
                        let args = VerifyArgs { field: *field, f, g, seed: out.seed, relative };
                        commands::verify(&args).unwrap_or_else(|e| Outcome::from_error("verify", &e))
                    })
                    .collect();
                let mut stdout = std::io::stdout().lock();
                if out.pretty {
                    for (i, o) in outcomes.iter().enumerate() {
                        let _ = write!(stdout, "# instance {}\n{}", i + 1, o.text);
                    }
                } else {
                    let all: Vec<&Value> = outcomes.iter().map(|o| &o.json).collect();
                    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&all).unwrap_or_default());
                }
                return combine_codes(outcomes.iter().map(|o| o.code));
            }
            let (f, g) = (f.unwrap_or_default(), g.unwrap_or_default());
            finish("verify", commands::verify(&VerifyArgs { field, f: &f, g: &g, seed: out.seed, relative }), out)
        }
        Command::Degree { field, f, g, point, monomial, out } => {
            let target = match (&monomial, &f, &g) {
                (Some(m), _, _) => DegreeTarget::Monomial(m),
                (None, Some(f), Some(g)) => DegreeTarget::Curves { f, g, point: point.as_deref() },
                _ => return finish("degree", Err(CmdError::Usage("give --monomial or --f and --g".into())), out),
            };
            finish("degree", commands::degree(field, &target, out.seed), out)
        }
        Command::Gw { field, diag, invariants, equal, out } => {
            finish("gw", commands::gw(field, &diag, invariants, equal.as_deref()), out)
        }
        Command::Euler { field, degrees, out } => finish("euler", commands::euler(field, &degrees), out),
        Command::Intersect { field, f, g, out } => finish("intersect", commands::intersect(field, &f, &g, out.seed), out),
        Command::Plot { f, g, window, samples, no_labels, colors, out, seed } => {
            let args =
                PlotArgs { f: &f, g: &g, window: &window, samples, labels: !no_labels, colors: colors.as_deref(), seed };
            match commands::plot(&args) {
                Ok(svg) => {
                    let written = match &out {
                        Some(path) => fs::write(path, svg),
                        None => std::io::stdout().lock().write_all(svg.as_bytes()),
                    };
                    if let Err(e) = written {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                    EXIT_PASS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}
