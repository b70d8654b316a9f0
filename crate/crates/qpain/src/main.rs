use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qpain::parse::{parse_algebra, parse_expression};
use qpain::structured::Document;
use qpain::suites::{self, Budget, Selector};
use qpain_core::contiguity::{derive_pii, derive_piv, derive_pv, emit_latex, emit_text, Format};
use qpain_core::ncalgebra::Algebra;
use qpain_core::weyl::{BacklundTable, Word};

#[derive(Parser)]
#[command(name = "qpain", version, about = "Quantum Painleve algebras: normal forms, Backlund actions, verification and discrete systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression.
    Nf {
        expr: String,
        #[arg(long, value_parser = parse_algebra)]
        algebra: Algebra,
    },
    /// Commutator [a, b].
    Comm {
        a: String,
        b: String,
        #[arg(long, value_parser = parse_algebra)]
        algebra: Algebra,
    },
    /// Applies a word (rightmost letter first) to an expression.
    Apply {
        word: String,
        expr: String,
        #[arg(long, value_parser = parse_algebra)]
        algebra: Algebra,
    },
    /// Runs the verification suites.
    Verify {
        target: VerifyTarget,
        /// Rank for `al`.
        #[arg(value_parser = clap::value_parser!(u8).range(2..=9))]
        l: Option<u8>,
        /// Also list negative controls (shown as EXPECTED-FAIL when they fire).
        #[arg(long)]
        negative_controls: bool,
        #[arg(long, default_value_t = Budget::default().seed)]
        seed: u64,
    },
    /// Derives and emits a discrete system.
    Derive {
        target: DeriveTarget,
        #[arg(long, default_value = "text", value_parser = |s: &str| s.parse::<Format>().map_err(|e| e.to_string()))]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Pii,
    Al,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveTarget {
    Pii,
    Piv,
    Pv,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("qpain: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = run(cli.cmd);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    code
}

fn run(cmd: Cmd) -> ExitCode {
    match cmd {
        Cmd::Nf { expr, algebra } => match parse_expression(&expr, algebra) {
            Ok(e) => {
                println!("{e}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(&e.to_string()),
        },
        Cmd::Comm { a, b, algebra } => {
            let (a, b) = match (parse_expression(&a, algebra), parse_expression(&b, algebra)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage(&e.to_string()),
            };
            match a.commutator(&b) {
                Ok(c) => {
                    println!("{c}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("qpain: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Cmd::Apply { word, expr, algebra } => {
            let w: Word = match word.parse() {
                Ok(w) => w,
                Err(e) => return usage(&e.to_string()),
            };
            let e = match parse_expression(&expr, algebra) {
                Ok(e) => e,
                Err(e) => return usage(&e.to_string()),
            };
            match BacklundTable::new(algebra).apply(&w, &e) {
                Ok(r) => {
                    println!("{r}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("qpain: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Cmd::Verify { target, l, negative_controls, seed } => {
            let sel = match (target, l) {
                (VerifyTarget::Pii, None) => Selector::Pii,
                (VerifyTarget::All, None) => Selector::All,
                (VerifyTarget::Al, Some(l)) => Selector::Al(l),
                (VerifyTarget::Al, None) => return usage("verify al needs a rank 2..9"),
                (_, Some(_)) => return usage("a rank is only accepted after al"),
            };
            let reports = suites::run(sel, &Budget { seed, ..Budget::default() });
            print!("{}", suites::render(&reports, negative_controls));
            if suites::all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Cmd::Derive { target, format } => {
            let sys = match target {
                DeriveTarget::Pii => derive_pii(),
                DeriveTarget::Piv => derive_piv(),
                DeriveTarget::Pv => derive_pv(),
            };
            let sys = match sys {
                Ok(s) => s,
                Err(e) => {
                    println!("{e}");
                    return ExitCode::FAILURE;
                }
            };
            match format {
                Format::Text => print!("{}", emit_text(&sys)),
                Format::Latex => print!("{}", emit_latex(&sys)),
                Format::Structured => print!("{}", Document::from_system(&sys).to_json()),
            }
            ExitCode::SUCCESS
        }
    }
}
