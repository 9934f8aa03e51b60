use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fqcoh::cohomology::{h_dim, is_coboundary};
use fqcoh::format::{
    cochain_to_json_terms, cochain_to_string, element_to_string, field_to_string, parse_cochain,
    parse_element, parse_field,
};
use fqcoh::verify::{
    summarize, sweep, verify_basis_theorem, verify_proposition_id, BasisOptions, SWEEP_MAX_N,
    SWEEP_MAX_Q,
};
use fqcoh::{
    delta_poly, is_quandle_cochain, AlexanderFQuandle, Error, FieldSpec, Status, VerificationReport,
};

const EXIT_USAGE: u8 = 1;
const EXIT_PROPOSITION: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(name = "fqcoh", version)]
#[command(about = "Cohomology of Alexander f-quandles x*y = wx + by over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuandleArgs {
    /// Field as p^m/c_m,...,c_0 (highest coefficient first), or q / p^m for the built-in modulus
    #[arg(long)]
    field: String,
    /// omega as g^k or a coefficient list, highest first
    #[arg(long)]
    omega: String,
    /// beta in the same syntax as omega
    #[arg(long)]
    beta: String,
}

impl QuandleArgs {
    fn build(&self) -> Result<AlexanderFQuandle, Error> {
        let f = parse_field(&self.field)?;
        let w = parse_element(&f, &self.omega)?;
        let b = parse_element(&f, &self.beta)?;
        AlexanderFQuandle::new(&f, w, b)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the field's modulus, generator and size
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// Check the f-quandle axioms exhaustively
    CheckAxioms {
        #[command(flatten)]
        q: QuandleArgs,
    },
    /// Apply the coboundary operator to an n-cochain
    Delta {
        #[command(flatten)]
        q: QuandleArgs,
        #[arg(long)]
        n: usize,
        /// Cochain text, e.g. "1*U1^1*U2^2 + g^2*U1^3"
        #[arg(long)]
        cochain: String,
    },
    /// Compute dim Z^n, B^n, H^n and a set of representatives
    Hdim {
        #[command(flatten)]
        q: QuandleArgs,
        #[arg(long)]
        n: usize,
        /// Run even when the memory estimate exceeds the ceiling
        #[arg(long)]
        allow_big: bool,
        /// Keep wall-clock time in the output
        #[arg(long)]
        timing: bool,
    },
    /// Check that every admissible member of a cocycle family is closed
    VerifyProp {
        #[command(flatten)]
        q: QuandleArgs,
        /// Family id: P2, PSI, E0, E1, F, F0, GAMMA:I..V, A..E, P5M1, P5XX, P5MX, P5M2
        #[arg(long)]
        prop: String,
    },
    /// Compare the candidate basis of H^n with the computed dimension
    VerifyBasis {
        #[command(flatten)]
        q: QuandleArgs,
        #[arg(long)]
        n: usize,
        /// Only check closedness and independence
        #[arg(long)]
        candidates_only: bool,
        #[arg(long)]
        allow_big: bool,
    },
    /// Run the basis check for every admissible (omega, beta) of a field
    Sweep {
        #[arg(long)]
        field: String,
        /// Comma-separated degrees, e.g. 2,3
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Write all reports and the summary to this file
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        candidates_only: bool,
        /// Lift the q <= 16, n <= 4 limits
        #[arg(long)]
        allow_big: bool,
    },
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn report_code(status: Status) -> u8 {
    match status {
        Status::Fail => EXIT_PROPOSITION,
        Status::Mismatch => EXIT_MISMATCH,
        Status::Pass | Status::Skipped => 0,
    }
}

fn field_info(field: &FieldSpec) -> serde_json::Value {
    let g = field.primitive_element();
    json!({
        "field": field_to_string(field),
        "p": field.p(),
        "m": field.m(),
        "q": field.q(),
        "generator": element_to_string(field, g),
        "generator_order": field.element_order(g).ok(),
    })
}

fn print_report(r: &VerificationReport) -> u8 {
    println!("{}", r.to_json());
    report_code(r.status)
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::FieldInfo { field } => {
            let f = parse_field(&field)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&field_info(&f)).expect("json")
            );
            Ok(0)
        }
        Command::CheckAxioms { q } => Ok(print_report(&q.build()?.verify_axioms())),
        Command::Delta { q, n, cochain } => {
            let qd = q.build()?;
            let phi = parse_cochain(qd.field(), Some(n), &cochain)?;
            if !is_quandle_cochain(&phi) {
                return Err(Error::NotQuandleCochain);
            }
            let d = delta_poly(&qd, &phi)?;
            let witness = if d.is_zero() {
                is_coboundary(&qd, &phi).ok().flatten()
            } else {
                None
            };
            let out = json!({
                "n": n,
                "cochain": cochain_to_string(&phi),
                "delta": cochain_to_string(&d),
                "delta_terms": cochain_to_json_terms(&d),
                "is_cocycle": d.is_zero(),
                "coboundary_of": witness.map(|w| cochain_to_string(&w)),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            Ok(0)
        }
        Command::Hdim {
            q,
            n,
            allow_big,
            timing,
        } => {
            let r = h_dim(&q.build()?, n, allow_big)?;
            println!("{}", r.to_json(timing));
            Ok(0)
        }
        Command::VerifyProp { q, prop } => {
            Ok(print_report(&verify_proposition_id(&q.build()?, &prop)?))
        }
        Command::VerifyBasis {
            q,
            n,
            candidates_only,
            allow_big,
        } => {
            let opts = BasisOptions {
                candidates_only,
                allow_big,
            };
            Ok(print_report(&verify_basis_theorem(&q.build()?, n, opts)?))
        }
        Command::Sweep {
            field,
            n,
            json: out,
            candidates_only,
            allow_big,
        } => {
            let f = parse_field(&field)?;
            if n.is_empty() {
                return Err(Error::Parse("--n needs at least one degree".into()));
            }
            if !allow_big && (f.q() > SWEEP_MAX_Q || n.iter().any(|&k| k > SWEEP_MAX_N)) {
                eprintln!("sweeps are limited to q <= {SWEEP_MAX_Q} and n <= {SWEEP_MAX_N}; pass --allow-big to lift this");
            }
            let opts = BasisOptions {
                candidates_only,
                allow_big,
            };
            let reports = sweep(&f, &n, opts)?;
            let summary = summarize(&reports);
            println!(
                "{:<12} {:<12} {:>2}  {:<9} {:>5} {:>5}",
                "omega", "beta", "n", "status", "cand", "dimH"
            );
            for r in &reports {
                let b = r.basis.as_ref();
                println!(
                    "{:<12} {:<12} {:>2}  {:<9} {:>5} {:>5}",
                    r.environment.omega,
                    r.environment.beta,
                    b.map_or(0, |b| b.n),
                    format!("{:?}", r.status).to_lowercase(),
                    b.map_or(0, |b| b.candidates),
                    b.and_then(|b| b.dim_h)
                        .map_or("-".to_string(), |d| d.to_string()),
                );
            }
            println!(
                "pass {}  fail {}  mismatch {}  skipped {}  total {}",
                summary.pass, summary.fail, summary.mismatch, summary.skipped, summary.total
            );
            if let Some(path) = out {
                let doc = json!({ "field": field_to_string(&f), "n": n, "summary": summary, "reports": reports });
                let text = serde_json::to_string_pretty(&doc).expect("json");
                std::fs::write(&path, text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            Ok(if summary.fail > 0 {
                EXIT_PROPOSITION
            } else if summary.mismatch > 0 {
                EXIT_MISMATCH
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
