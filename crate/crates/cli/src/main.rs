//! `eulab`: run the identity catalog, print tables, expand polynomials.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eulab_core::expand::{
    esym_expand, frobenius_expand, gamma_expand, partial_gamma_expand, Basis, Expansion,
};
use eulab_core::verify::{verify, verify_all, Identity, IdentityReport};
use eulab_core::{Error, Poly, Var};
use serde_json::json;

mod table;

use table::{Format, TableName};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "eulab",
    version,
    about = "Exact checks for Eulerian-type polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one catalog identity, or `all` of them.
    Verify {
        identity: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Leave out wall times so repeated runs print identical bytes.
        #[arg(long)]
        no_timing: bool,
    },
    /// Print a table of polynomials or coefficients for n up to N.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand a Poly-JSON read from stdin in a basis.
    Expand {
        #[arg(value_enum)]
        basis: BasisArg,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Gamma,
    Frobenius,
    PartialGamma,
    Esym,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    /// Errors about user input to `expand` are precondition failures.
    fn input(e: Error) -> Failure {
        match e {
            Error::SizeLimit { .. } => e.into(),
            e => Failure {
                code: EXIT_INPUT,
                message: e.to_string(),
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::SizeLimit { .. } => EXIT_GUARD,
            Error::UnknownIdentity(_) | Error::UnknownGrammar(_) | Error::InvalidParam(_) => {
                EXIT_USAGE
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            identity,
            max_n,
            k,
            json,
            no_timing,
        } => cmd_verify(&identity, max_n, k, json, !no_timing),
        Command::Table { name, n, k, format } => table::cmd_table(name, n, k, format).map(|out| {
            print!("{out}");
            0
        }),
        Command::Expand { basis, n } => cmd_expand(basis, n).map(|out| {
            println!("{out}");
            0
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("eulab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn report_json(r: &IdentityReport, timing: bool) -> serde_json::Value {
    let mut v = r.to_json_value();
    if !timing {
        v.as_object_mut()
            .expect("report is an object")
            .remove("wall_time_ms");
    }
    v
}

fn report_text(r: &IdentityReport, timing: bool) -> String {
    let mut line = format!(
        "{:<24} {:<4} {}",
        r.identity.name(),
        r.status.name(),
        r.range
    );
    if timing {
        line.push_str(&format!("  ({:.3}s)", r.wall_time.as_secs_f64()));
    }
    if let Some(c) = &r.counterexample {
        line.push_str(&format!("\n    counterexample: {c}"));
    }
    line
}

fn cmd_verify(
    name: &str,
    max_n: Option<usize>,
    k: Option<usize>,
    as_json: bool,
    timing: bool,
) -> Result<u8, Failure> {
    if name != "all" {
        let id: Identity = name.parse()?;
        let r = verify(id, max_n, k)?;
        if as_json {
            println!("{}", report_json(&r, timing));
        } else {
            println!("{}", report_text(&r, timing));
        }
        return Ok(if r.passed() { 0 } else { EXIT_FAIL });
    }
    if k == Some(0) {
        return Err(Failure::usage("k must be at least 1"));
    }
    let results = verify_all(max_n, k);
    let mut code = 0u8;
    let mut worst_error: Option<Failure> = None;
    let mut rows = Vec::new();
    let mut passed = 0;
    for (id, r) in &results {
        match r {
            Ok(r) => {
                passed += usize::from(r.passed());
                if !r.passed() {
                    code = EXIT_FAIL;
                }
                if as_json {
                    rows.push(report_json(r, timing));
                } else {
                    println!("{}", report_text(r, timing));
                }
            }
            Err(e) => {
                let f = Failure::from(e.clone());
                if as_json {
                    rows.push(
                        json!({"identity": id.name(), "status": "error", "error": e.to_string()}),
                    );
                } else {
                    println!("{:<24} error {e}", id.name());
                }
                if worst_error.as_ref().is_none_or(|w| f.code < w.code) {
                    worst_error = Some(f);
                }
            }
        }
    }
    if as_json {
        println!(
            "{}",
            json!({"passed": passed, "total": results.len(), "reports": rows})
        );
    } else {
        println!("{passed}/{} identities passed", results.len());
    }
    if code == 0 {
        if let Some(f) = worst_error {
            code = f.code;
        }
    }
    Ok(code)
}

fn read_stdin_poly() -> Result<Poly, Failure> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure::input(Error::Parse(format!("reading stdin: {e}"))))?;
    Poly::from_json(&text).map_err(Failure::input)
}

/// The variable of a univariate input; `x` for constants.
fn sole_var(f: &Poly) -> Result<Var, Failure> {
    let vars = f.vars();
    match vars.len() {
        0 => Ok(Var::new("x")),
        1 => Ok(vars.into_iter().next().expect("one variable")),
        _ => Err(Failure::input(Error::InvalidParam(format!(
            "expected a univariate polynomial, found {} variables",
            vars.len()
        )))),
    }
}

/// Univariate and partial bases list every index, zero or not; `esym` is sparse.
fn expansion_json(e: &Expansion) -> serde_json::Value {
    let n = e.degree;
    let mut keys: Vec<Vec<usize>> = match e.basis {
        Basis::Gamma => (0..=n / 2).map(|k| vec![k]).collect(),
        Basis::Frobenius => (1..=n).map(|k| vec![k]).collect(),
        Basis::PartialGamma => (0..=n)
            .flat_map(|i| (0..=(n - i) / 2).map(move |j| vec![i, j]))
            .collect(),
        Basis::Esym => e.coeffs.keys().cloned().collect(),
    };
    keys.sort();
    let coeffs: Vec<_> = keys
        .iter()
        .map(|index| json!({"index": index, "coeff": e.coeff(index).to_string()}))
        .collect();
    json!({"basis": e.basis.name(), "coeffs": coeffs})
}

fn cmd_expand(basis: BasisArg, n: Option<usize>) -> Result<String, Failure> {
    let f = read_stdin_poly()?;
    let degree = f.total_degree().unwrap_or(0) as usize;
    let e = match basis {
        BasisArg::Gamma | BasisArg::Frobenius => {
            let v = sole_var(&f)?;
            let n = n.unwrap_or(degree);
            if matches!(basis, BasisArg::Gamma) {
                gamma_expand(&f, &v, n)
            } else {
                frobenius_expand(&f, &v, n)
            }
        }
        BasisArg::PartialGamma => partial_gamma_expand(&f, n.unwrap_or(degree)),
        BasisArg::Esym => {
            if n.is_some() {
                return Err(Failure::usage(format!(
                    "--n does not apply to {}",
                    Basis::Esym.name()
                )));
            }
            let vars: Vec<Var> = f.vars().into_iter().collect();
            esym_expand(&f, &vars)
        }
    }
    .map_err(Failure::input)?;
    Ok(expansion_json(&e).to_string())
}
