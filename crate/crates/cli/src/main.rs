use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use kinv::algebra::validate;
use kinv::classify::verify_theorem_suite;
use kinv::corpus::{Family, GeneratorSpec, FAMILY_NAMES};
use kinv::invariants::commutator_subspace;
use kinv::io::{generate_any, parse_input, write_algebra, AnyAlgebra, InputFormat};
use kinv::morita::{inflate_algebra, verify_morita_invariance};
use kinv::report::{build_report, check_text, verdict_text};
use kinv::structure::analyze;
use kinv::{with_algebra, Error, FieldSpec};

const INVALID_INPUT: u8 = 1;
const UNAVAILABLE: u8 = 2;
const CHECK_FAILED: u8 = 3;
const IO_ERROR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kinv",
    version,
    about = "Commutator-subspace invariants of finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    file: String,
    /// Field for inputs that do not name one (Cayley tables, quivers without `field=`).
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Quiver parameter binding `name=scalar`; repeatable.
    #[arg(long = "param", value_parser = key_value)]
    params: Vec<(String, String)>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Print the full report.
    Report {
        #[command(flatten)]
        input: Input,
        /// Also write the report as JSON (`-` for stdout, replacing the text form).
        #[arg(long)]
        json: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the classification verdict and its witness.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the theorem checks; exits with 3 if any applicable check fails.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a corpus algebra in the structure-constant format.
    Generate {
        /// One of truncated, triangular, kronecker, a_q, cyclic_group, s3, matrix, random_quiver, random_local.
        family: String,
        /// `n` for the sized families, `q` for a_q.
        value: Option<String>,
        #[arg(long = "param", value_parser = key_value)]
        params: Vec<(String, String)>,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output", default_value = "-")]
        output: String,
    },
    /// Emit the basic algebra followed by the Morita comparison as comments.
    Basic {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'o', long = "output", default_value = "-")]
        output: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit End_A(sum (e_i A)^{m_i}) for the given multiplicities.
    Inflate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        mult: Vec<usize>,
        #[arg(short = 'o', long = "output", default_value = "-")]
        output: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the theorem checks on seeded random algebras and print failing seeds.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value = "quiver", value_parser = ["quiver", "local"])]
        family: String,
        /// Field for every instance; by default instances cycle through F_2, F_3, F_5.
        #[arg(long)]
        field: Option<FieldSpec>,
    },
}

fn key_value(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected name=value, got `{s}`"))
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSplit(_)
            | Error::SplitUndecided(_)
            | Error::NotBasic
            | Error::NotLocal
            | Error::CharZero => UNAVAILABLE,
            _ => INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &str, e: io::Error) -> Failure {
    Failure {
        code: IO_ERROR,
        message: format!("{path}: {e}"),
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_failure("stdin", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure("stdout", e))
    } else {
        fs::write(path, text).map_err(|e| io_failure(path, e))
    }
}

fn load(input: &Input) -> Result<(AnyAlgebra, InputFormat), Failure> {
    let text = read_text(&input.file)?;
    let params: BTreeMap<String, String> = input.params.iter().cloned().collect();
    Ok(parse_input(&text, input.field, &params)?)
}

fn comment(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { input } => {
            let (a, _) = load(&input)?;
            let v = with_algebra!(&a, x => validate(x));
            if v.is_valid() {
                println!("valid: dim {} over {}", a.dim(), a.field_spec());
                Ok(())
            } else {
                Err(Failure {
                    code: INVALID_INPUT,
                    message: format!(
                        "invalid: associativity fails at {:?}, unit fails for {:?}",
                        v.associativity_failures, v.unit_failures
                    ),
                })
            }
        }
        Command::Report { input, json, seed } => {
            let (a, format) = load(&input)?;
            let r = with_algebra!(&a, x => build_report(x, format, seed))?;
            match json.as_deref() {
                Some("-") => {}
                _ => write_text("-", &r.to_text())?,
            }
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&r).expect("report serializes");
                text.push('\n');
                write_text(&path, &text)?;
            }
            Ok(())
        }
        Command::Classify { input, seed } => {
            let (a, _) = load(&input)?;
            with_algebra!(&a, x => {
                let s = analyze(x, seed)?;
                let v = kinv::classify::classify(x, &s, &commutator_subspace(x));
                println!("{}", verdict_text(&v));
                if let Some(w) = &v.witness {
                    println!(
                        "witness: x = [{}] in the basic algebra; 1, x, ..., x^{} independent: {}; x^{} = 0: {}",
                        w.x.join(", "),
                        w.n.saturating_sub(1),
                        w.independent,
                        w.n,
                        w.nilpotent
                    );
                    if !w.valid() {
                        return Err(Failure { code: CHECK_FAILED, message: "witness does not certify the verdict".into() });
                    }
                }
                if let kinv::classify::VerdictKind::Unavailable(reason) = v.kind {
                    return Err(Failure { code: UNAVAILABLE, message: reason });
                }
                Ok(())
            })
        }
        Command::Verify { input, seed } => {
            let (a, _) = load(&input)?;
            let report = with_algebra!(&a, x => {
                let s = analyze(x, seed)?;
                verify_theorem_suite(x, &s, &commutator_subspace(x), seed)
            });
            let text: String = report.lines.iter().map(|l| check_text(l) + "\n").collect();
            write_text("-", &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: CHECK_FAILED,
                    message: format!("{} check(s) failed", report.failures().count()),
                })
            }
        }
        Command::Generate {
            family,
            value,
            params,
            field,
            seed,
            output,
        } => {
            let params: BTreeMap<String, String> = params.into_iter().collect();
            let family =
                Family::parse(&family, value.as_deref(), &params, seed).map_err(|e| match e {
                    Error::Unknown { .. } => Failure {
                        code: INVALID_INPUT,
                        message: format!("{e}; known families: {}", FAMILY_NAMES.join(", ")),
                    },
                    e => e.into(),
                })?;
            let a = generate_any(&GeneratorSpec { family, field })?;
            write_text(&output, &a.to_text())
        }
        Command::Basic {
            input,
            output,
            seed,
        } => {
            let (a, _) = load(&input)?;
            with_algebra!(&a, x => {
                let s = analyze(x, seed)?;
                let cert = verify_morita_invariance(x, &s)?;
                let report = serde_json::to_string_pretty(&cert.report).expect("report serializes");
                let body = write_algebra(&cert.basic.algebra);
                if output == "-" {
                    write_text("-", &(body + &comment(&report)))?;
                } else {
                    write_text(&output, &body)?;
                    println!("{report}");
                }
                if cert.report.passed() {
                    Ok(())
                } else {
                    Err(Failure { code: CHECK_FAILED, message: "Morita comparison failed".into() })
                }
            })
        }
        Command::Inflate {
            input,
            mult,
            output,
            seed,
        } => {
            let (a, _) = load(&input)?;
            let text = with_algebra!(&a, x => write_algebra(&inflate_algebra(x, &mult, seed)?));
            write_text(&output, &text)
        }
        Command::Fuzz {
            seed,
            count,
            family,
            field,
        } => {
            let fields = [
                FieldSpec::Prime(2),
                FieldSpec::Prime(3),
                FieldSpec::Prime(5),
            ];
            let results: Vec<(u64, Result<Vec<String>, String>)> = (0..count)
                .into_par_iter()
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    let fam = if family == "local" {
                        "random_local"
                    } else {
                        "random_quiver"
                    };
                    let spec = GeneratorSpec {
                        family: Family::parse(fam, None, &BTreeMap::new(), s)
                            .expect("known family"),
                        field: field.unwrap_or(fields[(i % 3) as usize]),
                    };
                    let outcome = generate_any(&spec).and_then(|a| {
                        with_algebra!(&a, x => {
                            let st = analyze(x, s)?;
                            let r = verify_theorem_suite(x, &st, &commutator_subspace(x), s);
                            Ok(r.failures().map(check_text).collect::<Vec<_>>())
                        })
                    });
                    (s, outcome.map_err(|e| e.to_string()))
                })
                .collect();
            let mut failing = 0;
            let mut text = String::new();
            for (s, outcome) in &results {
                match outcome {
                    Ok(fails) if fails.is_empty() => {}
                    Ok(fails) => {
                        failing += 1;
                        text += &format!("seed {s}: {}\n", fails.join("; "));
                    }
                    Err(e) => {
                        failing += 1;
                        text += &format!("seed {s}: error: {e}\n");
                    }
                }
            }
            text += &format!("{} of {count} instances passed\n", count as usize - failing);
            write_text("-", &text)?;
            if failing == 0 {
                Ok(())
            } else {
                Err(Failure {
                    code: CHECK_FAILED,
                    message: format!("{failing} failing seed(s)"),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("kinv: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
