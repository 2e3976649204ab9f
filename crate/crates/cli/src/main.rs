use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chern_gate::enumerate::enumerate_cases;
use chern_gate::io::{emit_report, parse_scenario, replay, reproduce, Format, ReportFile};
use chern_gate::obstruction::{check_certificate, eliminate, DEFAULT_MAX_MODULUS};
use chern_gate::pipeline::LemmaMode;
use chern_gate::{char_number_table, derive_invariants, Certificate, Error, IntPoly, LemmaId};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

#[derive(Parser)]
#[command(name = "chern-gate", version, about = "Replay Chern-number enumerations and embedding obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Md,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Md => Format::Markdown,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Replay shipped lemmas against their baselines.
    Reproduce {
        /// Lemma id (2.1, 2.2, 3.1, 4.2, A.1, A.2, A.3) or `all`.
        #[arg(long)]
        lemma: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the cases a scenario admits, with their characteristic numbers.
    Enumerate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Certify that an integer polynomial has no positive integer root.
    Eliminate {
        /// Coefficients, leading first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_MODULUS, value_parser = clap::value_parser!(u64).range(2..))]
        max_modulus: u64,
    },
}

enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Scenario { .. } | Error::InvalidInput(_) | Error::ZeroDenominator => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Mismatch(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Outcome {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// Problems that make a report fail: baseline discrepancies, rejected
/// certificates, and polynomials with a root.
fn problems(file: &ReportFile) -> Vec<String> {
    let r = &file.report;
    let mut out: Vec<String> = r
        .baseline_diff
        .iter()
        .map(|d| format!("{}: expected {}, found {}", d.path, d.expected, d.found))
        .collect();
    for e in r.eliminations.iter().filter(|e| !e.verified) {
        out.push(format!("case {}: certificate rejected", e.case_id));
    }
    for p in &r.polynomials {
        if let Some(Certificate::RootFound { root }) = &p.certificate {
            out.push(format!("polynomial {}: root m = {root}", p.label));
        } else if !p.verified {
            out.push(format!("polynomial {}: not certified", p.label));
        }
    }
    out.into_iter().map(|p| format!("lemma {}: {p}", r.lemma)).collect()
}

fn finish(files: &[ReportFile]) -> Outcome {
    let all: Vec<String> = files.iter().flat_map(problems).collect();
    if all.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(all.join("\n")))
    }
}

fn render(files: &[ReportFile], format: Format, many: bool) -> Vec<u8> {
    if !many {
        return emit_report(&files[0], format);
    }
    match format {
        Format::Json => {
            let mut out = b"[\n".to_vec();
            for (i, f) in files.iter().enumerate() {
                let mut one = emit_report(f, format);
                one.pop();
                out.extend(one);
                out.extend_from_slice(if i + 1 < files.len() { b",\n" } else { b"\n" });
            }
            out.extend_from_slice(b"]\n");
            out
        }
        Format::Markdown => files
            .iter()
            .map(|f| emit_report(f, format))
            .collect::<Vec<_>>()
            .join(&b"\n"[..]),
    }
}

fn cmd_reproduce(lemma: &str, format: Format, out: Option<&Path>) -> Outcome {
    let (ids, many) = if lemma.eq_ignore_ascii_case("all") {
        (LemmaId::ALL.to_vec(), true)
    } else {
        (vec![lemma.parse::<LemmaId>()?], false)
    };
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || reproduce(id))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("replay thread panicked"))
            .collect()
    });
    let files = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    write_out(out, &render(&files, format, many))?;
    finish(&files)
}

fn cmd_run(path: &Path, format: Format, out: Option<&Path>) -> Outcome {
    let input = read(path)?;
    let file = replay(&input)?;
    write_out(out, &emit_report(&file, format))?;
    finish(std::slice::from_ref(&file))
}

fn cmd_enumerate(path: &Path) -> Outcome {
    let spec = parse_scenario(&read(path)?)?;
    let LemmaMode::Enumerate(e) = &spec.mode else {
        return Err(Failure::Input("scenario has no enumeration fields".into()));
    };
    let inv = derive_invariants(&e.diamond)?;
    let sys = e.constraint_system()?;
    let mut cases = Vec::new();
    for sol in enumerate_cases(&sys)? {
        let numbers = char_number_table(&sol, &inv)?;
        cases.push(json!({ "case": sol, "degree": sol.degree().to_string(), "numbers": numbers }));
    }
    let doc = json!({ "lemma": spec.id, "invariants": inv, "cases": cases });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("serializes");
    bytes.push(b'\n');
    write_out(None, &bytes)
}

fn cmd_eliminate(coeffs: &[String], max_modulus: u64) -> Outcome {
    let parsed = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::Input(format!("coeffs[{i}]: `{c}` is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = IntPoly::from_descending(parsed);
    let cert = eliminate(&p, max_modulus, None)?;
    let verified = check_certificate(&p, &cert).is_ok();
    let doc = json!({ "polynomial": p, "certificate": cert, "verified": verified });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("serializes");
    bytes.push(b'\n');
    write_out(None, &bytes)?;
    match cert {
        Certificate::RootFound { root } => Err(Failure::Mismatch(format!("root found: m = {root}"))),
        _ if !verified => Err(Failure::Mismatch("certificate failed verification".into())),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Reproduce {
            lemma,
            format,
            out,
        } => cmd_reproduce(lemma, (*format).into(), out.as_deref()),
        Command::Run {
            scenario,
            format,
            out,
        } => cmd_run(scenario, (*format).into(), out.as_deref()),
        Command::Enumerate { scenario } => cmd_enumerate(scenario),
        Command::Eliminate {
            coeffs,
            max_modulus,
        } => cmd_eliminate(coeffs, *max_modulus),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("chern-gate: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("chern-gate: {msg}");
            ExitCode::from(2)
        }
    }
}
