//! Command-line front end: `ezbasis <command> [options]`.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage
//! or precondition errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::analytic::{independence_witness, pole_table, verify_pole_catalog, verify_relations_exact, zeta_shift_expansion};
use crate::coeffs::{build_matrix_a, split_a1_a2, verify_power_sum_identity, CoeffMatrix};
use crate::emit;
use crate::error::{Error, Result};
use crate::numeval::numeric_verify;
use crate::relations::{basis_representation, relation_family, residue_system_representation, RelationVector};
use crate::report::VerificationReport;
use crate::trilinalg::{invert_cofactor, invert_forward, row_sums};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ezbasis", version, about = "Exact relations among the double zeta functions zeta(-c, s+c)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Exact,
    Numeric,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixPart {
    A,
    A1,
    A2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A1,
    A2,
    Both,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The coefficient matrix A (or its blocks A1, A2) for a given N.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "a")]
        part: MatrixPart,
        #[command(flatten)]
        out: Output,
    },
    /// Exact inverses of A1 and A2.
    Invert {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
        /// Also compute the cofactor-formula inverse and require agreement.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The relation family A1^{-1} z1 - A2^{-1} z2 = 0.
    Relations {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// zeta(-2m-1, s+2m+1) over the even-index basis.
    Basis {
        #[arg(long)]
        m: usize,
        /// Emit every representation from 0 to m.
        #[arg(long)]
        all: bool,
        /// Derive the coefficients from the residue system instead of the matrices.
        #[arg(long)]
        residues: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Poles and residues of zeta(-n, s+n).
    Poles {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// zeta(-c, s+c) as a combination of shifted Riemann zeta functions.
    Expand {
        #[arg(long, visible_alias = "n")]
        c: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the exact and/or numeric verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "exact")]
        mode: VerifyMode,
        #[arg(long)]
        n: usize,
        /// Evaluation point for numeric mode, e.g. `5` or `4+3i`.
        #[arg(long, default_value = "5", value_parser = parse_complex)]
        s: Complex64,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (`j` accepted for `i`).
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number {text:?}");
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn matrix_render(m: &CoeffMatrix, name: &str, format: Format) -> String {
    match format {
        Format::Json => to_json(m),
        Format::Latex => format!("{name}=\n{}", emit::matrix_latex(m)),
        Format::Csv => emit::matrix_csv(m),
        Format::Text => format!("{name}:\n{}", emit::matrix_text(m)),
    }
}

fn join_blocks(format: Format, blocks: Vec<(String, String)>, json_value: serde_json::Value) -> String {
    match format {
        Format::Json => to_json(&json_value),
        Format::Csv => blocks
            .into_iter()
            .map(|(name, body)| format!("# {name}\n{body}"))
            .collect::<Vec<_>>()
            .join(""),
        _ => blocks.into_iter().map(|(_, b)| b).collect::<Vec<_>>().join(",\n"),
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn exact_suite(n: usize) -> Result<Vec<VerificationReport>> {
    let mut reports = vec![verify_relations_exact(n)?];

    let mut cross = VerificationReport::new(format!("matrix vs residue representations, 2m+1 <= {n}"));
    for m in 0..=(n.max(1) - 1) / 2 {
        let via_matrix = basis_representation(m);
        match residue_system_representation(m) {
            Ok(via_residues) => cross.record(via_matrix == via_residues, || format!("m = {m}: representations differ")),
            Err(e) => cross.record(false, || format!("m = {m}: {e}")),
        }
    }
    reports.push(cross);

    let mut sums = VerificationReport::new(format!("inverse row sums, N = {n}"));
    let (a1, a2) = split_a1_a2(&build_matrix_a(n)?)?;
    for (name, m) in [("A1", &a1), ("A2", &a2)] {
        let rs = row_sums(&invert_forward(m)?);
        let ok = rs.iter().enumerate().all(|(i, x)| if i == 0 { x.is_one() } else { x.is_zero() });
        sums.record(ok, || format!("{name}^-1 row sums {rs:?}"));
    }
    reports.push(sums);

    reports.push(verify_power_sum_identity(n));
    reports.push(verify_pole_catalog(n));

    let mut witnesses = VerificationReport::new(format!("independence witnesses, 2m <= {n}"));
    for m in 1..=n / 2 {
        let w = independence_witness(m);
        witnesses.record(w.is_ok(), || format!("m = {m}: {}", w.clone().unwrap_err()));
    }
    reports.push(witnesses);
    Ok(reports)
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Matrix { n, part, out } => {
            let a = build_matrix_a(*n)?;
            let text = match part {
                MatrixPart::A => matrix_render(&a, "A", out.format),
                MatrixPart::A1 | MatrixPart::A2 => {
                    let (a1, a2) = split_a1_a2(&a)?;
                    if *part == MatrixPart::A1 {
                        matrix_render(&a1, "A_1", out.format)
                    } else {
                        matrix_render(&a2, "A_2", out.format)
                    }
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Invert { n, which, oracle, out } => {
            let (a1, a2) = split_a1_a2(&build_matrix_a(*n)?)?;
            let selected: Vec<(&str, &CoeffMatrix)> = match which {
                Which::A1 => vec![("A_1^{-1}", &a1)],
                Which::A2 => vec![("A_2^{-1}", &a2)],
                Which::Both => vec![("A_1^{-1}", &a1), ("A_2^{-1}", &a2)],
            };
            let mut passed = true;
            let mut blocks = Vec::new();
            let mut json_map = serde_json::Map::new();
            for (name, m) in selected {
                let inv = invert_forward(m)?;
                if *oracle && invert_cofactor(m)? != inv {
                    passed = false;
                    eprintln!("{name}: cofactor inverse disagrees with forward substitution");
                }
                let key = if name.starts_with("A_1") { "A1_inverse" } else { "A2_inverse" };
                json_map.insert(key.to_string(), serde_json::to_value(&inv).expect("serializable"));
                blocks.push((key.to_string(), matrix_render(&inv, name, out.format)));
            }
            let text = join_blocks(out.format, blocks, serde_json::Value::Object(json_map));
            Ok(Outcome { text, passed })
        }
        Command::Relations { n, out } => {
            let family = relation_family(*n)?;
            let text = match out.format {
                Format::Json => {
                    let rows: Vec<_> = family
                        .iter()
                        .enumerate()
                        .map(|(i, r)| {
                            let coeffs: serde_json::Map<String, serde_json::Value> = r
                                .coeffs
                                .iter()
                                .enumerate()
                                .map(|(c, x)| (RelationVector::symbol(c), json!(x.to_string())))
                                .collect();
                            json!({"row": i + 1, "provenance": r.provenance, "coeffs": coeffs})
                        })
                        .collect();
                    to_json(&rows)
                }
                Format::Csv => {
                    let mut s = String::from("relation,slot,coeff\n");
                    for (i, r) in family.iter().enumerate() {
                        for (c, x) in r.coeffs.iter().enumerate() {
                            s.push_str(&format!("{},{},{}\n", i + 1, RelationVector::symbol(c), x));
                        }
                    }
                    s
                }
                Format::Latex => {
                    let lines: Vec<String> = family
                        .iter()
                        .map(|r| {
                            let mut first = true;
                            let mut line = String::new();
                            for (c, x) in r.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                let symbol = if c == 0 {
                                    "\\zeta(0, s)/2".to_string()
                                } else {
                                    crate::relations::BasisElement { c }.latex()
                                };
                                let sign = if x.is_negative() { "- " } else if first { "" } else { "+ " };
                                let mag = x.abs();
                                let coef = if mag.is_one() { String::new() } else { format!("({mag}) ") };
                                if !first {
                                    line.push(' ');
                                }
                                line.push_str(&format!("{sign}{coef}{symbol}"));
                                first = false;
                            }
                            format!("{line} &= 0")
                        })
                        .collect();
                    format!("\\begin{{align*}}\n{}\n\\end{{align*}}", lines.join(", \\\\\n"))
                }
                Format::Text => family.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
            };
            Ok(Outcome::ok(text))
        }
        Command::Basis { m, all, residues, out } => {
            let range = if *all { 0..=*m } else { *m..=*m };
            let reps = range
                .map(|k| if *residues { residue_system_representation(k) } else { Ok(basis_representation(k)) })
                .collect::<Result<Vec<_>>>()?;
            let text = match out.format {
                Format::Json if reps.len() == 1 => to_json(&reps[0]),
                Format::Json => to_json(&reps),
                Format::Latex if reps.len() == 1 => emit::representation_latex(&reps[0]),
                Format::Latex => emit::representations_latex(&reps),
                Format::Csv => {
                    let mut s = emit::REPRESENTATION_CSV_HEADER.to_string();
                    reps.iter().for_each(|r| s.push_str(&emit::representation_csv_rows(r)));
                    s
                }
                Format::Text => reps.iter().map(emit::representation_text).collect::<Vec<_>>().join("\n"),
            };
            Ok(Outcome::ok(text))
        }
        Command::Poles { n, out } => {
            let t = pole_table(*n);
            let text = match out.format {
                Format::Json => to_json(&t),
                Format::Latex => emit::poles_latex(&t),
                Format::Csv => emit::poles_csv(&t),
                Format::Text => emit::poles_text(&t),
            };
            Ok(Outcome::ok(text))
        }
        Command::Expand { c, out } => {
            let e = zeta_shift_expansion(*c);
            let text = match out.format {
                Format::Json => to_json(&e),
                Format::Csv => {
                    let mut s = String::from("c,j,q\n");
                    for (j, q) in e.q.iter().enumerate() {
                        s.push_str(&format!("{c},{j},{q}\n"));
                    }
                    s
                }
                Format::Latex => format!(
                    "\\zeta(-{c}, s + {c}) = {}",
                    e.render().replace("*zeta", " \\zeta")
                ),
                Format::Text => format!("zeta(-{c},s+{c}) = {}", e.render()),
            };
            Ok(Outcome::ok(text))
        }
        Command::Verify { mode, n, s, cutoff, tol, out } => {
            let mut reports = Vec::new();
            let mut numeric = None;
            if matches!(mode, VerifyMode::Exact | VerifyMode::All) {
                reports = exact_suite(*n)?;
            }
            if matches!(mode, VerifyMode::Numeric | VerifyMode::All) {
                numeric = Some(numeric_verify(*n, *s, *cutoff, *tol)?);
            }
            let passed = reports.iter().all(VerificationReport::passed) && numeric.as_ref().is_none_or(|r| r.passed());
            let text = match out.format {
                Format::Json => to_json(&json!({"passed": passed, "exact": reports, "numeric": numeric})),
                Format::Csv => {
                    let mut t = String::from("check,checked,failed\n");
                    for r in &reports {
                        t.push_str(&format!("\"{}\",{},{}\n", r.name, r.checked, r.failures.len()));
                    }
                    if let Some(nr) = &numeric {
                        t.push_str("label,residual,bound\n");
                        for l in &nr.lines {
                            t.push_str(&format!("{},{:e},{:e}\n", l.label, l.residual, l.bound));
                        }
                    }
                    t
                }
                _ => {
                    let mut parts: Vec<String> = reports.iter().map(ToString::to_string).collect();
                    if let Some(nr) = &numeric {
                        parts.push(nr.to_string());
                    }
                    parts.join("\n")
                }
            };
            Ok(Outcome { text, passed })
        }
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Matrix { out, .. }
        | Command::Invert { out, .. }
        | Command::Relations { out, .. }
        | Command::Basis { out, .. }
        | Command::Poles { out, .. }
        | Command::Expand { out, .. }
        | Command::Verify { out, .. } => out,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("EZBASIS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool already exists, which is fine.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Verification(_) => EXIT_VERIFY_FAILED,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut text = outcome.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &output_of(&cli.command).output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        eprintln!("verification failed");
        EXIT_VERIFY_FAILED
    }
}
