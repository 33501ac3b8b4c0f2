//! Command-line front end. [`run`] takes the full argument vector and
//! returns the exit code with captured standard output and error, so the
//! binary and the tests share one code path.
//!
//! Exit codes: `0` success, `1` a verification failed, `2` usage or domain
//! error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inhomogeneous::{
    render_table, solve_inhomogeneous_with_degree, table, verify_inhomogeneous, InhomogeneousRelation,
};
use crate::numbers::{parse_rational, serde_rational, Rational};
use crate::quasi::{quasi_ratio_track, quasi_recursive};
use crate::recurrence::closed_form::printed;
use crate::recurrence::{
    detect_minimal_recurrence, kbonacci_classical, kbonacci_q, ninebonacci_pq, ninebonacci_qlimit, pentanacci_pq,
    verify_recurrence, verify_recurrence_window, Recurrence, VerificationReport,
};
use crate::structure::{bracket_from_parts, parse_mu_list, SequenceKind, StructureFunction};

/// Environment variable bounding `detect --max-order`.
pub const MAX_ORDER_CAP_VAR: &str = "KBONACCI_MAX_ORDER_CAP";
pub const DEFAULT_MAX_ORDER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Outcome of `detect`: `order` and `coefficients` are `null` when no
/// relation of order `<= max_order` exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub apply_to: SequenceKind,
    pub max_order: usize,
    pub order: Option<usize>,
    #[serde(default, with = "serde_rational::option_vec")]
    pub coefficients: Option<Vec<Rational>>,
}

impl Detection {
    pub fn recurrence(&self) -> Option<Recurrence> {
        self.coefficients.clone().and_then(|c| Recurrence::new(c).ok())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "kbonacci",
    version,
    about = "Exact k-bonacci analysis of deformed oscillator spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the payload to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Classical,
    Q,
    Pentanacci,
    Ninebonacci,
    NinebonacciQlimit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BracketArg {
    Classical,
    Q,
    Pq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ApplyTo {
    Phi,
    Energy,
}

impl From<ApplyTo> for SequenceKind {
    fn from(a: ApplyTo) -> Self {
        match a {
            ApplyTo::Phi => SequenceKind::Phi,
            ApplyTo::Energy => SequenceKind::Energy,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Ratio,
    Recursive,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// One comma-separated flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RationalList(Vec<Rational>);

fn rational_list_arg(s: &str) -> std::result::Result<RationalList, String> {
    parse_mu_list(s).map(RationalList).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct SfArgs {
    /// Read the structure function from a JSON file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["bracket", "p", "q", "mu"])]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    bracket: Option<BracketArg>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    p: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    q: Option<Rational>,
    /// Comma-separated `mu_1,...,mu_r`.
    #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true)]
    mu: Option<RationalList>,
}

impl SfArgs {
    fn build(&self) -> Result<StructureFunction> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())));
        }
        let tag = match self.bracket.unwrap_or(BracketArg::Classical) {
            BracketArg::Classical => "classical",
            BracketArg::Q => "q",
            BracketArg::Pq => "pq",
        };
        if tag != "pq" && self.p.is_some() {
            return Err(Error::Domain(format!("--p is not a parameter of the {tag} bracket")));
        }
        if tag == "classical" && self.q.is_some() {
            return Err(Error::Domain("--q is not a parameter of the classical bracket".into()));
        }
        let bracket = bracket_from_parts(tag, self.p.clone(), self.q.clone())?;
        StructureFunction::new(bracket, self.mu.clone().map(|m| m.0).unwrap_or_default())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levels n = 0..=n_max with phi(n) and E_n.
    Spectrum {
        #[command(flatten)]
        sf: SfArgs,
        #[arg(long)]
        n_max: u64,
    },
    /// Minimal-order constant-coefficient recurrence.
    Detect {
        #[command(flatten)]
        sf: SfArgs,
        /// Defaults to the sequence-space dimension, which bounds the order.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, value_enum, default_value_t = ApplyTo::Energy)]
        apply_to: ApplyTo,
    },
    /// Closed-form coefficient families.
    Coefficients {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        p: Option<Rational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        q: Option<Rational>,
        /// Emit the typeset expressions, misprints included.
        #[arg(long)]
        as_printed: bool,
        /// Extend the relation by shifted copies with these multipliers.
        #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true)]
        extend: Option<RationalList>,
    },
    /// Exact check of a constant-coefficient recurrence.
    Verify {
        #[command(flatten)]
        sf: SfArgs,
        /// Comma-separated `lambda_0,...,lambda_(k-1)`.
        #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true, required_unless_present = "recurrence")]
        coefficients: Option<RationalList>,
        /// Recurrence JSON as emitted by `coefficients` or `detect`.
        #[arg(long, value_name = "FILE", conflicts_with = "coefficients")]
        recurrence: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ApplyTo::Energy)]
        apply_to: ApplyTo,
        /// Explicit inclusive window `start,end` instead of the certification window.
        #[arg(long, value_name = "START,END")]
        window: Option<String>,
    },
    /// Inhomogeneous two-term relation for classical families.
    Inhom {
        #[command(flatten)]
        sf: SfArgs,
        /// Inhomogeneity degree, at least r.
        #[arg(long)]
        degree: Option<usize>,
        /// Verify a relation JSON instead of solving.
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
    },
    /// Level-dependent two-term coefficients.
    Quasi {
        #[command(flatten)]
        sf: SfArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Ratio)]
        method: MethodArg,
        /// lambda_0 for the recursive method.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Option<Rational>,
        #[arg(long, default_value_t = 1)]
        n_start: u64,
        #[arg(long)]
        n_end: u64,
    },
    /// Coefficient table of the inhomogeneous relation for r = 1..=k_max.
    Table {
        #[arg(long, default_value_t = 5)]
        k_max: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("payload types serialize");
    s.push('\n');
    s
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
}

fn max_order_cap() -> Result<usize> {
    match std::env::var(MAX_ORDER_CAP_VAR) {
        Err(_) => Ok(DEFAULT_MAX_ORDER_CAP),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| Error::Domain(format!("{MAX_ORDER_CAP_VAR}={v:?} is not a positive integer"))),
    }
}

fn only_formats(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "--format {} is not available for {command}",
            format.to_possible_value().expect("no skipped variants").get_name()
        )))
    }
}

fn report_payload(report: &VerificationReport) -> std::result::Result<String, Failure> {
    let text = json(report);
    if report.holds {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn execute(cli: &Cli) -> std::result::Result<String, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Spectrum { sf, n_max } => {
            only_formats(format, &[Format::Json, Format::Csv], "spectrum")?;
            let spectrum = sf.build()?.spectrum(*n_max)?;
            Ok(if format == Format::Csv {
                spectrum.to_csv()
            } else {
                json(&spectrum)
            })
        }
        Command::Detect {
            sf,
            max_order,
            apply_to,
        } => {
            only_formats(format, &[Format::Json], "detect")?;
            let sf = sf.build()?;
            let cap = max_order_cap()?;
            let max_order = max_order.unwrap_or_else(|| sf.sequence_space_dimension().min(cap));
            if max_order > cap {
                return Err(Error::Domain(format!(
                    "--max-order {max_order} exceeds the cap {cap} set by {MAX_ORDER_CAP_VAR}"
                ))
                .into());
            }
            let kind = SequenceKind::from(*apply_to);
            let found = detect_minimal_recurrence(&sf, max_order, kind)?;
            Ok(json(&Detection {
                apply_to: kind,
                max_order,
                order: found.as_ref().map(Recurrence::order),
                coefficients: found.map(Recurrence::into_coefficients),
            }))
        }
        Command::Coefficients {
            family,
            k,
            p,
            q,
            as_printed,
            extend,
        } => {
            only_formats(format, &[Format::Json], "coefficients")?;
            let need = |v: &Option<Rational>, name: &str| {
                v.clone()
                    .ok_or_else(|| Error::Domain(format!("--family needs --{name}")))
            };
            let need_k = || k.ok_or_else(|| Error::Domain("--family needs --k".into()));
            let unexpected = |ok: bool, what: &str| {
                if ok {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("{what} does not apply to this family")))
                }
            };
            unexpected(
                !*as_printed || matches!(family, Family::Ninebonacci | Family::NinebonacciQlimit),
                "--as-printed",
            )?;
            let rec = match family {
                Family::Classical => {
                    unexpected(p.is_none() && q.is_none(), "--p/--q")?;
                    kbonacci_classical(need_k()?)?
                }
                Family::Q => {
                    unexpected(p.is_none(), "--p")?;
                    kbonacci_q(need_k()?, &need(q, "q")?)?
                }
                Family::Pentanacci => {
                    unexpected(k.is_none(), "--k")?;
                    pentanacci_pq(&need(p, "p")?, &need(q, "q")?)?
                }
                Family::Ninebonacci => {
                    unexpected(k.is_none(), "--k")?;
                    let (p, q) = (need(p, "p")?, need(q, "q")?);
                    if *as_printed {
                        printed::ninebonacci_pq(&p, &q)?
                    } else {
                        ninebonacci_pq(&p, &q)?
                    }
                }
                Family::NinebonacciQlimit => {
                    unexpected(k.is_none() && p.is_none(), "--k/--p")?;
                    let q = need(q, "q")?;
                    if *as_printed {
                        printed::ninebonacci_qlimit(&q)?
                    } else {
                        ninebonacci_qlimit(&q)?
                    }
                }
            };
            let rec = match extend {
                Some(m) => rec.extend(&m.0)?,
                None => rec,
            };
            Ok(json(&rec))
        }
        Command::Verify {
            sf,
            coefficients,
            recurrence,
            apply_to,
            window,
        } => {
            only_formats(format, &[Format::Json], "verify")?;
            let sf = sf.build()?;
            let rec = match (coefficients, recurrence) {
                (Some(c), _) => Recurrence::new(c.0.clone())?,
                (None, Some(path)) => read_json::<Recurrence>(path)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let kind = SequenceKind::from(*apply_to);
            let report = match window {
                None => verify_recurrence(&sf, &rec, kind),
                Some(w) => {
                    let (a, b) = parse_window(w)?;
                    verify_recurrence_window(&sf, &rec, kind, a, b)?
                }
            };
            report_payload(&report)
        }
        Command::Inhom { sf, degree, check } => {
            only_formats(format, &[Format::Json], "inhom")?;
            let sf = sf.build()?;
            match check {
                Some(path) => {
                    if degree.is_some() {
                        return Err(Error::Domain("--degree does not apply with --check".into()).into());
                    }
                    let rel: InhomogeneousRelation = read_json(path)?;
                    report_payload(&verify_inhomogeneous(&sf, &rel)?)
                }
                None => {
                    let rel = solve_inhomogeneous_with_degree(&sf, degree.unwrap_or(sf.r()))?;
                    Ok(json(&rel))
                }
            }
        }
        Command::Quasi {
            sf,
            method,
            c,
            n_start,
            n_end,
        } => {
            only_formats(format, &[Format::Json, Format::Csv], "quasi")?;
            let sf = sf.build()?;
            let track = match method {
                MethodArg::Ratio => {
                    if c.is_some() {
                        return Err(Error::Domain("--c applies to --method recursive only".into()).into());
                    }
                    quasi_ratio_track(&sf, *n_start, *n_end)?
                }
                MethodArg::Recursive => {
                    if *n_start != 1 {
                        return Err(Error::Domain("the recursive track always starts at n = 1".into()).into());
                    }
                    let c = c.clone().unwrap_or_else(|| Rational::from_integer(0.into()));
                    quasi_recursive(&sf, &c, *n_end)?
                }
            };
            Ok(if format == Format::Csv {
                track.to_csv()
            } else {
                json(&track)
            })
        }
        Command::Table { k_max } => {
            only_formats(format, &[Format::Json, Format::Text], "table")?;
            let rows = table(*k_max)?;
            Ok(if format == Format::Text {
                render_table(&rows)
            } else {
                json(&rows)
            })
        }
    }
}

fn parse_window(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::Domain(format!("window {text:?} must be START,END"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (code, payload, stderr) = match execute(&cli) {
        Ok(payload) => (0, payload, String::new()),
        Err(Failure::Verification(payload)) => (1, payload, "verification failed\n".to_string()),
        Err(Failure::Usage(msg)) => {
            return RunOutcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    match &cli.output {
        None => RunOutcome {
            code,
            stdout: payload,
            stderr,
        },
        Some(path) => match std::fs::write(path, payload) {
            Ok(()) => RunOutcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => RunOutcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
    }
}
