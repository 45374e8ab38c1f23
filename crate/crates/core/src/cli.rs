//! Command-line surface: `gen`, `verify`, `spectrum`, `eval`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::Error;
use crate::ladder::Residual;
use crate::polynomials::{self, AssocMethod, LegendreMethod};
use crate::ring::{fraction_string, parse_fraction, HalfPower, Rational};
use crate::shape_invariance::{legendre_chain, spectrum, SpectrumResult, SuperpotentialFamily};
use crate::sweep::{self, describe_params, Bounds, Suite, SweepOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "legendre-susy",
    version,
    about = "Exact ladder-operator construction and verification for Legendre polynomials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Include the (-1)^m Condon-Shortley phase in associated polynomials.
    #[arg(long, global = true)]
    pub condon_shortley: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Legendre or associated Legendre polynomial.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Degree n.
        n: u32,
        /// Order m (associated only), |m| <= n.
        #[arg(allow_negative_numbers = true)]
        m: Option<i64>,
        /// Construction route; defaults to the ladder.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Run an exact verification sweep.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_k: u32,
    },
    /// Print the levels of a shape-invariant chain.
    Spectrum {
        #[arg(value_enum)]
        chain: ChainArg,
        /// Number of levels above the ground state.
        levels: u32,
        /// Oscillator frequency, e.g. `1`, `3/2` or `1.5`.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Evaluate P_n or P_{n,m} at a point in [-1, 1].
    Eval {
        n: u32,
        #[arg(allow_negative_numbers = true)]
        m: Option<i64>,
        /// A decimal in [-1, 1], or `cos:<theta>`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Legendre,
    Assoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ladder,
    Rodrigues,
    ClosedForm,
    Derivative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Ode,
    Identities,
    Partners,
    Orthogonality,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChainArg {
    Legendre,
    Oscillator,
}

struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    let text = match &cli.command {
        Command::Gen { kind, n, m, method } => {
            gen(*kind, *n, *m, *method, cli.condon_shortley, cli.format)?
        }
        Command::Verify {
            suite,
            max_n,
            max_k,
        } => {
            let suite = match suite {
                SuiteArg::Ode => Suite::Ode,
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Partners => Suite::Partners,
                SuiteArg::Orthogonality => Suite::Orthogonality,
                SuiteArg::All => Suite::All,
            };
            let outcome = sweep::run_suite(
                suite,
                Bounds {
                    max_n: *max_n,
                    max_k: *max_k,
                },
            );
            write_out(out, &render_sweep(&outcome, cli.format))?;
            return Ok(if outcome.all_hold() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            });
        }
        Command::Spectrum {
            chain,
            levels,
            omega,
        } => {
            let result = match chain {
                ChainArg::Legendre => legendre_chain(*levels as usize),
                ChainArg::Oscillator => {
                    let omega = omega.as_deref().ok_or_else(|| {
                        UsageError("--omega is required for the oscillator chain".into())
                    })?;
                    let fam = SuperpotentialFamily::oscillator(parse_rational_arg(omega)?)?;
                    spectrum(&fam, *levels as usize)?
                }
            };
            render_spectrum(*chain, &result, cli.format)
        }
        Command::Eval { n, m, x } => {
            let xv = parse_point(x)?;
            let element = polynomial(*n, m.unwrap_or(0), cli.condon_shortley)?;
            let value = element.eval_f64(xv)?;
            match cli.format {
                Format::Json => {
                    json!({"n": n, "m": m.unwrap_or(0), "x": xv, "value": value}).to_string()
                }
                _ => format!("{value}"),
            }
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), UsageError> {
    writeln!(out, "{text}").map_err(|e| UsageError(e.to_string()))
}

fn polynomial(n: u32, m: i64, condon_shortley: bool) -> Result<HalfPower, Error> {
    if m == 0 {
        Ok(polynomials::legendre(n, LegendreMethod::Ladder))
    } else {
        polynomials::assoc_legendre(n, m, AssocMethod::Ladder, condon_shortley)
    }
}

fn gen(
    kind: GenKind,
    n: u32,
    m: Option<i64>,
    method: Option<MethodArg>,
    condon_shortley: bool,
    format: Format,
) -> Result<String, UsageError> {
    let (m, element) = match kind {
        GenKind::Legendre => {
            if m.is_some_and(|m| m != 0) {
                return Err(UsageError(
                    "legendre takes no order; use `gen assoc`".into(),
                ));
            }
            let element = match method.unwrap_or(MethodArg::Ladder) {
                MethodArg::Ladder => polynomials::legendre(n, LegendreMethod::Ladder),
                MethodArg::Rodrigues => polynomials::legendre(n, LegendreMethod::Rodrigues),
                MethodArg::ClosedForm if n == 0 => HalfPower::one(),
                MethodArg::ClosedForm => polynomials::legendre_closed_form(n),
                MethodArg::Derivative => {
                    return Err(UsageError(
                        "--method derivative applies to assoc only".into(),
                    ))
                }
            };
            (0, element)
        }
        GenKind::Assoc => {
            let m = m.ok_or_else(|| UsageError("assoc needs an order m".into()))?;
            let method = match method.unwrap_or(MethodArg::Ladder) {
                MethodArg::Ladder => AssocMethod::Ladder,
                MethodArg::Derivative => AssocMethod::Derivative,
                other => {
                    return Err(UsageError(format!(
                        "--method {other:?} does not apply to assoc; use ladder or derivative"
                    )))
                }
            };
            (
                m,
                polynomials::assoc_legendre(n, m, method, condon_shortley)?,
            )
        }
    };
    Ok(match format {
        Format::Text => element.to_text(),
        Format::Latex => element.to_latex(),
        Format::Json => json!({
            "n": n,
            "m": m,
            "element": element,
            "latex": element.to_latex(),
        })
        .to_string(),
    })
}

fn render_sweep(outcome: &SweepOutcome, format: Format) -> String {
    let summary = outcome.summary();
    if format == Format::Json {
        return json!({
            "reports": outcome.reports,
            "skipped": outcome.skipped,
            "errors": outcome.errors,
            "summary": summary,
        })
        .to_string();
    }
    let mut lines = Vec::new();
    for r in &outcome.reports {
        if r.holds {
            lines.push(format!("{} [{}] holds", r.identity, r.params_text()));
        } else {
            let residual = match &r.residual {
                Residual::Element(e) => e.to_text(),
                Residual::Operator(op) => serde_json::to_string(op).unwrap_or_default(),
            };
            lines.push(format!(
                "{} [{}] FAILS, residual {residual}",
                r.identity,
                r.params_text()
            ));
        }
    }
    for s in &outcome.skipped {
        lines.push(format!(
            "{} [{}] skipped: {}",
            s.identity,
            describe_params(&s.params),
            s.reason
        ));
    }
    for e in &outcome.errors {
        lines.push(format!(
            "{} [{}] ERROR: {}",
            e.identity,
            describe_params(&e.params),
            e.error
        ));
    }
    lines.push(format!(
        "summary: {} checks, {} passed, {} failed, {} skipped",
        summary.total, summary.passed, summary.failed, summary.skipped
    ));
    lines.join("\n")
}

fn render_spectrum(chain: ChainArg, result: &SpectrumResult, format: Format) -> String {
    let join = |v: &[Rational]| v.iter().map(fraction_string).collect::<Vec<_>>().join(" ");
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(result).expect("spectrum serializes");
            v["chain"] = json!(match chain {
                ChainArg::Legendre => "legendre",
                ChainArg::Oscillator => "oscillator",
            });
            v.to_string()
        }
        Format::Text => format!(
            "params: {}\nshifts: {}\nlevels: {}",
            join(&result.params),
            join(&result.shifts),
            join(&result.levels)
        ),
        Format::Latex => result
            .levels
            .iter()
            .enumerate()
            .map(|(n, e)| format!("E_{{{n}}} = {}", latex_fraction(e)))
            .collect::<Vec<_>>()
            .join(" \\\\\n"),
    }
}

fn latex_fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// `3/2`, `-4`, or a finite decimal like `1.25`, parsed exactly.
fn parse_rational_arg(s: &str) -> Result<Rational, UsageError> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        let digits = format!("{whole}{frac}");
        let num: BigInt = digits
            .parse()
            .map_err(|_| UsageError(format!("cannot parse `{s}` as a number")))?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        return Ok(Rational::new(num, den));
    }
    parse_fraction(s).map_err(|_| UsageError(format!("cannot parse `{s}` as a number")))
}

fn parse_point(s: &str) -> Result<f64, UsageError> {
    let bad = || UsageError(format!("cannot parse `{s}` as a point"));
    match s.strip_prefix("cos:") {
        Some(theta) => theta.trim().parse::<f64>().map(f64::cos).map_err(|_| bad()),
        None => s.trim().parse::<f64>().map_err(|_| bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("legendre-susy").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rational_args() {
        assert_eq!(parse_rational_arg("1.5").ok(), Some(crate::ring::rat(3, 2)));
        assert_eq!(parse_rational_arg("3/2").ok(), Some(crate::ring::rat(3, 2)));
        assert_eq!(
            parse_rational_arg("-0.25").ok(),
            Some(crate::ring::rat(-1, 4))
        );
        assert!(parse_rational_arg("abc").is_err());
    }

    #[test]
    fn gen_text() {
        assert_eq!(
            run_capture(&["gen", "legendre", "2"]),
            (0, "(3x^2 - 1)/2\n".into(), String::new())
        );
        let (code, out, _) = run_capture(&["gen", "legendre", "3", "--method", "closed-form"]);
        assert_eq!((code, out.as_str()), (0, "(5x^3 - 3x)/2\n"));
    }

    #[test]
    fn gen_method_mismatch_is_usage_error() {
        assert_eq!(
            run_capture(&["gen", "legendre", "2", "--method", "derivative"]).0,
            2
        );
        assert_eq!(
            run_capture(&["gen", "assoc", "2", "1", "--method", "rodrigues"]).0,
            2
        );
        assert_eq!(run_capture(&["gen", "assoc", "2"]).0, 2);
    }

    #[test]
    fn negative_order_and_condon_shortley() {
        let (code, out, _) = run_capture(&["gen", "assoc", "2", "-1"]);
        assert_eq!((code, out.as_str()), (0, "-x/2 (1 - x^2)^(1/2)\n"));
        let (_, out, _) = run_capture(&["--condon-shortley", "gen", "assoc", "2", "1"]);
        assert_eq!(out, "-3x (1 - x^2)^(1/2)\n");
    }

    #[test]
    fn eval_negative_point() {
        let (code, out, _) = run_capture(&["eval", "1", "--x", "-0.5"]);
        assert_eq!((code, out.as_str()), (0, "-0.5\n"));
    }

    #[test]
    fn spectrum_latex() {
        let (_, out, _) = run_capture(&[
            "spectrum",
            "oscillator",
            "2",
            "--omega",
            "1/2",
            "--format",
            "latex",
        ]);
        assert_eq!(
            out,
            "E_{0} = 0 \\\\\nE_{1} = \\frac{1}{2} \\\\\nE_{2} = 1\n"
        );
    }
}
