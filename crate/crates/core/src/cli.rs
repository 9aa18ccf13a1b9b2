//! Command-line surface: `gen`, `verify` and `padic`.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage error, 3 verification
//! failure.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use crate::algebra::{BiPoly, Rational, UniPoly, Var};
use crate::error::Error;
use crate::families::{family_table, FamilyId, FamilyTag};
use crate::format::{cells, parse_coeff_list, Shape};
use crate::identities::{check_config, verify_all, Grid, IdentityId, SuiteConfig};
use crate::padic::{convergence_check, Kind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

/// Largest `n_max` accepted by `gen`.
pub const GEN_N_CAP: usize = 200;
pub const PADIC_P_CAP: u64 = 97;

const AFTER_HELP: &str = "\
Values are exact. A rational is \"num/den\" in lowest terms (zero is \"0/1\").
A polynomial in one indeterminate is a coefficient array, index = degree.
A polynomial in x and lambda is a matrix, row = x-degree, column = lambda-degree.
In CSV the arrays are written [a;b;c] and [[a;b];[c;d]].";

#[derive(Parser, Debug)]
#[command(name = "t2poly", version, about = "Type 2 Bernoulli/Euler families, p-adic integrals and identity checks", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum JsonOnly {
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Bosonic,
    Fermionic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit rows n = 0..=n_max of a family.
    #[command(after_help = AFTER_HELP)]
    Gen {
        family: String,
        #[arg(long)]
        n_max: usize,
        /// Order r (second index l for degenerate_stirling1).
        #[arg(long)]
        r: Option<u32>,
        /// Rational value for x, or "symbolic".
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Rational value for lambda, or "symbolic".
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run identity checks; ids default to all.
    #[command(after_help = AFTER_HELP)]
    Verify {
        ids: Vec<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long)]
        m_max: Option<usize>,
        /// Comma separated list of d values.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        /// Run grids beyond the caps, with a warning.
        #[arg(long)]
        allow_exceed_caps: bool,
        /// Drop elapsed_ms so that output is byte-stable.
        #[arg(long)]
        omit_elapsed: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: JsonOnly,
    },
    /// Riemann-sum approximations of the bosonic or fermionic integral.
    Padic {
        #[arg(value_enum)]
        kind: KindArg,
        /// Coefficients of f, constant term first, e.g. "0,1".
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: u64,
        #[arg(long = "N-max", default_value_t = 3)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: JsonOnly,
    },
}

/// Failure of a command, mapped to an exit code.
enum Fail {
    Usage(String),
    Internal(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Internal(e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Internal(e.to_string())
    }
}

fn usage(e: impl ToString) -> Fail {
    Fail::Usage(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen { family, n_max, r, x, lambda, format } => {
            gen(&family, n_max, r, x.as_deref(), lambda.as_deref(), format, out)
        }
        Command::Verify { ids, n_max, r_max, m_max, d, allow_exceed_caps, omit_elapsed, format: _ } => {
            let overrides = Grid { n_max, r_max, m_max, d };
            verify(&ids, overrides, allow_exceed_caps, omit_elapsed, out, err)
        }
        Command::Padic { kind, f, p, n_max, format: _ } => padic(kind, &f, p, n_max, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Fail::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

/// `None` for symbolic, otherwise the value to substitute.
fn parse_value(flag: &str, v: Option<&str>, present: bool) -> Result<Option<Rational>, Fail> {
    match v {
        None | Some("symbolic") => Ok(None),
        Some(_) if !present => Err(usage(format!("this family has no {flag} to substitute"))),
        Some(s) => s.parse().map(Some).map_err(|e: Error| usage(format!("--{flag}: {e}"))),
    }
}

fn gen(
    family: &str,
    n_max: usize,
    r: Option<u32>,
    x: Option<&str>,
    lambda: Option<&str>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Fail> {
    let tag: FamilyTag = family.parse().map_err(usage)?;
    let id = FamilyId::new(tag, r).map_err(usage)?;
    if n_max > GEN_N_CAP {
        return Err(usage(format!("--n-max {n_max} exceeds {GEN_N_CAP}")));
    }
    let x_val = parse_value("x", x, tag.has_x())?;
    let l_val = parse_value("lambda", lambda, tag.has_lambda())?;
    let shape = Shape::from_flags(tag.has_x() && x_val.is_none(), tag.has_lambda() && l_val.is_none());

    let rows: Vec<(usize, BiPoly)> = family_table(id, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            let mut p = v.to_bipoly();
            if let Some(x) = &x_val {
                p = BiPoly::from(p.substitute(Var::X, x));
            }
            if let Some(l) = &l_val {
                p = BiPoly::from(p.substitute(Var::Lambda, l));
            }
            (n, p)
        })
        .collect();

    match format {
        Format::Csv => {
            let header = if r.is_some() { "n,r,value" } else { "n,value" };
            writeln!(out, "{header}")?;
            for (n, p) in &rows {
                let c = cells(p, shape)?.to_csv();
                match r {
                    Some(r) => writeln!(out, "{n},{r},{c}")?,
                    None => writeln!(out, "{n},{c}")?,
                }
            }
        }
        Format::Json => {
            let records = rows
                .iter()
                .map(|(n, p)| {
                    let mut rec = Map::new();
                    rec.insert("family".into(), json!(tag.name()));
                    rec.insert("n".into(), json!(n));
                    if let Some(r) = r {
                        rec.insert("r".into(), json!(r));
                    }
                    rec.insert("value_kind".into(), json!(shape.name()));
                    let c = cells(p, shape)?;
                    match shape {
                        Shape::Rational => {}
                        Shape::Poly(v) => {
                            rec.insert("indeterminate".into(), json!(v.name()));
                            let deg = if v == Var::X { p.degree_x() } else { p.degree_lambda() };
                            rec.insert("degree_bound".into(), json!(deg));
                        }
                        Shape::BiPoly => {
                            rec.insert("degree_x_bound".into(), json!(p.degree_x()));
                            rec.insert("degree_lambda_bound".into(), json!(p.degree_lambda()));
                        }
                    }
                    rec.insert("value".into(), c.to_json());
                    Ok(Json::Object(rec))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            writeln!(out, "{}", serde_json::to_string_pretty(&Json::Array(records)).expect("json"))?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(
    ids: &[String],
    overrides: Grid,
    allow_exceed_caps: bool,
    omit_elapsed: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Fail> {
    let ids = if ids.is_empty() || ids.iter().any(|s| s == "all") {
        None
    } else {
        Some(ids.iter().map(|s| s.parse::<IdentityId>()).collect::<Result<Vec<_>, _>>().map_err(usage)?)
    };
    let config = SuiteConfig { ids, overrides, allow_exceed_caps, perturbation: None };
    check_config(&config).map_err(usage)?;
    let reports = verify_all(&config);
    for r in &reports {
        for w in &r.warnings {
            writeln!(err, "warning: {}: {w}", r.id)?;
        }
    }
    let json: Vec<Json> = reports
        .iter()
        .map(|r| if omit_elapsed { r.comparable_json() } else { serde_json::to_value(r).expect("json") })
        .collect();
    writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("json"))?;
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILED })
}

fn padic(kind: KindArg, f: &str, p: u64, n_max: u32, out: &mut dyn Write) -> Result<i32, Fail> {
    let kind = match kind {
        KindArg::Bosonic => Kind::Bosonic,
        KindArg::Fermionic => Kind::Fermionic,
    };
    if p > PADIC_P_CAP {
        return Err(usage(format!("p = {p} exceeds {PADIC_P_CAP}")));
    }
    let coeffs = parse_coeff_list(f).map_err(|e| usage(format!("--f: {e}")))?;
    let poly = UniPoly::new(Var::X, coeffs);
    let report = convergence_check(&poly, p, kind, n_max).map_err(|e| match e {
        Error::NotOddPrime(_) | Error::DenominatorDivisibleByP(_) | Error::InvalidArgument(_) => usage(e),
        other => Fail::Internal(other.to_string()),
    })?;
    let rows: Vec<Json> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "kind": kind.name(),
                "p": p,
                "N": row.stage,
                "exact": report.exact.to_string(),
                "approx": row.approx.to_string(),
                "residue": row.residue.as_ref().map(|r| r.residue().to_string()),
                "modulus": row.residue.as_ref().map(|r| format!("{p}^{}", r.precision())),
                "known_precision": row.residue.as_ref().map(|r| r.known_precision()),
                "error_valuation": row.error_valuation,
                "precision_loss": report.precision_loss,
            })
        })
        .collect();
    writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json"))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("t2poly").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_csv_example() {
        let (code, out, _) = call(&["gen", "type2_bernoulli", "--n-max", "4", "--x", "0", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,value\n0,1/1\n1,0/1\n2,-1/12\n3,0/1\n4,7/240\n");
    }

    #[test]
    fn gen_json_daehee() {
        let (code, out, _) = call(&["gen", "daehee", "--n-max", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Json = serde_json::from_str(&out).unwrap();
        let vals: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
        assert_eq!(vals, ["1/1", "-1/2", "2/3"]);
    }

    #[test]
    fn gen_bad_arguments() {
        assert_eq!(call(&["gen", "daehee", "--n-max", "2", "--x", "1"]).0, 2);
        assert_eq!(call(&["gen", "nope", "--n-max", "2"]).0, 2);
        assert_eq!(call(&["gen", "type2_euler_order_r", "--n-max", "2"]).0, 2);
        assert_eq!(call(&["gen", "type2_euler", "--n-max", "2", "--x", "1/0"]).0, 2);
    }

    #[test]
    fn verify_codes() {
        assert_eq!(call(&["verify", "BOGUS"]).0, 2);
        assert_eq!(call(&["verify", "T2.6", "--n-max", "21"]).0, 2);
        assert_eq!(call(&["verify", "T2.13", "--d", "2"]).0, 2);
        assert_eq!(call(&["verify", "T2.6", "--n-max", "3", "--m-max", "4"]).0, 0);
    }

    #[test]
    fn padic_codes() {
        let (code, out, _) = call(&["padic", "fermionic", "--f", "0,1", "--p", "5", "--N-max", "3"]);
        assert_eq!(code, 0);
        let v: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(v[2]["residue"], json!("62"));
        assert_eq!(v[0]["exact"], json!("-1/2"));
        assert_eq!(call(&["padic", "bosonic", "--f", "1/5", "--p", "5"]).0, 2);
        assert_eq!(call(&["padic", "bosonic", "--f", "1", "--p", "9"]).0, 2);
        assert_eq!(call(&["padic", "bosonic", "--f", "1", "--p", "101"]).0, 2);
        assert_eq!(call(&["padic", "bosonic", "--f", "1", "--p", "7", "--N-max", "7"]).0, 2);
    }
}
