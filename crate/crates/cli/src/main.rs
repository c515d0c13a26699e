//! `pfrob`: p-Frobenius numbers, genus, Sylvester sums, power sums and
//! weighted sums from the command line.
//!
//! Exit codes: 0 success, 1 `verify` found a mismatch, 2 usage error,
//! 3 domain or precondition error, 4 internal consistency error.

mod lambda;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use lambda::{parse_lambda, LambdaSpec};
use pfrobenius::formulas;
use pfrobenius::oracle::{complement_set, verify};
use pfrobenius::{apery_set, denumerant_table, Error, Generators, PAperySet, Rational, Strategy};

#[derive(Parser, Debug)]
#[command(name = "pfrob", version, about = "Exact p-Frobenius numbers and related sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Comma-separated generators, e.g. 5,7,11
    #[arg(short = 'g', long, value_delimiter = ',', required = true)]
    generators: Vec<u64>,

    /// Representation threshold p
    #[arg(short = 'p', long, default_value_t = 0)]
    p: u64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-Apéry set with respect to the smallest generator
    Apery(Common),
    /// p-Frobenius number
    Frobenius(Common),
    /// Number of positive integers with at most p representations
    Genus(Common),
    /// Sum of positive integers with at most p representations
    SylvesterSum(Common),
    /// Sum of n^mu over positive n with at most p representations
    PowerSum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        mu: u64,
    },
    /// Sum of lambda^n n^mu over positive n with at most p representations
    WeightedSum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        mu: u64,
        /// INT, NUM/DEN, zeta:M, gauss:RE,IM or nf:modulus=...;elem=...
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Positive integers with at most p representations
    Complement(Common),
    /// Denumerants d(n) for 0 <= n <= bound
    Table {
        #[command(flatten)]
        common: Common,
        /// Defaults to the largest p-Apéry element
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Check every closed form against direct enumeration
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        mus: Vec<u64>,
        /// Repeatable; defaults to 2 and -1/2
        #[arg(long, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn header(gens: &Generators, p: u64) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("generators".into(), json!(gens.values()));
    map.insert("p".into(), json!(p));
    map
}

/// Renders a flat result: JSON object, or `key: value` lines for plain.
fn render(format: Format, map: serde_json::Map<String, Value>) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(Value::Object(map).to_string()),
        Format::Plain => Ok(map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n")),
        Format::Csv => Err(Failure::Usage(
            "csv output is only available for table and complement".into(),
        )),
    }
}

/// Residue-class coefficients `c_0..c_{M-1}` of a weighted sum at a
/// primitive M-th root, fixed by `sum c_r = power_sum(mu)`.
fn cyclotomic_lift(
    value: &pfrobenius::NumberFieldElement,
    order: u64,
    total: &BigInt,
) -> Result<Vec<String>, Error> {
    let v = value.coeffs();
    let partial: Rational = v.iter().sum();
    let shift = (Rational::from_integer(total.clone()) - partial) / Rational::from_integer(order.into());
    let lifted: Vec<Rational> = v.iter().map(|c| c + &shift).chain([shift.clone()]).collect();
    lifted
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer().to_string())
            } else {
                Err(Error::Consistency(format!("residue-class coefficient {c} is not an integer")))
            }
        })
        .collect()
}

fn weighted(
    ap: &PAperySet,
    mu: u64,
    spec: &LambdaSpec,
) -> Result<(&'static str, pfrobenius::NumberFieldElement), Error> {
    let lambda = &spec.value;
    if !lambda.is_zero() && !lambda.is_one() && lambda.pow(ap.modulus()).is_one() {
        if mu != 1 {
            return Err(Error::Precondition(format!(
                "weight^a1 = 1 is only supported for mu = 1, got mu = {mu}"
            )));
        }
        return Ok(("root_of_unity", formulas::weighted_sum_lambda_root_from_apery(ap, lambda)?));
    }
    Ok((
        "general",
        formulas::weighted_power_sum_from_apery(ap, mu, lambda, Strategy::default())?,
    ))
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Apery(c) => {
            let gens = Generators::new(&c.generators)?;
            let ap = apery_set(&gens, c.p);
            let mut map = header(&gens, c.p);
            map.insert("apery".into(), json!(strings(ap.elements())));
            Ok(Output::ok(match c.format {
                Format::Plain => format!("apery: {}", strings(ap.elements()).join(" ")),
                f => render(f, map)?,
            }))
        }
        Command::Frobenius(c) => {
            let gens = Generators::new(&c.generators)?;
            let mut map = header(&gens, c.p);
            map.insert("frobenius".into(), json!(formulas::frobenius(&gens, c.p).to_string()));
            Ok(Output::ok(render(c.format, map)?))
        }
        Command::Genus(c) => {
            let gens = Generators::new(&c.generators)?;
            let mut map = header(&gens, c.p);
            map.insert("genus".into(), json!(formulas::genus(&gens, c.p)?.to_string()));
            Ok(Output::ok(render(c.format, map)?))
        }
        Command::SylvesterSum(c) => {
            let gens = Generators::new(&c.generators)?;
            let mut map = header(&gens, c.p);
            map.insert("sylvester_sum".into(), json!(formulas::sylvester_sum(&gens, c.p)?.to_string()));
            Ok(Output::ok(render(c.format, map)?))
        }
        Command::PowerSum { common: c, mu } => {
            let gens = Generators::new(&c.generators)?;
            let mut map = header(&gens, c.p);
            map.insert("mu".into(), json!(mu));
            map.insert("power_sum".into(), json!(formulas::power_sum(&gens, c.p, mu)?.to_string()));
            Ok(Output::ok(render(c.format, map)?))
        }
        Command::WeightedSum { common: c, mu, lambda } => {
            if c.format == Format::Csv {
                return Err(Failure::Usage("csv output is only available for table and complement".into()));
            }
            let spec = parse_lambda(&lambda).map_err(Failure::Usage)?;
            let gens = Generators::new(&c.generators)?;
            let ap = apery_set(&gens, c.p);
            let (method, value) = weighted(&ap, mu, &spec)?;
            let mut map = header(&gens, c.p);
            map.insert("mu".into(), json!(mu));
            map.insert("lambda".into(), json!(spec.value));
            map.insert("method".into(), json!(method));
            map.insert("weighted_sum".into(), json!(value));
            if let Some(order) = spec.cyclotomic_order {
                let total = formulas::power_sum_from_apery(&ap, mu)?;
                map.insert("weighted_sum_cyclotomic".into(), json!(cyclotomic_lift(&value, order, &total)?));
            }
            if c.format == Format::Plain {
                map.insert("lambda".into(), json!(spec.value.to_string()));
                map.insert("weighted_sum".into(), json!(value.to_string()));
                if let Some(Value::Array(lift)) = map.get("weighted_sum_cyclotomic").cloned() {
                    let joined: Vec<String> = lift.iter().filter_map(|v| v.as_str().map(String::from)).collect();
                    map.insert("weighted_sum_cyclotomic".into(), json!(joined.join(" ")));
                }
            }
            Ok(Output::ok(render(c.format, map)?))
        }
        Command::Complement(c) => {
            let gens = Generators::new(&c.generators)?;
            let cs = complement_set(&gens, c.p);
            Ok(Output::ok(match c.format {
                Format::Csv => std::iter::once("n".to_string())
                    .chain(strings(cs.elements()))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Plain => strings(cs.elements()).join(" "),
                Format::Json => {
                    let mut map = header(&gens, c.p);
                    map.insert("complement".into(), json!(strings(cs.elements())));
                    Value::Object(map).to_string()
                }
            }))
        }
        Command::Table { common: c, bound } => {
            let gens = Generators::new(&c.generators)?;
            let bound = bound.unwrap_or_else(|| apery_set(&gens, c.p).max());
            let table = denumerant_table(&gens, bound);
            let rows = table.counts().iter().enumerate();
            Ok(Output::ok(match c.format {
                Format::Csv => std::iter::once("n,d".to_string())
                    .chain(rows.map(|(n, d)| format!("{n},{d}")))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Plain => rows.map(|(n, d)| format!("{n} {d}")).collect::<Vec<_>>().join("\n"),
                Format::Json => {
                    let mut map = header(&gens, c.p);
                    map.insert("bound".into(), json!(bound));
                    map.insert("table".into(), json!(strings(table.counts())));
                    Value::Object(map).to_string()
                }
            }))
        }
        Command::Verify { common: c, mus, lambda } => {
            let specs = if lambda.is_empty() {
                vec!["2".to_string(), "-1/2".to_string()]
            } else {
                lambda
            };
            let lambdas = specs
                .iter()
                .map(|s| parse_lambda(s).map(|l| l.value))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::Usage)?;
            let gens = Generators::new(&c.generators)?;
            let report = verify(&gens, c.p, &mus, &lambdas);
            let code = if report.all_match() { 0 } else { 1 };
            let text = match c.format {
                Format::Plain => report
                    .checks
                    .iter()
                    .map(|ch| {
                        let flag = if ch.matched { "ok" } else { "MISMATCH" };
                        format!("{flag} {} [{}] formula={} oracle={}", ch.check, ch.case, ch.formula, ch.oracle)
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                f => {
                    let mut map = header(&gens, c.p);
                    map.insert("verify".into(), json!(report.checks));
                    map.insert("all_match".into(), json!(report.all_match()));
                    render(f, map)?
                }
            };
            Ok(Output { text, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match execute(cli.command) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 4 } else { 3 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfrobenius::exactmath::parse_rational;

    #[test]
    fn lift_recovers_residue_sums() {
        let spec = parse_lambda("zeta:5").unwrap();
        let gens = Generators::new(&[5, 7]).unwrap();
        let ap = apery_set(&gens, 1);
        let (method, value) = weighted(&ap, 1, &spec).unwrap();
        assert_eq!(method, "root_of_unity");
        let total = formulas::power_sum_from_apery(&ap, 1).unwrap();
        assert_eq!(cyclotomic_lift(&value, 5, &total).unwrap(), ["105", "286", "156", "366", "216"]);
    }

    #[test]
    fn lift_rejects_fractional_shift() {
        let spec = parse_lambda("zeta:3").unwrap();
        let half = parse_rational("1/2").unwrap();
        let v = spec.value.scale(&half);
        assert!(cyclotomic_lift(&v, 3, &BigInt::from(0)).unwrap_err().is_internal());
    }
}
