//! `octeig` command-line tool.
//!
//! Exit status: 0 on success, 1 for a definite negative answer (nonzero
//! residual, not in family, no solution), 2 for invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

use octeig::canonical::{self, CanonicalError};
use octeig::examples::{self, Example1Params, ExampleError};
use octeig::oracle::{self, SolutionReport};
use octeig::solver::{self, Containment, GenericImaginaryVector, SolverError, SolverParams};
use octeig::{associator, EigenPair, JordanMatrix, OctVector, Octonion, Scalar};

#[derive(Parser)]
#[command(name = "octeig", version, about = "Octonionic Hermitian eigenvector toolkit")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two octonions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Associator [x, y, z] = (xy)z - x(yz).
    Assoc {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Build the family member for a generic vector and six parameters.
    Construct {
        #[arg(long)]
        vector: PathBuf,
        /// JSON file with b1, b4, b7, p, m, n. Overridden by individual flags.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        b1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b4: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b7: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Check A v = v λ exactly. λ defaults to [v].
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eigenvalue: Option<String>,
    },
    /// All Hermitian A with A v = v [v], by exact linear solve.
    Family {
        #[arg(long)]
        vector: PathBuf,
    },
    /// Decide whether a matrix belongs to the family of a generic vector.
    Contains {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        vector: PathBuf,
    },
    /// Move a vector into generic form by an automorphism.
    Canonicalize {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, default_value_t = canonical::DEFAULT_TOL)]
        tol: f64,
        /// Also round the transform to rationals with this denominator bound.
        #[arg(long)]
        rationalize: Option<u64>,
    },
    /// Rebuild and verify the bundled worked examples.
    Examples {
        /// 1, 2, 3 or all.
        #[arg(default_value = "all")]
        which: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        t: String,
    },
}

struct Report {
    output: String,
    positive: bool,
}

impl Report {
    fn text(output: String) -> Self {
        Report {
            output,
            positive: true,
        }
    }
}

/// Serializes command output.
struct Emitter {
    pretty: bool,
}

impl Emitter {
    fn json(&self, value: impl Serialize, positive: bool) -> Report {
        let output = if self.pretty {
            serde_json::to_string_pretty(&value)
        } else {
            serde_json::to_string(&value)
        };
        Report {
            output: output.expect("serializable output"),
            positive,
        }
    }
}

#[derive(Serialize)]
struct CanonicalReport {
    transform: Vec<Vec<F17>>,
    generic: OctVector<F17>,
    residual_offgeneric: F17,
    automorphism_defect: F17,
    #[serde(skip_serializing_if = "Option::is_none")]
    rationalized: Option<Value>,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = if matches!(e, SolverError::NonzeroRealPart) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CanonicalError> for Failure {
    fn from(e: CanonicalError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<ExampleError> for Failure {
    fn from(e: ExampleError) -> Self {
        let code = if matches!(e, ExampleError::NonzeroResidual { .. }) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Float serialized with 17 significant digits.
struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format!("{:.16e}", self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

fn to_json(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("serializable output")
}

fn octonion(text: &str) -> Result<Octonion, Failure> {
    text.parse()
        .map_err(|e| Failure::invalid(format!("invalid octonion {text:?}: {e}")))
}

fn scalar(name: &str, text: &str) -> Result<Scalar, Failure> {
    text.parse()
        .map_err(|e| Failure::invalid(format!("invalid --{name} {text:?}: {e}")))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn construct_params(
    file: Option<&Path>,
    flags: [(&str, &Option<String>); 6],
) -> Result<SolverParams, Failure> {
    let base = match file {
        Some(path) => read_json::<SolverParams>(path)?,
        None => SolverParams::zero(),
    };
    let mut values = base.to_array();
    for (value, (name, flag)) in values.iter_mut().zip(flags) {
        if let Some(text) = flag {
            *value = scalar(name, text)?;
        }
    }
    Ok(SolverParams::from_array(values))
}

fn run(command: Command, out: &Emitter) -> Result<Report, Failure> {
    Ok(match command {
        Command::Mul { a, b } => Report::text((&octonion(&a)? * &octonion(&b)?).to_string()),
        Command::Assoc { x, y, z } => Report::text(
            associator(&octonion(&x)?, &octonion(&y)?, &octonion(&z)?).to_string(),
        ),
        Command::Construct {
            vector,
            params,
            b1,
            b4,
            b7,
            p,
            m,
            n,
        } => {
            let v: OctVector = read_json(&vector)?;
            let params = construct_params(
                params.as_deref(),
                [("b1", &b1), ("b4", &b4), ("b7", &b7), ("p", &p), ("m", &m), ("n", &n)],
            )?;
            let generic = GenericImaginaryVector::from_vector(&v)?;
            out.json(solver::construct(&generic, &params)?, true)
        }
        Command::Verify {
            matrix,
            vector,
            eigenvalue,
        } => {
            let a: JordanMatrix = read_json(&matrix)?;
            let v: OctVector = read_json(&vector)?;
            let lambda = match eigenvalue {
                Some(text) => octonion(&text)?,
                None => v.associator(),
            };
            let pair = EigenPair::new(v, lambda);
            let residual = a.residual(&pair);
            let verified = residual.is_zero();
            out.json(
                json!({
                    "verified": verified,
                    "eigenvalue": pair.eigenvalue,
                    "residual": residual,
                }),
                verified,
            )
        }
        Command::Family { vector } => {
            let v: OctVector = read_json(&vector)?;
            let lambda = v.associator();
            let set = oracle::solution_set(&v, &lambda);
            let mut report = to_json(SolutionReport::from(&set));
            report["eigenvalue"] = to_json(&lambda);
            out.json(report, !set.is_empty())
        }
        Command::Contains { matrix, vector } => {
            let a: JordanMatrix = read_json(&matrix)?;
            let v: OctVector = read_json(&vector)?;
            let generic = GenericImaginaryVector::from_vector(&v)?;
            let result = solver::contains(&generic, &a)?;
            let member = matches!(result, Containment::Member(_));
            let params = match result {
                Containment::Member(p) => to_json(p),
                Containment::NotMember => Value::Null,
            };
            out.json(json!({ "member": member, "params": params }), member)
        }
        Command::Canonicalize {
            vector,
            tol,
            rationalize,
        } => {
            let v: OctVector = read_json(&vector)?;
            let canon = canonical::canonicalize(&v.map(Octonion::to_float), tol)?;
            let transform: Vec<Vec<F17>> = canon
                .transform
                .matrix()
                .iter()
                .map(|row| row.iter().map(|&x| F17(x)).collect())
                .collect();
            let generic = canon.generic.map(|w| w.map(|&c| F17(c)));
            let rationalized = rationalize.map(|max_den| match canon.transform.rationalize(max_den) {
                Ok(exact) => json!({
                    "exact": true,
                    "images": exact.images().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "generic": exact.apply_inverse_vector(&v),
                }),
                Err(e) => json!({ "exact": false, "reason": e.to_string() }),
            });
            let report = CanonicalReport {
                transform,
                generic,
                residual_offgeneric: F17(canon.residual_offgeneric),
                automorphism_defect: F17(canon.transform.automorphism_defect()),
                rationalized,
            };
            out.json(report, true)
        }
        Command::Examples { which, p, q, t } => {
            let t = scalar("t", &t)?
                .as_rational()
                .ok_or_else(|| Failure::invalid("--t must be rational"))?;
            let params = Example1Params::new(scalar("p", &p)?, scalar("q", &q)?, t);
            let selected: Vec<u8> = match which.as_str() {
                "all" => vec![1, 2, 3],
                "1" => vec![1],
                "2" => vec![2],
                "3" => vec![3],
                other => {
                    return Err(Failure::invalid(format!(
                        "unknown example {other:?}; expected 1, 2, 3 or all"
                    )))
                }
            };
            let mut cases = Vec::new();
            for which in selected {
                for case in examples::build_example(which, &params)? {
                    let class = examples::classify_case(&case);
                    cases.push(json!({
                        "example": case.example,
                        "id": case.id,
                        "verified": true,
                        "vector": case.pair.vector,
                        "eigenvalue": case.pair.eigenvalue,
                        "associator": case.pair.vector.associator(),
                        "class": class,
                    }));
                }
            }
            out.json(json!({ "params": params, "cases": cases }), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitter = Emitter { pretty: cli.pretty };
    match run(cli.command, &emitter) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", report.output).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if report.positive { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
