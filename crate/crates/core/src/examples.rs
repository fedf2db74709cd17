//! The three worked examples, loaded from the bundled corpus and verified
//! exactly.
//!
//! Example 1 depends on a unit octonion `s = cosθ + kl sinθ`. Only rational
//! points of the unit circle are used:
//!
//! ```text
//! cosθ = (1 - t²) / (1 + t²),  sinθ = 2t / (1 + t²)
//! ```
//!
//! Example 2 lives in `Q(sqrt5)`. Example 3 is rational.
//!
//! Corpus entries are JSON octonion expressions. A bare string is an octonion
//! literal (`"sqrt5*j-2il"`). Objects combine them:
//! `{"coeffs": [..8 slot expressions..]}`, `{"ref": name}`,
//! `{"product": [..]}`, `{"sum": [..]}`, `{"scale": [slot expr, oct]}`,
//! `{"conj": oct}` and `{"real": slot expr}`. Slot expressions are sums of
//! `*`-separated factors drawn from scalars and the slots `p, q, t, c, s`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{self, CanonicalError, ExactTransform};
use crate::jordan::{EigenPair, JordanMatrix, OctVector};
use crate::octonion::{BasisUnit, Octonion};
use crate::scalar::{split_terms, Field, Rational, Scalar};
use crate::solver::{self, Containment, GenericImaginaryVector, SolverError};

const EX1: &str = include_str!("../corpus/ex1.json");
const EX2: &str = include_str!("../corpus/ex2.json");
const EX3: &str = include_str!("../corpus/ex3.json");

/// Denominator bound used when rationalizing a canonicalizing transform.
pub const MAX_DENOMINATOR: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ExampleError {
    #[error("unknown example {0}; expected 1, 2 or 3")]
    UnknownExample(u8),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("example {example} case {id}: nonzero residual {residual}")]
    NonzeroResidual {
        example: u8,
        id: String,
        residual: String,
    },
    #[error("parameter {0} must be rational")]
    NonRational(&'static str),
    #[error("t^2 = -1 has no rational solution; got t = {0}")]
    DegenerateAngle(Rational),
    #[error("case {0} is not eligible: {1}")]
    Ineligible(String, &'static str),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Parameters of the examples. `t` only matters for Example 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example1Params {
    pub p: Scalar,
    pub q: Scalar,
    #[serde(serialize_with = "rational_as_text")]
    pub t: Rational,
}

fn rational_as_text<S: serde::Serializer>(t: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    Scalar::from(t.clone()).serialize(ser)
}

impl Example1Params {
    pub fn new(p: impl Into<Scalar>, q: impl Into<Scalar>, t: Rational) -> Self {
        Example1Params {
            p: p.into(),
            q: q.into(),
            t,
        }
    }

    pub fn cos(&self) -> Rational {
        let t2 = &self.t * &self.t;
        (Rational::one() - &t2) / (Rational::one() + t2)
    }

    pub fn sin(&self) -> Rational {
        let two = Rational::from_integer(2.into());
        two * &self.t / (Rational::one() + &self.t * &self.t)
    }

    /// `s = cosθ + kl sinθ`.
    pub fn s(&self) -> Octonion {
        Octonion::from_terms([
            (BasisUnit::One, self.cos().into()),
            (BasisUnit::KL, self.sin().into()),
        ])
    }
}

/// One verified eigenpair of one example matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleCase {
    pub example: u8,
    pub id: String,
    pub matrix: JordanMatrix,
    pub pair: EigenPair,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OctExpr {
    Literal(String),
    Op(OctOp),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum OctOp {
    Coeffs(Vec<String>),
    Ref(String),
    Product(Vec<OctExpr>),
    Sum(Vec<OctExpr>),
    Scale(String, Box<OctExpr>),
    Conj(Box<OctExpr>),
    Real(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixExpr {
    p: String,
    m: String,
    n: String,
    a: OctExpr,
    b: OctExpr,
    c: OctExpr,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorExpr {
    x: OctExpr,
    y: OctExpr,
    z: OctExpr,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseExpr {
    id: String,
    #[serde(default)]
    partner: Option<String>,
    vector: VectorExpr,
    eigenvalue: OctExpr,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Corpus {
    example: u8,
    #[serde(default)]
    defs: BTreeMap<String, OctExpr>,
    matrix: MatrixExpr,
    cases: Vec<CaseExpr>,
}

struct Env<'a> {
    slots: BTreeMap<&'static str, Scalar>,
    defs: &'a BTreeMap<String, OctExpr>,
}

fn corpus_err(msg: impl Into<String>) -> ExampleError {
    ExampleError::Corpus(msg.into())
}

impl Env<'_> {
    fn scalar(&self, text: &str) -> Result<Scalar, ExampleError> {
        let text = text.trim();
        let mut total = Scalar::zero();
        for term in split_terms(text) {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let mut value = Scalar::one();
            for factor in body.split('*') {
                let f = match self.slots.get(factor) {
                    Some(v) => v.clone(),
                    None => factor
                        .parse::<Scalar>()
                        .map_err(|e| corpus_err(format!("in {text:?}: {e}")))?,
                };
                value = value * f;
            }
            total = if negative { total - value } else { total + value };
        }
        Ok(total)
    }

    fn octonion(&self, expr: &OctExpr, depth: usize) -> Result<Octonion, ExampleError> {
        if depth > 32 {
            return Err(corpus_err("definitions nest too deeply"));
        }
        let op = match expr {
            OctExpr::Literal(text) => {
                return text
                    .parse()
                    .map_err(|e| corpus_err(format!("in {text:?}: {e}")))
            }
            OctExpr::Op(op) => op,
        };
        Ok(match op {
            OctOp::Coeffs(items) => {
                if items.len() != 8 {
                    return Err(corpus_err(format!("expected 8 coefficients, got {}", items.len())));
                }
                let coeffs: Vec<Scalar> =
                    items.iter().map(|i| self.scalar(i)).collect::<Result<_, _>>()?;
                Octonion::new(coeffs.try_into().expect("length checked"))
            }
            OctOp::Ref(name) => {
                let def = self
                    .defs
                    .get(name)
                    .ok_or_else(|| corpus_err(format!("undefined name {name:?}")))?;
                self.octonion(def, depth + 1)?
            }
            OctOp::Product(factors) => {
                let mut acc = Octonion::one();
                for f in factors {
                    acc = &acc * &self.octonion(f, depth + 1)?;
                }
                acc
            }
            OctOp::Sum(terms) => {
                let mut acc = Octonion::zero();
                for t in terms {
                    acc = &acc + &self.octonion(t, depth + 1)?;
                }
                acc
            }
            OctOp::Scale(k, w) => self.octonion(w, depth + 1)?.scale(&self.scalar(k)?),
            OctOp::Conj(w) => self.octonion(w, depth + 1)?.conj(),
            OctOp::Real(k) => Octonion::real(self.scalar(k)?),
        })
    }
}

/// Raw corpus text of an example.
pub fn corpus_text(which: u8) -> Result<&'static str, ExampleError> {
    match which {
        1 => Ok(EX1),
        2 => Ok(EX2),
        3 => Ok(EX3),
        other => Err(ExampleError::UnknownExample(other)),
    }
}

/// Like [`build_example`] but without the residual check, and also returning
/// each case's partner id.
fn load(
    json: &str,
    params: &Example1Params,
) -> Result<Vec<(ExampleCase, Option<String>)>, ExampleError> {
    let corpus: Corpus = serde_json::from_str(json).map_err(|e| corpus_err(e.to_string()))?;
    let denom = Rational::one() + &params.t * &params.t;
    if denom.is_zero() {
        return Err(ExampleError::DegenerateAngle(params.t.clone()));
    }
    let env = Env {
        slots: BTreeMap::from([
            ("p", params.p.clone()),
            ("q", params.q.clone()),
            ("t", params.t.clone().into()),
            ("c", params.cos().into()),
            ("s", params.sin().into()),
        ]),
        defs: &corpus.defs,
    };
    let mx = &corpus.matrix;
    let matrix = JordanMatrix::new(
        env.scalar(&mx.p)?,
        env.scalar(&mx.m)?,
        env.scalar(&mx.n)?,
        env.octonion(&mx.a, 0)?,
        env.octonion(&mx.b, 0)?,
        env.octonion(&mx.c, 0)?,
    );
    corpus
        .cases
        .iter()
        .map(|case| {
            let vector = OctVector::new(
                env.octonion(&case.vector.x, 0)?,
                env.octonion(&case.vector.y, 0)?,
                env.octonion(&case.vector.z, 0)?,
            );
            let eigenvalue = env.octonion(&case.eigenvalue, 0)?;
            Ok((
                ExampleCase {
                    example: corpus.example,
                    id: case.id.clone(),
                    matrix: matrix.clone(),
                    pair: EigenPair::new(vector, eigenvalue),
                },
                case.partner.clone(),
            ))
        })
        .collect()
}

fn check(case: ExampleCase) -> Result<ExampleCase, ExampleError> {
    let residual = case.matrix.residual(&case.pair);
    if !residual.is_zero() {
        return Err(ExampleError::NonzeroResidual {
            example: case.example,
            id: case.id,
            residual: format!("({}, {}, {})", residual.x, residual.y, residual.z),
        });
    }
    Ok(case)
}

/// Builds every listed eigenpair of a corpus document and checks each one.
pub fn build_from_corpus(
    json: &str,
    params: &Example1Params,
) -> Result<Vec<ExampleCase>, ExampleError> {
    load(json, params)?
        .into_iter()
        .map(|(case, _)| check(case))
        .collect()
}

/// Builds every listed eigenpair of Example 1, 2 or 3.
///
/// Examples 2 and 3 take rational `p, q` and ignore `t`.
pub fn build_example(which: u8, params: &Example1Params) -> Result<Vec<ExampleCase>, ExampleError> {
    let json = corpus_text(which)?;
    if which != 1 {
        if params.p.is_quad() {
            return Err(ExampleError::NonRational("p"));
        }
        if params.q.is_quad() {
            return Err(ExampleError::NonRational("q"));
        }
    }
    build_from_corpus(json, params)
}

pub fn find_case(cases: Vec<ExampleCase>, id: &str) -> Option<ExampleCase> {
    cases.into_iter().find(|c| c.id == id)
}

/// Outcome of pairing each vector of Example 1 with its partner's eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailReading {
    pub id: String,
    pub partner: String,
    pub as_listed: bool,
    pub swapped: bool,
}

/// Checks both readings of the `S±` right factors: the eigenvalue as listed
/// next to each sign, and the eigenvalue of the opposite sign.
pub fn tail_readings(params: &Example1Params) -> Result<Vec<TailReading>, ExampleError> {
    let loaded = load(EX1, params)?;
    let lookup: BTreeMap<&str, &ExampleCase> =
        loaded.iter().map(|(c, _)| (c.id.as_str(), c)).collect();
    loaded
        .iter()
        .filter_map(|(case, partner)| partner.as_ref().map(|p| (case, p)))
        .map(|(case, partner)| {
            let other = lookup
                .get(partner.as_str())
                .ok_or_else(|| corpus_err(format!("unknown partner {partner:?}")))?;
            let swapped =
                EigenPair::new(case.pair.vector.clone(), other.pair.eigenvalue.clone());
            Ok(TailReading {
                id: case.id.clone(),
                partner: partner.clone(),
                as_listed: case.matrix.is_eigenpair(&case.pair),
                swapped: case.matrix.is_eigenpair(&swapped),
            })
        })
        .collect()
}

/// Properties relevant to whether the closed-form family applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseClass {
    pub real_part_zero: bool,
    pub associator_zero: bool,
    /// `[v]` is a real multiple of `kl`, possibly zero.
    pub associator_along_kl: bool,
    /// Removing `Re(λ)` from the diagonal leaves an imaginary eigenvalue for
    /// the same vector.
    pub imaginary_after_shift: bool,
    /// Imaginary vector with nonvanishing associator.
    pub eligible: bool,
}

pub fn classify_case(case: &ExampleCase) -> CaseClass {
    let v = &case.pair.vector;
    let assoc = v.associator();
    let real_part_zero = v.is_imaginary();
    let associator_zero = assoc.is_zero();
    let associator_along_kl = assoc.support().all(|u| u == BasisUnit::KL);
    let (shifted, lambda) = solver::imaginary_shift(&case.matrix, &case.pair.eigenvalue);
    let imaginary_after_shift = lambda.is_imaginary()
        && shifted.is_eigenpair(&EigenPair::new(v.clone(), lambda));
    CaseClass {
        real_part_zero,
        associator_zero,
        associator_along_kl,
        imaginary_after_shift,
        eligible: real_part_zero && !associator_zero,
    }
}

/// For an Example 1 case, the `(p, q)` that make its eigenvalue equal `[v]`.
///
/// The eigenvalues are affine, `λ(p, q) = p + q μ`, so this is a 2-unknown
/// linear problem. `None` if `[v]` is not of that shape.
pub fn unit_proportional_params(id: &str, t: &Rational) -> Result<Option<Example1Params>, ExampleError> {
    let at = |p: i64, q: i64| -> Result<ExampleCase, ExampleError> {
        let params = Example1Params::new(p, q, t.clone());
        find_case(build_example(1, &params)?, id)
            .ok_or_else(|| corpus_err(format!("Example 1 has no case {id:?}")))
    };
    let base = at(0, 1)?;
    let mu = base.pair.eigenvalue.clone();
    let one = at(1, 0)?;
    if one.pair.eigenvalue != Octonion::one() || one.pair.vector != base.pair.vector {
        return Ok(None);
    }
    let assoc = base.pair.vector.associator();
    if !assoc.re().is_zero() {
        return Ok(None);
    }
    let mu_im = mu.im();
    let Some(unit) = mu_im.support().next() else {
        return Ok(None);
    };
    let q = assoc
        .coeff(unit)
        .clone()
        .try_div(mu_im.coeff(unit))
        .map_err(SolverError::from)?;
    if mu_im.scale(&q) != assoc {
        return Ok(None);
    }
    let p = -(q.clone() * mu.re());
    Ok(Some(Example1Params { p, q, t: t.clone() }))
}

/// Evidence that an Example 1 matrix lies in the closed-form family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentCertificate {
    pub id: String,
    pub params: Example1Params,
    /// Images of the basis units under the exact automorphism used.
    pub transform: Vec<Octonion>,
    /// The eigenvector in generic form.
    pub vector: OctVector,
    /// The matrix in the same basis.
    pub matrix: JordanMatrix,
    pub containment: Containment,
}

/// Solves for `(p, q)` with `λ = [v]`, moves the case to generic form with an
/// exact automorphism, and asks [`solver::contains`].
pub fn certify_containment(id: &str, t: &Rational) -> Result<ContainmentCertificate, ExampleError> {
    let params = unit_proportional_params(id, t)?
        .ok_or(ExampleError::Ineligible(id.to_string(), "eigenvalue is not proportional to [v]"))?;
    let case = find_case(build_example(1, &params)?, id)
        .ok_or_else(|| corpus_err(format!("Example 1 has no case {id:?}")))?;
    let class = classify_case(&case);
    if !class.real_part_zero {
        return Err(ExampleError::Ineligible(id.to_string(), "nonzero real part"));
    }
    if class.associator_zero {
        return Err(ExampleError::Ineligible(id.to_string(), "vanishing associator"));
    }
    let v = &case.pair.vector;
    let transform = if GenericImaginaryVector::from_vector(v).is_ok() {
        ExactTransform::identity()
    } else {
        canonical::canonicalize(&v.map(Octonion::to_float), canonical::DEFAULT_TOL)?
            .transform
            .rationalize(MAX_DENOMINATOR)?
    };
    let vector = transform.apply_inverse_vector(v);
    let matrix = transform.apply_inverse_matrix(&case.matrix);
    let generic = GenericImaginaryVector::from_vector(&vector)?;
    let containment = solver::contains(&generic, &matrix)?;
    Ok(ContainmentCertificate {
        id: id.to_string(),
        params,
        transform: transform.images().to_vec(),
        vector,
        matrix,
        containment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn o(text: &str) -> Octonion {
        text.parse().unwrap()
    }

    fn params(p: i64, q: i64, t: (i64, i64)) -> Example1Params {
        Example1Params::new(p, q, ratio(t.0, t.1))
    }

    #[test]
    fn unit_circle_is_exact() {
        for t in [(0, 1), (1, 2), (-3, 7), (5, 1)] {
            let e = params(0, 1, t);
            assert_eq!(e.cos() * e.cos() + e.sin() * e.sin(), Rational::one());
            assert_eq!(e.s().norm_sq(), Scalar::one());
        }
    }

    #[test]
    fn example3_single_case() {
        let cases = build_example(3, &params(0, 1, (0, 1))).unwrap();
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].pair.vector, OctVector::new(o("j"), o("l"), o("0")));
        assert_eq!(cases[0].pair.eigenvalue, o("-kl"));
    }

    #[test]
    fn example1_six_cases() {
        let cases = build_example(1, &params(0, 1, (0, 1))).unwrap();
        let ids: Vec<_> = cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["u+", "u-", "v+", "v-", "w+", "w-"]);
        assert_eq!(find_case(cases, "w+").unwrap().pair.eigenvalue, o("-2"));
    }

    #[test]
    fn example2_u1_eigenvalue() {
        let cases = build_example(2, &params(0, 6, (0, 1))).unwrap();
        assert_eq!(cases.len(), 6);
        assert_eq!(cases[0].id, "u1");
        assert_eq!(cases[0].pair.eigenvalue, o("3*sqrt5-3kl"));
    }

    #[test]
    fn example2_rejects_irrational_parameters() {
        let p = Example1Params::new(Scalar::sqrt5(), 1, Rational::zero());
        assert!(matches!(build_example(2, &p), Err(ExampleError::NonRational("p"))));
        assert!(matches!(build_example(4, &p), Err(ExampleError::UnknownExample(4))));
    }

    #[test]
    fn wrong_eigenvalue_fails_loudly() {
        let json = EX3.replace("\"-q\"", "\"q\"");
        let err = build_from_corpus(&json, &params(0, 1, (0, 1))).unwrap_err();
        assert!(matches!(err, ExampleError::NonzeroResidual { .. }), "{err}");
    }

    #[test]
    fn only_the_listed_tail_reading_holds() {
        for t in [(1, 2), (2, 3), (-1, 5)] {
            for r in tail_readings(&params(1, 3, t)).unwrap() {
                assert!(r.as_listed, "{r:?}");
                assert!(!r.swapped, "{r:?}");
            }
        }
    }

    #[test]
    fn classification_matches_prose() {
        let cases = build_example(1, &params(2, -1, (1, 2))).unwrap();
        for case in &cases {
            let class = classify_case(case);
            assert!(class.associator_along_kl && class.imaginary_after_shift);
            assert!(class.real_part_zero);
            let expect_zero = case.id.starts_with('u');
            assert_eq!(class.associator_zero, expect_zero, "{}", case.id);
            assert_eq!(class.eligible, !expect_zero, "{}", case.id);
        }
        for which in [2, 3] {
            for case in build_example(which, &params(1, 2, (0, 1))).unwrap() {
                let class = classify_case(&case);
                assert_eq!(class.associator_along_kl, class.associator_zero, "{}", case.id);
                assert!(!class.eligible, "{}", case.id);
                assert!(!class.real_part_zero || class.associator_zero, "{}", case.id);
            }
        }
        let u1 = find_case(build_example(2, &params(0, 1, (0, 1))).unwrap(), "u1").unwrap();
        assert_eq!(u1.pair.vector.z.re(), Scalar::one());
    }

    #[test]
    fn w_minus_is_in_the_family() {
        let cert = certify_containment("w-", &ratio(1, 2)).unwrap();
        assert_eq!(cert.params.q, Scalar::from(-1));
        assert_eq!(cert.params.p, Scalar::ratio(6, 5));
        assert_eq!(
            cert.containment,
            Containment::Member(crate::SolverParams::from_array(
                ["0", "0", "0", "6/5", "6/5", "6/5"].map(|s| s.parse().unwrap())
            ))
        );
    }

    #[test]
    fn eligible_cases_are_contained() {
        for id in ["v+", "v-", "w+", "w-"] {
            for t in [(1, 2), (2, 3), (-3, 4)] {
                let cert = certify_containment(id, &ratio(t.0, t.1)).unwrap();
                assert!(matches!(cert.containment, Containment::Member(_)), "{id} {t:?}");
            }
        }
        assert!(matches!(
            certify_containment("u+", &ratio(1, 2)),
            Err(ExampleError::Ineligible(..))
        ));
    }
}
