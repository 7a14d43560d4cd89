use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use skein_core::arith::{specialize, ExactScalar, LaurentPoly, RootOfUnity};
use skein_core::tqft::{parse_rational, AdmissibleSequence, GraphWithMultiplicities, TrivalentGraph, Q};
use skein_core::{FormalSkein, SkeinAtRoot, TorusMulticurve};

use crate::args::{GraphArgs, SequenceArgs};
use crate::job::CliError;

/// Reads a JSON input file. An empty file is a usage error rather than a
/// parse error, since it usually means a wrong path or a missed redirect.
pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    if text.trim().is_empty() {
        return Err(CliError::Usage(format!("input file {} is empty", path.display())));
    }
    serde_json::from_str(&text).map_err(|e| CliError::parse(path.display().to_string(), e))
}

pub fn rational(what: &str, s: &str) -> Result<Q, CliError> {
    parse_rational(s).map_err(|e| CliError::parse(what, e))
}

/// Canonical `a/b` form of a rational, for job specs and reports.
pub fn rational_string(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `empty`, `p,q` or `d,p,q`.
pub fn curve(s: &str) -> Result<TorusMulticurve, CliError> {
    let s = s.trim();
    if s == "empty" {
        return Ok(TorusMulticurve::Empty);
    }
    let parts: Vec<i64> = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::parse(format!("curve {s:?}"), e))?;
    let (d, p, q) = match parts[..] {
        [p, q] => (1, p, q),
        [d, p, q] if d > 0 => (d as u32, p, q),
        _ => return Err(CliError::parse(format!("curve {s:?}"), "expected p,q or d,p,q with d > 0")),
    };
    TorusMulticurve::new(d, p, q).map_err(|e| CliError::parse(format!("curve {s:?}"), e))
}

pub fn sequence(args: &SequenceArgs) -> Result<AdmissibleSequence, CliError> {
    let base = rational("--theta", &args.theta)?;
    let zeta = rational("--zeta", &args.zeta)?;
    if args.step <= 0 || args.step % 2 != 0 {
        return Err(CliError::Usage(format!("--step must be a positive even integer, got {}", args.step)));
    }
    Ok(AdmissibleSequence::new(base, zeta, args.step))
}

pub fn multiplicities(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| CliError::parse(format!("--m {s:?}"), e)))
        .collect()
}

/// The graph, its multiplicities, and the JSON that identifies it in a job.
pub fn graph(args: &GraphArgs) -> Result<(TrivalentGraph, Vec<u32>, Value), CliError> {
    let (g, file_m, id) = match TrivalentGraph::builtin(&args.graph) {
        Ok(g) => (g, None, Value::String(args.graph.clone())),
        Err(_) => {
            let path = Path::new(&args.graph);
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "--graph {:?} is neither torus, theta, dumbbell nor an existing file",
                    args.graph
                )));
            }
            let v = read_json(path)?;
            let gm = GraphWithMultiplicities::deserialize(&v).map_err(|e| CliError::parse(&args.graph, e))?;
            (gm.graph, Some(gm.m), v)
        }
    };
    let m = match (&args.m, file_m) {
        (Some(s), _) => multiplicities(s)?,
        (None, Some(m)) => m,
        (None, None) => return Err(CliError::Usage("--m is required for built-in graphs".into())),
    };
    g.check_multiplicities(&m).map_err(|e| CliError::parse("--m", e))?;
    Ok((g, m, id))
}

/// The value of `A`: the formal variable or `e^{iπ a/b}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Specialization {
    Formal,
    Root(RootOfUnity),
}

impl Specialization {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s.trim() == "formal" {
            return Ok(Specialization::Formal);
        }
        let q = rational("--at", s)?;
        RootOfUnity::new(*q.numer(), *q.denom())
            .map(Specialization::Root)
            .map_err(|e| CliError::parse("--at", e))
    }

    pub fn label(&self) -> String {
        match self {
            Specialization::Formal => "formal".into(),
            Specialization::Root(r) => r.to_string(),
        }
    }
}

/// A skein element read from JSON.
pub enum Element {
    Formal(FormalSkein),
    Root(SkeinAtRoot),
}

#[derive(Deserialize)]
struct TermJson {
    curve: TorusMulticurve,
    #[serde(default)]
    coeff: Option<Value>,
}

fn coefficient(v: Option<&Value>, what: &str) -> Result<ExactScalar, CliError> {
    let err = |m: String| CliError::parse(what, m);
    match v {
        None => Ok(ExactScalar::int(1)),
        Some(Value::Number(n)) => n
            .as_i64()
            .map(ExactScalar::int)
            .ok_or_else(|| err(format!("coefficient {n} is not an integer"))),
        Some(Value::String(s)) => s
            .trim()
            .parse::<num_bigint::BigInt>()
            .map(ExactScalar::Integer)
            .map_err(|_| err(format!("coefficient {s:?} is not an integer"))),
        Some(v) => ExactScalar::deserialize(v).map_err(|e| err(e.to_string())),
    }
}

/// Accepts a single multicurve (`{"d":1,"p":1,"q":0}` or `"empty"`) or a
/// list of `{"curve": ..., "coeff": ...}` records. Coefficients are
/// integers or tagged scalars; formal elements take integer and Laurent
/// coefficients only.
pub fn element(v: &Value, at: Specialization, what: &str) -> Result<Element, CliError> {
    let terms: Vec<(TorusMulticurve, ExactScalar)> = match v {
        Value::Array(items) => items
            .iter()
            .map(|item| {
                let t = TermJson::deserialize(item).map_err(|e| CliError::parse(what, e))?;
                Ok((t.curve, coefficient(t.coeff.as_ref(), what)?))
            })
            .collect::<Result<_, CliError>>()?,
        _ => vec![(TorusMulticurve::deserialize(v).map_err(|e| CliError::parse(what, e))?, ExactScalar::int(1))],
    };
    match at {
        Specialization::Formal => {
            let terms = terms
                .into_iter()
                .map(|(c, s)| match s {
                    ExactScalar::Integer(n) => Ok((c, LaurentPoly::constant(n))),
                    ExactScalar::Laurent(p) => Ok((c, p)),
                    other => Err(CliError::parse(
                        what,
                        format!("{} coefficient needs a specialization (--at a/b)", other.variant_name()),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Element::Formal(FormalSkein::from_terms(skein_core::Formal, terms)))
        }
        Specialization::Root(root) => {
            let terms = terms.into_iter().map(|(c, s)| match s {
                ExactScalar::Laurent(p) => (c, specialize(&p, root)),
                other => (c, other),
            });
            Ok(Element::Root(SkeinAtRoot::from_terms(root, terms)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves() {
        assert_eq!(curve("empty").unwrap(), TorusMulticurve::Empty);
        assert_eq!(curve("1,0").unwrap(), TorusMulticurve::simple(1, 0).unwrap());
        assert_eq!(curve("(2,-1,0)").unwrap(), TorusMulticurve::new(2, 1, 0).unwrap());
        assert!(curve("2,2").is_err());
        assert!(curve("0,1,0").is_err());
        assert!(curve("x").is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        assert_eq!(rational_string(rational("t", "2/-4").unwrap()), "-1/2");
        assert!(rational("t", "1/0").is_err());
        assert!(rational("t", "0.5").is_err());
    }

    #[test]
    fn specializations() {
        assert_eq!(Specialization::parse("formal").unwrap(), Specialization::Formal);
        assert_eq!(Specialization::parse("-2/4").unwrap().label(), "-1/2");
        assert!(Specialization::parse("1/0").is_err());
    }

    #[test]
    fn elements() {
        let v: Value = serde_json::from_str(r#"[{"curve": {"d":1,"p":1,"q":0}, "coeff": 3}, {"curve": "empty"}]"#).unwrap();
        let Element::Formal(x) = element(&v, Specialization::Formal, "x").unwrap() else { panic!() };
        assert_eq!(x.len(), 2);
        let g: Value = serde_json::from_str(r#"[{"curve": "empty", "coeff": {"gaussian": ["0", "1"]}}]"#).unwrap();
        assert!(element(&g, Specialization::Formal, "x").is_err());
        assert!(element(&g, Specialization::parse("-1/2").unwrap(), "x").is_ok());
        let bad: Value = serde_json::from_str(r#"{"d":1,"p":2,"q":2}"#).unwrap();
        assert!(element(&bad, Specialization::Formal, "x").is_err());
    }
}
