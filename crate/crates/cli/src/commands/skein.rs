use serde_json::json;
use skein_core::torus::skein_mul as mul;
use skein_core::twisted::{iso_sweep as sweep, SweepOptions};

use super::Run;
use crate::args::{IsoSweepArgs, SkeinMulArgs};
use crate::input::{self, Element, Specialization};
use crate::job::{CliError, JobSpec, Outcome, Table};

pub fn skein_mul(a: &SkeinMulArgs) -> Result<(JobSpec, Run), CliError> {
    let at = Specialization::parse(&a.at)?;
    let xv = input::read_json(&a.x)?;
    let yv = input::read_json(&a.y)?;
    let x = input::element(&xv, at, &a.x.display().to_string())?;
    let y = input::element(&yv, at, &a.y.display().to_string())?;
    let job = JobSpec::new("skein-mul").input("x", xv).input("y", yv).param("at", at.label());
    let run: Run = Box::new(move || {
        let compute = |e: skein_core::torus::SkeinError| CliError::Compute(e.to_string());
        let mut table = Table::new(&["curve", "coeff"]);
        let product = match (x, y) {
            (Element::Formal(x), Element::Formal(y)) => {
                let z = mul(&x, &y).map_err(compute)?;
                z.terms().for_each(|(c, v)| table.push(vec![c.to_string(), v.to_string()]));
                serde_json::to_value(z.to_records())
            }
            (Element::Root(x), Element::Root(y)) => {
                let z = mul(&x, &y).map_err(compute)?;
                z.terms().for_each(|(c, v)| table.push(vec![c.to_string(), v.to_string()]));
                serde_json::to_value(z.to_records())
            }
            _ => unreachable!("both operands are read at the same specialization"),
        }
        .expect("serializable product");
        Ok(Outcome { passed: true, values: json!({ "at": at.label(), "product": product }), table })
    });
    Ok((job, run))
}

fn corrupt_pair(s: &str) -> Result<(skein_core::TorusMulticurve, skein_core::TorusMulticurve), CliError> {
    let (x, y) = s
        .split_once(':')
        .ok_or_else(|| CliError::parse("--corrupt-phase", "expected X:Y"))?;
    Ok((input::curve(x)?, input::curve(y)?))
}

pub fn iso_sweep(a: &IsoSweepArgs) -> Result<(JobSpec, Run), CliError> {
    let corrupt = a.corrupt_phase.as_deref().map(corrupt_pair).transpose()?;
    let mut job = JobSpec::new("iso-sweep").param("max_d", a.max_d).param("max_pq", a.max_pq);
    if let Some((x, y)) = corrupt {
        job = job.param("corrupt_phase", [x, y]);
    }
    let opts = SweepOptions { max_d: a.max_d, max_pq: a.max_pq, corrupt_phase: corrupt };
    let run: Run = Box::new(move || {
        let outcome = sweep(&opts).map_err(|e| CliError::Compute(e.to_string()))?;
        let mut table = Table::new(&["x", "y", "lhs", "rhs"]);
        for f in &outcome.failures {
            let lhs = serde_json::to_string(&f.lhs).expect("serializable");
            let rhs = serde_json::to_string(&f.rhs).expect("serializable");
            table.push(vec![f.x.to_string(), f.y.to_string(), lhs, rhs]);
        }
        Ok(Outcome {
            passed: outcome.failures.is_empty(),
            values: json!({
                "max_d": opts.max_d,
                "max_pq": opts.max_pq,
                "pairs": outcome.pairs,
                "failures": outcome.failures,
            }),
            table,
        })
    });
    Ok((job, run))
}
