use serde::Deserialize;
use serde_json::json;
use skein_core::ribbon::{fuzz_lemma, lemma_report, RibbonGraph, RibbonJson};

use super::{yes_no, Run};
use crate::args::{GlobalOpts, RibbonArgs, RibbonExample};
use crate::input;
use crate::job::{CliError, JobSpec, Outcome, Table};

fn example(e: RibbonExample) -> (&'static str, RibbonGraph) {
    match e {
        RibbonExample::Disc => ("disc", RibbonGraph::disc()),
        RibbonExample::Annulus => ("annulus", RibbonGraph::annulus()),
        RibbonExample::Moebius => ("moebius", RibbonGraph::moebius_band()),
    }
}

fn cases_outcome(cases: Vec<(String, RibbonGraph)>) -> Outcome {
    let mut table = Table::new(&["case", "boundary_components", "euler_characteristic", "result"]);
    let mut reports = Vec::new();
    for (name, g) in &cases {
        let r = lemma_report(g);
        table.push(vec![name.clone(), r.n.to_string(), r.chi.to_string(), yes_no(r.holds)]);
        reports.push(json!({ "case": name, "report": r }));
    }
    let passed = reports.iter().all(|r| r["report"]["holds"] == true);
    Outcome { passed, values: json!({ "cases": reports }), table }
}

pub fn check(a: &RibbonArgs, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    if let Some(path) = &a.graph {
        let v = input::read_json(path)?;
        let j = RibbonJson::deserialize(&v).map_err(|e| CliError::parse(path.display().to_string(), e))?;
        let g = RibbonGraph::from_json(&j).map_err(|e| CliError::parse(path.display().to_string(), e))?;
        let job = JobSpec::new("ribbon-check").input("graph", v);
        let name = path.display().to_string();
        return Ok((job, Box::new(move || Ok(cases_outcome(vec![(name, g)])))));
    }
    if let Some(count) = a.fuzz {
        let (seed, max_v, max_e) = (global.seed, a.max_vertices, a.max_edges);
        if max_v == 0 {
            return Err(CliError::Usage("--max-vertices must be positive".into()));
        }
        let job = JobSpec::new("ribbon-check")
            .param("fuzz", count)
            .param("seed", seed)
            .param("max_vertices", max_v)
            .param("max_edges", max_e);
        let run: Run = Box::new(move || {
            let failures = fuzz_lemma(count, seed, max_v, max_e);
            let mut table = Table::new(&["case", "graphs", "failures", "result"]);
            table.push(vec![format!("fuzz seed={seed}"), count.to_string(), failures.len().to_string(), yes_no(failures.is_empty())]);
            Ok(Outcome {
                passed: failures.is_empty(),
                values: json!({ "graphs": count, "failures": failures }),
                table,
            })
        });
        return Ok((job, run));
    }
    let examples = match a.example {
        Some(e) => vec![e],
        None => vec![RibbonExample::Disc, RibbonExample::Annulus, RibbonExample::Moebius],
    };
    let names: Vec<_> = examples.iter().map(|&e| example(e).0).collect();
    let job = JobSpec::new("ribbon-check").param("examples", names);
    let run: Run = Box::new(move || {
        let cases = examples.into_iter().map(example).map(|(n, g)| (n.to_string(), g)).collect();
        Ok(cases_outcome(cases))
    });
    Ok((job, run))
}
