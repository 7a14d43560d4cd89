use serde_json::json;
use skein_core::tqft::{
    default_torus_basis, gram_probe, limit_trace, limit_trace_quadrature, normalized_trace, trace_sum,
    trace_sum_contracted, tracei_value, AdmissibleSequence, LimitMethod, Polytope, TrivalentGraph,
};

use super::{num, yes_no, Run};
use crate::args::{GlobalOpts, GramArgs, TqftLimitArgs, TqftTraceArgs};
use crate::input::{self, rational_string};
use crate::job::{CliError, JobSpec, Outcome, Table};

const DEFAULT_TOL: f64 = 1e-9;

/// Largest `d_G` integrated by quadrature; beyond it the limit is sampled.
const QUADRATURE_MAX_DIM: usize = 3;

fn sequence_job(job: JobSpec, seq: &AdmissibleSequence) -> JobSpec {
    job.param("theta", rational_string(seq.base))
        .param("zeta", rational_string(seq.zeta))
        .param("step", seq.step)
}

fn quadrature_nodes(m: &[u32]) -> usize {
    20 + m.iter().copied().max().unwrap_or(0) as usize
}

fn limit_of(g: &TrivalentGraph, m: &[u32], seq: &AdmissibleSequence, samples: usize, seed: u64) -> (f64, f64, &'static str) {
    if g.d() <= QUADRATURE_MAX_DIM {
        (limit_trace_quadrature(g, m, seq, quadrature_nodes(m)), 0.0, "quadrature")
    } else {
        let e = limit_trace(g, m, seq, samples, seed);
        (e.value, e.stderr, "monte-carlo")
    }
}

pub fn trace(a: &TqftTraceArgs, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    let (g, m, graph_id) = input::graph(&a.graph)?;
    let seq = input::sequence(&a.seq)?;
    if a.n_min == 0 || a.n_min > a.n_max {
        return Err(CliError::Usage(format!("need 1 <= --n-min <= --n-max, got {}..{}", a.n_min, a.n_max)));
    }
    let thetas = (a.n_min..=a.n_max)
        .map(|n| seq.theta(n).map(|t| (n, seq.p(n), t)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::parse("--theta/--zeta/--step", e))?;
    let tol = global.tol.unwrap_or(DEFAULT_TOL);
    let (naive, bound) = (a.naive, a.bound);
    let uses_mc = g.d() > QUADRATURE_MAX_DIM;
    let mut job = sequence_job(JobSpec::new("tqft-trace").input("graph", graph_id), &seq)
        .param("m", &m)
        .param("n_min", a.n_min)
        .param("n_max", a.n_max)
        .param("naive", naive)
        .param("bound", bound)
        .param("tol", tol);
    if uses_mc {
        job = job.param("samples", global.samples).param("seed", global.seed);
    }
    let (samples, seed) = (global.samples, global.seed);
    let run: Run = Box::new(move || {
        let (limit, limit_err, method) = limit_of(&g, &m, &seq, samples, seed);
        let mut table = Table::new(&[
            "n", "p", "theta", "trace_sum", "trace_naive", "normalized", "limit", "error", "n_times_error", "ok",
        ]);
        let mut rows = Vec::new();
        let mut passed = true;
        for (n, p, theta) in thetas {
            let sum = trace_sum_contracted(&g, &m, theta, p);
            let naive_sum = naive.then(|| trace_sum(&g, &m, theta, p));
            let normalized = normalized_trace(&g, &m, theta, p);
            let error = (normalized - limit).abs();
            let agrees = naive_sum.is_none_or(|s| (s - sum).abs() <= tol * sum.abs().max(1.0));
            let within = bound.is_none_or(|c| error <= c / n as f64 + tol);
            passed &= agrees && within;
            table.push(vec![
                n.to_string(),
                p.to_string(),
                rational_string(theta),
                num(sum),
                naive_sum.map(num).unwrap_or_default(),
                num(normalized),
                num(limit),
                num(error),
                num(n as f64 * error),
                yes_no(agrees && within),
            ]);
            rows.push(json!({
                "n": n,
                "p": p,
                "theta": rational_string(theta),
                "trace_sum": sum,
                "trace_naive": naive_sum,
                "normalized": normalized,
                "error": error,
                "naive_agrees": agrees,
                "within_bound": within,
            }));
        }
        let values = json!({
            "m": m,
            "limit": { "value": limit, "stderr": limit_err, "method": method },
            "rows": rows,
        });
        Ok(Outcome { passed, values, table })
    });
    Ok((job, run))
}

pub fn limit(a: &TqftLimitArgs, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    let (g, m, graph_id) = input::graph(&a.graph)?;
    let seq = input::sequence(&a.seq)?;
    let (samples, seed, k) = (global.samples, global.seed, a.sigmas);
    if samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let job = sequence_job(JobSpec::new("tqft-limit").input("graph", graph_id), &seq)
        .param("m", &m)
        .param("samples", samples)
        .param("seed", seed)
        .param("sigmas", k);
    let run: Run = Box::new(move || {
        let mc = limit_trace(&g, &m, &seq, samples, seed);
        let quadrature = (g.d() <= QUADRATURE_MAX_DIM).then(|| limit_trace_quadrature(&g, &m, &seq, quadrature_nodes(&m)));
        // the closed formula only covers the family converging to A = -i
        let tracei = (seq == AdmissibleSequence::minus_i()).then(|| tracei_value(&g, &m, samples, seed ^ 0x7ace));
        let volume = Polytope::u_g(&g).volume();

        let mut table = Table::new(&["method", "value", "error", "agrees_with_monte_carlo"]);
        table.push(vec!["monte-carlo".into(), num(mc.value), num(mc.stderr), String::new()]);
        let mut passed = true;
        let quad_ok = quadrature.map(|q| mc.agrees(q, k, 1e-9));
        if let (Some(q), Some(ok)) = (quadrature, quad_ok) {
            passed &= ok;
            table.push(vec!["quadrature".into(), num(q), "0".into(), yes_no(ok)]);
        }
        let tracei_ok = tracei.map(|t| (mc.value - t.value).abs() <= k * mc.stderr.hypot(t.error) + 1e-9);
        if let (Some(t), Some(ok)) = (tracei, tracei_ok) {
            passed &= ok;
            table.push(vec!["tracei".into(), num(t.value), num(t.error), yes_no(ok)]);
        }
        table.push(vec!["volume".into(), num(volume), String::new(), String::new()]);
        let values = json!({
            "m": m,
            "monte_carlo": mc,
            "quadrature": quadrature,
            "quadrature_agrees": quad_ok,
            "tracei": tracei,
            "tracei_agrees": tracei_ok,
            "volume": volume,
        });
        Ok(Outcome { passed, values, table })
    });
    Ok((job, run))
}

pub fn gram(a: &GramArgs, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    let seq = input::sequence(&a.seq)?;
    let basis = match &a.curves {
        None => default_torus_basis(),
        Some(s) => s
            .split(';')
            .map(|c| input::curve(c).map(|c| (c.to_string(), c)))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if basis.is_empty() {
        return Err(CliError::Usage("--curves is empty".into()));
    }
    let method = if a.monte_carlo {
        LimitMethod::MonteCarlo { samples: global.samples, seed: global.seed }
    } else {
        LimitMethod::Quadrature
    };
    let tol = global.tol.unwrap_or(DEFAULT_TOL);
    let curves: Vec<_> = basis.iter().map(|(_, c)| *c).collect();
    let job = sequence_job(JobSpec::new("gram-probe"), &seq)
        .param("curves", curves)
        .param("method", method)
        .param("tol", tol);
    let run: Run = Box::new(move || {
        let report = gram_probe(&basis, &seq, method).map_err(|e| CliError::Compute(e.to_string()))?;
        let unit = basis.iter().position(|(_, c)| *c == skein_core::TorusMulticurve::Empty);
        let unit_ok = unit.is_none_or(|i| {
            let [re, im] = report.matrix[i][i];
            (re - 1.0).abs() <= tol && im.abs() <= tol
        });
        let symmetric = report.symmetry_defect <= tol;
        let mut table = Table::new(&["kind", "row", "col", "re", "im"]);
        for (i, row) in report.matrix.iter().enumerate() {
            for (j, [re, im]) in row.iter().enumerate() {
                table.push(vec!["matrix".into(), report.labels[i].clone(), report.labels[j].clone(), num(*re), num(*im)]);
            }
        }
        for (i, e) in report.eigenvalues.iter().enumerate() {
            table.push(vec!["eigenvalue".into(), i.to_string(), String::new(), num(*e), "0".into()]);
        }
        let values = json!({ "report": report, "symmetric": symmetric, "unit_trace_is_one": unit_ok });
        Ok(Outcome { passed: symmetric && unit_ok, values, table })
    });
    Ok((job, run))
}
