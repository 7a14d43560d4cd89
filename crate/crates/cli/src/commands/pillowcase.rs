use num_traits::ToPrimitive;
use serde_json::json;
use skein_core::pillowcase::{
    closed_form_check, commutation_check, equivariance_check, identity_check, kauffman_check, slope_check,
    trace_check, CheckReport, TraceReport,
};
use skein_core::TorusMulticurve;

use super::{num, yes_no, Run};
use crate::args::{GlobalOpts, PillowcaseArgs, PillowcaseCheck};
use crate::input::{self, rational_string};
use crate::job::{CliError, JobSpec, Outcome, Table};

const DEFAULT_TOL: f64 = 1e-9;
const COMMUTATION_TIMES: [(i64, i64); 4] = [(1, 10), (1, 4), (2, 5), (1, 2)];

fn primitive(c: TorusMulticurve, what: &str) -> Result<(i64, i64), CliError> {
    match c {
        TorusMulticurve::Curve { d: 1, p, q } => Ok((p, q)),
        _ => Err(CliError::Usage(format!("{what} needs a single simple curve p,q, got {c}"))),
    }
}

struct Plan {
    check: PillowcaseCheck,
    t: f64,
    curve: Option<TorusMulticurve>,
    points: usize,
    samples: usize,
    seed: u64,
    tol: f64,
    sigmas: f64,
}

impl Plan {
    fn simple(&self, default: (i64, i64)) -> Result<(i64, i64), CliError> {
        self.curve.map_or(Ok(default), |c| primitive(c, "--curve"))
    }

    fn run(&self) -> Result<(Vec<CheckReport>, Vec<TraceReport>), CliError> {
        let (seed, n, tol) = (self.seed, self.points, self.tol);
        let mut checks = Vec::new();
        let mut traces = Vec::new();
        let trace = |c: TorusMulticurve, i: u64| trace_check(c, self.samples, seed.wrapping_add(i), self.sigmas);
        match self.check {
            PillowcaseCheck::Equivariance => checks.push(equivariance_check(seed, n, tol)),
            PillowcaseCheck::Identity => {
                let (p, q) = self.simple((1, 0))?;
                checks.push(identity_check(p, q, seed, n, tol));
            }
            PillowcaseCheck::Commutation => checks.push(commutation_check(self.t, seed, n, tol)),
            PillowcaseCheck::Slope => {
                let (p, q) = self.simple((1, 1))?;
                checks.push(slope_check(p, q, self.t, seed, n, tol));
            }
            PillowcaseCheck::ClosedForm => {
                let (p, q) = self.simple((1, 0))?;
                checks.push(closed_form_check(p, q, seed, n, tol));
            }
            PillowcaseCheck::Kauffman => checks.push(kauffman_check(seed, n, tol)),
            PillowcaseCheck::Trace => {
                let c = self.curve.unwrap_or(TorusMulticurve::Curve { d: 2, p: 1, q: 0 });
                traces.push(trace(c, 0));
            }
            PillowcaseCheck::All => {
                checks.push(equivariance_check(seed, n, tol));
                for (p, q) in [(1, 0), (1, 1)] {
                    checks.push(identity_check(p, q, seed, n, tol));
                }
                for (a, b) in COMMUTATION_TIMES {
                    checks.push(commutation_check(a as f64 / b as f64, seed, n, tol));
                }
                for (p, q) in [(1, 1), (2, 1), (1, -1)] {
                    checks.push(slope_check(p, q, self.t, seed, n, tol));
                }
                for (p, q) in [(1, 0), (0, 1), (1, 1)] {
                    checks.push(closed_form_check(p, q, seed, n, tol));
                }
                checks.push(kauffman_check(seed, n, tol));
                let mut i = 0;
                for (p, q) in [(1, 0), (0, 1), (1, 1)] {
                    for d in 1..=4 {
                        traces.push(trace(TorusMulticurve::Curve { d, p, q }, i));
                        i += 1;
                    }
                }
                traces.push(trace(TorusMulticurve::Empty, i));
            }
        }
        Ok((checks, traces))
    }
}

fn trace_tolerance(r: &TraceReport, k: f64) -> f64 {
    k * r.monte_carlo.stderr + 1e-12
}

pub fn check(a: &PillowcaseArgs, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    let t = input::rational("--t", &a.t)?;
    let curve = a.curve.as_deref().map(input::curve).transpose()?;
    let plan = Plan {
        check: a.check,
        t: t.to_f64().expect("small rational"),
        curve,
        points: a.points,
        samples: global.samples,
        seed: global.seed,
        tol: global.tol.unwrap_or(DEFAULT_TOL),
        sigmas: a.sigmas,
    };
    if plan.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    // fail on a bad curve now rather than inside the run
    match plan.check {
        PillowcaseCheck::Identity | PillowcaseCheck::Slope | PillowcaseCheck::ClosedForm => {
            plan.simple((1, 0))?;
        }
        _ => {}
    }
    let check_name = format!("{:?}", a.check).to_lowercase();
    let job = JobSpec::new("pillowcase-check")
        .param("check", check_name)
        .param("t", rational_string(t))
        .param("curve", curve)
        .param("points", plan.points)
        .param("samples", plan.samples)
        .param("seed", plan.seed)
        .param("tol", plan.tol)
        .param("sigmas", plan.sigmas);
    let run: Run = Box::new(move || {
        let (checks, traces) = plan.run()?;
        let mut table = Table::new(&["check", "points", "error", "tolerance", "result"]);
        for c in &checks {
            table.push(vec![
                c.name.clone(),
                c.points.to_string(),
                num(c.max_error),
                num(c.tolerance),
                yes_no(c.passed),
            ]);
        }
        for r in &traces {
            table.push(vec![
                format!("trace {}", r.curve),
                r.monte_carlo.samples.to_string(),
                num((r.monte_carlo.value - r.tqft_limit).abs()),
                num(trace_tolerance(r, plan.sigmas)),
                yes_no(r.passed),
            ]);
        }
        let passed = checks.iter().all(|c| c.passed) && traces.iter().all(|r| r.passed);
        Ok(Outcome { passed, values: json!({ "checks": checks, "traces": traces }), table })
    });
    Ok((job, run))
}
