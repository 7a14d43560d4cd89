use rayon::prelude::*;

use super::graph::TrivalentGraph;
use super::sequence::{cos_two_pi, Q};

/// Number of colors `{0, ..., p/2 - 2}`.
pub fn palette(p: i64) -> usize {
    (p / 2 - 1).max(0) as usize
}

/// The vertex conditions on a multiset of three colors.
pub fn admissible_triple(a: u32, b: u32, c: u32, p: i64) -> bool {
    let s = (a + b + c) as i64;
    s % 2 == 0 && s <= p - 4 && a <= b + c && b <= a + c && c <= a + b
}

/// Edge order for backtracking together with, for each position, the
/// vertices whose last incident edge is assigned there.
struct Plan {
    checks: Vec<Vec<[usize; 3]>>,
}

impl Plan {
    fn new(g: &TrivalentGraph) -> Self {
        let mut checks = vec![Vec::new(); g.d()];
        for v in g.vertices() {
            let last = *v.iter().max().expect("three slots");
            checks[last].push(*v);
        }
        Plan { checks }
    }
}

fn descend<F: FnMut(&[u32])>(plan: &Plan, p: i64, k: usize, sigma: &mut Vec<u32>, visit: &mut F) {
    if sigma.len() == plan.checks.len() {
        visit(sigma);
        return;
    }
    let e = sigma.len();
    for c in 0..k as u32 {
        sigma.push(c);
        let ok = plan.checks[e]
            .iter()
            .all(|v| admissible_triple(sigma[v[0]], sigma[v[1]], sigma[v[2]], p));
        if ok {
            descend(plan, p, k, sigma, visit);
        }
        sigma.pop();
    }
}

/// Calls `visit` on every admissible coloring, in lexicographic order.
pub fn for_each_coloring<F: FnMut(&[u32])>(g: &TrivalentGraph, p: i64, mut visit: F) {
    let plan = Plan::new(g);
    descend(&plan, p, palette(p), &mut Vec::with_capacity(g.d()), &mut visit);
}

pub fn enumerate_colorings(g: &TrivalentGraph, p: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_coloring(g, p, |s| out.push(s.to_vec()));
    out
}

/// `w[e][σ] = (-2 cos(2π θ (σ + 1)))^{m_e}`.
fn edge_weights(m: &[u32], theta: Q, p: i64) -> Vec<Vec<f64>> {
    let base: Vec<f64> = (0..palette(p) as i64)
        .map(|s| -2.0 * cos_two_pi(theta * Q::from_integer(s + 1)))
        .collect();
    m.iter().map(|&me| base.iter().map(|w| w.powi(me as i32)).collect()).collect()
}

/// `Σ_σ Π_e (-2 cos(2π θ (σ_e + 1)))^{m_e}` over admissible colorings.
///
/// Work is split on the color of the first edge; the partial sums are
/// added in color order.
pub fn trace_sum(g: &TrivalentGraph, m: &[u32], theta: Q, p: i64) -> f64 {
    assert_eq!(m.len(), g.d(), "one multiplicity per edge");
    if g.d() == 0 {
        return 1.0;
    }
    let w = edge_weights(m, theta, p);
    let plan = Plan::new(g);
    let k = palette(p);
    let parts: Vec<f64> = (0..k as u32)
        .into_par_iter()
        .map(|c0| {
            // no vertex can have all three slots on edge 0
            let mut sigma = vec![c0];
            let mut acc = 0.0;
            descend(&plan, p, k, &mut sigma, &mut |s: &[u32]| {
                acc += s.iter().enumerate().map(|(e, &c)| w[e][c as usize]).product::<f64>();
            });
            acc
        })
        .collect();
    parts.into_iter().sum()
}

/// Dense table over a set of edge variables, each ranging over `k` colors;
/// the first variable varies slowest.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    data: Vec<f64>,
}

impl Factor {
    fn index(&self, assignment: &[usize], k: usize) -> usize {
        self.vars.iter().fold(0, |acc, &v| acc * k + assignment[v])
    }
}

/// The same sum as [`trace_sum`], by variable elimination on the factor
/// graph: one indicator factor per vertex and one weight factor per edge.
/// Each step sums out the edge whose merged factor has the smallest scope.
pub fn trace_sum_contracted(g: &TrivalentGraph, m: &[u32], theta: Q, p: i64) -> f64 {
    assert_eq!(m.len(), g.d(), "one multiplicity per edge");
    let k = palette(p);
    let w = edge_weights(m, theta, p);
    let mut factors: Vec<Factor> = w
        .into_iter()
        .enumerate()
        .map(|(e, data)| Factor { vars: vec![e], data })
        .collect();
    for v in g.vertices() {
        let mut vars = v.to_vec();
        vars.sort_unstable();
        vars.dedup();
        let size = k.pow(vars.len() as u32);
        let mut data = vec![0.0; size];
        let mut assign = vec![0usize; g.d()];
        for (idx, slot) in data.iter_mut().enumerate() {
            let mut r = idx;
            for &var in vars.iter().rev() {
                assign[var] = r % k;
                r /= k;
            }
            let c = |e: usize| assign[e] as u32;
            if admissible_triple(c(v[0]), c(v[1]), c(v[2]), p) {
                *slot = 1.0;
            }
        }
        factors.push(Factor { vars, data });
    }

    let mut remaining: Vec<usize> = (0..g.d()).collect();
    while !remaining.is_empty() {
        let scope = |e: usize| -> Vec<usize> {
            let mut s: Vec<usize> = factors
                .iter()
                .filter(|f| f.vars.contains(&e))
                .flat_map(|f| f.vars.iter().copied())
                .filter(|&x| x != e)
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let (pos, &e) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| (scope(e).len(), e))
            .expect("nonempty");
        remaining.remove(pos);
        let new_vars = scope(e);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&e));
        factors = rest;
        factors.push(eliminate(&touching, e, new_vars, k, g.d()));
    }
    factors.iter().map(|f| f.data[0]).product()
}

fn eliminate(touching: &[Factor], e: usize, vars: Vec<usize>, k: usize, d: usize) -> Factor {
    let size = k.pow(vars.len() as u32);
    let mut data = vec![0.0; size];
    let mut assign = vec![0usize; d];
    for (idx, slot) in data.iter_mut().enumerate() {
        let mut r = idx;
        for &var in vars.iter().rev() {
            assign[var] = r % k;
            r /= k;
        }
        let mut acc = 0.0;
        for c in 0..k {
            assign[e] = c;
            acc += touching.iter().map(|f| f.data[f.index(&assign, k)]).product::<f64>();
        }
        *slot = acc;
    }
    Factor { vars, data }
}

/// `(2/p)^{d_G}` times the trace sum.
pub fn normalized_trace(g: &TrivalentGraph, m: &[u32], theta: Q, p: i64) -> f64 {
    (2.0 / p as f64).powi(g.d() as i32) * trace_sum_contracted(g, m, theta, p)
}
