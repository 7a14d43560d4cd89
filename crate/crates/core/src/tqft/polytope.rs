//! Integration over the polytope `U_G` by a pulling triangulation and
//! collapsed Gauss–Legendre rules on each simplex.

use std::collections::BTreeSet;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};

use super::graph::TrivalentGraph;

const EPS: f64 = 1e-9;

/// Bounded polytope `{x : A x <= b}` in `R^dim`.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    rows: Vec<(Vec<f64>, f64)>,
}

impl Polytope {
    pub fn new(dim: usize, rows: Vec<(Vec<f64>, f64)>) -> Self {
        assert!(rows.iter().all(|(a, _)| a.len() == dim));
        Self { dim, rows }
    }

    pub fn unit_cube(dim: usize) -> Self {
        let mut p = Self::new(dim, Vec::new());
        p.add_box();
        p
    }

    fn add_box(&mut self) {
        for e in 0..self.dim {
            let mut lo = vec![0.0; self.dim];
            lo[e] = -1.0;
            let mut hi = vec![0.0; self.dim];
            hi[e] = 1.0;
            self.rows.push((lo, 0.0));
            self.rows.push((hi, 1.0));
        }
    }

    /// `U_G`: `τ in [0,1]^{d_G}` with `τ_i + τ_j + τ_k <= 2` and
    /// `τ_i <= τ_j + τ_k` (and permutations) at every vertex, the triple
    /// being the multiset of half-edge edges.
    pub fn u_g(g: &TrivalentGraph) -> Self {
        let mut p = Self::unit_cube(g.d());
        for v in g.vertices() {
            let mut sum = vec![0.0; g.d()];
            for &e in v {
                sum[e] += 1.0;
            }
            p.rows.push((sum, 2.0));
            for r in 0..3 {
                let mut tri = vec![0.0; g.d()];
                tri[v[r]] += 1.0;
                tri[v[(r + 1) % 3]] -= 1.0;
                tri[v[(r + 2) % 3]] -= 1.0;
                if tri.iter().any(|&c| c > 0.0) {
                    p.rows.push((tri, 0.0));
                }
            }
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.rows
            .iter()
            .all(|(a, b)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() <= b + 1e-12)
    }

    fn slack(&self, row: usize, x: &[f64]) -> f64 {
        let (a, b) = &self.rows[row];
        b - a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>()
    }

    /// Vertices, by solving every `dim`-subset of constraints as equalities.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        let d = self.dim;
        let mut out: Vec<Vec<f64>> = Vec::new();
        for subset in combinations(self.rows.len(), d) {
            let a = DMatrix::from_fn(d, d, |i, j| self.rows[subset[i]].0[j]);
            let b = DVector::from_fn(d, |i, _| self.rows[subset[i]].1);
            let Some(x) = a.lu().solve(&b) else { continue };
            let x: Vec<f64> = x.iter().copied().collect();
            if (0..self.rows.len()).all(|r| self.slack(r, &x) >= -EPS)
                && !out.iter().any(|y| y.iter().zip(&x).all(|(p, q)| (p - q).abs() < EPS))
            {
                out.push(x);
            }
        }
        out
    }

    /// Simplices of a pulling triangulation, as vertex lists.
    pub fn triangulate(&self) -> Vec<Vec<Vec<f64>>> {
        let verts = self.vertices();
        let tight: Vec<BTreeSet<usize>> = (0..self.rows.len())
            .map(|r| (0..verts.len()).filter(|&v| self.slack(r, &verts[v]).abs() < EPS).collect())
            .collect();
        let all: BTreeSet<usize> = (0..verts.len()).collect();
        if affine_dim(&verts, &all) < self.dim {
            return Vec::new();
        }
        let mut out = Vec::new();
        pull(&verts, &tight, &all, self.dim, &mut Vec::new(), &mut out);
        out.into_iter().map(|s| s.into_iter().map(|v| verts[v].clone()).collect()).collect()
    }

    /// `∫_P f` with `nodes` Gauss–Legendre points per direction on each
    /// simplex.
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, nodes: usize, mut f: F) -> f64 {
        if self.dim == 0 {
            return f(&[]);
        }
        let rule = unit_rule(nodes);
        self.triangulate()
            .iter()
            .map(|s| integrate_simplex(s, &rule, &mut f))
            .sum()
    }

    pub fn volume(&self) -> f64 {
        self.integrate(self.dim.max(1), |_| 1.0)
    }
}

fn pull(
    verts: &[Vec<f64>],
    tight: &[BTreeSet<usize>],
    face: &BTreeSet<usize>,
    k: usize,
    apex: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v0 = *face.iter().next().expect("faces are nonempty");
    if k == 0 {
        let mut s = apex.clone();
        s.push(v0);
        out.push(s);
        return;
    }
    let mut facets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for t in tight {
        let f: BTreeSet<usize> = face.intersection(t).copied().collect();
        if f.len() < face.len() && !f.contains(&v0) && f.len() >= k && affine_dim(verts, &f) == k - 1 {
            facets.insert(f);
        }
    }
    apex.push(v0);
    for f in &facets {
        pull(verts, tight, f, k - 1, apex, out);
    }
    apex.pop();
}

fn affine_dim(verts: &[Vec<f64>], set: &BTreeSet<usize>) -> usize {
    let idx: Vec<usize> = set.iter().copied().collect();
    if idx.len() <= 1 {
        return 0;
    }
    let d = verts[idx[0]].len();
    let m = DMatrix::from_fn(idx.len() - 1, d, |i, j| verts[idx[i + 1]][j] - verts[idx[0]][j]);
    m.rank(1e-9)
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn unit_rule(nodes: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(nodes).expect("at least one node");
    GaussLegendre::new(n)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// Collapsed-coordinate rule: `λ_1 = u_1`, `λ_j = u_j Π_{i<j} (1 - u_i)`,
/// whose Jacobian is the product of the diagonal terms `Π_{i<j} (1 - u_i)`.
fn integrate_simplex<F: FnMut(&[f64]) -> f64>(s: &[Vec<f64>], rule: &[(f64, f64)], f: &mut F) -> f64 {
    let k = s.len() - 1;
    let d = s[0].len();
    let edges = DMatrix::from_fn(d, k, |i, j| s[j + 1][i] - s[0][i]);
    let det = if k == d { edges.determinant().abs() } else { (edges.transpose() * &edges).determinant().sqrt() };
    let mut idx = vec![0usize; k];
    let mut x = vec![0.0; d];
    let mut total = 0.0;
    loop {
        let mut rest = 1.0;
        let mut w = 1.0;
        x.copy_from_slice(&s[0]);
        for (i, &j) in idx.iter().enumerate() {
            let (u, wu) = rule[j];
            let lambda = rest * u;
            for (c, xc) in x.iter_mut().enumerate() {
                *xc += lambda * (s[i + 1][c] - s[0][c]);
            }
            w *= wu * rest;
            rest *= 1.0 - u;
        }
        total += w * f(&x);
        let mut pos = 0;
        loop {
            if pos == k {
                return total * det;
            }
            idx[pos] += 1;
            if idx[pos] < rule.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_volume_and_moments() {
        for d in 1..=3 {
            let c = Polytope::unit_cube(d);
            assert!((c.volume() - 1.0).abs() < 1e-12);
            let m = c.integrate(8, |x| x.iter().map(|t| t * t).product());
            assert!((m - 3f64.powi(-(d as i32))).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_volume() {
        // x, y, z >= 0, x + y + z <= 1
        let mut rows = vec![(vec![1.0, 1.0, 1.0], 1.0)];
        for e in 0..3 {
            let mut r = vec![0.0; 3];
            r[e] = -1.0;
            rows.push((r, 0.0));
        }
        let p = Polytope::new(3, rows);
        assert_eq!(p.vertices().len(), 4);
        assert!((p.volume() - 1.0 / 6.0).abs() < 1e-12);
        let xyz = p.integrate(6, |x| x[0] * x[1] * x[2]);
        assert!((xyz - 1.0 / 720.0).abs() < 1e-14);
    }

    #[test]
    fn theta_region_volume() {
        // inclusion–exclusion by hand: the triangle inequalities cut three
        // corners of volume 1/6 each from the cube, the sum constraint
        // another corner of volume 1/6
        let p = Polytope::u_g(&TrivalentGraph::theta());
        assert!((p.volume() - 1.0 / 3.0).abs() < 1e-12, "{}", p.volume());
        assert!(p.contains(&[0.5, 0.5, 0.5]));
        assert!(!p.contains(&[1.0, 0.1, 0.1]));
    }

    #[test]
    fn torus_region_is_interval() {
        let p = Polytope::u_g(&TrivalentGraph::torus());
        let v = p.integrate(20, |x| (2.0 * (std::f64::consts::PI * x[0]).cos()).powi(4));
        assert!((v - 6.0).abs() < 1e-12);
    }
}
