//! Surfaces built from discs and bands, and the parity identity
//! `n + m + χ(S) ≡ 0 (mod 2)` relating boundary components, Moebius bands
//! with equally oriented sides, and Euler characteristic.
//!
//! The boundary is walked on the graph whose nodes are the two sides
//! `(h, L)`, `(h, R)` of every half-edge `h`. A disc contributes the corner
//! joining `(h, R)` and `(succ h, L)` for consecutive half-edges of its rotation; a
//! handle band joins `R` to `L` across the band, a Moebius band joins `R` to
//! `R` and `L` to `L`. Every node has one corner and one band neighbour, so
//! the boundary components are the cycles of this 2-regular graph.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("malformed ribbon graph: {0}")]
    MalformedGraph(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandType {
    Handle,
    Moebius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    pub ends: [usize; 2],
    pub kind: BandType,
}

/// Discs with cyclically ordered half-edges, glued by typed bands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    names: Vec<String>,
    rotations: Vec<Vec<usize>>,
    bands: Vec<Band>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RibbonJson {
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub pair: [String; 2],
    #[serde(rename = "type")]
    pub kind: BandType,
}

impl RibbonGraph {
    /// Builds a graph from rotations of named half-edges and typed pairs.
    pub fn new(vertices: &[Vec<String>], edges: &[(String, String, BandType)]) -> Result<Self, RibbonError> {
        let malformed = |m: String| RibbonError::MalformedGraph(m);
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut rotations = Vec::with_capacity(vertices.len());
        for rot in vertices {
            let mut ids = Vec::with_capacity(rot.len());
            for h in rot {
                if index.insert(h.as_str(), names.len()).is_some() {
                    return Err(malformed(format!("half-edge {h:?} appears in two rotation slots")));
                }
                ids.push(names.len());
                names.push(h.clone());
            }
            rotations.push(ids);
        }
        let mut used = vec![false; names.len()];
        let mut bands = Vec::with_capacity(edges.len());
        for (a, b, kind) in edges {
            let mut ends = [0; 2];
            for (slot, h) in ends.iter_mut().zip([a, b]) {
                let &id = index
                    .get(h.as_str())
                    .ok_or_else(|| malformed(format!("half-edge {h:?} is not in any vertex")))?;
                if std::mem::replace(&mut used[id], true) {
                    return Err(malformed(format!("half-edge {h:?} is used by two edges")));
                }
                *slot = id;
            }
            bands.push(Band { ends, kind: *kind });
        }
        if let Some(free) = used.iter().position(|u| !u) {
            return Err(malformed(format!("half-edge {:?} has no edge", names[free])));
        }
        Ok(Self { names, rotations, bands })
    }

    pub fn from_json(j: &RibbonJson) -> Result<Self, RibbonError> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e.pair[0].clone(), e.pair[1].clone(), e.kind)).collect();
        Self::new(&j.vertices, &edges)
    }

    pub fn to_json(&self) -> RibbonJson {
        RibbonJson {
            vertices: self
                .rotations
                .iter()
                .map(|r| r.iter().map(|&h| self.names[h].clone()).collect())
                .collect(),
            edges: self
                .bands
                .iter()
                .map(|b| EdgeJson { pair: [self.names[b.ends[0]].clone(), self.names[b.ends[1]].clone()], kind: b.kind })
                .collect(),
        }
    }

    fn single_edge(vertices: &[&[&str]], kind: BandType) -> Self {
        let v: Vec<Vec<String>> = vertices.iter().map(|r| r.iter().map(|h| h.to_string()).collect()).collect();
        Self::new(&v, &[("a".into(), "b".into(), kind)]).expect("well-formed")
    }

    /// One disc with a handle loop.
    pub fn annulus() -> Self {
        Self::single_edge(&[&["a", "b"]], BandType::Handle)
    }

    /// One disc with a Moebius loop.
    pub fn moebius_band() -> Self {
        Self::single_edge(&[&["a", "b"]], BandType::Moebius)
    }

    /// Two discs joined by a handle band.
    pub fn disc() -> Self {
        Self::single_edge(&[&["a"], &["b"]], BandType::Handle)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.bands.len()
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// `χ(S) = V - E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.rotations.len() as i64 - self.bands.len() as i64
    }

    /// A random graph with `1..=max_vertices` discs and `0..=max_edges`
    /// bands; rotations, pairings and band types are uniform.
    pub fn random(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Self {
        let v = rng.random_range(1..=max_vertices);
        let e = rng.random_range(0..=max_edges);
        let mut halves: Vec<usize> = (0..2 * e).collect();
        halves.shuffle(rng);
        let mut rotations = vec![Vec::new(); v];
        for &h in &halves {
            rotations[rng.random_range(0..v)].push(h);
        }
        let names: Vec<String> = (0..2 * e).map(|h| format!("h{h}")).collect();
        halves.shuffle(rng);
        let edges: Vec<_> = halves
            .chunks_exact(2)
            .map(|p| {
                let kind = if rng.random_bool(0.5) { BandType::Moebius } else { BandType::Handle };
                (names[p[0]].clone(), names[p[1]].clone(), kind)
            })
            .collect();
        let vertices: Vec<Vec<String>> = rotations
            .into_iter()
            .map(|r| r.into_iter().map(|h| names[h].clone()).collect())
            .collect();
        Self::new(&vertices, &edges).expect("generated graph is well formed")
    }
}

/// Traversal of one band side: which band, which of its two sides, and
/// whether it is walked from `ends[0]` towards `ends[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SideStep {
    pub edge: usize,
    pub side: u8,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryTrace {
    /// One list of band-side traversals per boundary component. Discs
    /// without half-edges appear as empty components.
    pub components: Vec<Vec<SideStep>>,
}

impl BoundaryTrace {
    pub fn n(&self) -> usize {
        self.components.len()
    }
}

const L: usize = 0;
const R: usize = 1;

fn node(h: usize, s: usize) -> usize {
    2 * h + s
}

pub fn trace_boundary(g: &RibbonGraph) -> BoundaryTrace {
    let nodes = 2 * g.names.len();
    let mut corner = vec![usize::MAX; nodes];
    for rot in &g.rotations {
        for (j, &h) in rot.iter().enumerate() {
            let next = rot[(j + 1) % rot.len()];
            corner[node(h, R)] = node(next, L);
            corner[node(next, L)] = node(h, R);
        }
    }
    // band neighbour, with the step recorded when leaving from that node
    let mut band = vec![(usize::MAX, SideStep { edge: 0, side: 0, forward: true }); nodes];
    for (e, b) in g.bands.iter().enumerate() {
        let [h, k] = b.ends;
        let pairs = match b.kind {
            BandType::Handle => [(node(h, R), node(k, L)), (node(h, L), node(k, R))],
            BandType::Moebius => [(node(h, R), node(k, R)), (node(h, L), node(k, L))],
        };
        for (side, (x, y)) in pairs.into_iter().enumerate() {
            band[x] = (y, SideStep { edge: e, side: side as u8, forward: true });
            band[y] = (x, SideStep { edge: e, side: side as u8, forward: false });
        }
    }

    let mut seen = vec![false; nodes];
    let mut components: Vec<Vec<SideStep>> = Vec::new();
    for start in 0..nodes {
        if seen[start] {
            continue;
        }
        let mut steps = Vec::new();
        let mut x = start;
        loop {
            let (y, step) = band[x];
            seen[x] = true;
            seen[y] = true;
            steps.push(step);
            x = corner[y];
            if x == start {
                break;
            }
        }
        components.push(steps);
    }
    components.extend(g.rotations.iter().filter(|r| r.is_empty()).map(|_| Vec::new()));
    BoundaryTrace { components }
}

/// Number of Moebius bands whose two sides run the same way along the band
/// once component `c` is walked forwards when `orientation[c]` is true and
/// backwards otherwise.
pub fn count_moebius_same_direction(g: &RibbonGraph, trace: &BoundaryTrace, orientation: &[bool]) -> usize {
    assert_eq!(orientation.len(), trace.n(), "one orientation bit per component");
    let mut dir = vec![[None::<bool>; 2]; g.bands.len()];
    for (steps, &o) in trace.components.iter().zip(orientation) {
        for s in steps {
            dir[s.edge][s.side as usize] = Some(s.forward == o);
        }
    }
    g.bands
        .iter()
        .zip(&dir)
        .filter(|(b, d)| b.kind == BandType::Moebius && d[0] == d[1])
        .count()
}

/// Outcome of the parity check, with a failing orientation if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub chi: i64,
    pub holds: bool,
    pub counterexample: Option<(Vec<bool>, usize)>,
}

/// Checks `n + m + χ ≡ 0 (mod 2)` for all `2^n` boundary orientations.
pub fn lemma_report(g: &RibbonGraph) -> LemmaReport {
    let trace = trace_boundary(g);
    let n = trace.n();
    let chi = g.euler_characteristic();
    assert!(n < 63, "too many boundary components to enumerate orientations");
    for bits in 0u64..(1 << n) {
        let orientation: Vec<bool> = (0..n).map(|c| bits >> c & 1 == 1).collect();
        let m = count_moebius_same_direction(g, &trace, &orientation);
        if (n as i64 + m as i64 + chi).rem_euclid(2) != 0 {
            return LemmaReport { n, chi, holds: false, counterexample: Some((orientation, m)) };
        }
    }
    LemmaReport { n, chi, holds: true, counterexample: None }
}

pub fn lemma_check(g: &RibbonGraph) -> bool {
    lemma_report(g).holds
}

/// Runs the check on `count` random graphs; returns the failing graphs.
pub fn fuzz_lemma(count: usize, seed: u64, max_vertices: usize, max_edges: usize) -> Vec<RibbonJson> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| RibbonGraph::random(&mut rng, max_vertices, max_edges))
        .filter(|g| !lemma_check(g))
        .map(|g| g.to_json())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: &[&[&str]], edges: &[(&str, &str, BandType)]) -> RibbonGraph {
        let v: Vec<Vec<String>> = vertices.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        let e: Vec<_> = edges.iter().map(|(a, b, k)| (a.to_string(), b.to_string(), *k)).collect();
        RibbonGraph::new(&v, &e).unwrap()
    }

    fn annulus() -> RibbonGraph {
        RibbonGraph::annulus()
    }

    fn moebius() -> RibbonGraph {
        RibbonGraph::moebius_band()
    }

    fn disc() -> RibbonGraph {
        RibbonGraph::disc()
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(trace_boundary(&annulus()).n(), 2);
        assert_eq!(trace_boundary(&moebius()).n(), 1);
        assert_eq!(trace_boundary(&disc()).n(), 1);
        assert_eq!(trace_boundary(&graph(&[&[]], &[])).n(), 1);
    }

    #[test]
    fn every_side_walked_once() {
        let g = graph(
            &[&["a", "b", "c", "d"], &["e", "f"]],
            &[("a", "e", BandType::Moebius), ("b", "d", BandType::Handle), ("c", "f", BandType::Moebius)],
        );
        let t = trace_boundary(&g);
        let mut sides: Vec<(usize, u8)> = t.components.iter().flatten().map(|s| (s.edge, s.side)).collect();
        sides.sort();
        assert_eq!(sides, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]);
    }

    #[test]
    fn moebius_count_examples() {
        let g = moebius();
        let t = trace_boundary(&g);
        assert_eq!(count_moebius_same_direction(&g, &t, &[true]), 1);
        assert_eq!(count_moebius_same_direction(&g, &t, &[false]), 1);
        let g = annulus();
        let t = trace_boundary(&g);
        for o in [[true, true], [true, false], [false, true], [false, false]] {
            assert_eq!(count_moebius_same_direction(&g, &t, &o), 0);
        }
    }

    #[test]
    fn hand_built_cases_satisfy_lemma() {
        for g in [disc(), annulus(), moebius()] {
            assert!(lemma_check(&g));
        }
        let two = graph(&[&["a", "b", "c", "d"]], &[("a", "b", BandType::Moebius), ("c", "d", BandType::Moebius)]);
        assert!(lemma_check(&two));
        let crossed = graph(&[&["a", "c", "b", "d"]], &[("a", "b", BandType::Moebius), ("c", "d", BandType::Moebius)]);
        assert!(lemma_check(&crossed));
    }

    #[test]
    fn malformed_inputs() {
        let v = vec![vec!["a".to_string(), "b".to_string()]];
        let dup = RibbonGraph::new(&v, &[("a".into(), "a".into(), BandType::Handle)]);
        assert!(matches!(dup, Err(RibbonError::MalformedGraph(_))));
        let missing = RibbonGraph::new(&v, &[("a".into(), "z".into(), BandType::Handle)]);
        assert!(matches!(missing, Err(RibbonError::MalformedGraph(_))));
        let dangling = RibbonGraph::new(&v, &[]);
        assert!(matches!(dangling, Err(RibbonError::MalformedGraph(_))));
    }

    #[test]
    fn json_format() {
        let j = r#"{"vertices": [["h1","h2"]], "edges": [{"pair": ["h1","h2"], "type": "moebius"}]}"#;
        let g = RibbonGraph::from_json(&serde_json::from_str(j).unwrap()).unwrap();
        assert_eq!(g, moebius_named());
        let back = serde_json::to_value(g.to_json()).unwrap();
        assert_eq!(back["edges"][0]["type"], "moebius");
    }

    fn moebius_named() -> RibbonGraph {
        graph(&[&["h1", "h2"]], &[("h1", "h2", BandType::Moebius)])
    }

    #[test]
    fn orientable_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let g = RibbonGraph::random(&mut rng, 6, 10);
            let all_handle = RibbonGraph {
                bands: g.bands.iter().map(|b| Band { kind: BandType::Handle, ..*b }).collect(),
                ..g
            };
            let n = trace_boundary(&all_handle).n() as i64;
            assert_eq!((n + all_handle.euler_characteristic()).rem_euclid(2), 0);
        }
    }
}
