use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0} is out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {edge} has {count} half-edges, expected 2")]
    BadIncidence { edge: usize, count: usize },
    #[error("multiplicity vector has length {got}, graph has {want} edges")]
    MultiplicityLength { got: usize, want: usize },
    #[error("unknown built-in graph {0:?}")]
    UnknownGraph(String),
}

/// Trivalent graph of a pants decomposition.
///
/// Edges `0..edges` join vertices (loops allowed); edges
/// `edges..edges + circles` are vertex-free circles. Each vertex lists the
/// edges at its three half-edges, so a loop appears twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct TrivalentGraph {
    vertices: Vec<[usize; 3]>,
    edges: usize,
    circles: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<[usize; 3]>,
    edges: usize,
    #[serde(default)]
    circles: usize,
}

impl TryFrom<GraphRepr> for TrivalentGraph {
    type Error = GraphError;
    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        TrivalentGraph::new(r.vertices, r.edges, r.circles)
    }
}

impl From<TrivalentGraph> for GraphRepr {
    fn from(g: TrivalentGraph) -> Self {
        GraphRepr { vertices: g.vertices, edges: g.edges, circles: g.circles }
    }
}

impl TrivalentGraph {
    pub fn new(vertices: Vec<[usize; 3]>, edges: usize, circles: usize) -> Result<Self, GraphError> {
        let mut count = vec![0usize; edges];
        for &e in vertices.iter().flatten() {
            *count.get_mut(e).ok_or(GraphError::EdgeOutOfRange(e))? += 1;
        }
        if let Some((edge, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(GraphError::BadIncidence { edge, count: c });
        }
        Ok(Self { vertices, edges, circles })
    }

    /// The torus: a single circle.
    pub fn torus() -> Self {
        Self { vertices: vec![], edges: 0, circles: 1 }
    }

    /// Two vertices joined by three edges (genus 2 handlebody).
    pub fn theta() -> Self {
        Self { vertices: vec![[0, 1, 2], [0, 1, 2]], edges: 3, circles: 0 }
    }

    /// One vertex with a loop and an edge to a second vertex with a loop.
    pub fn dumbbell() -> Self {
        Self { vertices: vec![[0, 0, 1], [1, 2, 2]], edges: 3, circles: 0 }
    }

    pub fn empty() -> Self {
        Self { vertices: vec![], edges: 0, circles: 0 }
    }

    pub fn builtin(name: &str) -> Result<Self, GraphError> {
        match name {
            "torus" | "circle" => Ok(Self::torus()),
            "theta" => Ok(Self::theta()),
            "dumbbell" => Ok(Self::dumbbell()),
            "empty" => Ok(Self::empty()),
            _ => Err(GraphError::UnknownGraph(name.to_string())),
        }
    }

    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    /// Number of vertex-joining edges.
    pub fn edges(&self) -> usize {
        self.edges
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    /// `d_G`: all edges, circles included.
    pub fn d(&self) -> usize {
        self.edges + self.circles
    }

    pub fn check_multiplicities(&self, m: &[u32]) -> Result<(), GraphError> {
        if m.len() != self.d() {
            return Err(GraphError::MultiplicityLength { got: m.len(), want: self.d() });
        }
        Ok(())
    }

    /// Dimension of `H^1(G, Z_2)`, the cycle rank: each circle is a
    /// component with one loop.
    pub fn cycle_rank(&self) -> usize {
        let (tree, _) = self.spanning_forest();
        self.edges - tree.iter().filter(|&&t| t).count() + self.circles
    }

    /// Marks the edges of a spanning forest (by union-find in edge order)
    /// and returns the endpoints of each edge.
    fn spanning_forest(&self) -> (Vec<bool>, Vec<(usize, usize)>) {
        let mut ends = vec![(usize::MAX, usize::MAX); self.edges];
        for (v, slots) in self.vertices.iter().enumerate() {
            for &e in slots {
                if ends[e].0 == usize::MAX {
                    ends[e].0 = v;
                } else {
                    ends[e].1 = v;
                }
            }
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut tree = vec![false; self.edges];
        for (e, &(a, b)) in ends.iter().enumerate() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                tree[e] = true;
            }
        }
        (tree, ends)
    }

    /// A basis of the `Z_2` cycle space as 0/1 vectors over all `d_G`
    /// edges: the fundamental cycle of every non-tree edge, and every circle.
    pub fn cycle_basis(&self) -> Vec<Vec<u8>> {
        let (tree, ends) = self.spanning_forest();
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in ends.iter().enumerate() {
            if tree[e] {
                adj[a].push((b, e));
                adj[b].push((a, e));
            }
        }
        let mut basis = Vec::new();
        for (e, &(a, b)) in ends.iter().enumerate() {
            if tree[e] {
                continue;
            }
            let mut cycle = vec![0u8; self.d()];
            cycle[e] = 1;
            for t in tree_path(&adj, a, b) {
                cycle[t] ^= 1;
            }
            basis.push(cycle);
        }
        for c in 0..self.circles {
            let mut cycle = vec![0u8; self.d()];
            cycle[self.edges + c] = 1;
            basis.push(cycle);
        }
        basis
    }
}

/// Edges on the tree path from `a` to `b`.
fn tree_path(adj: &[Vec<(usize, usize)>], a: usize, b: usize) -> Vec<usize> {
    let mut prev = vec![None; adj.len()];
    let mut stack = vec![a];
    let mut seen = vec![false; adj.len()];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = b;
    while let Some((p, e)) = prev[x] {
        path.push(e);
        x = p;
    }
    path
}

/// Graph together with edge multiplicities, as read from JSON:
/// `{"vertices": [[0,1,2],[0,1,2]], "edges": 3, "circles": 0, "m": [1,1,0]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphWithMultiplicities {
    #[serde(flatten)]
    pub graph: TrivalentGraph,
    pub m: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TrivalentGraph::new(vec![[0, 1, 2]], 3, 0).is_err());
        assert!(TrivalentGraph::new(vec![[0, 0, 5]], 1, 0).is_err());
        assert!(TrivalentGraph::new(vec![[0, 0, 1], [1, 2, 2]], 3, 0).is_ok());
    }

    #[test]
    fn cycle_ranks() {
        assert_eq!(TrivalentGraph::torus().cycle_rank(), 1);
        assert_eq!(TrivalentGraph::theta().cycle_rank(), 2);
        assert_eq!(TrivalentGraph::dumbbell().cycle_rank(), 2);
        assert_eq!(TrivalentGraph::empty().cycle_rank(), 0);
    }

    #[test]
    fn theta_cycles_are_even() {
        let basis = TrivalentGraph::theta().cycle_basis();
        assert_eq!(basis.len(), 2);
        for c in basis {
            assert_eq!(c.iter().map(|&x| x as u32).sum::<u32>(), 2);
        }
        let db = TrivalentGraph::dumbbell().cycle_basis();
        assert_eq!(db, vec![vec![1, 0, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn json_with_multiplicities() {
        let j = r#"{"vertices": [[0,1,2],[0,1,2]], "edges": 3, "circles": 0, "m": [1,1,0]}"#;
        let g: GraphWithMultiplicities = serde_json::from_str(j).unwrap();
        assert_eq!(g.graph, TrivalentGraph::theta());
        assert_eq!(g.m, vec![1, 1, 0]);
        let bad = r#"{"vertices": [[0,1,2]], "edges": 3, "m": []}"#;
        assert!(serde_json::from_str::<GraphWithMultiplicities>(bad).is_err());
    }
}
