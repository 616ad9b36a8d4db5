use std::collections::BTreeSet;

use itertools::Itertools;

use super::{bits, LineCombinatorics, Matroid, Subset, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// A simple undirected graph; edge `k` becomes hyperplane `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= vertices || b >= vertices {
                return Err(Error::Validation(format!("edge {k} uses a missing vertex")));
            }
            if a == b {
                return Err(Error::Validation(format!("edge {k} is a loop")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Validation(format!("edge {k} is a duplicate")));
            }
        }
        if edges.is_empty() || edges.len() > MAX_ELEMENTS {
            return Err(Error::Validation("graph needs between 1 and 64 edges".into()));
        }
        Ok(Graph {
            vertices,
            edges: edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
        })
    }

    pub fn complete(v: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (0..v).tuple_combinations().collect();
        Graph::new(v, &edges)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = (a.min(b), a.max(b));
        self.edges.iter().position(|&x| x == e)
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// Number of complete subgraphs on s+1 vertices for s = 1..vertices−1
    /// (index 0 of the result is s = 1).
    pub fn clique_counts(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut counts = vec![0usize; self.vertices.saturating_sub(1)];
        fn grow(adj: &[u64], size: usize, cand: u64, counts: &mut [usize]) {
            for v in bits(cand) {
                if size >= 1 && size - 1 < counts.len() {
                    counts[size - 1] += 1;
                }
                let next = cand & adj[v] & !((2u64 << v) - 1);
                grow(adj, size + 1, next, counts);
            }
        }
        if self.vertices <= 64 {
            grow(&adj, 0, super::full(self.vertices), &mut counts);
        }
        counts
    }

    /// Edge sets of all simple cycles.
    pub fn cycles(&self) -> Vec<Subset> {
        let adj = self.adjacency();
        let mut found = BTreeSet::new();
        for s in 0..self.vertices {
            let mut path = vec![s];
            self.extend_cycles(&adj, s, &mut path, 1u64 << s, &mut found);
        }
        found.into_iter().collect()
    }

    fn extend_cycles(
        &self,
        adj: &[u64],
        start: usize,
        path: &mut Vec<usize>,
        used: u64,
        found: &mut BTreeSet<Subset>,
    ) {
        let last = *path.last().expect("nonempty path");
        for w in bits(adj[last]) {
            if w == start && path.len() >= 3 {
                let mut edges: Subset = 0;
                for (a, b) in path.iter().zip(path.iter().skip(1).chain([&start])) {
                    edges |= 1 << self.edge_index(*a, *b).expect("edge present");
                }
                found.insert(edges);
            } else if w > start && used & (1 << w) == 0 {
                path.push(w);
                self.extend_cycles(adj, start, path, used | (1 << w), found);
                path.pop();
            }
        }
    }
}

/// Graphic arrangement data: line combinatorics (triangles as triple
/// flats), the cycle matroid, and clique counts κ_s.
pub fn graphic(g: &Graph) -> Result<(LineCombinatorics, Matroid, Vec<usize>)> {
    let adj = g.adjacency();
    let mut flats: Vec<Vec<usize>> = Vec::new();
    for (a, b, c) in (0..g.vertices).tuple_combinations() {
        if adj[a] & (1 << b) != 0 && adj[b] & (1 << c) != 0 && adj[a] & (1 << c) != 0 {
            let mut f: Vec<usize> = [(a, b), (b, c), (a, c)]
                .iter()
                .map(|&(x, y)| g.edge_index(x, y).expect("edge present"))
                .collect();
            f.sort_unstable();
            flats.push(f);
        }
    }
    let lc = LineCombinatorics::new(g.edges.len(), &flats)?;
    let matroid = Matroid::from_circuits(g.edges.len(), g.cycles())?;
    Ok((lc, matroid, g.clique_counts()))
}
