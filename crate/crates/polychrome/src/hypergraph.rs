//! Plain multi-hypergraphs: vertex ids `0..n`, edges as sorted id sets with an
//! explicit multiplicity counter, optional vertex partition for multipartite
//! structures.
//!
//! Edges are kept in insertion order; parallel copies are *not* merged on
//! insert so that edge instances can stay aligned with external structures
//! (e.g. the dual keeps instance `k` of vertex order aligned with vertex `k`).
//! Use [`Hypergraph::canonical_edges`] for order- and multiplicity-insensitive
//! comparisons.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One hyperedge: a sorted set of vertex ids plus a multiplicity counter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub verts: Vec<u32>,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
    /// Part id per vertex; present only for multipartite instances. Every edge
    /// is then required to meet each part at most once.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    parts: Option<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new(), parts: None }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of distinct stored edge entries (parallel copies may still be
    /// split across entries; see [`Self::instance_count`]).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total number of edge instances, counting multiplicity.
    pub fn instance_count(&self) -> usize {
        self.edges.iter().map(|e| e.mult as usize).sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parts(&self) -> Option<&[u32]> {
        self.parts.as_deref()
    }

    /// Sorts and validates `verts`, then appends the edge. Vertices must be
    /// distinct and in range; `mult` must be positive.
    pub fn add_edge(&mut self, mut verts: Vec<u32>, mult: u32) -> Result<()> {
        verts.sort_unstable();
        if mult == 0 {
            return Err(Error::InvalidEdge(verts, "multiplicity 0".into()));
        }
        if let Some(&max) = verts.last() {
            if max as usize >= self.n {
                return Err(Error::InvalidEdge(verts, format!("vertex {max} out of range")));
            }
        }
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(verts, "repeated vertex".into()));
        }
        if let Some(parts) = &self.parts {
            check_edge_parts(&verts, parts)?;
        }
        self.edges.push(Edge { verts, mult });
        Ok(())
    }

    /// Installs a vertex partition. Fails if any existing edge meets a part
    /// more than once.
    pub fn set_parts(&mut self, parts: Vec<u32>) -> Result<()> {
        if parts.len() != self.n {
            return Err(Error::Structure(format!(
                "parts vector has length {}, expected {}",
                parts.len(),
                self.n
            )));
        }
        for e in &self.edges {
            check_edge_parts(&e.verts, &parts)?;
        }
        self.parts = Some(parts);
        Ok(())
    }

    pub fn part_count(&self) -> Option<usize> {
        self.parts.as_ref().map(|p| p.iter().map(|&x| x as usize + 1).max().unwrap_or(0))
    }

    /// Per-vertex degree, counting parallel copies separately.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in &e.verts {
                deg[v as usize] += e.mult as usize;
            }
        }
        deg
    }

    /// Per-vertex lists of (edge index, multiplicity).
    pub fn incidence(&self) -> Vec<Vec<(usize, u32)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in &e.verts {
                inc[v as usize].push((i, e.mult));
            }
        }
        inc
    }

    /// `(uniformity, regularity)`: the common edge size and the common vertex
    /// degree, each `None` if not constant. No edges yields `(None, Some(0))`
    /// (degrees are all zero, sizes have no common value); no vertices yields
    /// `(r, None)` symmetrically.
    pub fn check_uniform_regular(&self) -> (Option<usize>, Option<usize>) {
        let mut sizes = self.edges.iter().map(|e| e.verts.len());
        let uniform = match sizes.next() {
            None => None,
            Some(first) => sizes.all(|s| s == first).then_some(first),
        };
        let degs = self.degrees();
        let regular = match degs.first() {
            None => None,
            Some(&first) => degs.iter().all(|&d| d == first).then_some(first),
        };
        (uniform, regular)
    }

    /// Dual hypergraph: one vertex per edge *instance* of `self` (instances
    /// numbered in edge order, copies of a parallel edge consecutive), and one
    /// edge per vertex `v` of `self` holding the instances containing `v`.
    /// Dual edge `k` is pushed for vertex `k`, so edge index = vertex id.
    pub fn dual(&self) -> Hypergraph {
        let mut instance = 0u32;
        let mut incident: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for e in &self.edges {
            for _ in 0..e.mult {
                for &v in &e.verts {
                    incident[v as usize].push(instance);
                }
                instance += 1;
            }
        }
        let mut d = Hypergraph::new(instance as usize);
        for verts in incident {
            // Instance ids were appended in increasing order; already sorted.
            d.edges.push(Edge { verts, mult: 1 });
        }
        d
    }

    /// Edges merged by vertex set (multiplicities summed) and sorted
    /// lexicographically. Two hypergraphs describe the same multiset of edges
    /// iff their canonical edges are equal.
    pub fn canonical_edges(&self) -> Vec<Edge> {
        let mut map: std::collections::BTreeMap<Vec<u32>, u64> = std::collections::BTreeMap::new();
        for e in &self.edges {
            *map.entry(e.verts.clone()).or_insert(0) += e.mult as u64;
        }
        map.into_iter()
            .map(|(verts, mult)| Edge { verts, mult: mult.try_into().expect("multiplicity overflow") })
            .collect()
    }

    /// Distinct edge sets, ignoring multiplicity, sorted.
    pub fn distinct_edge_sets(&self) -> Vec<Vec<u32>> {
        let mut sets: Vec<Vec<u32>> =
            self.edges.iter().map(|e| e.verts.clone()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        sets.sort();
        sets
    }

    pub fn same_edge_multiset(&self, other: &Hypergraph) -> bool {
        self.n == other.n && self.canonical_edges() == other.canonical_edges()
    }
}

fn check_edge_parts(verts: &[u32], parts: &[u32]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for &v in verts {
        if !seen.insert(parts[v as usize]) {
            return Err(Error::Structure(format!(
                "edge {verts:?} meets part {} more than once",
                parts[v as usize]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[u32]]) -> Hypergraph {
        let mut g = Hypergraph::new(n);
        for e in edges {
            g.add_edge(e.to_vec(), 1).unwrap();
        }
        g
    }

    #[test]
    fn dual_of_single_edge_is_two_parallel_singletons() {
        let g = h(2, &[&[0, 1]]);
        let d = g.dual();
        assert_eq!(d.vertex_count(), 1);
        assert_eq!(d.edges().len(), 2);
        assert_eq!(d.edges()[0].verts, vec![0]);
        assert_eq!(d.edges()[1].verts, vec![0]);
    }

    #[test]
    fn dual_of_triangle_is_self_dual_shape() {
        // 3 vertices, edges {0,1},{1,2},{0,2}: dual is again a triangle.
        let g = h(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = g.dual();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.check_uniform_regular(), (Some(2), Some(2)));
        assert!(d.dual().same_edge_multiset(&g));
    }

    #[test]
    fn double_dual_is_identity_on_canonical_form() {
        let mut g = h(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 2, 3]]);
        g.add_edge(vec![0, 1, 2], 2).unwrap(); // parallel copies
        let dd = g.dual().dual();
        assert_eq!(dd.vertex_count(), g.vertex_count());
        assert!(dd.same_edge_multiset(&g));
    }

    #[test]
    fn incidence_totals_match_between_h_and_dual() {
        let mut g = h(5, &[&[0, 1, 4], &[2, 3], &[0, 2, 3, 4]]);
        g.add_edge(vec![1, 3], 3).unwrap();
        let total: usize = g.edges().iter().map(|e| e.mult as usize * e.verts.len()).sum();
        let d = g.dual();
        let dual_total: usize = d.edges().iter().map(|e| e.verts.len()).sum();
        assert_eq!(total, dual_total);
    }

    #[test]
    fn uniform_regular_conventions() {
        let empty_edges = Hypergraph::new(3);
        assert_eq!(empty_edges.check_uniform_regular(), (None, Some(0)));
        let no_verts = Hypergraph::new(0);
        assert_eq!(no_verts.check_uniform_regular(), (None, None));
        let mixed = h(3, &[&[0], &[0, 1]]);
        assert_eq!(mixed.check_uniform_regular().0, None);
    }

    #[test]
    fn part_constraint_rejected_on_violation() {
        let mut g = h(4, &[&[0, 1]]);
        assert!(g.set_parts(vec![0, 0, 1, 1]).is_err());
        let mut g = h(4, &[&[0, 2]]);
        g.set_parts(vec![0, 0, 1, 1]).unwrap();
        assert!(g.add_edge(vec![2, 3], 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut g = h(3, &[&[0, 1]]);
        g.add_edge(vec![1, 2], 2).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"n\":3"));
        assert!(s.contains("\"mult\":2"));
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
