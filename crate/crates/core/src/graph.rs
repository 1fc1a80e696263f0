//! Directed HCP instances and the brute-force ground-truth oracles.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("node count must be at least 2, got {0}")]
    TooFewNodes(i64),
    #[error("edge #{index}: node {node} out of range 1..={n}")]
    NodeOutOfRange { index: usize, node: i64, n: i64 },
    #[error("edge #{index}: self-loop ({node},{node}) rejected")]
    SelfLoop { index: usize, node: i64 },
    #[error("edge #{index}: duplicate edge ({from},{to})")]
    DuplicateEdge { index: usize, from: i64, to: i64 },
    #[error("certificate invalid for graph: {0}")]
    BadCertificate(String),
}

/// A directed HCP instance: `n` nodes and a 0/1 cost matrix with zero diagonal.
///
/// Node indices are 1-based everywhere in the public API, matching the file
/// format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    cost: Vec<Vec<u8>>, // cost[i-1][j-1]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: i64,
    edges: Vec<[i64; 2]>,
}

impl DirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewNodes(n as i64));
        }
        let mut g = DirectedGraph {
            n,
            cost: vec![vec![0; n]; n],
        };
        for (idx, &(from, to)) in edges.iter().enumerate() {
            g.insert_edge(idx + 1, from as i64, to as i64)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, index: usize, from: i64, to: i64) -> Result<(), GraphError> {
        let n = self.n as i64;
        for node in [from, to] {
            if node < 1 || node > n {
                return Err(GraphError::NodeOutOfRange { index, node, n });
            }
        }
        if from == to {
            return Err(GraphError::SelfLoop { index, node: from });
        }
        let (f, t) = (from as usize - 1, to as usize - 1);
        if self.cost[f][t] == 1 {
            return Err(GraphError::DuplicateEdge { index, from, to });
        }
        self.cost[f][t] = 1;
        Ok(())
    }

    /// Parses the JSON graph format: `{"n":3,"edges":[[1,2],[2,3],[3,1]]}`.
    /// Unknown fields are rejected; the document must be UTF-8 without a BOM.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.starts_with('\u{feff}') {
            return Err(GraphError::Malformed("leading BOM not allowed".into()));
        }
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
        if doc.n < 2 {
            return Err(GraphError::TooFewNodes(doc.n));
        }
        let mut g = DirectedGraph {
            n: doc.n as usize,
            cost: vec![vec![0; doc.n as usize]; doc.n as usize],
        };
        for (i, e) in doc.edges.iter().enumerate() {
            g.insert_edge(i + 1, e[0], e[1])?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge cost `C_{i,j}` with 1-based indices.
    pub fn cost(&self, i: usize, j: usize) -> u8 {
        self.cost[i - 1][j - 1]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.cost(i, j) == 1
    }

    /// All cost-1 edges in (i,j) lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.cost.iter().flatten().filter(|&&c| c == 1).count()
    }

    /// Applies a node relabeling: `perm[v-1]` is the new label of node `v`.
    pub fn relabel(&self, perm: &[usize]) -> DirectedGraph {
        let mut g = DirectedGraph {
            n: self.n,
            cost: vec![vec![0; self.n]; self.n],
        };
        for (i, j) in self.edges() {
            g.cost[perm[i - 1] - 1][perm[j - 1] - 1] = 1;
        }
        g
    }

    /// Serializes back to the JSON graph format.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<[usize; 2]> = self.edges().iter().map(|&(i, j)| [i, j]).collect();
        serde_json::json!({ "n": self.n, "edges": edges })
    }
}

/// A visiting order witnessing a directed Hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonCertificate {
    pub order: Vec<usize>,
}

impl HamiltonCertificate {
    /// Checks the certificate's own invariants against `g`.
    pub fn validate(&self, g: &DirectedGraph) -> Result<(), GraphError> {
        let n = g.n();
        if self.order.len() != n {
            return Err(GraphError::BadCertificate(format!(
                "order has {} entries, expected {n}",
                self.order.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &self.order {
            if v < 1 || v > n || seen[v] {
                return Err(GraphError::BadCertificate(format!(
                    "order is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        for t in 0..n {
            let from = self.order[t];
            let to = self.order[(t + 1) % n];
            if !g.has_edge(from, to) {
                return Err(GraphError::BadCertificate(format!(
                    "missing edge ({from},{to})"
                )));
            }
        }
        Ok(())
    }

    /// The n tour edges, including the closing edge back to the start.
    pub fn tour_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order.len();
        (0..n)
            .map(|t| (self.order[t], self.order[(t + 1) % n]))
            .collect()
    }
}

/// Decides Hamiltonicity; returns the lexicographically smallest certificate
/// starting at node 1, if any.
pub fn is_hamiltonian(g: &DirectedGraph) -> Option<HamiltonCertificate> {
    // Subset DP settles the verdict first so the lexicographic DFS below only
    // runs on yes-instances.
    if !is_hamiltonian_dp(g) {
        return None;
    }
    let n = g.n();
    let mut order = vec![1usize];
    let mut used = vec![false; n + 1];
    used[1] = true;
    if dfs_lex(g, &mut order, &mut used) {
        let cert = HamiltonCertificate { order };
        debug_assert!(cert.validate(g).is_ok());
        Some(cert)
    } else {
        None
    }
}

fn dfs_lex(g: &DirectedGraph, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = g.n();
    if order.len() == n {
        return g.has_edge(order[n - 1], order[0]);
    }
    let at = *order.last().unwrap();
    for next in 2..=n {
        if !used[next] && g.has_edge(at, next) {
            used[next] = true;
            order.push(next);
            if dfs_lex(g, order, used) {
                return true;
            }
            order.pop();
            used[next] = false;
        }
    }
    false
}

/// Held-Karp style reachability over subsets; verdict only. Usable to N = 18.
pub fn is_hamiltonian_dp(g: &DirectedGraph) -> bool {
    let n = g.n();
    assert!(n <= 18, "subset DP oracle limited to N <= 18");
    // reach[mask] = bitset of end nodes v such that a simple path from node 1
    // visiting exactly mask (0-based bits) ends at v. Node 1 is bit 0.
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        let ends = reach[mask];
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            for w in 0..n {
                if mask >> w & 1 == 0 && g.has_edge(v + 1, w + 1) {
                    reach[mask | (1 << w)] |= 1 << w;
                }
            }
        }
    }
    let ends = reach[full];
    (0..n).any(|v| ends >> v & 1 == 1 && g.has_edge(v + 1, 1))
}

/// Permutation-enumeration oracle, independent of the DFS/DP pair. N <= 8.
pub fn is_hamiltonian_enum(g: &DirectedGraph) -> Option<HamiltonCertificate> {
    let n = g.n();
    assert!(n <= 8, "permutation enumeration limited to N <= 8");
    let mut rest: Vec<usize> = (2..=n).collect();
    let mut best: Option<Vec<usize>> = None;
    permute(&mut rest, 0, &mut |perm| {
        let mut order = vec![1usize];
        order.extend_from_slice(perm);
        let ok = (0..n).all(|t| g.has_edge(order[t], order[(t + 1) % n]));
        if ok {
            match &best {
                Some(b) if *b <= order => {}
                _ => best = Some(order),
            }
        }
    });
    best.map(|order| HamiltonCertificate { order })
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Edge-value map over all ordered pairs i != j.
pub type EdgeValues = BTreeMap<(usize, usize), BigRational>;

/// Idealized indicator assignment of a certificate: exactly 2 on the N tour
/// edges, 0 on every other ordered pair.
pub fn indicator_x(
    g: &DirectedGraph,
    cert: &HamiltonCertificate,
) -> Result<EdgeValues, GraphError> {
    cert.validate(g)?;
    let two = BigRational::from(BigInt::from(2));
    let zero = BigRational::from(BigInt::from(0));
    let tour: std::collections::BTreeSet<(usize, usize)> =
        cert.tour_edges().into_iter().collect();
    let mut out = EdgeValues::new();
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            if i != j {
                let v = if tour.contains(&(i, j)) {
                    two.clone()
                } else {
                    zero.clone()
                };
                out.insert((i, j), v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        DirectedGraph::new(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> DirectedGraph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    edges.push((i, j));
                }
            }
        }
        DirectedGraph::new(n, &edges).unwrap()
    }

    #[test]
    fn parse_cycle() {
        let g = DirectedGraph::parse(r#"{"n":3,"edges":[[1,2],[2,3],[3,1]]}"#).unwrap();
        assert_eq!(g, cycle(3));
    }

    #[test]
    fn parse_empty_edges() {
        let g = DirectedGraph::parse(r#"{"n":2,"edges":[]}"#).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = DirectedGraph::parse(r#"{"n":3,"edges":[[1,1]]}"#).unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { index: 1, node: 1 }));
    }

    #[test]
    fn parse_rejects_unknown_fields_and_bad_indices() {
        assert!(DirectedGraph::parse(r#"{"n":3,"edges":[],"w":1}"#).is_err());
        assert!(DirectedGraph::parse(r#"{"n":3,"edges":[[0,1]]}"#).is_err());
        assert!(DirectedGraph::parse(r#"{"n":3,"edges":[[1,4]]}"#).is_err());
        assert!(DirectedGraph::parse(r#"{"n":1,"edges":[]}"#).is_err());
        assert!(DirectedGraph::parse(r#"{"n":3,"edges":[[1,2],[1,2]]}"#).is_err());
    }

    #[test]
    fn complete_k3_certificate_is_lex_smallest() {
        let cert = is_hamiltonian(&complete(3)).unwrap();
        assert_eq!(cert.order, vec![1, 2, 3]);
    }

    #[test]
    fn missing_out_edge_means_no_cycle() {
        let g = DirectedGraph::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(is_hamiltonian(&g).is_none());
        assert!(!is_hamiltonian_dp(&g));
    }

    #[test]
    fn chord_does_not_change_lex_choice() {
        // edges 1->2,2->3,3->4,4->1,1->3: unique tour (1,2,3,4)
        let g = DirectedGraph::new(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        let cert = is_hamiltonian(&g).unwrap();
        assert_eq!(cert.order, vec![1, 2, 3, 4]);
        // independent oracle agrees
        assert_eq!(is_hamiltonian_enum(&g).unwrap().order, vec![1, 2, 3, 4]);
    }

    #[test]
    fn indicator_values() {
        let g = complete(3);
        let cert = is_hamiltonian(&g).unwrap();
        let x = indicator_x(&g, &cert).unwrap();
        let two = BigRational::from(BigInt::from(2));
        assert_eq!(x[&(1, 2)], two);
        assert_eq!(x[&(2, 3)], two);
        assert_eq!(x[&(3, 1)], two);
        assert_eq!(x[&(2, 1)], BigRational::from(BigInt::from(0)));
        assert_eq!(x.len(), 6);
    }

    #[test]
    fn indicator_rejects_non_tour() {
        let g = DirectedGraph::new(3, &[(1, 2), (2, 3)]).unwrap();
        let cert = HamiltonCertificate {
            order: vec![1, 2, 3],
        };
        assert!(indicator_x(&g, &cert).is_err());
    }

    #[test]
    fn two_disjoint_two_cycles() {
        let g = DirectedGraph::new(4, &[(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap();
        assert!(is_hamiltonian(&g).is_none());
    }
}
