//! Undirected capacitated multigraphs, vertex partitions and cut evaluation.

use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cap: Rational,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {u}-{v} has negative capacity")]
    NegativeCapacity { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: negative capacity {cap}")]
    NegativeCapacity { line: usize, cap: String },
    #[error("line {line}: invalid capacity `{text}`")]
    BadCapacity { line: usize, text: String },
    #[error("line {line}: header declares {expected} edges but {found} edge lines were given")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("missing `p kcut <n> <m>` header")]
    MissingHeader,
}

/// Undirected multigraph with exact capacities.
///
/// Construction canonicalizes the edge list: self-loops and zero-capacity
/// edges are dropped, parallel edges are kept. Edge ids index the retained
/// edges in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    component_count: usize,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Rational)>,
    ) -> Result<Graph, GraphError> {
        let mut kept = Vec::new();
        for (u, v, cap) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if cap.is_negative() {
                return Err(GraphError::NegativeCapacity { u, v });
            }
            if u == v || cap.is_zero() {
                continue;
            }
            kept.push(Edge { u, v, cap });
        }
        let mut g = Graph {
            n,
            edges: kept,
            component_count: 0,
        };
        g.component_count = g.components().part_count();
        Ok(g)
    }

    /// Convenience constructor for integer capacities.
    pub fn from_int_edges(n: usize, edges: &[(VertexId, VertexId, i64)]) -> Graph {
        Graph::new(n, edges.iter().map(|&(u, v, c)| (u, v, rational::int(c))))
            .expect("valid edge list")
    }

    /// Parses the line-oriented `p kcut <n> <m>` / `e <u> <v> <cap>` format.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut raw = Vec::new();
        let mut last_line = 0;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::Header {
                            line: lineno,
                            msg: "duplicate header".into(),
                        });
                    }
                    if fields.len() != 4 || fields[1] != "kcut" {
                        return Err(ParseError::Header {
                            line: lineno,
                            msg: "expected `p kcut <n> <m>`".into(),
                        });
                    }
                    let n = fields[2].parse::<usize>().map_err(|_| ParseError::Header {
                        line: lineno,
                        msg: format!("bad vertex count `{}`", fields[2]),
                    })?;
                    let m = fields[3].parse::<usize>().map_err(|_| ParseError::Header {
                        line: lineno,
                        msg: format!("bad edge count `{}`", fields[3]),
                    })?;
                    header = Some((n, m, lineno));
                }
                "e" => {
                    let (n, m, _) = header.ok_or(ParseError::MissingHeader)?;
                    if fields.len() != 4 {
                        return Err(ParseError::Malformed {
                            line: lineno,
                            msg: "expected `e <u> <v> <cap>`".into(),
                        });
                    }
                    if raw.len() == m {
                        return Err(ParseError::EdgeCountMismatch {
                            line: lineno,
                            expected: m,
                            found: m + 1,
                        });
                    }
                    let mut ends = [0usize; 2];
                    for (slot, text) in ends.iter_mut().zip(&fields[1..3]) {
                        let id = text.parse::<i64>().map_err(|_| ParseError::Malformed {
                            line: lineno,
                            msg: format!("bad vertex id `{text}`"),
                        })?;
                        if id < 1 || id as usize > n {
                            return Err(ParseError::VertexOutOfRange {
                                line: lineno,
                                vertex: id,
                                n,
                            });
                        }
                        *slot = id as usize - 1;
                    }
                    if ends[0] == ends[1] {
                        return Err(ParseError::SelfLoop {
                            line: lineno,
                            vertex: ends[0] + 1,
                        });
                    }
                    let cap = rational::parse(fields[3]).map_err(|_| ParseError::BadCapacity {
                        line: lineno,
                        text: fields[3].to_string(),
                    })?;
                    if cap.is_negative() {
                        return Err(ParseError::NegativeCapacity {
                            line: lineno,
                            cap: fields[3].to_string(),
                        });
                    }
                    raw.push((ends[0], ends[1], cap));
                }
                other => {
                    return Err(ParseError::Malformed {
                        line: lineno,
                        msg: format!("unknown record type `{other}`"),
                    })
                }
            }
        }
        let (n, m, _) = header.ok_or(ParseError::MissingHeader)?;
        if raw.len() != m {
            return Err(ParseError::EdgeCountMismatch {
                line: last_line,
                expected: m,
                found: raw.len(),
            });
        }
        Ok(Graph::new(n, raw).expect("parser validated every edge"))
    }

    /// Renders the graph back into the input format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p kcut {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {}\n",
                e.u + 1,
                e.v + 1,
                rational::Show(&e.cap)
            ));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn caps(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.cap.clone()).collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn total_capacity(&self) -> Rational {
        self.edges.iter().map(|e| &e.cap).sum()
    }

    /// Capacitated degree of every vertex.
    pub fn degrees(&self) -> Vec<Rational> {
        let mut deg = vec![Rational::zero(); self.n];
        for e in &self.edges {
            deg[e.u] += &e.cap;
            deg[e.v] += &e.cap;
        }
        deg
    }

    /// Per-vertex incidence lists of edge ids.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push(id);
            adj[e.v].push(id);
        }
        adj
    }

    pub fn components(&self) -> VertexPartition {
        self.components_filtered(|_| true)
    }

    /// Connected components of the graph with the flagged edges removed.
    pub fn components_without(&self, removed: &[bool]) -> VertexPartition {
        self.components_filtered(|id| !removed[id])
    }

    pub fn components_filtered(&self, keep: impl Fn(EdgeId) -> bool) -> VertexPartition {
        let mut dsu = DisjointSets::new(self.n);
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id) {
                dsu.union(e.u, e.v);
            }
        }
        VertexPartition::from_labels(&dsu.labels())
    }

    /// Contracts the given edges: every connected piece of `(V, edge_set)`
    /// becomes one vertex. Self-loops vanish, parallel edges survive.
    pub fn contract(&self, edge_set: &[EdgeId]) -> Contraction {
        let mut dsu = DisjointSets::new(self.n);
        for &id in edge_set {
            let e = &self.edges[id];
            dsu.union(e.u, e.v);
        }
        self.contract_partition(&VertexPartition::from_labels(&dsu.labels()))
    }

    /// Quotient graph `G / P`: one vertex per part (in canonical part order).
    pub fn contract_partition(&self, p: &VertexPartition) -> Contraction {
        let vertex_map = p.labels();
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            if a != b {
                edges.push((a, b, e.cap.clone()));
                edge_map.push(id);
            }
        }
        let graph = Graph::new(p.part_count(), edges).expect("quotient of a valid graph");
        Contraction {
            graph,
            vertex_map,
            edge_map,
        }
    }

    /// Subgraph induced by `vertices` (relabelled `0..vertices.len()` in the
    /// given order).
    pub fn induced(&self, vertices: &[VertexId]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                edges.push((local[e.u], local[e.v], e.cap.clone()));
                edge_map.push(id);
            }
        }
        Subgraph {
            graph: Graph::new(vertices.len(), edges).expect("induced subgraph of a valid graph"),
            vertices: vertices.to_vec(),
            edge_map,
        }
    }

    /// Same vertex set, edges replaced by new capacities (edges whose new
    /// capacity is zero are dropped; `edge_map` records the survivors).
    pub fn with_capacities(&self, caps: &[Rational]) -> Subgraph {
        assert_eq!(caps.len(), self.m(), "one capacity per edge");
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, (e, c)) in self.edges.iter().zip(caps).enumerate() {
            if !c.is_zero() {
                edges.push((e.u, e.v, c.clone()));
                edge_map.push(id);
            }
        }
        Subgraph {
            graph: Graph::new(self.n, edges).expect("capacities must be nonnegative"),
            vertices: (0..self.n).collect(),
            edge_map,
        }
    }

    /// Merges parallel edges by summing capacities. Cut values are unchanged.
    pub fn normalize(&self) -> Graph {
        let mut merged: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for e in &self.edges {
            let key = (e.u.min(e.v), e.u.max(e.v));
            *merged.entry(key).or_insert_with(Rational::zero) += &e.cap;
        }
        Graph::new(self.n, merged.into_iter().map(|((u, v), c)| (u, v, c)))
            .expect("normalized graph is valid")
    }
}

#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    /// Old vertex -> new vertex.
    pub vertex_map: Vec<VertexId>,
    /// New edge -> old edge.
    pub edge_map: Vec<EdgeId>,
}

impl Contraction {
    /// Lifts a partition of the contracted graph back to the original vertices.
    pub fn lift(&self, p: &VertexPartition) -> VertexPartition {
        let labels = p.labels();
        let lifted: Vec<usize> = self.vertex_map.iter().map(|&w| labels[w]).collect();
        VertexPartition::from_labels(&lifted)
    }
}

#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// New vertex -> old vertex.
    pub vertices: Vec<VertexId>,
    /// New edge -> old edge.
    pub edge_map: Vec<EdgeId>,
}

/// A partition of `0..n`, stored canonically: every part sorted ascending and
/// parts ordered by their minimum element. The derived `Ord` is the canonical
/// partition order used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    parts: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("vertex {0} appears in more than one part")]
    Overlap(VertexId),
    #[error("vertex {0} is not covered")]
    Uncovered(VertexId),
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("empty part")]
    EmptyPart,
}

impl VertexPartition {
    pub fn from_parts(n: usize, parts: Vec<Vec<VertexId>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart);
            }
            for &v in part {
                if v >= n {
                    return Err(PartitionError::OutOfRange(v));
                }
                if seen[v] {
                    return Err(PartitionError::Overlap(v));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(PartitionError::Uncovered(v));
        }
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Ok(VertexPartition { parts })
    }

    /// Builds the partition whose parts are the classes of equal labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut parts: Vec<Vec<VertexId>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let idx = *first_seen.entry(l).or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[idx].push(v);
        }
        VertexPartition { parts }
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            parts: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        VertexPartition {
            parts: if n == 0 {
                vec![]
            } else {
                vec![(0..n).collect()]
            },
        }
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Part index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                labels[v] = i;
            }
        }
        labels
    }

    pub fn crossing_edges(&self, g: &Graph) -> Vec<EdgeId> {
        let labels = self.labels();
        (0..g.m())
            .filter(|&id| {
                let e = g.edge(id);
                labels[e.u] != labels[e.v]
            })
            .collect()
    }

    pub fn crossing_value(&self, g: &Graph) -> Rational {
        let labels = self.labels();
        g.edges()
            .iter()
            .filter(|e| labels[e.u] != labels[e.v])
            .map(|e| &e.cap)
            .sum()
    }

    /// True when every part of `self` lies inside a part of `coarser`.
    pub fn refines(&self, coarser: &VertexPartition) -> bool {
        let labels = coarser.labels();
        self.parts
            .iter()
            .all(|part| part.iter().all(|&v| labels[v] == labels[part[0]]))
    }

    /// Common refinement.
    pub fn meet(&self, other: &VertexPartition) -> VertexPartition {
        let (a, b) = (self.labels(), other.labels());
        let n = a.len();
        let combined: Vec<usize> = (0..n).map(|v| a[v] * n + b[v]).collect();
        VertexPartition::from_labels(&combined)
    }

    /// 1-indexed parts, as used in JSON output.
    pub fn to_one_indexed(&self) -> Vec<Vec<usize>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|v| v + 1).collect())
            .collect()
    }
}

/// A k-cut given by its vertex partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub partition: VertexPartition,
    pub value: Rational,
    pub k_achieved: usize,
}

pub fn cut_of_partition(g: &Graph, p: &VertexPartition) -> CutResult {
    CutResult {
        value: p.crossing_value(g),
        k_achieved: p.part_count(),
        partition: p.clone(),
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|v| self.find(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::int;

    #[test]
    fn parse_fixtures() {
        let e1 = Graph::parse("p kcut 2 1\ne 1 2 5\n").unwrap();
        assert_eq!((e1.n(), e1.m()), (2, 1));
        assert_eq!(e1.edge(0).cap, int(5));

        let c5 = fixtures::c5();
        assert_eq!((c5.n(), c5.m()), (5, 5));
        assert!(c5.edges().iter().all(|e| e.cap == int(1)));

        let tt = fixtures::tt();
        assert_eq!((tt.n(), tt.m()), (6, 7));
        assert_eq!(tt.component_count(), 1);
    }

    #[test]
    fn parse_accepts_comments_and_rationals() {
        let g = Graph::parse("# comment\np kcut 3 2\n\ne 1 2 3/4\n# mid\ne 2 3 0.25\n").unwrap();
        assert_eq!(g.edge(0).cap, crate::rational::ratio(3, 4));
        assert_eq!(g.edge(1).cap, crate::rational::ratio(1, 4));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            Graph::parse("p kcut 2\n").unwrap_err(),
            ParseError::Header {
                line: 1,
                msg: "expected `p kcut <n> <m>`".into()
            }
        );
        assert!(matches!(
            Graph::parse("p kcut 2 1\ne 1 3 1\n"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                ..
            })
        ));
        assert!(matches!(
            Graph::parse("p kcut 2 1\n\ne 1 2 -4\n"),
            Err(ParseError::NegativeCapacity { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("p kcut 3 2\ne 1 2 1\n"),
            Err(ParseError::EdgeCountMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(
            Graph::parse("p kcut 3 1\ne 1 2 1\ne 2 3 1\n"),
            Err(ParseError::EdgeCountMismatch { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("p kcut 3 1\ne 2 2 1\n"),
            Err(ParseError::SelfLoop { line: 2, vertex: 2 })
        ));
        assert!(matches!(
            Graph::parse("p kcut 3 1\ne 1 2 x\n"),
            Err(ParseError::BadCapacity { line: 2, .. })
        ));
        assert_eq!(
            Graph::parse("e 1 2 1\n").unwrap_err(),
            ParseError::MissingHeader
        );
    }

    #[test]
    fn zero_capacity_edges_are_dropped() {
        let g = Graph::parse("p kcut 3 2\ne 1 2 0\ne 2 3 1\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn contraction_examples() {
        let tt = fixtures::tt();
        let bridge = tt
            .edges()
            .iter()
            .position(|e| (e.u, e.v) == (2, 3))
            .unwrap();
        let c = tt.contract(&[bridge]);
        assert_eq!((c.graph.n(), c.graph.m()), (5, 6));

        let c5 = fixtures::c5();
        let all: Vec<usize> = (0..5).collect();
        let c = c5.contract(&all);
        assert_eq!((c.graph.n(), c.graph.m()), (1, 0));

        let k4 = fixtures::k4();
        let c = k4.contract(&[0]);
        assert_eq!((c.graph.n(), c.graph.m()), (3, 5));
    }

    #[test]
    fn component_examples() {
        let tt = fixtures::tt();
        let mut removed = vec![false; tt.m()];
        for (id, e) in tt.edges().iter().enumerate() {
            if (e.u, e.v) == (2, 3) {
                removed[id] = true;
            }
        }
        let comps = tt.components_without(&removed);
        assert_eq!(comps.parts(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(fixtures::c5().components().part_count(), 1);
        let k4 = fixtures::k4();
        assert_eq!(k4.components_without(&[true; 6]).part_count(), 4);
    }

    #[test]
    fn cut_examples() {
        let tt = fixtures::tt();
        let p = VertexPartition::from_parts(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(cut_of_partition(&tt, &p).value, int(1));
        let c5 = fixtures::c5();
        let r = cut_of_partition(&c5, &VertexPartition::singletons(5));
        assert_eq!((r.value, r.k_achieved), (int(5), 5));
        let k4 = fixtures::k4();
        let p = VertexPartition::from_parts(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(cut_of_partition(&k4, &p).value, int(3));
    }

    #[test]
    fn partition_validation() {
        assert_eq!(
            VertexPartition::from_parts(3, vec![vec![0, 1], vec![1, 2]]),
            Err(PartitionError::Overlap(1))
        );
        assert_eq!(
            VertexPartition::from_parts(3, vec![vec![0, 1]]),
            Err(PartitionError::Uncovered(2))
        );
        let p = VertexPartition::from_parts(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.parts(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn normalize_preserves_cuts() {
        let g = Graph::from_int_edges(3, &[(0, 1, 2), (1, 0, 3), (1, 2, 1)]);
        let h = g.normalize();
        assert_eq!(h.m(), 2);
        for p in crate::oracle::enum_partitions(3, &Default::default()).unwrap() {
            assert_eq!(p.crossing_value(&g), p.crossing_value(&h));
        }
    }
}
