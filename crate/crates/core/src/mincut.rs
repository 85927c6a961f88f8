//! Global minimum cut by scanning the cuts that 1- or 2-respect the trees of
//! a packing.
//!
//! For a spanning tree rooted at vertex 0 let `S_v` be the subtree below `v`
//! (the side cut off by `v`'s parent edge). With `D[u][v]` the capacity
//! between `S_u` and `S_v` (internal edges counted twice when `u = v`):
//!
//! ```text
//! cut(v)                      = deg(S_v) - D[v][v]
//! S_u, S_v disjoint           : cut(u) + cut(v) - 2 D[u][v]
//! S_v inside S_u (cut S_u\S_v): cut(u) + cut(v) - 2 (deg(S_v) - D[v][u])
//! ```

use crate::graph::{cut_of_partition, CutResult, EdgeId, Graph, VertexId, VertexPartition};
use crate::rational::{int, Rational};
use crate::treepack::{mwu_pack, PackConfig, PackError};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MincutError {
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("epsilon must lie strictly between 0 and 1/3")]
    BadEpsilon,
    #[error(transparent)]
    Pack(#[from] PackError),
}

#[derive(Debug, Clone)]
pub struct TreeCutTable {
    pub root: VertexId,
    /// Parent of each vertex (`usize::MAX` at the root).
    pub parent: Vec<VertexId>,
    /// Tree edge joining each vertex to its parent.
    pub parent_edge: Vec<EdgeId>,
    /// Vertices in preorder.
    pub order: Vec<VertexId>,
    /// `below[u][x]`: `x` lies in `S_u`.
    below: Vec<Vec<bool>>,
    deg: Vec<Rational>,
    cross: Vec<Vec<Rational>>,
    /// `cut(v) = c(delta(S_v))`.
    pub cut: Vec<Rational>,
}

impl TreeCutTable {
    pub fn new(g: &Graph, tree: &[EdgeId]) -> Result<TreeCutTable, MincutError> {
        let n = g.n();
        if n < 2 {
            return Err(MincutError::TooSmall);
        }
        if tree.len() != n - 1 {
            return Err(MincutError::NotSpanningTree);
        }
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for &e in tree {
            let edge = g.edge(e);
            adj[edge.u].push((edge.v, e));
            adj[edge.v].push((edge.u, e));
        }
        let root = 0;
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, e) in adj[v].iter().rev() {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = e;
                    stack.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(MincutError::NotSpanningTree);
        }

        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut deg = vec![Rational::zero(); n];
        for e in g.edges() {
            m[e.u][e.v] += &e.cap;
            m[e.v][e.u] += &e.cap;
            deg[e.u] += &e.cap;
            deg[e.v] += &e.cap;
        }
        let mut below = vec![vec![false; n]; n];
        // r[u][y] = capacity between S_u and y
        let mut r = m;
        for &v in order.iter().rev() {
            below[v][v] = true;
            if v != root {
                let p = parent[v];
                let child = r[v].clone();
                for (a, b) in r[p].iter_mut().zip(child) {
                    *a += b;
                }
                let sub = below[v].clone();
                for (a, b) in below[p].iter_mut().zip(sub) {
                    *a |= b;
                }
                let dv = deg[v].clone();
                deg[p] += dv;
            }
        }
        // cross[u][v] = sum over y in S_v of r[u][y]
        let mut cross = r;
        for &v in order.iter().rev() {
            if v != root {
                let p = parent[v];
                for row in cross.iter_mut() {
                    let add = row[v].clone();
                    row[p] += add;
                }
            }
        }
        let cut = (0..n).map(|v| &deg[v] - &cross[v][v]).collect();
        Ok(TreeCutTable {
            root,
            parent,
            parent_edge,
            order,
            below,
            deg,
            cross,
            cut,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Capacity between `S_u` and `S_v`.
    pub fn cross(&self, u: VertexId, v: VertexId) -> &Rational {
        &self.cross[u][v]
    }

    /// `u`'s subtree contains `v`.
    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.below[u][v]
    }

    /// Value of the cut crossing the tree exactly at the parent edges of `u`
    /// and `v` (`u != v`, neither the root).
    pub fn pair_value(&self, u: VertexId, v: VertexId) -> Rational {
        let two = int(2);
        if self.below[u][v] {
            &self.cut[u] + &self.cut[v] - two * (&self.deg[v] - &self.cross[v][u])
        } else if self.below[v][u] {
            &self.cut[u] + &self.cut[v] - two * (&self.deg[u] - &self.cross[u][v])
        } else {
            &self.cut[u] + &self.cut[v] - two * &self.cross[u][v]
        }
    }

    /// Source side of the cut for one or two tree edges (given by their lower
    /// vertices).
    pub fn side(&self, vertices: &[VertexId]) -> Vec<bool> {
        let mut side = vec![false; self.n()];
        for &v in vertices {
            for (s, &b) in side.iter_mut().zip(&self.below[v]) {
                *s ^= b;
            }
        }
        side
    }
}

/// A respecting cut with the tree edges it crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RespectingCut {
    pub cut: CutResult,
    pub tree_edges: Vec<EdgeId>,
}

fn side_cut(g: &Graph, table: &TreeCutTable, lower: &[VertexId]) -> RespectingCut {
    let side = table.side(lower);
    let labels: Vec<usize> = side.iter().map(|&s| usize::from(s)).collect();
    let mut tree_edges: Vec<EdgeId> = lower.iter().map(|&v| table.parent_edge[v]).collect();
    tree_edges.sort_unstable();
    RespectingCut {
        cut: cut_of_partition(g, &VertexPartition::from_labels(&labels)),
        tree_edges,
    }
}

/// Cheapest cut crossing the tree in exactly one edge.
pub fn min_1respect(g: &Graph, tree: &[EdgeId]) -> Result<RespectingCut, MincutError> {
    let table = TreeCutTable::new(g, tree)?;
    let best = (0..g.n())
        .filter(|&v| v != table.root)
        .min_by(|&a, &b| table.cut[a].cmp(&table.cut[b]).then(a.cmp(&b)))
        .expect("n >= 2");
    Ok(side_cut(g, &table, &[best]))
}

/// Cheapest cut crossing the tree in one or two edges, over all `O(n^2)`
/// pairs.
pub fn min_2respect(g: &Graph, tree: &[EdgeId]) -> Result<RespectingCut, MincutError> {
    let table = TreeCutTable::new(g, tree)?;
    let mut best: Option<(Rational, Vec<VertexId>)> = None;
    let mut offer = |value: Rational, lower: Vec<VertexId>| {
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, lower));
        }
    };
    for u in 0..g.n() {
        if u == table.root {
            continue;
        }
        offer(table.cut[u].clone(), vec![u]);
        for v in u + 1..g.n() {
            if v != table.root {
                offer(table.pair_value(u, v), vec![u, v]);
            }
        }
    }
    let (_, lower) = best.expect("n >= 2");
    Ok(side_cut(g, &table, &lower))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMincut {
    pub cut: CutResult,
    /// Index of the support tree that produced the cut.
    pub tree_index: Option<usize>,
    pub tree_edges: Vec<EdgeId>,
    pub trees_scanned: usize,
}

/// Packs trees with MWU and scans every support tree for its best
/// 2-respecting cut.
pub fn global_mincut(g: &Graph, eps: &Rational) -> Result<GlobalMincut, MincutError> {
    if g.n() < 2 {
        return Err(MincutError::TooSmall);
    }
    if *eps <= Rational::zero() || *eps >= Rational::new(1.into(), 3.into()) {
        return Err(MincutError::BadEpsilon);
    }
    if !g.is_connected() {
        let comps = g.components().labels();
        let labels: Vec<usize> = comps.iter().map(|&c| usize::from(c != 0)).collect();
        return Ok(GlobalMincut {
            cut: cut_of_partition(g, &VertexPartition::from_labels(&labels)),
            tree_index: None,
            tree_edges: Vec::new(),
            trees_scanned: 0,
        });
    }
    let packing = mwu_pack(g, &g.caps(), &PackConfig::with_epsilon(eps.clone()))?;
    let mut best: Option<(usize, RespectingCut)> = None;
    for (i, tree) in packing.trees.iter().enumerate() {
        let c = min_2respect(g, tree)?;
        if best.as_ref().is_none_or(|(_, b)| c.cut.value < b.cut.value) {
            best = Some((i, c));
        }
    }
    let (i, c) = best.expect("packing has a tree");
    Ok(GlobalMincut {
        cut: c.cut,
        tree_index: Some(i),
        tree_edges: c.tree_edges,
        trees_scanned: packing.trees.len(),
    })
}
