//! Brute-force ground truth for small graphs.
//!
//! Everything here is exponential on purpose: partitions are enumerated
//! exhaustively and LPs are written out over every maximal forest. Inputs
//! beyond [`OracleLimits`] are rejected instead of degraded.

use crate::graph::{cut_of_partition, CutResult, DisjointSets, EdgeId, Graph, VertexPartition};
use crate::rational::{int, Rational};
use crate::simplex::{LpError, SimplexLp};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n_partitions: usize,
    pub max_spanning_trees: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n_partitions: 12,
            max_spanning_trees: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices exceed the partition-enumeration limit of {max}")]
    PartitionLimit { n: usize, max: usize },
    #[error("more than {max} maximal forests")]
    TreeLimit { max: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("k = {k} outside 2..={n}")]
    InvalidK { k: usize, n: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Iterator over all set partitions of `0..n` (restricted growth strings).
#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Vec<usize>,
    prefix_max: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = VertexPartition;

    fn next(&mut self) -> Option<VertexPartition> {
        if self.done {
            return None;
        }
        let out = VertexPartition::from_labels(&self.rgs);
        let n = self.rgs.len();
        // advance: rightmost position that can still be incremented
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn enum_partitions(n: usize, limits: &OracleLimits) -> Result<Partitions, OracleError> {
    if n > limits.max_n_partitions {
        return Err(OracleError::PartitionLimit {
            n,
            max: limits.max_n_partitions,
        });
    }
    Ok(Partitions {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        done: false,
    })
}

/// Every maximal forest of `g` as a sorted edge-id list, by include/exclude
/// backtracking. Exclusion is pruned when the remaining edges could no longer
/// span the components of `g`.
pub fn enum_maximal_forests(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    let target = g.n() - g.component_count();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(target);
    forests_rec(
        g,
        0,
        DisjointSets::new(g.n()),
        &mut chosen,
        target,
        limits,
        &mut out,
    )?;
    Ok(out)
}

fn forests_rec(
    g: &Graph,
    idx: usize,
    dsu: DisjointSets,
    chosen: &mut Vec<EdgeId>,
    target: usize,
    limits: &OracleLimits,
    out: &mut Vec<Vec<EdgeId>>,
) -> Result<(), OracleError> {
    if chosen.len() == target {
        if out.len() == limits.max_spanning_trees {
            return Err(OracleError::TreeLimit {
                max: limits.max_spanning_trees,
            });
        }
        out.push(chosen.clone());
        return Ok(());
    }
    if idx == g.m() {
        return Ok(());
    }
    let e = g.edge(idx);
    let mut with = dsu.clone();
    if with.union(e.u, e.v) {
        chosen.push(idx);
        forests_rec(g, idx + 1, with, chosen, target, limits, out)?;
        chosen.pop();
    }
    let mut probe = dsu.clone();
    let mut merged = chosen.len();
    for f in &g.edges()[idx + 1..] {
        if probe.union(f.u, f.v) {
            merged += 1;
        }
    }
    if merged == target {
        forests_rec(g, idx + 1, dsu, chosen, target, limits, out)?;
    }
    Ok(())
}

pub(crate) fn better_tie(candidate: &VertexPartition, incumbent: &VertexPartition) -> bool {
    candidate.part_count() > incumbent.part_count()
        || (candidate.part_count() == incumbent.part_count() && candidate < incumbent)
}

/// `min_{|P|>=2} c(E(P)) / (|P| - 1)` with the max-parts, then canonical, tie-break.
pub fn oracle_strength(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(Rational, VertexPartition), OracleError> {
    if g.n() < 2 {
        return Err(OracleError::TooSmall);
    }
    if !g.is_connected() {
        return Err(OracleError::NotConnected);
    }
    let mut best: Option<(Rational, VertexPartition)> = None;
    for p in enum_partitions(g.n(), limits)? {
        if p.part_count() < 2 {
            continue;
        }
        let ratio = p.crossing_value(g) / int(p.part_count() as i64 - 1);
        let replace = match &best {
            None => true,
            Some((r, q)) => ratio < *r || (ratio == *r && better_tie(&p, q)),
        };
        if replace {
            best = Some((ratio, p));
        }
    }
    Ok(best.expect("n >= 2 has a partition with two parts"))
}

#[derive(Debug, Clone)]
pub struct OracleKCut {
    pub best: CutResult,
    /// All optimal partitions with at least `k` parts, in canonical order.
    pub minimizers: Vec<VertexPartition>,
}

pub fn oracle_min_kcut(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<OracleKCut, OracleError> {
    if k < 2 || k > g.n() {
        return Err(OracleError::InvalidK { k, n: g.n() });
    }
    let mut value: Option<Rational> = None;
    let mut minimizers: Vec<VertexPartition> = Vec::new();
    for p in enum_partitions(g.n(), limits)? {
        if p.part_count() < k {
            continue;
        }
        let c = p.crossing_value(g);
        match &value {
            Some(v) if c > *v => {}
            Some(v) if c == *v => minimizers.push(p),
            _ => {
                value = Some(c);
                minimizers = vec![p];
            }
        }
    }
    minimizers.sort();
    let best = minimizers
        .iter()
        .fold(None::<&VertexPartition>, |acc, p| match acc {
            Some(q) if !better_tie(p, q) => Some(q),
            _ => Some(p),
        })
        .expect("k <= n admits a partition");
    Ok(OracleKCut {
        best: cut_of_partition(g, best),
        minimizers,
    })
}

/// Every partition with at least `k` parts whose cut value is at most `bound`,
/// in canonical order.
pub fn oracle_cuts_within(
    g: &Graph,
    k: usize,
    bound: &Rational,
    limits: &OracleLimits,
) -> Result<Vec<CutResult>, OracleError> {
    Ok(enum_partitions(g.n(), limits)?
        .filter(|p| p.part_count() >= k)
        .map(|p| cut_of_partition(g, &p))
        .filter(|c| c.value <= *bound)
        .collect())
}

/// Fractional maximal-forest packing value, by an exact LP over every forest.
pub fn oracle_treepack(g: &Graph, limits: &OracleLimits) -> Result<Rational, OracleError> {
    let forests = enum_maximal_forests(g, limits)?;
    let mut lp = SimplexLp::new(g.caps())?;
    for f in &forests {
        lp.add_column(
            f.iter().map(|&e| (e, Rational::one())).collect(),
            Rational::one(),
        )?;
    }
    lp.solve()?;
    Ok(lp.objective())
}

#[derive(Debug, Clone)]
pub struct OracleLp {
    pub value: Rational,
    /// An optimal primal `x`, read off the duals of the packing-side LP.
    pub x: Vec<Rational>,
}

/// Optimal value of the k-cut LP with one covering constraint per maximal
/// forest (right-hand side `k - h`). Solved through its packing dual
/// `max (k-h) sum y - sum z, load(e) - z_e <= c_e` over all forests.
pub fn oracle_lp_value(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<OracleLp, OracleError> {
    if k < 2 || k > g.n() {
        return Err(OracleError::InvalidK { k, n: g.n() });
    }
    let h = g.component_count();
    if k <= h {
        return Ok(OracleLp {
            value: Rational::zero(),
            x: vec![Rational::zero(); g.m()],
        });
    }
    let rhs = int((k - h) as i64);
    let forests = enum_maximal_forests(g, limits)?;
    let mut lp = SimplexLp::new(g.caps())?;
    for f in &forests {
        lp.add_column(
            f.iter().map(|&e| (e, Rational::one())).collect(),
            rhs.clone(),
        )?;
    }
    for e in 0..g.m() {
        lp.add_column(vec![(e, -Rational::one())], -Rational::one())?;
    }
    lp.solve()?;
    Ok(OracleLp {
        value: lp.objective(),
        x: lp.duals(),
    })
}
