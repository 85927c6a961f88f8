//! Fractional packings of maximal forests under edge capacities.
//!
//! Two packers share the minimum spanning forest kernel: a deterministic
//! multiplicative-weights packer and an exact column-generation packer whose
//! restricted master is the rational simplex.

use crate::graph::{DisjointSets, EdgeId, Graph};
use crate::rational::{self, int, Rational};
use crate::simplex::{LpError, SimplexLp};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PackError {
    #[error("capacity vector has {found} entries, graph has {expected} edges")]
    CapacityLength { expected: usize, found: usize },
    #[error("capacity of edge {0} is negative")]
    NegativeCapacity(EdgeId),
    #[error("no edge has positive capacity; the packing value is unbounded")]
    NoEdges,
    #[error("epsilon must lie strictly between 0 and 1/2")]
    BadEpsilon,
    #[error("iteration cap {0} exceeded")]
    IterationCap(usize),
    #[error("pricing returned a tree already in the master (arithmetic bug)")]
    NonTermination,
    #[error("edge {edge} is not saturated by an optimal packing")]
    SaturationFailure { edge: EdgeId },
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreePacking {
    /// Sorted edge ids of each maximal forest in the support.
    pub trees: Vec<Vec<EdgeId>>,
    pub weights: Vec<Rational>,
    /// Capacities the packing was computed against.
    pub caps: Vec<Rational>,
    pub total_value: Rational,
    pub loads: Vec<Rational>,
    /// Float view of `total_value`, reported by the MWU packer.
    pub approx_value: Option<f64>,
    /// Pricing rounds (MWU) or column-generation rounds (exact).
    pub iterations: usize,
}

impl TreePacking {
    fn assemble(
        caps: &[Rational],
        trees: Vec<Vec<EdgeId>>,
        weights: Vec<Rational>,
        iterations: usize,
    ) -> TreePacking {
        let mut loads = vec![Rational::zero(); caps.len()];
        for (t, y) in trees.iter().zip(&weights) {
            for &e in t {
                loads[e] += y;
            }
        }
        TreePacking {
            total_value: weights.iter().sum(),
            trees,
            weights,
            caps: caps.to_vec(),
            loads,
            approx_value: None,
            iterations,
        }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Normalized distribution `p_T = y_T / total_value`.
    pub fn fractions(&self) -> Vec<Rational> {
        self.weights.iter().map(|y| y / &self.total_value).collect()
    }

    /// First edge whose load exceeds its capacity.
    pub fn overloaded_edge(&self) -> Option<EdgeId> {
        (0..self.caps.len()).find(|&e| self.loads[e] > self.caps[e])
    }
}

fn check_caps(g: &Graph, caps: &[Rational]) -> Result<(), PackError> {
    if caps.len() != g.m() {
        return Err(PackError::CapacityLength {
            expected: g.m(),
            found: caps.len(),
        });
    }
    if let Some(e) = caps.iter().position(|c| c.is_negative()) {
        return Err(PackError::NegativeCapacity(e));
    }
    if caps.iter().all(|c| c.is_zero()) {
        return Err(PackError::NoEdges);
    }
    Ok(())
}

// Kruskal over edges taken in the given order.
fn kruskal(g: &Graph, order: impl IntoIterator<Item = EdgeId>) -> Vec<EdgeId> {
    let mut dsu = DisjointSets::new(g.n());
    let mut forest: Vec<EdgeId> = order
        .into_iter()
        .filter(|&e| {
            let edge = g.edge(e);
            dsu.union(edge.u, edge.v)
        })
        .collect();
    forest.sort_unstable();
    forest
}

/// Minimum-weight maximal forest; ties go to the lowest edge id. Returns
/// sorted edge ids.
pub fn min_spanning_forest(g: &Graph, weights: &[Rational]) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
    kruskal(g, order)
}

// Minimum forest restricted to edges with positive capacity.
fn priced_forest(g: &Graph, usable: &[EdgeId], weight: impl Fn(EdgeId) -> Rational) -> Vec<EdgeId> {
    let mut keyed: Vec<(Rational, EdgeId)> = usable.iter().map(|&e| (weight(e), e)).collect();
    keyed.sort();
    kruskal(g, keyed.into_iter().map(|(_, e)| e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestEdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackConfig {
    pub epsilon: Rational,
    pub tie_break: TieBreak,
    pub max_iterations: usize,
}

impl Default for PackConfig {
    fn default() -> Self {
        PackConfig {
            epsilon: rational::ratio(1, 10),
            tie_break: TieBreak::LowestEdgeId,
            max_iterations: 5_000_000,
        }
    }
}

impl PackConfig {
    pub fn with_epsilon(epsilon: Rational) -> Self {
        PackConfig {
            epsilon,
            ..PackConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), PackError> {
        if !self.epsilon.is_positive() || self.epsilon >= rational::ratio(1, 2) {
            return Err(PackError::BadEpsilon);
        }
        Ok(())
    }
}

/// Multiplicative-weights packing with value at least `(1 - eps)` times the
/// optimum.
///
/// Each round adds the bottleneck amount of the forest that is cheapest under
/// `w(e)/c(e)` and multiplies the weight of its edges by `1 + eps' * delta/c(e)`
/// with `eps' = eps/2`. The loop stops once some weight exceeds
/// `m^(1/eps')`; the accumulated (exact) packing is then scaled down by its
/// largest overload, so loads never exceed capacities.
pub fn mwu_pack(g: &Graph, caps: &[Rational], cfg: &PackConfig) -> Result<TreePacking, PackError> {
    check_caps(g, caps)?;
    cfg.validate()?;
    let usable: Vec<EdgeId> = (0..g.m()).filter(|&e| caps[e].is_positive()).collect();
    let eps = rational::to_f64(&cfg.epsilon) / 2.0;
    let threshold = (usable.len() as f64).ln() / eps;
    let ln_cap: Vec<f64> = caps
        .iter()
        .map(|c| {
            if c.is_positive() {
                rational::to_f64(c).ln()
            } else {
                0.0
            }
        })
        .collect();
    let mut ln_w = vec![0.0f64; g.m()];
    let mut index: BTreeMap<Vec<EdgeId>, usize> = BTreeMap::new();
    let mut trees: Vec<Vec<EdgeId>> = Vec::new();
    let mut weights: Vec<Rational> = Vec::new();
    let mut loads = vec![Rational::zero(); g.m()];
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > cfg.max_iterations {
            return Err(PackError::IterationCap(cfg.max_iterations));
        }
        let mut order = usable.clone();
        order.sort_by(|&a, &b| {
            (ln_w[a] - ln_cap[a])
                .total_cmp(&(ln_w[b] - ln_cap[b]))
                .then(a.cmp(&b))
        });
        let tree = kruskal(g, order);
        let delta = tree
            .iter()
            .map(|&e| &caps[e])
            .min()
            .expect("a usable edge exists")
            .clone();
        let slot = *index.entry(tree.clone()).or_insert_with(|| {
            trees.push(tree.clone());
            weights.push(Rational::zero());
            trees.len() - 1
        });
        weights[slot] += &delta;
        let mut done = false;
        for &e in &tree {
            loads[e] += &delta;
            let step = rational::to_f64(&(&delta / &caps[e]));
            ln_w[e] += (eps * step).ln_1p();
            done |= ln_w[e] > threshold;
        }
        if done {
            break;
        }
    }
    let overload = usable
        .iter()
        .map(|&e| &loads[e] / &caps[e])
        .max()
        .expect("a usable edge exists");
    let weights = weights.into_iter().map(|y| y / &overload).collect();
    let mut packing = TreePacking::assemble(caps, trees, weights, iterations);
    packing.approx_value = Some(rational::to_f64(&packing.total_value));
    Ok(packing)
}

/// Optimal packing by column generation. The result is a basic solution, so
/// it has at most `m` trees.
pub fn exact_pack(g: &Graph, caps: &[Rational]) -> Result<TreePacking, PackError> {
    check_caps(g, caps)?;
    let usable: Vec<EdgeId> = (0..g.m()).filter(|&e| caps[e].is_positive()).collect();
    let mut row_of = vec![usize::MAX; g.m()];
    for (r, &e) in usable.iter().enumerate() {
        row_of[e] = r;
    }
    let mut master = SimplexLp::new(usable.iter().map(|&e| caps[e].clone()).collect())?;
    let mut columns: Vec<Vec<EdgeId>> = Vec::new();
    let mut seen: HashSet<Vec<EdgeId>> = HashSet::new();
    let mut next = priced_forest(g, &usable, |_| Rational::zero());
    let mut rounds = 0;
    loop {
        rounds += 1;
        if !seen.insert(next.clone()) {
            return Err(PackError::NonTermination);
        }
        master.add_column(next.iter().map(|&e| (row_of[e], int(1))).collect(), int(1))?;
        columns.push(next);
        master.solve()?;
        let duals = master.duals();
        let tree = priced_forest(g, &usable, |e| duals[row_of[e]].clone());
        let price: Rational = tree.iter().map(|&e| &duals[row_of[e]]).sum();
        if price >= Rational::one() {
            break;
        }
        next = tree;
    }
    let (trees, weights): (Vec<_>, Vec<_>) = columns
        .into_iter()
        .zip(master.column_values())
        .filter(|(_, y)| y.is_positive())
        .unzip();
    Ok(TreePacking::assemble(caps, trees, weights, rounds))
}

/// Optimal packing that loads every edge to capacity; fails when the graph
/// is not strength-tight (its finest min-strength partition is not the
/// singletons).
pub fn saturating_pack(g: &Graph, caps: &[Rational]) -> Result<TreePacking, PackError> {
    let packing = exact_pack(g, caps)?;
    if let Some(edge) = (0..g.m()).find(|&e| packing.loads[e] != caps[e]) {
        return Err(PackError::SaturationFailure { edge });
    }
    Ok(packing)
}

/// A packing algorithm selectable by name.
pub trait TreePacker: Send + Sync {
    fn name(&self) -> &'static str;
    fn pack(&self, g: &Graph, caps: &[Rational]) -> Result<TreePacking, PackError>;
}

pub struct ExactPacker;

impl TreePacker for ExactPacker {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn pack(&self, g: &Graph, caps: &[Rational]) -> Result<TreePacking, PackError> {
        exact_pack(g, caps)
    }
}

pub struct MwuPacker(pub PackConfig);

impl TreePacker for MwuPacker {
    fn name(&self) -> &'static str {
        "mwu"
    }

    fn pack(&self, g: &Graph, caps: &[Rational]) -> Result<TreePacking, PackError> {
        mwu_pack(g, caps, &self.0)
    }
}

type PackerCtor = fn(&PackConfig) -> Box<dyn TreePacker>;

/// Name-indexed table of packers.
pub struct PackerRegistry {
    entries: Vec<(&'static str, PackerCtor)>,
}

impl Default for PackerRegistry {
    fn default() -> Self {
        let mut r = PackerRegistry {
            entries: Vec::new(),
        };
        r.register("exact", |_| Box::new(ExactPacker));
        r.register("mwu", |cfg| Box::new(MwuPacker(cfg.clone())));
        r
    }
}

impl PackerRegistry {
    pub fn register(&mut self, name: &'static str, ctor: PackerCtor) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, ctor));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str, cfg: &PackConfig) -> Option<Box<dyn TreePacker>> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, ctor)| ctor(cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    fn unit(g: &Graph) -> Vec<Rational> {
        vec![int(1); g.m()]
    }

    #[test]
    fn forest_examples() {
        let c5 = fixtures::c5();
        assert_eq!(min_spanning_forest(&c5, &unit(&c5)), vec![0, 1, 2, 3]);
        let tt = fixtures::tt();
        let mut w = unit(&tt);
        w[fixtures::TT_BRIDGE] = int(0);
        let f = min_spanning_forest(&tt, &w);
        assert!(f.contains(&fixtures::TT_BRIDGE));
        assert_eq!(f.iter().map(|&e| &w[e]).sum::<Rational>(), int(4));
        let two = Graph::from_int_edges(5, &[(0, 1, 1), (1, 2, 1), (3, 4, 1)]);
        assert_eq!(min_spanning_forest(&two, &unit(&two)).len(), 3);
    }

    #[test]
    fn exact_examples() {
        let c5 = fixtures::c5();
        let p = exact_pack(&c5, &c5.caps()).unwrap();
        assert_eq!(p.total_value, ratio(5, 4));
        assert!(p.len() <= c5.m());
        assert_eq!(p.overloaded_edge(), None);
        let tt = fixtures::tt();
        assert_eq!(exact_pack(&tt, &tt.caps()).unwrap().total_value, int(1));
        let e1 = fixtures::e1();
        let p = exact_pack(&e1, &e1.caps()).unwrap();
        assert_eq!(
            (p.trees.clone(), p.weights.clone()),
            (vec![vec![0]], vec![int(5)])
        );
    }

    #[test]
    fn saturating_examples() {
        let c5 = fixtures::c5();
        let p = saturating_pack(&c5, &c5.caps()).unwrap();
        assert_eq!(p.total_value, ratio(5, 4));
        assert!(p.loads.iter().all(|l| *l == int(1)));
        let k4 = fixtures::k4();
        assert_eq!(
            saturating_pack(&k4, &k4.caps()).unwrap().total_value,
            int(2)
        );
        let bridge = Graph::from_int_edges(2, &[(0, 1, 1)]);
        assert_eq!(
            saturating_pack(&bridge, &bridge.caps())
                .unwrap()
                .total_value,
            int(1)
        );
        let tt = fixtures::tt();
        assert!(matches!(
            saturating_pack(&tt, &tt.caps()),
            Err(PackError::SaturationFailure { .. })
        ));
    }

    #[test]
    fn mwu_examples() {
        let cases = [
            (fixtures::e1(), ratio(1, 10), ratio(9, 2)),
            (fixtures::c5(), ratio(1, 10), ratio(9, 8)),
            (fixtures::k4(), ratio(1, 20), ratio(19, 10)),
        ];
        for (g, eps, floor) in cases {
            let p = mwu_pack(&g, &g.caps(), &PackConfig::with_epsilon(eps)).unwrap();
            assert!(p.total_value >= floor, "{} < {}", p.total_value, floor);
            assert_eq!(p.overloaded_edge(), None);
        }
    }

    #[test]
    fn mwu_is_deterministic() {
        let k4 = fixtures::k4();
        let cfg = PackConfig::with_epsilon(ratio(1, 10));
        assert_eq!(
            mwu_pack(&k4, &k4.caps(), &cfg),
            mwu_pack(&k4, &k4.caps(), &cfg)
        );
    }

    #[test]
    fn bad_inputs() {
        let e1 = fixtures::e1();
        assert_eq!(
            mwu_pack(&e1, &e1.caps(), &PackConfig::with_epsilon(ratio(1, 2))),
            Err(PackError::BadEpsilon)
        );
        assert_eq!(
            exact_pack(&e1, &[]),
            Err(PackError::CapacityLength {
                expected: 1,
                found: 0
            })
        );
        assert_eq!(exact_pack(&e1, &[int(0)]), Err(PackError::NoEdges));
    }

    #[test]
    fn registry_selects_by_name() {
        let reg = PackerRegistry::default();
        assert_eq!(reg.names(), vec!["exact", "mwu"]);
        let c5 = fixtures::c5();
        let cfg = PackConfig::default();
        let exact = reg.get("exact", &cfg).unwrap();
        assert_eq!(
            exact.pack(&c5, &c5.caps()).unwrap().total_value,
            ratio(5, 4)
        );
        assert_eq!(reg.get("mwu", &cfg).unwrap().name(), "mwu");
        assert!(reg.get("greedy", &cfg).is_none());
    }
}
