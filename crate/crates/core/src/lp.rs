//! Closed-form optimal solutions of the k-cut LP
//!
//! ```text
//! min  sum c_e x_e   s.t.  x(T) >= k - h  for every maximal forest T,  0 <= x <= 1
//! ```
//!
//! and of its dual (a packing `y` in capacities `c + z`), built from the
//! principal sequence, together with exact certificate checks.

use crate::graph::{DisjointSets, EdgeId, Graph, VertexId, VertexPartition};
use crate::rational::{int, Rational};
use crate::strength::PrincipalSequence;
use crate::treepack::{exact_pack, min_spanning_forest, saturating_pack, PackError, TreePacking};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("k = {k} is outside 2..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error(
        "k = {k} does not exceed the {h} components; the optimum is 0 and there is no dual level"
    )]
    KAtMostComponents { k: usize, h: usize },
    #[error("packing in c + z has value {found}, expected {expected}")]
    DualValueMismatch { expected: String, found: String },
    #[error("dual has no explicit packing")]
    NotExplicit,
    #[error(transparent)]
    Pack(#[from] PackError),
}

fn level_for(g: &Graph, psp: &PrincipalSequence, k: usize) -> Result<usize, LpError> {
    if k < 2 || k > g.n() {
        return Err(LpError::KOutOfRange { k, n: g.n() });
    }
    let h = psp.kappa(0);
    if k <= h {
        return Err(LpError::KAtMostComponents { k, h });
    }
    Ok(psp.level_for(k).expect("the last level has n parts"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalSolution {
    pub k: usize,
    pub x: Vec<Rational>,
    /// Smallest level `j` with `kappa_j >= k`.
    pub level: usize,
    pub alpha: Rational,
    pub objective: Rational,
}

/// `x = 1` on `A_{j-1}`, `alpha` on `B_j`, `0` elsewhere.
pub fn lp_primal(g: &Graph, psp: &PrincipalSequence, k: usize) -> Result<PrimalSolution, LpError> {
    let j = level_for(g, psp, k)?;
    let (lo, hi) = (psp.kappa(j - 1), psp.kappa(j));
    let alpha = Rational::new(((k - lo) as i64).into(), ((hi - lo) as i64).into());
    let x: Vec<Rational> = psp
        .edge_level
        .iter()
        .map(|&l| match l.cmp(&j) {
            std::cmp::Ordering::Less => Rational::one(),
            std::cmp::Ordering::Equal => alpha.clone(),
            std::cmp::Ordering::Greater => Rational::zero(),
        })
        .collect();
    let objective = g.edges().iter().zip(&x).map(|(e, x)| &e.cap * x).sum();
    Ok(PrimalSolution {
        k,
        x,
        level: j,
        alpha,
        objective,
    })
}

/// Closed-form value `c(A_{j-1}) + (k - kappa_{j-1}) lambda_j`.
pub fn lp_value(g: &Graph, psp: &PrincipalSequence, k: usize) -> Result<Rational, LpError> {
    let j = level_for(g, psp, k)?;
    Ok(psp.a_value(g, j - 1) + int((k - psp.kappa(j - 1)) as i64) * psp.lambda(j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualMode {
    /// Per-edge marginals of the scaled ideal distribution only.
    Lazy,
    /// An explicit basic packing in `c + z`.
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub k: usize,
    pub level: usize,
    /// Right-hand side `k - h` of the tree constraints.
    pub rhs: usize,
    pub z: Vec<Rational>,
    /// `sum_T y_T`, equal to `lambda_j`.
    pub tree_total: Rational,
    /// Per-edge loads of `y`.
    pub loads: Vec<Rational>,
    pub packing: Option<TreePacking>,
    pub objective: Rational,
}

/// `z_e = (lambda_j / lambda_i - 1) c_e` on `B_i`, `i < j`; zero elsewhere.
pub fn dual_z(g: &Graph, psp: &PrincipalSequence, j: usize) -> Vec<Rational> {
    let lj = psp.lambda(j);
    g.edges()
        .iter()
        .zip(&psp.edge_level)
        .map(|(e, &i)| {
            if i < j {
                (lj / psp.lambda(i) - Rational::one()) * &e.cap
            } else {
                Rational::zero()
            }
        })
        .collect()
}

pub fn lp_dual(
    g: &Graph,
    psp: &PrincipalSequence,
    k: usize,
    mode: DualMode,
) -> Result<DualSolution, LpError> {
    let j = level_for(g, psp, k)?;
    let rhs = k - psp.kappa(0);
    let z = dual_z(g, psp, j);
    let lj = psp.lambda(j).clone();
    let (loads, packing) = match mode {
        DualMode::Lazy => {
            let loads = g
                .edges()
                .iter()
                .zip(&psp.edge_level)
                .map(|(e, &i)| &lj * &e.cap / psp.lambda(i))
                .collect();
            (loads, None)
        }
        DualMode::Explicit => {
            let caps: Vec<Rational> = g.edges().iter().zip(&z).map(|(e, z)| &e.cap + z).collect();
            let p = exact_pack(g, &caps)?;
            if p.total_value != lj {
                return Err(LpError::DualValueMismatch {
                    expected: lj.to_string(),
                    found: p.total_value.to_string(),
                });
            }
            (p.loads.clone(), Some(p))
        }
    };
    let objective = int(rhs as i64) * &lj - z.iter().sum::<Rational>();
    Ok(DualSolution {
        k,
        level: j,
        rhs,
        z,
        tree_total: lj,
        loads,
        packing,
        objective,
    })
}

/// `max_{b >= 0} g(b) + b(k - 1)`, attained at a breakpoint; returns the
/// value and the smallest maximizing `b`.
pub fn lagrangean_value(
    g: &Graph,
    psp: &PrincipalSequence,
    k: usize,
) -> Result<(Rational, Rational), LpError> {
    level_for(g, psp, k)?;
    let km1 = int(k as i64 - 1);
    let mut best = (Rational::zero(), Rational::zero());
    for i in 1..=psp.level_count() {
        let b = psp.lambda(i);
        let v = psp.attack_value(g, b) + b * &km1;
        if v > best.0 {
            best = (v, b.clone());
        }
    }
    Ok(best)
}

/// Saturating packing of one split component contracted by its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentPacking {
    pub vertices: Vec<VertexId>,
    /// Trees as original edge ids.
    pub trees: Vec<Vec<EdgeId>>,
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdealLevel {
    pub lambda: Rational,
    pub components: Vec<ComponentPacking>,
}

/// Level-wise saturating packings; a combined tree takes one tree from each
/// component packing of each level with probability the product of
/// `y_T / lambda_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPacking {
    pub levels: Vec<IdealLevel>,
    /// Marginal probability that each edge is in the combined tree.
    pub marginals: Vec<Rational>,
}

pub fn ideal_packing(g: &Graph, psp: &PrincipalSequence) -> Result<IdealPacking, LpError> {
    let mut marginals = vec![Rational::zero(); g.m()];
    let mut levels = Vec::new();
    for level in &psp.levels {
        let mut components = Vec::new();
        for comp in &level.split {
            let sub = g.induced(&comp.vertices);
            let mut local = vec![0; g.n()];
            for (i, &v) in sub.vertices.iter().enumerate() {
                local[v] = i;
            }
            let mut labels = vec![0; sub.vertices.len()];
            for (p, part) in comp.parts.iter().enumerate() {
                for &v in part {
                    labels[local[v]] = p;
                }
            }
            let quotient = sub
                .graph
                .contract_partition(&VertexPartition::from_labels(&labels));
            let packing = saturating_pack(&quotient.graph, &quotient.graph.caps())?;
            let to_original = |e: EdgeId| sub.edge_map[quotient.edge_map[e]];
            let trees: Vec<Vec<EdgeId>> = packing
                .trees
                .iter()
                .map(|t| {
                    let mut t: Vec<EdgeId> = t.iter().map(|&e| to_original(e)).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            for (t, y) in trees.iter().zip(&packing.weights) {
                for &e in t {
                    marginals[e] += y / &level.lambda;
                }
            }
            components.push(ComponentPacking {
                vertices: comp.vertices.clone(),
                trees,
                weights: packing.weights,
            });
        }
        levels.push(IdealLevel {
            lambda: level.lambda.clone(),
            components,
        });
    }
    Ok(IdealPacking { levels, marginals })
}

impl IdealPacking {
    /// Every combined tree with its probability. The count is the product of
    /// all support sizes, so this is meant for small graphs.
    pub fn combined_trees(&self) -> Vec<(Vec<EdgeId>, Rational)> {
        let mut out = vec![(Vec::new(), Rational::one())];
        for level in &self.levels {
            for comp in &level.components {
                let mut next = Vec::with_capacity(out.len() * comp.trees.len());
                for (base, p) in &out {
                    for (t, y) in comp.trees.iter().zip(&comp.weights) {
                        let mut tree: Vec<EdgeId> = base.clone();
                        tree.extend_from_slice(t);
                        next.push((tree, p * y / &level.lambda));
                    }
                }
                out = next;
            }
        }
        for (t, _) in out.iter_mut() {
            t.sort_unstable();
        }
        out
    }
}

fn is_maximal_forest(g: &Graph, tree: &[EdgeId]) -> bool {
    let mut dsu = DisjointSets::new(g.n());
    tree.iter().all(|&e| dsu.union(g.edge(e).u, g.edge(e).v))
        && tree.len() + g.component_count() == g.n()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalVerdict {
    pub feasible: bool,
    /// First edge with `x_e` outside `[0, 1]`.
    pub out_of_bounds: Option<EdgeId>,
    pub min_forest_weight: Rational,
    pub required: usize,
    /// The minimum forest, reported when it violates its constraint.
    pub witness: Option<Vec<EdgeId>>,
}

/// Exact feasibility: bounds, and the cheapest maximal forest under `x`
/// reaches `k - h`.
pub fn verify_primal(g: &Graph, x: &[Rational], k: usize) -> PrimalVerdict {
    let out_of_bounds = x
        .iter()
        .position(|v| v.is_negative() || *v > Rational::one());
    let required = k.saturating_sub(g.component_count());
    let forest = min_spanning_forest(g, x);
    let min_forest_weight: Rational = forest.iter().map(|&e| &x[e]).sum();
    let tree_ok = min_forest_weight >= int(required as i64);
    PrimalVerdict {
        feasible: out_of_bounds.is_none() && tree_ok,
        out_of_bounds,
        min_forest_weight,
        required,
        witness: (!tree_ok).then_some(forest),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVerdict {
    pub feasible: bool,
    pub overloaded: Option<EdgeId>,
    pub negative_y: Option<usize>,
    pub negative_z: Option<EdgeId>,
    /// Index of a support tree that is not a maximal forest.
    pub bad_tree: Option<usize>,
    pub objective: Rational,
}

/// Exact dual feasibility of an explicit solution. Loads are recomputed from
/// the trees.
pub fn verify_dual(g: &Graph, dual: &DualSolution) -> Result<DualVerdict, LpError> {
    let packing = dual.packing.as_ref().ok_or(LpError::NotExplicit)?;
    let mut loads = vec![Rational::zero(); g.m()];
    for (t, y) in packing.trees.iter().zip(&packing.weights) {
        for &e in t {
            loads[e] += y;
        }
    }
    let overloaded = (0..g.m()).find(|&e| loads[e] > &g.edge(e).cap + &dual.z[e]);
    let negative_y = packing.weights.iter().position(|y| y.is_negative());
    let negative_z = dual.z.iter().position(|z| z.is_negative());
    let bad_tree = packing.trees.iter().position(|t| !is_maximal_forest(g, t));
    let total: Rational = packing.weights.iter().sum();
    let objective = int(dual.rhs as i64) * total - dual.z.iter().sum::<Rational>();
    Ok(DualVerdict {
        feasible: overloaded.is_none()
            && negative_y.is_none()
            && negative_z.is_none()
            && bad_tree.is_none(),
        overloaded,
        negative_y,
        negative_z,
        bad_tree,
        objective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsCondition {
    pub holds: bool,
    /// Offending edge id (conditions 1 and 3) or tree index (condition 2).
    pub witness: Option<usize>,
}

impl CsCondition {
    fn from_witness(witness: Option<usize>) -> Self {
        CsCondition {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsReport {
    /// `z_e > 0` implies `x_e = 1`.
    pub z_tight: CsCondition,
    /// `y_T > 0` implies `x(T) = k - h`.
    pub tree_tight: CsCondition,
    /// `x_e > 0` implies `load(e) = c_e + z_e`.
    pub edge_tight: CsCondition,
}

impl CsReport {
    pub fn all_hold(&self) -> bool {
        self.z_tight.holds && self.tree_tight.holds && self.edge_tight.holds
    }

    pub fn as_array(&self) -> [bool; 3] {
        [
            self.z_tight.holds,
            self.tree_tight.holds,
            self.edge_tight.holds,
        ]
    }
}

pub fn check_complementary_slackness(
    g: &Graph,
    x: &[Rational],
    dual: &DualSolution,
) -> Result<CsReport, LpError> {
    let packing = dual.packing.as_ref().ok_or(LpError::NotExplicit)?;
    let one = Rational::one();
    let z_tight = (0..g.m()).find(|&e| dual.z[e].is_positive() && x[e] != one);
    let rhs = int(dual.rhs as i64);
    let tree_tight = packing
        .trees
        .iter()
        .zip(&packing.weights)
        .position(|(t, y)| y.is_positive() && t.iter().map(|&e| &x[e]).sum::<Rational>() != rhs);
    let mut loads = vec![Rational::zero(); g.m()];
    for (t, y) in packing.trees.iter().zip(&packing.weights) {
        for &e in t {
            loads[e] += y;
        }
    }
    let edge_tight =
        (0..g.m()).find(|&e| x[e].is_positive() && loads[e] != &g.edge(e).cap + &dual.z[e]);
    Ok(CsReport {
        z_tight: CsCondition::from_witness(z_tight),
        tree_tight: CsCondition::from_witness(tree_tight),
        edge_tight: CsCondition::from_witness(edge_tight),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;
    use crate::strength::principal_sequence;

    fn primal(g: &Graph, k: usize) -> PrimalSolution {
        lp_primal(g, &principal_sequence(g), k).unwrap()
    }

    fn dual(g: &Graph, k: usize) -> DualSolution {
        lp_dual(g, &principal_sequence(g), k, DualMode::Explicit).unwrap()
    }

    #[test]
    fn primal_examples() {
        let tt = fixtures::tt();
        let p = primal(&tt, 3);
        assert_eq!(p.objective, ratio(5, 2));
        for (e, x) in p.x.iter().enumerate() {
            let want = if e == fixtures::TT_BRIDGE {
                int(1)
            } else {
                ratio(1, 4)
            };
            assert_eq!(*x, want);
        }
        let p = primal(&fixtures::c5(), 2);
        assert_eq!(p.objective, ratio(5, 4));
        assert!(p.x.iter().all(|x| *x == ratio(1, 4)));
        let p = primal(&fixtures::k4(), 3);
        assert_eq!(p.objective, int(4));
        assert!(p.x.iter().all(|x| *x == ratio(2, 3)));
    }

    #[test]
    fn dual_examples() {
        let tt = fixtures::tt();
        let d = dual(&tt, 3);
        for (e, z) in d.z.iter().enumerate() {
            let want = if e == fixtures::TT_BRIDGE {
                ratio(1, 2)
            } else {
                int(0)
            };
            assert_eq!(*z, want);
        }
        assert_eq!(d.tree_total, ratio(3, 2));
        assert_eq!(d.objective, ratio(5, 2));
        let d = dual(&fixtures::c5(), 2);
        assert!(d.z.iter().all(|z| z.is_zero()));
        assert_eq!(d.objective, ratio(5, 4));
        let d = dual(&fixtures::k4(), 4);
        assert_eq!(
            (d.tree_total.clone(), d.objective.clone()),
            (int(2), int(6))
        );
        let lazy = lp_dual(
            &fixtures::k4(),
            &principal_sequence(&fixtures::k4()),
            4,
            DualMode::Lazy,
        )
        .unwrap();
        assert_eq!(lazy.objective, int(6));
        assert!(lazy.packing.is_none());
    }

    #[test]
    fn lagrangean_examples() {
        let tt = fixtures::tt();
        let psp = principal_sequence(&tt);
        assert_eq!(
            lagrangean_value(&tt, &psp, 3).unwrap(),
            (ratio(5, 2), ratio(3, 2))
        );
        assert_eq!(lagrangean_value(&tt, &psp, 2).unwrap(), (int(1), int(1)));
        let c5 = fixtures::c5();
        assert_eq!(
            lagrangean_value(&c5, &principal_sequence(&c5), 2).unwrap(),
            (ratio(5, 4), ratio(5, 4))
        );
    }

    #[test]
    fn ideal_packing_examples() {
        let tt = fixtures::tt();
        let ip = ideal_packing(&tt, &principal_sequence(&tt)).unwrap();
        assert_eq!(ip.levels.len(), 2);
        assert_eq!(ip.levels[1].components.len(), 2);
        for (e, m) in ip.marginals.iter().enumerate() {
            let want = if e == fixtures::TT_BRIDGE {
                int(1)
            } else {
                ratio(2, 3)
            };
            assert_eq!(*m, want);
        }
        let combined = ip.combined_trees();
        assert_eq!(combined.iter().map(|(_, p)| p).sum::<Rational>(), int(1));
        assert!(combined.iter().all(|(t, _)| is_maximal_forest(&tt, t)));

        let c5 = fixtures::c5();
        let ip = ideal_packing(&c5, &principal_sequence(&c5)).unwrap();
        assert!(ip.marginals.iter().all(|m| *m == ratio(4, 5)));
        let e1 = fixtures::e1();
        let ip = ideal_packing(&e1, &principal_sequence(&e1)).unwrap();
        assert_eq!(ip.marginals, vec![int(1)]);
        assert_eq!(ip.combined_trees(), vec![(vec![0], int(1))]);
    }

    #[test]
    fn verify_primal_examples() {
        let tt = fixtures::tt();
        let v = verify_primal(&tt, &primal(&tt, 3).x, 3);
        assert!(v.feasible);
        assert_eq!(v.min_forest_weight, int(2));
        let c5 = fixtures::c5();
        let v = verify_primal(&c5, &vec![int(0); 5], 2);
        assert!(!v.feasible);
        assert_eq!(v.witness.map(|w| w.len()), Some(4));
        let k4 = fixtures::k4();
        assert!(verify_primal(&k4, &vec![int(1); 6], 4).feasible);
    }

    #[test]
    fn verify_dual_examples() {
        let tt = fixtures::tt();
        let d = dual(&tt, 3);
        let v = verify_dual(&tt, &d).unwrap();
        assert!(v.feasible);
        assert_eq!(d.loads[fixtures::TT_BRIDGE], ratio(3, 2));

        let mut bad = d.clone();
        let p = bad.packing.as_mut().unwrap();
        p.weights[0] = &p.weights[0] * int(2);
        let v = verify_dual(&tt, &bad).unwrap();
        assert!(!v.feasible);
        assert!(v.overloaded.is_some());

        let e1 = fixtures::e1();
        let d = dual(&e1, 2);
        assert!(verify_dual(&e1, &d).unwrap().feasible);
        assert_eq!(d.loads, vec![int(5)]);
    }

    #[test]
    fn complementary_slackness_examples() {
        let tt = fixtures::tt();
        let cs = check_complementary_slackness(&tt, &primal(&tt, 3).x, &dual(&tt, 3)).unwrap();
        assert!(cs.all_hold());
        let c5 = fixtures::c5();
        let cs = check_complementary_slackness(&c5, &primal(&c5, 2).x, &dual(&c5, 2)).unwrap();
        assert!(cs.all_hold());

        // zero one alpha edge: the tree constraint or feasibility must break
        let mut x = primal(&tt, 3).x;
        x[0] = int(0);
        let cs = check_complementary_slackness(&tt, &x, &dual(&tt, 3)).unwrap();
        assert!(!cs.all_hold() || !verify_primal(&tt, &x, 3).feasible);
    }

    #[test]
    fn range_errors() {
        let tt = fixtures::tt();
        let psp = principal_sequence(&tt);
        assert_eq!(
            lp_primal(&tt, &psp, 7),
            Err(LpError::KOutOfRange { k: 7, n: 6 })
        );
        let g = Graph::from_int_edges(4, &[(0, 1, 1), (2, 3, 1)]);
        let psp = principal_sequence(&g);
        assert_eq!(
            lp_primal(&g, &psp, 2),
            Err(LpError::KAtMostComponents { k: 2, h: 2 })
        );
        assert_eq!(lp_primal(&g, &psp, 3).unwrap().objective, int(1));
    }
}
