//! Minimum k-cuts from tree packings, approximate-cut enumeration, and the
//! two combinatorial roundings (LP contraction-and-isolation, smallest
//! shores of the principal sequence).

use crate::graph::{cut_of_partition, CutResult, DisjointSets, EdgeId, Graph, VertexPartition};
use crate::lp::{dual_z, lp_primal, LpError};
use crate::oracle::{better_tie, oracle_min_kcut, OracleError, OracleLimits};
use crate::rational::{int, Rational};
use crate::strength::{principal_sequence, PrincipalSequence};
use crate::treepack::{exact_pack, mwu_pack, PackConfig, PackError, TreePacking};
use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("k = {k} is outside 2..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("epsilon must be below 1/(2k-1) = {0}")]
    EpsilonTooLarge(String),
    #[error("alpha must be at least 1")]
    AlphaBelowOne,
    #[error("x must hold one value in [0, 1] per edge")]
    BadX,
    #[error(transparent)]
    Pack(#[from] PackError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn check_k(g: &Graph, k: usize) -> Result<(), SolveError> {
    if k < 2 || k > g.n() {
        return Err(SolveError::KOutOfRange { k, n: g.n() });
    }
    Ok(())
}

// Set partitions of `items` labels into at least `k` groups such that every
// pair in `apart` lands in different groups. Calls `emit` with the group of
// each item.
fn for_each_merge(
    items: usize,
    k: usize,
    apart: &[(usize, usize)],
    emit: &mut dyn FnMut(&[usize]),
) {
    // constraints indexed by their larger item
    let mut later: Vec<Vec<usize>> = vec![Vec::new(); items];
    for &(a, b) in apart {
        later[a.max(b)].push(a.min(b));
    }
    let mut group = vec![0; items];
    fn rec(
        i: usize,
        groups: usize,
        k: usize,
        later: &[Vec<usize>],
        group: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let items = group.len();
        if groups + (items - i) < k {
            return;
        }
        if i == items {
            emit(group);
            return;
        }
        for g in 0..=groups {
            if later[i].iter().any(|&j| group[j] == g) {
                continue;
            }
            group[i] = g;
            rec(i + 1, groups.max(g + 1), k, later, group, emit);
        }
    }
    if items == 0 {
        return;
    }
    rec(0, 0, k, &later, &mut group, emit);
}

// Every partition with at least `k` parts whose crossing set within `tree`
// has at most `h` edges, each produced exactly once.
fn for_each_tree_partition(
    g: &Graph,
    tree: &[EdgeId],
    h: usize,
    k: usize,
    emit: &mut dyn FnMut(VertexPartition),
) -> usize {
    let mut count = 0;
    let mut chosen: Vec<usize> = Vec::new();
    fn subsets(
        start: usize,
        t: usize,
        h: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(chosen);
        if chosen.len() == h {
            return;
        }
        for i in start..t {
            chosen.push(i);
            subsets(i + 1, t, h, chosen, visit);
            chosen.pop();
        }
    }
    subsets(0, tree.len(), h, &mut chosen, &mut |f: &[usize]| {
        let mut removed = vec![false; tree.len()];
        for &i in f {
            removed[i] = true;
        }
        let mut dsu = DisjointSets::new(g.n());
        for (i, &e) in tree.iter().enumerate() {
            if !removed[i] {
                dsu.union(g.edge(e).u, g.edge(e).v);
            }
        }
        let comps = VertexPartition::from_labels(&dsu.labels()).labels();
        let items = comps.iter().max().map_or(0, |m| m + 1);
        let apart: Vec<(usize, usize)> = f
            .iter()
            .map(|&i| {
                let e = g.edge(tree[i]);
                (comps[e.u], comps[e.v])
            })
            .collect();
        for_each_merge(items, k, &apart, &mut |group| {
            count += 1;
            let labels: Vec<usize> = comps.iter().map(|&c| group[c]).collect();
            emit(VertexPartition::from_labels(&labels));
        });
    });
    count
}

/// All cuts with at least `k` parts that cross `tree` in at most `h` edges:
/// for each set `F` of at most `h` tree edges, every merge of the pieces of
/// `tree - F` into at least `k` groups that keeps each edge of `F` crossing.
/// Each partition appears once.
pub fn cuts_from_tree(g: &Graph, tree: &[EdgeId], h: usize, k: usize) -> Vec<CutResult> {
    let mut out = Vec::new();
    for_each_tree_partition(g, tree, h, k, &mut |p| out.push(cut_of_partition(g, &p)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Exact dual packing, `h = 2k - 3`.
    Exact,
    /// MWU dual packing, `h = 2k - 2`.
    Approx,
    /// Exact dual packing, `h = floor(2 alpha (k - 1))`.
    Alpha,
    /// `k` does not exceed the component count; cuts are merges of components.
    Components,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub k: usize,
    pub h: usize,
    pub mode: EnumerationMode,
    pub trees_scanned: usize,
    pub candidates: usize,
    /// Distinct partitions, sorted by value and then canonical order.
    pub cuts: Vec<CutResult>,
    pub min_value: Rational,
    pub minimizers: Vec<VertexPartition>,
    /// The packing the trees came from.
    pub packing: Option<TreePacking>,
}

impl EnumerationReport {
    #[allow(clippy::too_many_arguments)]
    fn build(
        g: &Graph,
        k: usize,
        h: usize,
        mode: EnumerationMode,
        found: BTreeMap<VertexPartition, ()>,
        trees_scanned: usize,
        candidates: usize,
        packing: Option<TreePacking>,
    ) -> EnumerationReport {
        let mut cuts: Vec<CutResult> = found.into_keys().map(|p| cut_of_partition(g, &p)).collect();
        cuts.sort_by(|a, b| {
            a.value
                .cmp(&b.value)
                .then_with(|| a.partition.cmp(&b.partition))
        });
        let min_value = cuts
            .first()
            .map_or_else(Rational::zero, |c| c.value.clone());
        let minimizers = cuts
            .iter()
            .take_while(|c| c.value == min_value)
            .map(|c| c.partition.clone())
            .collect();
        EnumerationReport {
            k,
            h,
            mode,
            trees_scanned,
            candidates,
            cuts,
            min_value,
            minimizers,
            packing,
        }
    }

    /// Preferred minimizer: most parts, then canonical order.
    pub fn best(&self, g: &Graph) -> CutResult {
        let best = self
            .minimizers
            .iter()
            .fold(None::<&VertexPartition>, |acc, p| match acc {
                Some(q) if !better_tie(p, q) => Some(q),
                _ => Some(p),
            })
            .expect("a k-cut always exists");
        cut_of_partition(g, best)
    }
}

// Scans every support tree. When `h` covers a whole tree, every tree yields
// the same set (all partitions with >= k parts), so one tree suffices.
fn scan_packing(
    g: &Graph,
    packing: &TreePacking,
    h: usize,
    k: usize,
    keep: impl Fn(&VertexPartition) -> bool,
) -> (BTreeMap<VertexPartition, ()>, usize, usize) {
    let mut found = BTreeMap::new();
    let mut candidates = 0;
    let mut scanned = 0;
    for tree in &packing.trees {
        scanned += 1;
        candidates += for_each_tree_partition(g, tree, h, k, &mut |p| {
            if keep(&p) {
                found.insert(p, ());
            }
        });
        if h >= tree.len() {
            break;
        }
    }
    (found, scanned, candidates)
}

fn component_merges(g: &Graph, k: usize) -> EnumerationReport {
    let comps = g.components().labels();
    let items = g.component_count();
    let mut found = BTreeMap::new();
    let mut candidates = 0;
    for_each_merge(items, k, &[], &mut |group| {
        candidates += 1;
        let labels: Vec<usize> = comps.iter().map(|&c| group[c]).collect();
        found.insert(VertexPartition::from_labels(&labels), ());
    });
    EnumerationReport::build(
        g,
        k,
        0,
        EnumerationMode::Components,
        found,
        0,
        candidates,
        None,
    )
}

/// Packing mode used to build the dual trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Approx(Rational),
}

fn dual_caps(g: &Graph, psp: &PrincipalSequence, k: usize) -> Vec<Rational> {
    let j = psp.level_for(k).expect("k <= n");
    let z = dual_z(g, psp, j);
    g.edges().iter().zip(&z).map(|(e, z)| &e.cap + z).collect()
}

/// Minimum k-cut with every minimizer: pack trees in `c + z` from the
/// closed-form dual and enumerate the cuts they `h`-respect.
pub fn min_kcut(
    g: &Graph,
    k: usize,
    mode: &SolveMode,
) -> Result<(CutResult, EnumerationReport), SolveError> {
    check_k(g, k)?;
    if k <= g.component_count() {
        let report = component_merges(g, k);
        return Ok((report.best(g), report));
    }
    if k == g.n() {
        let p = VertexPartition::singletons(g.n());
        let mut found = BTreeMap::new();
        found.insert(p, ());
        let report = EnumerationReport::build(g, k, 0, EnumerationMode::Exact, found, 0, 1, None);
        return Ok((report.best(g), report));
    }
    let psp = principal_sequence(g);
    let caps = dual_caps(g, &psp, k);
    let (packing, h, enum_mode) = match mode {
        SolveMode::Exact => (exact_pack(g, &caps)?, 2 * k - 3, EnumerationMode::Exact),
        SolveMode::Approx(eps) => {
            let limit = Rational::new(1.into(), ((2 * k - 1) as i64).into());
            if *eps >= limit || !eps.is_positive() {
                return Err(SolveError::EpsilonTooLarge(limit.to_string()));
            }
            let packing = mwu_pack(g, &caps, &PackConfig::with_epsilon(eps.clone()))?;
            (packing, 2 * k - 2, EnumerationMode::Approx)
        }
    };
    let (found, scanned, candidates) = scan_packing(g, &packing, h, k, |_| true);
    let mut report = EnumerationReport::build(
        g,
        k,
        h,
        enum_mode,
        found,
        scanned,
        candidates,
        Some(packing),
    );
    // only the optimal cuts are of interest here
    let min = report.min_value.clone();
    report.cuts.retain(|c| c.value == min);
    Ok((report.best(g), report))
}

/// Every partition with at least `k` parts and value at most `alpha * lambda_k`.
pub fn enumerate_approx_kcuts(
    g: &Graph,
    k: usize,
    alpha: &Rational,
) -> Result<EnumerationReport, SolveError> {
    check_k(g, k)?;
    if *alpha < Rational::one() {
        return Err(SolveError::AlphaBelowOne);
    }
    let (best, _) = min_kcut(g, k, &SolveMode::Exact)?;
    let bound = alpha * &best.value;
    if k <= g.component_count() || k == g.n() {
        // every candidate is a merge of components or the singletons
        let mut report = if k == g.n() {
            min_kcut(g, k, &SolveMode::Exact)?.1
        } else {
            component_merges(g, k)
        };
        report.cuts.retain(|c| c.value <= bound);
        return Ok(report);
    }
    let h = (alpha * int(2 * (k as i64 - 1)))
        .floor()
        .to_integer()
        .to_usize()
        .expect("h is small and nonnegative");
    let psp = principal_sequence(g);
    let packing = exact_pack(g, &dual_caps(g, &psp, k))?;
    let (found, scanned, candidates) =
        scan_packing(g, &packing, h, k, |p| p.crossing_value(g) <= bound);
    Ok(EnumerationReport::build(
        g,
        k,
        h,
        EnumerationMode::Alpha,
        found,
        scanned,
        candidates,
        Some(packing),
    ))
}

/// Lower bound `1 - 2 alpha (k - 1)(1 - 1/n)/(h + 1)` on the fraction of
/// dual trees that `h`-respect a k-cut of value at most `alpha * lambda_k`.
pub fn kcut_respect_bound(alpha: &Rational, k: usize, h: usize, n: usize) -> Rational {
    let n = int(n as i64);
    Rational::one()
        - int(2) * alpha * int(k as i64 - 1) * (Rational::one() - n.recip()) / int(h as i64 + 1)
}

/// Lower bound `(1 - eps)(1 + 1/h) - (2 alpha / h)(1 - 1/n)` on the fraction
/// of trees in a `(1 - eps)`-optimal packing that `h`-respect a cut of value
/// at most `alpha` times the minimum cut.
pub fn mincut_respect_bound(eps: &Rational, alpha: &Rational, h: usize, n: usize) -> Rational {
    let (h, n) = (int(h as i64), int(n as i64));
    (Rational::one() - eps) * (Rational::one() + h.recip())
        - int(2) * alpha / &h * (Rational::one() - n.recip())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RespectStats {
    pub h: usize,
    pub cut_edges: Vec<EdgeId>,
    /// `|E(T) & cut|` per tree, in packing order.
    pub crossings: Vec<usize>,
    /// Weight fraction of trees with at most `h` crossings.
    pub q_h: Rational,
    pub bound: Rational,
}

impl RespectStats {
    /// Weight fraction for another threshold.
    pub fn q(&self, packing: &TreePacking, h: usize) -> Rational {
        let hit: Rational = self
            .crossings
            .iter()
            .zip(&packing.weights)
            .filter(|(&l, _)| l <= h)
            .map(|(_, y)| y)
            .sum();
        hit / &packing.total_value
    }
}

/// Exact crossing counts of every packed tree against `cut_edges`, with the
/// k-cut bound for `(alpha, k, h, n)` attached.
pub fn respect_stats(
    packing: &TreePacking,
    cut_edges: &[EdgeId],
    h: usize,
    alpha: &Rational,
    k: usize,
    n: usize,
) -> RespectStats {
    let mut in_cut = vec![false; packing.caps.len()];
    for &e in cut_edges {
        in_cut[e] = true;
    }
    let crossings: Vec<usize> = packing
        .trees
        .iter()
        .map(|t| t.iter().filter(|&&e| in_cut[e]).count())
        .collect();
    let mut stats = RespectStats {
        h,
        cut_edges: cut_edges.to_vec(),
        crossings,
        q_h: Rational::zero(),
        bound: kcut_respect_bound(alpha, k, h, n),
    };
    stats.q_h = stats.q(packing, h);
    stats
}

/// Number of merges examined per fixed tree and `|F| = s`, summed over
/// `s <= h`: `sum_{s <= h} Bell(s + 1)`.
pub fn merge_count(h: usize) -> BigUint {
    // Bell triangle
    let mut row = vec![BigUint::one()];
    let mut bells = vec![BigUint::one()];
    for _ in 0..=h {
        let mut next = vec![row.last().expect("nonempty").clone()];
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells[1..=h + 1].iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundResult {
    pub cut: CutResult,
    pub lp_value: Rational,
    /// The input was the LP optimum and the cut meets `2(1 - 1/n)` times it.
    pub certified: bool,
}

/// LP rounding: contract `x = 0` edges, cut every `x = 1` edge, and if that
/// leaves fewer than `k` pieces, split off residual nodes of smallest
/// capacitated degree (ties by id), never emptying a piece.
pub fn round_lp(
    g: &Graph,
    x: &[Rational],
    k: usize,
    optimum: Option<&Rational>,
) -> Result<RoundResult, SolveError> {
    check_k(g, k)?;
    if x.len() != g.m() || x.iter().any(|v| v.is_negative() || *v > Rational::one()) {
        return Err(SolveError::BadX);
    }
    let zero_edges: Vec<EdgeId> = (0..g.m()).filter(|&e| x[e].is_zero()).collect();
    let contraction = g.contract(&zero_edges);
    let cg = &contraction.graph;
    let one = Rational::one();
    let residual_keep = |e: EdgeId| x[contraction.edge_map[e]] != one;
    let pieces = cg.components_filtered(residual_keep).labels();
    let mut piece_count = pieces.iter().max().map_or(0, |m| m + 1);
    let mut labels = pieces.clone();
    if piece_count < k {
        let mut degree = vec![Rational::zero(); cg.n()];
        for (id, e) in cg.edges().iter().enumerate() {
            if residual_keep(id) {
                degree[e.u] += &e.cap;
                degree[e.v] += &e.cap;
            }
        }
        let mut left = vec![0usize; piece_count];
        for &p in &pieces {
            left[p] += 1;
        }
        let mut order: Vec<usize> = (0..cg.n()).collect();
        order.sort_by(|&a, &b| degree[a].cmp(&degree[b]).then(a.cmp(&b)));
        for v in order {
            if piece_count == k {
                break;
            }
            if left[pieces[v]] <= 1 {
                continue;
            }
            left[pieces[v]] -= 1;
            labels[v] = piece_count;
            piece_count += 1;
        }
    }
    let partition = contraction.lift(&VertexPartition::from_labels(&labels));
    let cut = cut_of_partition(g, &partition);
    let lp_value: Rational = g.edges().iter().zip(x).map(|(e, x)| &e.cap * x).sum();
    let factor = int(2) * (one - int(g.n() as i64).recip());
    let certified = optimum.is_some_and(|o| *o == lp_value) && cut.value <= factor * &lp_value;
    Ok(RoundResult {
        cut,
        lp_value,
        certified,
    })
}

/// Cut `A_{j-1}` plus the boundaries of the smallest shores among the parts
/// split at level `j` (exact when `kappa_j = k`).
pub fn ravi_sinha_cut(
    g: &Graph,
    psp: &PrincipalSequence,
    k: usize,
) -> Result<CutResult, SolveError> {
    check_k(g, k)?;
    let j = psp.level_for(k).expect("k <= n");
    if psp.kappa(j) == k {
        return Ok(cut_of_partition(g, psp.partition(j)));
    }
    let mut labels = psp.partition(j - 1).labels();
    let mut next = psp.kappa(j - 1);
    let level = &psp.levels[j - 1];
    let mut owner = vec![usize::MAX; g.n()];
    for (c, comp) in level.split.iter().enumerate() {
        for &v in &comp.vertices {
            owner[v] = c;
        }
    }
    // (boundary inside the component, part, component)
    let mut shores: Vec<(Rational, &Vec<usize>, usize)> = Vec::new();
    for (c, comp) in level.split.iter().enumerate() {
        let mut part_of = vec![usize::MAX; g.n()];
        for (p, part) in comp.parts.iter().enumerate() {
            for &v in part {
                part_of[v] = p;
            }
        }
        for (p, part) in comp.parts.iter().enumerate() {
            let boundary: Rational = g
                .edges()
                .iter()
                .filter(|e| owner[e.u] == c && owner[e.v] == c)
                .filter(|e| (part_of[e.u] == p) != (part_of[e.v] == p))
                .map(|e| &e.cap)
                .sum();
            shores.push((boundary, part, c));
        }
    }
    shores.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let mut left: Vec<usize> = level.split.iter().map(|c| c.parts.len()).collect();
    for (_, part, c) in shores {
        if next == k {
            break;
        }
        if left[c] <= 1 {
            continue;
        }
        left[c] -= 1;
        for &v in part {
            labels[v] = next;
        }
        next += 1;
    }
    Ok(cut_of_partition(g, &VertexPartition::from_labels(&labels)))
}

/// Output of a named k-cut strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOutput {
    pub cut: CutResult,
    /// All optimal partitions, when the strategy is exact.
    pub minimizers: Option<Vec<VertexPartition>>,
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    /// MWU accuracy; defaults to `1/(2k)`.
    pub epsilon: Option<Rational>,
    pub limits: OracleLimits,
}

/// A k-cut algorithm selectable by name.
pub trait KCutSolver: Send + Sync {
    fn name(&self) -> &'static str;
    /// Whether the result is guaranteed optimal.
    fn exact(&self) -> bool;
    fn solve(&self, g: &Graph, k: usize) -> Result<SolverOutput, SolveError>;
}

pub struct TreeSolver {
    pub config: SolverConfig,
    pub approx: bool,
}

impl KCutSolver for TreeSolver {
    fn name(&self) -> &'static str {
        if self.approx {
            "tree-mwu"
        } else {
            "tree-exact"
        }
    }

    fn exact(&self) -> bool {
        true
    }

    fn solve(&self, g: &Graph, k: usize) -> Result<SolverOutput, SolveError> {
        let mode = if self.approx {
            let eps = self
                .config
                .epsilon
                .clone()
                .unwrap_or_else(|| Rational::new(1.into(), (2 * k as i64).into()));
            SolveMode::Approx(eps)
        } else {
            SolveMode::Exact
        };
        let (cut, report) = min_kcut(g, k, &mode)?;
        Ok(SolverOutput {
            cut,
            minimizers: Some(report.minimizers),
        })
    }
}

pub struct LpRoundSolver;

impl KCutSolver for LpRoundSolver {
    fn name(&self) -> &'static str {
        "lp-round"
    }

    fn exact(&self) -> bool {
        false
    }

    fn solve(&self, g: &Graph, k: usize) -> Result<SolverOutput, SolveError> {
        check_k(g, k)?;
        if k <= g.component_count() {
            return Ok(SolverOutput {
                cut: component_merges(g, k).best(g),
                minimizers: None,
            });
        }
        let psp = principal_sequence(g);
        let primal = lp_primal(g, &psp, k)?;
        let r = round_lp(g, &primal.x, k, Some(&primal.objective))?;
        Ok(SolverOutput {
            cut: r.cut,
            minimizers: None,
        })
    }
}

pub struct RaviSinhaSolver;

impl KCutSolver for RaviSinhaSolver {
    fn name(&self) -> &'static str {
        "ravi-sinha"
    }

    fn exact(&self) -> bool {
        false
    }

    fn solve(&self, g: &Graph, k: usize) -> Result<SolverOutput, SolveError> {
        let cut = ravi_sinha_cut(g, &principal_sequence(g), k)?;
        Ok(SolverOutput {
            cut,
            minimizers: None,
        })
    }
}

pub struct OracleSolver(pub OracleLimits);

impl KCutSolver for OracleSolver {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn exact(&self) -> bool {
        true
    }

    fn solve(&self, g: &Graph, k: usize) -> Result<SolverOutput, SolveError> {
        let r = oracle_min_kcut(g, k, &self.0)?;
        Ok(SolverOutput {
            cut: r.best,
            minimizers: Some(r.minimizers),
        })
    }
}

type SolverCtor = fn(&SolverConfig) -> Box<dyn KCutSolver>;

/// Name-indexed table of k-cut strategies.
pub struct SolverRegistry {
    entries: Vec<(&'static str, SolverCtor)>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut r = SolverRegistry {
            entries: Vec::new(),
        };
        r.register("tree-exact", |cfg| {
            Box::new(TreeSolver {
                config: cfg.clone(),
                approx: false,
            })
        });
        r.register("tree-mwu", |cfg| {
            Box::new(TreeSolver {
                config: cfg.clone(),
                approx: true,
            })
        });
        r.register("lp-round", |_| Box::new(LpRoundSolver));
        r.register("ravi-sinha", |_| Box::new(RaviSinhaSolver));
        r.register("oracle", |cfg| Box::new(OracleSolver(cfg.limits)));
        r
    }
}

impl SolverRegistry {
    pub fn register(&mut self, name: &'static str, ctor: SolverCtor) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, ctor));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str, cfg: &SolverConfig) -> Option<Box<dyn KCutSolver>> {
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
    use crate::oracle::oracle_cuts_within;
    use crate::rational::ratio;

    fn parts(n: usize, parts: &[&[usize]]) -> VertexPartition {
        VertexPartition::from_parts(n, parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tree_cut_examples() {
        let c5 = fixtures::c5();
        let cuts = cuts_from_tree(&c5, &[0, 1, 2, 3], 1, 2);
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(|c| c.value == int(2)));

        let e1 = fixtures::e1();
        let cuts = cuts_from_tree(&e1, &[0], 1, 2);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].value, int(5));

        let tt = fixtures::tt();
        let tree = [0, 1, 3, 4, 5];
        let cuts = cuts_from_tree(&tt, &tree, 3, 3);
        let target = parts(6, &[&[0], &[1, 2], &[3, 4, 5]]);
        let hit = cuts.iter().find(|c| c.partition == target).unwrap();
        assert_eq!(hit.value, int(3));
        // no duplicates
        let mut ps: Vec<_> = cuts.iter().map(|c| c.partition.clone()).collect();
        ps.sort();
        ps.dedup();
        assert_eq!(ps.len(), cuts.len());
    }

    #[test]
    fn min_kcut_examples() {
        let tt = fixtures::tt();
        let (cut, report) = min_kcut(&tt, 2, &SolveMode::Exact).unwrap();
        assert_eq!(cut.value, int(1));
        assert_eq!(report.minimizers, vec![parts(6, &[&[0, 1, 2], &[3, 4, 5]])]);
        assert_eq!(min_kcut(&tt, 4, &SolveMode::Exact).unwrap().0.value, int(4));
        let (cut, report) = min_kcut(&fixtures::c5(), 3, &SolveMode::Exact).unwrap();
        assert_eq!(cut.value, int(3));
        assert_eq!(report.minimizers.len(), 10);
        let (cut, _) = min_kcut(&fixtures::c5(), 3, &SolveMode::Approx(ratio(1, 6))).unwrap();
        assert_eq!(cut.value, int(3));
        assert!(matches!(
            min_kcut(&tt, 2, &SolveMode::Approx(ratio(1, 3))),
            Err(SolveError::EpsilonTooLarge(_))
        ));
    }

    #[test]
    fn degenerate_k() {
        let k4 = fixtures::k4();
        assert_eq!(min_kcut(&k4, 4, &SolveMode::Exact).unwrap().0.value, int(6));
        let g = Graph::from_int_edges(5, &[(0, 1, 1), (2, 3, 1), (3, 4, 1)]);
        let (cut, report) = min_kcut(&g, 2, &SolveMode::Exact).unwrap();
        assert_eq!(cut.value, int(0));
        assert_eq!(report.minimizers, vec![parts(5, &[&[0, 1], &[2, 3, 4]])]);
        assert_eq!(min_kcut(&g, 3, &SolveMode::Exact).unwrap().0.value, int(1));
        assert!(min_kcut(&g, 6, &SolveMode::Exact).is_err());
    }

    #[test]
    fn approx_enumeration_examples() {
        let lim = OracleLimits::default();
        let cases = [
            (fixtures::c5(), 2, int(1), 10),
            (fixtures::tt(), 2, int(1), 1),
            (fixtures::k4(), 2, ratio(4, 3), 7),
        ];
        for (g, k, alpha, count) in cases {
            let r = enumerate_approx_kcuts(&g, k, &alpha).unwrap();
            let oracle = oracle_cuts_within(&g, k, &(&alpha * &r.min_value), &lim).unwrap();
            assert_eq!(r.cuts.len(), count);
            let mut ours: Vec<_> = r.cuts.iter().map(|c| c.partition.clone()).collect();
            ours.sort();
            let mut theirs: Vec<_> = oracle.iter().map(|c| c.partition.clone()).collect();
            theirs.sort();
            assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(kcut_respect_bound(&int(1), 3, 3, 6), ratio(1, 6));
        let n = 6;
        assert_eq!(mincut_respect_bound(&int(0), &int(1), 1, n), ratio(2, 6));
        assert_eq!(
            mincut_respect_bound(&int(0), &int(1), 2, n),
            ratio(1, 2) + ratio(1, 6)
        );
        let e1 = fixtures::e1();
        let p = exact_pack(&e1, &e1.caps()).unwrap();
        let s = respect_stats(&p, &[0], 1, &int(1), 2, 2);
        assert_eq!(s.crossings, vec![1]);
        assert_eq!(s.q_h, int(1));
        assert_eq!(s.q(&p, 0), int(0));
    }

    #[test]
    fn merge_counts() {
        let got: Vec<u64> = (0..4).map(|h| merge_count(h).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 3, 8, 23]);
    }

    #[test]
    fn rounding_examples() {
        let cases = [
            (fixtures::c5(), 2, int(2)),
            (fixtures::tt(), 3, int(3)),
            (fixtures::k4(), 2, int(3)),
        ];
        for (g, k, value) in cases {
            let psp = principal_sequence(&g);
            let x = lp_primal(&g, &psp, k).unwrap();
            let r = round_lp(&g, &x.x, k, Some(&x.objective)).unwrap();
            assert_eq!(r.cut.value, value);
            assert_eq!(r.cut.k_achieved, k);
            assert!(r.certified);
        }
        let c5 = fixtures::c5();
        let r = round_lp(&c5, &vec![ratio(1, 4); 5], 2, None).unwrap();
        assert_eq!(r.cut.value / r.lp_value, ratio(8, 5));
        assert!(!r.certified);
        assert_eq!(
            round_lp(&c5, &vec![int(2); 5], 2, None),
            Err(SolveError::BadX)
        );
    }

    #[test]
    fn ravi_sinha_examples() {
        let tt = fixtures::tt();
        let psp = principal_sequence(&tt);
        let c = ravi_sinha_cut(&tt, &psp, 2).unwrap();
        assert_eq!(
            (c.value.clone(), c.partition),
            (int(1), parts(6, &[&[0, 1, 2], &[3, 4, 5]]))
        );
        let c = ravi_sinha_cut(&tt, &psp, 3).unwrap();
        assert_eq!((c.value, c.k_achieved), (int(3), 3));
        let c5 = fixtures::c5();
        let c = ravi_sinha_cut(&c5, &principal_sequence(&c5), 4).unwrap();
        assert_eq!((c.value, c.k_achieved), (int(4), 4));
    }

    #[test]
    fn registry_runs_every_solver() {
        let reg = SolverRegistry::default();
        assert_eq!(
            reg.names(),
            vec!["tree-exact", "tree-mwu", "lp-round", "ravi-sinha", "oracle"]
        );
        let tt = fixtures::tt();
        let cfg = SolverConfig::default();
        for name in reg.names() {
            let s = reg.get(name, &cfg).unwrap();
            let out = s.solve(&tt, 3).unwrap();
            assert_eq!(out.cut.k_achieved, 3);
            if s.exact() {
                assert_eq!(out.cut.value, int(3), "{name}");
            }
        }
        assert!(reg.get("karger", &cfg).is_none());
    }
}
