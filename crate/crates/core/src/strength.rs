//! Graph strength, the attack function and the principal sequence of
//! partitions.
//!
//! The attack value `g(b) = min_P c(E(P)) - b(|P| - 1)` is computed exactly
//! as the Dilworth truncation of `S -> d(S)/2 - b`: vertices are inserted in
//! ascending id order and each insertion saturates one coordinate with a
//! single minimum s-t cut.

use crate::flow::FlowNetwork;
use crate::graph::{DisjointSets, EdgeId, Graph, VertexId, VertexPartition};
use crate::rational::{self, int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrengthError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("strength needs at least two vertices")]
    TooSmall,
}

/// Value of the line `c(E(P)) - b(|P| - 1)`.
pub fn attack_line(g: &Graph, p: &VertexPartition, b: &Rational) -> Rational {
    p.crossing_value(g) - b * int(p.part_count() as i64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackResult {
    pub b: Rational,
    pub value: Rational,
    /// Coarsest optimal partition.
    pub argmin_min_parts: VertexPartition,
    /// Finest optimal partition.
    pub argmin_max_parts: VertexPartition,
}

// One Dilworth-truncation pass: returns g(b) and the coarsest minimizer.
fn truncation(g: &Graph, b: &Rational) -> (Rational, VertexPartition) {
    let n = g.n();
    let two = int(2);
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    let mut dsu = DisjointSets::new(n);
    for i in 0..n {
        let sink = i + 1;
        let mut net = FlowNetwork::new(i + 2);
        let local = |v: VertexId| if v <= i { v } else { sink };
        for e in g.edges() {
            let (a, c) = (local(e.u), local(e.v));
            if a != c {
                net.add_edge(a, c, e.cap.clone());
            }
        }
        let mut offset = Rational::zero();
        for (u, xu) in x.iter().enumerate() {
            let w = &two * xu;
            if w.is_positive() {
                offset += &w;
                net.add_arc(i, u, w);
            } else if w.is_negative() {
                net.add_arc(u, sink, -w);
            }
        }
        let flow = net.max_flow(i, sink);
        x.push((flow.value - offset - &two * b) / &two);
        for (u, &inside) in flow.max_source_side[..=i].iter().enumerate() {
            if inside {
                dsu.union(i, u);
            }
        }
    }
    let value = x.iter().sum::<Rational>() + b;
    (value, VertexPartition::from_labels(&dsu.labels()))
}

// Step small enough that no breakpoint lies in (b, b + step].
fn breakpoint_gap(g: &Graph, b: &Rational) -> Rational {
    let d = rational::common_denominator(g.edges().iter().map(|e| &e.cap));
    let n = BigInt::from(g.n().max(2) as u64);
    let den = BigInt::from(2) * b.denom() * d * &n * &n;
    Rational::new(BigInt::one(), den)
}

/// Exact attack value with both extreme optimal partitions.
///
/// The finest optimum at `b` is the unique optimum just to the right of `b`,
/// so it is read off a second truncation at `b + gap`.
pub fn attack(g: &Graph, b: &Rational) -> AttackResult {
    let (value, coarsest) = truncation(g, b);
    let (_, finest) = truncation(g, &(b + breakpoint_gap(g, b)));
    debug_assert_eq!(attack_line(g, &coarsest, b), value);
    debug_assert_eq!(attack_line(g, &finest, b), value);
    AttackResult {
        b: b.clone(),
        value,
        argmin_min_parts: coarsest,
        argmin_max_parts: finest,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub b: Rational,
    /// Coarsest optimum at `b` (optimal just left of `b`).
    pub before: VertexPartition,
    /// Finest optimum at `b` (optimal just right of `b`).
    pub after: VertexPartition,
}

struct Line {
    partition: VertexPartition,
    cut: Rational,
    parts: usize,
}

impl Line {
    fn new(g: &Graph, partition: VertexPartition) -> Line {
        Line {
            cut: partition.crossing_value(g),
            parts: partition.part_count(),
            partition,
        }
    }

    fn at(&self, b: &Rational) -> Rational {
        &self.cut - b * int(self.parts as i64 - 1)
    }
}

/// All breakpoints of `g(b)` for `b > 0`, ascending, by recursive
/// intersection of optimal lines.
pub fn breakpoints(g: &Graph) -> Vec<Breakpoint> {
    let left = Line::new(g, g.components());
    let right = Line::new(g, VertexPartition::singletons(g.n()));
    let mut out = Vec::new();
    breakpoints_rec(g, left, right, &mut out);
    out.sort_by(|a, b| a.b.cmp(&b.b));
    out
}

fn breakpoints_rec(g: &Graph, left: Line, right: Line, out: &mut Vec<Breakpoint>) {
    if left.parts >= right.parts {
        return;
    }
    let b = (&right.cut - &left.cut) / int((right.parts - left.parts) as i64);
    let r = attack(g, &b);
    if r.value == left.at(&b) {
        out.push(Breakpoint {
            b,
            before: r.argmin_min_parts,
            after: r.argmin_max_parts,
        });
        return;
    }
    let coarse = Line::new(g, r.argmin_min_parts);
    let fine = Line::new(g, r.argmin_max_parts);
    if coarse.parts != fine.parts {
        out.push(Breakpoint {
            b: b.clone(),
            before: coarse.partition.clone(),
            after: fine.partition.clone(),
        });
    }
    breakpoints_rec(g, left, coarse, out);
    breakpoints_rec(g, fine, right, out);
}

/// Strength `min_{|P|>=2} c(E(P))/(|P|-1)` and the finest partition attaining
/// it, by Dinkelbach iteration on the attack function.
pub fn strength(g: &Graph) -> Result<(Rational, VertexPartition), StrengthError> {
    if g.n() < 2 {
        return Err(StrengthError::TooSmall);
    }
    if !g.is_connected() {
        return Err(StrengthError::NotConnected);
    }
    let mut b = g.total_capacity() / int(g.n() as i64 - 1);
    loop {
        let r = attack(g, &b);
        if r.value.is_zero() {
            return Ok((b, r.argmin_max_parts));
        }
        debug_assert!(r.value.is_negative());
        let p = r.argmin_max_parts;
        let next = p.crossing_value(g) / int(p.part_count() as i64 - 1);
        debug_assert!(next < b);
        b = next;
    }
}

/// A component split at some level together with its min-strength partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitComponent {
    pub vertices: Vec<VertexId>,
    /// Parts of the component's min-strength partition, original vertex ids.
    pub parts: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PspLevel {
    pub lambda: Rational,
    pub partition: VertexPartition,
    pub kappa: usize,
    /// Components of the previous partition split at this level (several when
    /// strengths tie).
    pub split: Vec<SplitComponent>,
    /// Edges that start crossing at this level.
    pub new_edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalSequence {
    pub base: VertexPartition,
    pub levels: Vec<PspLevel>,
    /// Level (1-based) at which each edge starts to cross.
    pub edge_level: Vec<usize>,
}

impl PrincipalSequence {
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// `|P_i|`, with `i = 0` the component partition.
    pub fn kappa(&self, i: usize) -> usize {
        if i == 0 {
            self.base.part_count()
        } else {
            self.levels[i - 1].kappa
        }
    }

    pub fn lambda(&self, i: usize) -> &Rational {
        &self.levels[i - 1].lambda
    }

    pub fn partition(&self, i: usize) -> &VertexPartition {
        if i == 0 {
            &self.base
        } else {
            &self.levels[i - 1].partition
        }
    }

    /// Membership mask of `A_i`.
    pub fn a_mask(&self, i: usize) -> Vec<bool> {
        self.edge_level.iter().map(|&l| l <= i).collect()
    }

    /// `c(A_i)`.
    pub fn a_value(&self, g: &Graph, i: usize) -> Rational {
        g.edges()
            .iter()
            .zip(&self.edge_level)
            .filter(|(_, &l)| l <= i)
            .map(|(e, _)| &e.cap)
            .sum()
    }

    /// Smallest level index `j` with `kappa_j >= k`.
    pub fn level_for(&self, k: usize) -> Option<usize> {
        (0..=self.levels.len()).find(|&i| self.kappa(i) >= k)
    }

    /// `g(b)` as the lower envelope of the sequence's lines.
    pub fn attack_value(&self, g: &Graph, b: &Rational) -> Rational {
        (0..=self.levels.len())
            .map(|i| attack_line(g, self.partition(i), b))
            .min()
            .expect("at least the base line")
    }
}

/// Principal sequence by recursive decomposition: at every level all
/// components of minimum strength are split by their finest min-strength
/// partitions.
pub fn principal_sequence(g: &Graph) -> PrincipalSequence {
    let base = g.components();
    let mut labels = base.labels();
    let mut next_label = base.part_count();
    // (vertices, strength, finest partition in original ids) per splittable part
    let mut pending: Vec<(Vec<VertexId>, Rational, Vec<Vec<VertexId>>)> = base
        .parts()
        .iter()
        .filter(|p| p.len() >= 2)
        .map(|p| component_strength(g, p))
        .collect();
    let mut edge_level = vec![0; g.m()];
    let mut levels = Vec::new();
    while !pending.is_empty() {
        let lambda = pending
            .iter()
            .map(|(_, s, _)| s)
            .min()
            .expect("nonempty")
            .clone();
        let (now, later): (Vec<_>, Vec<_>) =
            pending.into_iter().partition(|(_, s, _)| *s == lambda);
        pending = later;
        let mut split = Vec::new();
        for (vertices, _, parts) in now {
            for part in &parts {
                for &v in part {
                    labels[v] = next_label;
                }
                next_label += 1;
                if part.len() >= 2 {
                    pending.push(component_strength(g, part));
                }
            }
            split.push(SplitComponent { vertices, parts });
        }
        let level = levels.len() + 1;
        let mut new_edges = Vec::new();
        for (id, e) in g.edges().iter().enumerate() {
            if edge_level[id] == 0 && labels[e.u] != labels[e.v] {
                edge_level[id] = level;
                new_edges.push(id);
            }
        }
        let partition = VertexPartition::from_labels(&labels);
        levels.push(PspLevel {
            lambda,
            kappa: partition.part_count(),
            partition,
            split,
            new_edges,
        });
    }
    PrincipalSequence {
        base,
        levels,
        edge_level,
    }
}

fn component_strength(
    g: &Graph,
    vertices: &[VertexId],
) -> (Vec<VertexId>, Rational, Vec<Vec<VertexId>>) {
    let sub = g.induced(vertices);
    let (sigma, p) = strength(&sub.graph).expect("parts of the sequence are connected");
    let parts = p
        .parts()
        .iter()
        .map(|part| part.iter().map(|&v| sub.vertices[v]).collect())
        .collect();
    (vertices.to_vec(), sigma, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{enum_partitions, OracleLimits};
    use crate::rational::ratio;

    fn brute_attack(g: &Graph, b: &Rational) -> Rational {
        enum_partitions(g.n(), &OracleLimits::default())
            .unwrap()
            .map(|p| attack_line(g, &p, b))
            .min()
            .unwrap()
    }

    fn parts(n: usize, parts: &[&[usize]]) -> VertexPartition {
        VertexPartition::from_parts(n, parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn attack_examples() {
        let tt = fixtures::tt();
        let r = attack(&tt, &int(1));
        assert_eq!(r.value, int(0));
        assert_eq!(r.argmin_min_parts, VertexPartition::whole(6));
        assert_eq!(r.argmin_max_parts, parts(6, &[&[0, 1, 2], &[3, 4, 5]]));

        let r = attack(&tt, &int(2));
        assert_eq!(r.value, int(-3));
        assert_eq!(r.argmin_min_parts, VertexPartition::singletons(6));
        assert_eq!(r.argmin_max_parts, VertexPartition::singletons(6));

        let r = attack(&fixtures::c5(), &int(1));
        assert_eq!(r.value, int(0));
        assert_eq!(r.argmin_min_parts, VertexPartition::whole(5));
    }

    #[test]
    fn attack_matches_brute_force_on_grid() {
        for (_, g) in fixtures::named() {
            for num in 0..=16 {
                let b = ratio(num, 4);
                assert_eq!(attack(&g, &b).value, brute_attack(&g, &b), "b = {b}");
            }
        }
    }

    #[test]
    fn breakpoint_examples() {
        let bp = breakpoints(&fixtures::tt());
        assert_eq!(bp.len(), 2);
        assert_eq!(bp[0].b, int(1));
        assert_eq!(bp[0].before, VertexPartition::whole(6));
        assert_eq!(bp[0].after, parts(6, &[&[0, 1, 2], &[3, 4, 5]]));
        assert_eq!(bp[1].b, ratio(3, 2));
        assert_eq!(bp[1].after, VertexPartition::singletons(6));

        let bp = breakpoints(&fixtures::c5());
        assert_eq!(bp.len(), 1);
        assert_eq!(bp[0].b, ratio(5, 4));
        assert_eq!(bp[0].after, VertexPartition::singletons(5));

        let bp = breakpoints(&fixtures::e1());
        assert_eq!(bp.len(), 1);
        assert_eq!(bp[0].b, int(5));
    }

    #[test]
    fn strength_examples() {
        assert_eq!(
            strength(&fixtures::tt()).unwrap(),
            (int(1), parts(6, &[&[0, 1, 2], &[3, 4, 5]]))
        );
        assert_eq!(
            strength(&fixtures::c5()).unwrap(),
            (ratio(5, 4), VertexPartition::singletons(5))
        );
        assert_eq!(
            strength(&fixtures::k4()).unwrap(),
            (int(2), VertexPartition::singletons(4))
        );
        assert_eq!(
            strength(&Graph::from_int_edges(1, &[])),
            Err(StrengthError::TooSmall)
        );
        assert_eq!(
            strength(&Graph::from_int_edges(3, &[(0, 1, 1)])),
            Err(StrengthError::NotConnected)
        );
    }

    #[test]
    fn psp_examples() {
        let tt = fixtures::tt();
        let psp = principal_sequence(&tt);
        let lambdas: Vec<_> = psp.levels.iter().map(|l| l.lambda.clone()).collect();
        assert_eq!(lambdas, vec![int(1), ratio(3, 2)]);
        let kappas: Vec<_> = (0..=2).map(|i| psp.kappa(i)).collect();
        assert_eq!(kappas, vec![1, 2, 6]);
        assert_eq!(psp.levels[0].new_edges, vec![fixtures::TT_BRIDGE]);
        // both triangles tie at 3/2 and split together
        assert_eq!(psp.levels[1].split.len(), 2);

        let psp = principal_sequence(&fixtures::c5());
        assert_eq!(psp.level_count(), 1);
        assert_eq!(psp.levels[0].lambda, ratio(5, 4));
        let psp = principal_sequence(&fixtures::k4());
        assert_eq!(psp.level_count(), 1);
        assert_eq!(psp.levels[0].lambda, int(2));
    }

    #[test]
    fn disconnected_sequence_starts_from_components() {
        let g = Graph::from_int_edges(5, &[(0, 1, 3), (2, 3, 1), (3, 4, 1), (2, 4, 1)]);
        let psp = principal_sequence(&g);
        assert_eq!(psp.kappa(0), 2);
        let lambdas: Vec<_> = psp.levels.iter().map(|l| l.lambda.clone()).collect();
        assert_eq!(lambdas, vec![ratio(3, 2), int(3)]);
        let bp = breakpoints(&g);
        let bl: Vec<_> = bp.iter().map(|b| b.b.clone()).collect();
        assert_eq!(bl, lambdas);
    }
}
