//! Exact maximum flow with shortest augmenting paths (Edmonds-Karp).

use crate::graph::{Graph, VertexId};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct MaxFlow {
    pub value: Rational,
    /// Vertices reachable from the source in the residual network: the
    /// inclusion-minimal source side of a minimum cut.
    pub min_source_side: Vec<bool>,
    /// Vertices that cannot reach the sink in the residual network: the
    /// inclusion-maximal source side of a minimum cut.
    pub max_source_side: Vec<bool>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            head: Vec::new(),
            residual: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds the arc `from -> to` (plus its zero-capacity reverse).
    pub fn add_arc(&mut self, from: usize, to: usize, cap: Rational) {
        debug_assert!(!cap.is_negative());
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.residual.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.residual.push(Rational::zero());
    }

    /// Adds an undirected edge as a pair of opposite arcs sharing nothing.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: Rational) {
        self.add_arc(a, b, cap.clone());
        self.add_arc(b, a, cap);
    }

    pub fn max_flow(mut self, s: usize, t: usize) -> MaxFlow {
        assert_ne!(s, t, "source and sink must differ");
        let n = self.node_count();
        let mut value = Rational::zero();
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &a in &self.adj[v] {
                    let w = self.head[a];
                    if !seen[w] && self.residual[a].is_positive() {
                        seen[w] = true;
                        pred[w] = Some(a);
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while let Some(a) = pred[v] {
                bottleneck = Some(match bottleneck {
                    Some(b) if b <= self.residual[a] => b,
                    _ => self.residual[a].clone(),
                });
                v = self.head[a ^ 1];
            }
            let push = bottleneck.expect("augmenting path has an arc");
            let mut v = t;
            while let Some(a) = pred[v] {
                self.residual[a] -= &push;
                self.residual[a ^ 1] += &push;
                v = self.head[a ^ 1];
            }
            value += push;
        }
        let min_source_side = self.reach(s, false);
        let to_sink = self.reach(t, true);
        MaxFlow {
            value,
            min_source_side,
            max_source_side: to_sink.into_iter().map(|r| !r).collect(),
        }
    }

    // Forward reachability from `root`, or (reverse) the set that can reach `root`.
    fn reach(&self, root: usize, reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let w = self.head[a];
                let arc = if reverse { a ^ 1 } else { a };
                if !seen[w] && self.residual[arc].is_positive() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Maximum `s`-`t` flow in an undirected graph under the given capacities.
/// Returns the flow value and the canonical (residual-reachable) source side.
pub fn max_flow_min_cut(
    g: &Graph,
    caps: &[Rational],
    s: VertexId,
    t: VertexId,
) -> (Rational, Vec<VertexId>) {
    let mut net = FlowNetwork::new(g.n());
    for (e, c) in g.edges().iter().zip(caps) {
        net.add_edge(e.u, e.v, c.clone());
    }
    let flow = net.max_flow(s, t);
    let side = (0..g.n()).filter(|&v| flow.min_source_side[v]).collect();
    (flow.value, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::VertexPartition;
    use crate::oracle::{enum_partitions, OracleLimits};
    use crate::rational::{int, ratio};

    // Brute force: cheapest 2-partition separating s from t.
    fn brute_st(g: &Graph, s: usize, t: usize) -> Rational {
        enum_partitions(g.n(), &OracleLimits::default())
            .unwrap()
            .filter(|p| p.part_count() == 2)
            .filter(|p| {
                let l = p.labels();
                l[s] != l[t]
            })
            .map(|p| p.crossing_value(g))
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        let e1 = fixtures::e1();
        assert_eq!(max_flow_min_cut(&e1, &e1.caps(), 0, 1).0, int(5));
        let tt = fixtures::tt();
        let (v, side) = max_flow_min_cut(&tt, &tt.caps(), 0, 5);
        assert_eq!(v, int(1));
        assert_eq!(side, vec![0, 1, 2]);
        let k4 = fixtures::k4();
        assert_eq!(max_flow_min_cut(&k4, &k4.caps(), 0, 1).0, int(3));
        assert_eq!(brute_st(&k4, 0, 1), int(3));
    }

    #[test]
    fn rational_capacities_match_brute_force() {
        let g = Graph::new(
            5,
            vec![
                (0, 1, ratio(1, 3)),
                (1, 2, ratio(5, 7)),
                (0, 2, ratio(1, 2)),
                (2, 3, ratio(3, 2)),
                (3, 4, ratio(2, 9)),
                (1, 4, int(1)),
            ],
        )
        .unwrap();
        for s in 0..5 {
            for t in 0..5 {
                if s != t {
                    let (v, side) = max_flow_min_cut(&g, &g.caps(), s, t);
                    assert_eq!(v, brute_st(&g, s, t));
                    let mut labels = vec![1; 5];
                    for &x in &side {
                        labels[x] = 0;
                    }
                    assert_eq!(VertexPartition::from_labels(&labels).crossing_value(&g), v);
                }
            }
        }
    }

    #[test]
    fn minimal_and_maximal_source_sides() {
        // path s - a - t with equal capacities: both cuts are minimum
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, int(1));
        net.add_edge(1, 2, int(1));
        let f = net.max_flow(0, 2);
        assert_eq!(f.value, int(1));
        assert_eq!(f.min_source_side, vec![true, false, false]);
        assert_eq!(f.max_source_side, vec![true, true, false]);
    }
}
