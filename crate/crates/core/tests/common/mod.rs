#![allow(dead_code)]

use kcut_core::graph::{Graph, VertexPartition};
use kcut_core::rational::{int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every set partition of `0..n` as a label vector (restricted growth
/// strings), written independently of the library enumerator.
pub fn all_labelings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            cur[i] = l;
            go(i + 1, max.max(l), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    go(1, 0, &mut cur, &mut out);
    out
}

pub fn part_count(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |m| m + 1)
}

/// Capacity of edges whose ends carry different labels.
pub fn crossing(g: &Graph, labels: &[usize]) -> Rational {
    g.edges()
        .iter()
        .filter(|e| labels[e.u] != labels[e.v])
        .map(|e| e.cap.clone())
        .sum()
}

/// Brute-force `min_P c(E(P)) - b(|P| - 1)`.
pub fn brute_attack(g: &Graph, b: &Rational) -> (Rational, Vec<VertexPartition>) {
    let mut best: Option<Rational> = None;
    let mut argmins = Vec::new();
    for l in all_labelings(g.n()) {
        let v = crossing(g, &l) - b * int(part_count(&l) as i64 - 1);
        match &best {
            Some(x) if v > *x => {}
            Some(x) if v == *x => argmins.push(VertexPartition::from_labels(&l)),
            _ => {
                best = Some(v);
                argmins = vec![VertexPartition::from_labels(&l)];
            }
        }
    }
    (best.unwrap(), argmins)
}

/// Brute-force minimum k-cut value and all optimal partitions (sorted).
pub fn brute_kcut(g: &Graph, k: usize) -> (Rational, Vec<VertexPartition>) {
    let mut best: Option<Rational> = None;
    let mut argmins = Vec::new();
    for l in all_labelings(g.n()) {
        if part_count(&l) < k {
            continue;
        }
        let v = crossing(g, &l);
        match &best {
            Some(x) if v > *x => {}
            Some(x) if v == *x => argmins.push(VertexPartition::from_labels(&l)),
            _ => {
                best = Some(v);
                argmins = vec![VertexPartition::from_labels(&l)];
            }
        }
    }
    argmins.sort();
    (best.unwrap(), argmins)
}

/// Brute-force strength: `min c(E(P)) / (|P| - 1)` over partitions with at
/// least two parts.
pub fn brute_strength(g: &Graph) -> Rational {
    all_labelings(g.n())
        .into_iter()
        .filter(|l| part_count(l) >= 2)
        .map(|l| crossing(g, &l) / int(part_count(&l) as i64 - 1))
        .min()
        .unwrap()
}

/// Random connected graph: a random spanning tree plus extra edges, integer
/// capacities in `1..=max_cap`. Parallel edges may appear.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize, max_cap: i64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, rng.gen_range(1..=max_cap)));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u, v, rng.gen_range(1..=max_cap)));
    }
    Graph::from_int_edges(n, &edges)
}

/// The named fixtures followed by 50 seeded random connected graphs with
/// `n <= 7` and capacities `<= 9`.
pub fn suite() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = kcut_core::fixtures::named()
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b63_7574);
    for i in 0..50 {
        let n = rng.gen_range(3..=7);
        let extra = rng.gen_range(0..=n + 2);
        out.push((
            format!("random-{i:02}"),
            random_connected(&mut rng, n, extra, 9),
        ));
    }
    out
}
