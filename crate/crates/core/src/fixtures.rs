//! Small named graphs used throughout the tests and the CLI examples.
//!
//! Vertex ids are 0-based here; the text format is 1-based.

use crate::graph::Graph;

/// A single edge of capacity 5.
pub fn e1() -> Graph {
    Graph::from_int_edges(2, &[(0, 1, 5)])
}

/// Unit path on three vertices.
pub fn p3() -> Graph {
    Graph::from_int_edges(3, &[(0, 1, 1), (1, 2, 1)])
}

/// Unit 5-cycle; edge `i` joins `i` and `i + 1 mod 5`.
pub fn c5() -> Graph {
    Graph::from_int_edges(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)])
}

/// Unit complete graph on four vertices.
pub fn k4() -> Graph {
    Graph::from_int_edges(
        4,
        &[
            (0, 1, 1),
            (0, 2, 1),
            (0, 3, 1),
            (1, 2, 1),
            (1, 3, 1),
            (2, 3, 1),
        ],
    )
}

/// Two unit triangles `{a,b,c}`, `{d,e,f}` joined by the unit bridge `c-d`
/// (edge id 3).
pub fn tt() -> Graph {
    Graph::from_int_edges(
        6,
        &[
            (0, 1, 1),
            (1, 2, 1),
            (0, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (4, 5, 1),
            (3, 5, 1),
        ],
    )
}

pub const TT_BRIDGE: usize = 3;

/// All named fixtures with their conventional names.
pub fn named() -> Vec<(&'static str, Graph)> {
    vec![
        ("TT", tt()),
        ("C5", c5()),
        ("K4", k4()),
        ("E1", e1()),
        ("P3", p3()),
    ]
}
