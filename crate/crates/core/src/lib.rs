pub mod cutsolve;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod lp;
pub mod mincut;
pub mod oracle;
pub mod rational;
pub mod simplex;
pub mod strength;
pub mod treepack;
pub mod verify;
