//! Matroid intersection, union, and packing/covering in the
//! dynamic-rank-oracle cost model.
//!
//! Query-sets are built by single-element edits of previously created sets,
//! and the number of insert/delete/rank operations is the measured cost. The
//! crate provides the versioned oracle itself ([`oracle`]), concrete matroid
//! kinds ([`matroids`]), the exchange binary search tree ([`bst`]), blocking
//! flow matroid intersection ([`intersection`]), a decremental min-weight
//! basis structure ([`basis`]), matroid union with packing and covering
//! drivers ([`union`]), brute-force reference oracles ([`testkit`]), and the
//! graph applications behind the CLI ([`apps`]).
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --example oracle_counting
//! cargo run --example matroid_intersection
//! cargo run --example bipartite_matching
//! cargo run --example disjoint_spanning_trees
//! cargo run --example arboricity
//! cargo run --example colorful_spanning_tree
//! cargo run --example forest_deadlines
//! cargo run --example decremental_basis
//! cargo run --example gammoid_adversary
//! ```
//!
//! The `matroidal` binary is a thin front end over [`apps`]; see the README
//! for file formats and subcommands.

pub mod apps;
pub mod basis;
pub mod bench;
pub mod bst;
pub mod elem;
pub mod error;
pub mod intersection;
pub mod io;
pub mod matroids;
pub mod oracle;
pub mod testkit;
pub mod union;

pub use elem::{DenseSet, Element};
pub use error::{Error, Result};
pub use matroids::MatroidInstance;
pub use oracle::{DynOracle, OracleStats, VersionId, ROOT};
