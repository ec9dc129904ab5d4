//! Matching sequencibility of complete multipartite hypergraphs.
//!
//! For an ordering of the edges of a hypergraph, `ms_r` is the largest `s` such
//! that every `s` consecutive edges form a sub-hypergraph of maximum degree at
//! most `r`; `cms_r` is the same with windows wrapping around. This crate
//! evaluates both for λK_{n1,…,nk} in closed form ([`theorem`]), builds and
//! certifies orderings that attain them, and computes exact values for small
//! arbitrary hypergraphs by exhaustive search ([`oracle`]).

pub mod decompositions;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod index_maps;
pub mod mixed_radix;
pub mod oracle;
pub mod ordering;
pub mod theorem;

pub use error::{Error, Result};
pub use hypergraph::{build_complete_multipartite, Edge, Hypergraph, PartiteSpec, Vertex};
pub use oracle::{exact_ms, exists_ordering, Decision, OracleReport, SearchBudget};
pub use ordering::{eval_ms, EdgeOrdering};
pub use theorem::{construct, value, Branch, CertifiedOrdering, TheoremInput};
