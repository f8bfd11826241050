//! A Datalog engine whose join core is derived from a generic
//! constraint-propagation solver.
//!
//! The layers, bottom up:
//!
//! - [`value`], [`domain`], [`iter`]: constants, sorted domains and the
//!   linear-iterator protocol (`key`/`next`/`seek`).
//! - [`cp`]: propagators, incremental propagation, depth-first search, and
//!   the lower-bound equality propagator.
//! - [`lftj`]: the loop-form indomain-min solver and Leapfrog Triejoin.
//! - [`trie`], [`catalog`]: relations stored as sorted tries.
//! - [`join`]: multiway joins as nested leapfrogs, one per equality class.
//! - [`datalog`]: parsing, CSV facts, semi-naive evaluation.
//! - [`oracle`]: brute-force reference semantics.
//! - [`cli`]: the `run` command behind the `cpjoin` binary.

pub mod catalog;
pub mod cli;
pub mod cp;
pub mod datalog;
pub mod domain;
pub mod error;
pub mod iter;
pub mod join;
pub mod lftj;
pub mod oracle;
pub mod trie;
pub mod value;

pub use catalog::{Catalog, Relation};
pub use domain::{Binding, Domain, DomainStore, VarId};
pub use error::{Error, Result};
pub use iter::LinearIterator;
pub use value::{SymbolTable, Value};
