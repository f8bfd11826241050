//! Multiway joins over n-ary relations, run as one leapfrog per equality
//! class, nested in class order.

mod exec;
mod plan;

pub use exec::{execute, Engine, Execution};
pub use plan::{AtomPlan, ClassKind, EqClass, JoinPlan, Occurrence, Participant};

use crate::catalog::Catalog;
use crate::datalog::Atom;
use crate::error::Result;

/// Plans `body` against `catalog`.
pub fn plan(body: &[Atom], catalog: &Catalog) -> Result<JoinPlan> {
    JoinPlan::new(body, catalog)
}
