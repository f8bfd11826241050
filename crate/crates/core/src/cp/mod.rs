//! A small finite-domain constraint solver: propagators, incremental
//! propagation to a fixpoint, and depth-first search with indomain-min
//! branching. Its only shipped constraint is [`AllEqual`].

mod allequal;
mod isolv;
mod propagator;
mod search;

pub use allequal::{allequal, allequal_with_map, AllEqual, RaiseEvent, Trace, VarMap};
pub use isolv::{isolv, new_propagators};
pub use propagator::{Propagator, PropagatorId, PropagatorSet};
pub use search::{
    search_generic, select_unfixed, split_indomain_min, ChoiceConstraint, ChoiceKind,
    GenericSearch,
};

use crate::domain::{Domain, DomainStore, VarId};
use crate::value::Value;

/// Common values of `domains`, in increasing order, found by the generic
/// solver with a single equality propagator over all of them.
pub fn generic_intersection(
    domains: Vec<Domain>,
    trace: Option<Trace>,
) -> impl Iterator<Item = Value> {
    let store = DomainStore::new(domains);
    let mut props = PropagatorSet::new();
    let mut eq = AllEqual::over_all(&store);
    if let Some(t) = trace {
        eq = eq.with_trace(t);
    }
    props.add(eq);
    let empty = store.num_vars() == 0;
    search_generic(props, store)
        .filter(move |_| !empty)
        .map(|s| s.get(VarId(0)).lower_bound().clone())
}
