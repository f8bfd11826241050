//! Incremental fixpoint computation over a worklist of propagators.

use std::collections::VecDeque;

use crate::domain::DomainStore;

use super::propagator::{PropagatorId, PropagatorSet};

/// Propagators from `candidates` that may no longer be at fixpoint after `f`
/// turned `before` into `after`: those sharing a variable with the change.
/// `f` itself is dropped when it is idempotent.
pub fn new_propagators(
    props: &PropagatorSet,
    f: PropagatorId,
    candidates: &[PropagatorId],
    before: &DomainStore,
    after: &DomainStore,
) -> Vec<PropagatorId> {
    let changed = before.changed_vars(after);
    let skip_self = props.get(f).is_idempotent();
    candidates
        .iter()
        .copied()
        .filter(|&g| !(skip_self && g == f))
        .filter(|&g| props.get(g).deps().iter().any(|x| changed.contains(x)))
        .collect()
}

/// Propagates until `store` is a fixpoint of every propagator in
/// `old ∪ new`, or false.
///
/// `store` must already be a fixpoint of each propagator in `old`; only
/// `new` seeds the FIFO worklist. Propagators scheduled by
/// [`new_propagators`] are appended unless already queued.
pub fn isolv(
    props: &PropagatorSet,
    old: &[PropagatorId],
    new: &[PropagatorId],
    mut store: DomainStore,
) -> DomainStore {
    let mut all: Vec<PropagatorId> = old.iter().chain(new).copied().collect();
    all.sort_unstable();
    all.dedup();

    let mut queued = vec![false; props.len()];
    let mut queue = VecDeque::new();
    for &f in new {
        if !queued[f.0] {
            queued[f.0] = true;
            queue.push_back(f);
        }
    }

    while let Some(f) = queue.pop_front() {
        queued[f.0] = false;
        let next = props.get(f).apply(&store);
        if next != store {
            if next.is_false() {
                return next;
            }
            for g in new_propagators(props, f, &all, &store, &next) {
                if !queued[g.0] {
                    queued[g.0] = true;
                    queue.push_back(g);
                }
            }
        }
        store = next;
    }
    store
}
