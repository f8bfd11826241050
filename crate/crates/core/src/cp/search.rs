//! Propagate-and-branch search over a [`PropagatorSet`].

use std::borrow::Borrow;
use std::fmt;

use crate::domain::{DomainStore, VarId};
use crate::value::Value;

use super::isolv::isolv;
use super::propagator::{PropagatorId, PropagatorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoiceKind {
    /// `var = pivot`
    AssignLowerBound,
    /// `var > pivot`
    ExcludeLowerBound,
}

/// A branching constraint added by the search strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceConstraint {
    pub var: VarId,
    pub kind: ChoiceKind,
    pub pivot: Value,
}

impl ChoiceConstraint {
    /// Imposes the constraint by shrinking the variable's domain directly.
    pub fn apply(&self, store: &mut DomainStore) {
        let dom = store.get_mut(self.var);
        match self.kind {
            ChoiceKind::AssignLowerBound => dom.assign(&self.pivot),
            ChoiceKind::ExcludeLowerBound => {
                dom.raise_lower_bound(&self.pivot);
                if dom.try_lower_bound() == Some(&self.pivot) {
                    dom.remove_lower_bound();
                }
            }
        }
    }
}

impl fmt::Display for ChoiceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            ChoiceKind::AssignLowerBound => "=",
            ChoiceKind::ExcludeLowerBound => ">",
        };
        write!(f, "{} {op} {}", self.var, self.pivot)
    }
}

/// Indomain-min split on `x`: `(x = lb, x > lb)`. Panics if `D(x)` is empty.
pub fn split_indomain_min(store: &DomainStore, x: VarId) -> (ChoiceConstraint, ChoiceConstraint) {
    let lb = store.get(x).lower_bound().clone();
    (
        ChoiceConstraint {
            var: x,
            kind: ChoiceKind::AssignLowerBound,
            pivot: lb.clone(),
        },
        ChoiceConstraint {
            var: x,
            kind: ChoiceKind::ExcludeLowerBound,
            pivot: lb,
        },
    )
}

/// The lowest variable whose domain still holds more than one value.
pub fn select_unfixed(store: &DomainStore) -> Option<VarId> {
    store.vars().find(|&x| store.get(x).len() > 1)
}

struct Frame {
    old: Vec<PropagatorId>,
    new: Vec<PropagatorId>,
    store: DomainStore,
}

/// Depth-first search yielding every fully assigned store.
///
/// Each node propagates incrementally, stops on a false store, yields when
/// every domain is a singleton, and otherwise splits the lowest unfixed
/// variable with indomain-min, exploring `x = lb` before `x > lb`. The stack
/// of pending siblings replaces recursion so the search can be resumed.
pub struct GenericSearch<P> {
    props: P,
    stack: Vec<Frame>,
    nodes: usize,
}

impl<P: Borrow<PropagatorSet>> GenericSearch<P> {
    pub fn new(
        props: P,
        old: Vec<PropagatorId>,
        new: Vec<PropagatorId>,
        store: DomainStore,
    ) -> Self {
        Self {
            props,
            stack: vec![Frame { old, new, store }],
            nodes: 0,
        }
    }

    /// Number of search nodes expanded so far.
    pub fn nodes(&self) -> usize {
        self.nodes
    }
}

impl<P: Borrow<PropagatorSet>> Iterator for GenericSearch<P> {
    type Item = DomainStore;

    fn next(&mut self) -> Option<DomainStore> {
        while let Some(Frame { old, new, store }) = self.stack.pop() {
            self.nodes += 1;
            let props = self.props.borrow();
            let store = isolv(props, &old, &new, store);
            if store.is_false() {
                continue;
            }
            let Some(x) = select_unfixed(&store) else {
                return Some(store);
            };
            let mut all = old;
            all.extend(new);
            all.sort_unstable();
            all.dedup();
            // only propagators reading `x` can be disturbed by the surgery
            let woken = props.depending_on(&all, x);
            let (assign, exclude) = split_indomain_min(&store, x);
            for choice in [exclude, assign] {
                let mut child = store.clone();
                choice.apply(&mut child);
                self.stack.push(Frame {
                    old: all.clone(),
                    new: woken.clone(),
                    store: child,
                });
            }
        }
        None
    }
}

/// Top-level entry: no old propagators, all of `props` new.
pub fn search_generic<P: Borrow<PropagatorSet>>(props: P, store: DomainStore) -> GenericSearch<P> {
    let ids = props.borrow().ids();
    GenericSearch::new(props, Vec::new(), ids, store)
}
