use std::fmt;

use crate::domain::{DomainStore, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropagatorId(pub usize);

impl fmt::Display for PropagatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// A monotone, decreasing function on domain stores.
///
/// Implementations must only remove values (`apply(D)(x) ⊆ D(x)`), must be
/// monotone, and must read and write only the variables listed in `deps`.
pub trait Propagator {
    fn deps(&self) -> &[VarId];

    /// When set, `apply(apply(D)) == apply(D)` for every `D`.
    fn is_idempotent(&self) -> bool;

    fn apply(&self, store: &DomainStore) -> DomainStore;
}

/// Owns the propagators of one problem; sets of propagators are slices of
/// ids into it.
#[derive(Default)]
pub struct PropagatorSet {
    props: Vec<Box<dyn Propagator>>,
}

impl PropagatorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: impl Propagator + 'static) -> PropagatorId {
        self.props.push(Box::new(p));
        PropagatorId(self.props.len() - 1)
    }

    pub fn get(&self, id: PropagatorId) -> &dyn Propagator {
        self.props[id.0].as_ref()
    }

    pub fn ids(&self) -> Vec<PropagatorId> {
        (0..self.props.len()).map(PropagatorId).collect()
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    /// Ids among `among` whose dependencies include `x`.
    pub fn depending_on(&self, among: &[PropagatorId], x: VarId) -> Vec<PropagatorId> {
        among
            .iter()
            .copied()
            .filter(|&id| self.get(id).deps().contains(&x))
            .collect()
    }
}
