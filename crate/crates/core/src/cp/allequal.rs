//! Lower-bound propagation for the global equality constraint.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use crate::domain::{DomainStore, VarId};
use crate::value::Value;

use super::propagator::Propagator;

/// One `raiseLowerBound` step: `var` moved from `old` to `new` (`None` when
/// its domain emptied) while chasing `l_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaiseEvent {
    pub var: VarId,
    pub old: Value,
    pub new: Option<Value>,
    pub l_max: Value,
}

impl fmt::Display for RaiseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "raise {} {} -> ", self.var, self.old)?;
        match &self.new {
            Some(v) => write!(f, "{v}")?,
            None => f.write_str("end")?,
        }
        write!(f, " (l_max {})", self.l_max)
    }
}

/// Shared, append-only log of [`RaiseEvent`]s.
#[derive(Debug, Clone, Default)]
pub struct Trace(Rc<RefCell<Vec<RaiseEvent>>>);

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, event: RaiseEvent) {
        self.0.borrow_mut().push(event);
    }

    pub fn events(&self) -> Vec<RaiseEvent> {
        self.0.borrow().clone()
    }

    pub fn len(&self) -> usize {
        self.0.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.borrow().is_empty()
    }

    pub fn clear(&self) {
        self.0.borrow_mut().clear();
    }
}

/// A circular view of the constrained variables. The lower bounds read from
/// position `start` onwards, wrapping around, form a non-decreasing series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    slots: Vec<VarId>,
    start: usize,
}

impl VarMap {
    /// Orders `vars` by increasing lower bound, ties broken by `VarId`.
    /// Every domain must be non-empty.
    pub fn sorted(store: &DomainStore, vars: &[VarId]) -> Self {
        let mut slots = vars.to_vec();
        slots.sort_by(|a, b| {
            store
                .get(*a)
                .lower_bound()
                .cmp(store.get(*b).lower_bound())
                .then(a.cmp(b))
        });
        Self { slots, start: 0 }
    }

    pub fn slots(&self) -> &[VarId] {
        &self.slots
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn at(&self, pos: usize) -> VarId {
        self.slots[pos % self.slots.len()]
    }

    pub fn is_circularly_sorted(&self, store: &DomainStore) -> bool {
        let n = self.slots.len();
        (0..n.saturating_sub(1)).all(|k| {
            let a = store.get(self.at(self.start + k)).try_lower_bound();
            let b = store.get(self.at(self.start + k + 1)).try_lower_bound();
            matches!((a, b), (Some(a), Some(b)) if a <= b)
        })
    }
}

/// Runs the equality propagator over the variables in `map`, in place.
///
/// Each pass raises the variable at position `i` to the running maximum
/// lower bound `l_max`, then adopts its new lower bound as `l_max`. Stops
/// once the variable at `i` already sits at `l_max` (all lower bounds equal)
/// or a domain empties. Returns `false` on a false store. On success `map`'s
/// start points at the position where agreement was detected.
pub fn allequal_with_map(
    store: &mut DomainStore,
    map: &mut VarMap,
    mut on_raise: impl FnMut(RaiseEvent),
) -> bool {
    let n = map.len();
    if map.slots.iter().any(|&x| store.get(x).is_empty()) {
        return false;
    }
    if n <= 1 {
        return true;
    }
    let mut l_max = store.get(map.slots[n - 1]).lower_bound().clone();
    let mut i = 0;
    loop {
        let x = map.slots[i];
        let domain = store.get_mut(x);
        if *domain.lower_bound() == l_max {
            break;
        }
        let old = domain.lower_bound().clone();
        let new = domain.raise_lower_bound(&l_max).cloned();
        on_raise(RaiseEvent {
            var: x,
            old,
            new: new.clone(),
            l_max: l_max.clone(),
        });
        match new {
            Some(v) => l_max = v,
            None => return false,
        }
        i = (i + 1) % n;
    }
    map.start = i;
    true
}

/// Sorts `vars` by lower bound and runs [`allequal_with_map`]. Returns the
/// resulting map, or `None` if the store became false.
pub fn allequal(
    store: &mut DomainStore,
    vars: &[VarId],
    on_raise: impl FnMut(RaiseEvent),
) -> Option<VarMap> {
    if vars.iter().any(|&x| store.get(x).is_empty()) {
        return None;
    }
    let mut map = VarMap::sorted(store, vars);
    allequal_with_map(store, &mut map, on_raise).then_some(map)
}

/// The equality constraint over a set of variables as a [`Propagator`].
pub struct AllEqual {
    vars: Vec<VarId>,
    idempotent: bool,
    trace: Option<Trace>,
}

impl AllEqual {
    pub fn new(vars: impl IntoIterator<Item = VarId>) -> Self {
        Self {
            vars: vars.into_iter().collect(),
            idempotent: true,
            trace: None,
        }
    }

    /// Convenience for a store where every variable is constrained equal.
    pub fn over_all(store: &DomainStore) -> Self {
        Self::new(store.vars())
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    /// Overrides the idempotence flag reported to the scheduler. Clearing it
    /// only makes scheduling more conservative.
    pub fn with_idempotent_flag(mut self, idempotent: bool) -> Self {
        self.idempotent = idempotent;
        self
    }
}

impl Propagator for AllEqual {
    fn deps(&self) -> &[VarId] {
        &self.vars
    }

    fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    fn apply(&self, store: &DomainStore) -> DomainStore {
        let mut out = store.clone();
        let trace = self.trace.as_ref();
        allequal(&mut out, &self.vars, |e| {
            if let Some(t) = trace {
                t.record(e)
            }
        });
        out
    }
}
