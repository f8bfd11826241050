//! The two specializations of the generic solver for a single equality
//! class: the loop form of indomain-min search, and Leapfrog Triejoin, which
//! fuses that loop with the equality propagator and never re-sorts.

use crate::cp::{allequal, RaiseEvent, Trace};
use crate::domain::{Binding, DomainStore, VarId};
use crate::iter::LinearIterator;
use crate::value::Value;

/// Removes the lower bound of `D(x)`, leaving every other domain untouched.
/// Panics if `D(x)` is empty.
pub fn inc_domain(store: &mut DomainStore, x: VarId) {
    store.get_mut(x).remove_lower_bound();
}

/// Indomain-min search with every variable constrained equal, as a loop:
/// propagate, yield the common lower bound, drop it from the first variable,
/// repeat. Holds only the current store, no choice points.
pub struct TailrecSearch {
    store: DomainStore,
    vars: Vec<VarId>,
    trace: Option<Trace>,
    done: bool,
}

impl TailrecSearch {
    pub fn new(store: DomainStore) -> Self {
        let vars = store.vars().collect();
        Self {
            store,
            vars,
            trace: None,
            done: false,
        }
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn store(&self) -> &DomainStore {
        &self.store
    }
}

impl Iterator for TailrecSearch {
    type Item = Binding;

    fn next(&mut self) -> Option<Binding> {
        if self.done {
            return None;
        }
        if self.vars.is_empty() {
            self.done = true;
            return Some(Vec::new());
        }
        let trace = self.trace.as_ref();
        let propagated = allequal(&mut self.store, &self.vars, |e| {
            if let Some(t) = trace {
                t.record(e)
            }
        });
        if propagated.is_none() {
            self.done = true;
            return None;
        }
        let binding = self.store.lower_bounds();
        inc_domain(&mut self.store, self.vars[0]);
        Some(binding)
    }
}

pub fn search_tailrec(store: DomainStore) -> TailrecSearch {
    TailrecSearch::new(store)
}

/// Indexed access to a collection of iterators, so one leapfrog can run over
/// a subset of a larger pool (the trie iterators of a multiway join).
pub trait IterPool {
    type Iter: LinearIterator + ?Sized;

    fn iter_at(&self, slot: usize) -> &Self::Iter;
    fn iter_at_mut(&mut self, slot: usize) -> &mut Self::Iter;
}

impl<I: LinearIterator> IterPool for [I] {
    type Iter = I;

    fn iter_at(&self, slot: usize) -> &I {
        &self[slot]
    }
    fn iter_at_mut(&mut self, slot: usize) -> &mut I {
        &mut self[slot]
    }
}

impl<I: LinearIterator> IterPool for Vec<I> {
    type Iter = I;

    fn iter_at(&self, slot: usize) -> &I {
        &self[slot]
    }
    fn iter_at_mut(&mut self, slot: usize) -> &mut I {
        &mut self[slot]
    }
}

/// Bookkeeping for one leapfrog over the iterators in `order`.
///
/// Keys read circularly from `p_min` are non-decreasing, and `l_max` is the
/// key at `p_min - 1`. Sorting happens once in [`LeapfrogState::init`];
/// afterwards the order is maintained by advancing `p_min` past each seeked
/// iterator and by stepping the iterator at `p_min - 1` after a match.
#[derive(Debug, Clone)]
pub struct LeapfrogState {
    order: Vec<usize>,
    p_min: usize,
    l_max: Option<Value>,
    exhausted: bool,
    seeks: usize,
}

impl LeapfrogState {
    /// Sorts `slots` by current key (ties by slot) and records the maximum.
    pub fn init<P: IterPool + ?Sized>(pool: &P, mut slots: Vec<usize>) -> Self {
        let exhausted = slots.is_empty() || slots.iter().any(|&s| pool.iter_at(s).at_end());
        let mut l_max = None;
        if !exhausted {
            slots.sort_by(|&a, &b| {
                pool.iter_at(a)
                    .key()
                    .cmp(&pool.iter_at(b).key())
                    .then(a.cmp(&b))
            });
            l_max = pool.iter_at(*slots.last().unwrap()).key().cloned();
        }
        Self {
            order: slots,
            p_min: 0,
            l_max,
            exhausted,
            seeks: 0,
        }
    }

    /// Slot order after the initial sort.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn p_min(&self) -> usize {
        self.p_min
    }

    pub fn l_max(&self) -> Option<&Value> {
        self.l_max.as_ref()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Number of `seek` calls issued so far.
    pub fn seeks(&self) -> usize {
        self.seeks
    }

    fn is_circularly_sorted<P: IterPool + ?Sized>(&self, pool: &P) -> bool {
        let n = self.order.len();
        (0..n.saturating_sub(1)).all(|k| {
            let a = pool.iter_at(self.order[(self.p_min + k) % n]).key();
            let b = pool.iter_at(self.order[(self.p_min + k + 1) % n]).key();
            a <= b
        })
    }

    /// Leapfrogs until every iterator sits on the same key, returning it, or
    /// until one runs off the end.
    pub fn search<P: IterPool + ?Sized>(
        &mut self,
        pool: &mut P,
        mut on_raise: impl FnMut(RaiseEvent),
    ) -> Option<Value> {
        if self.exhausted {
            return None;
        }
        let n = self.order.len();
        loop {
            debug_assert!(self.is_circularly_sorted(pool));
            let l_max = self.l_max.take().expect("l_max set while not exhausted");
            let slot = self.order[self.p_min];
            let it = pool.iter_at_mut(slot);
            let l_min = it.key().expect("iterator at end while not exhausted").clone();
            if l_min == l_max {
                self.l_max = Some(l_max.clone());
                return Some(l_max);
            }
            it.seek(&l_max);
            self.seeks += 1;
            let new = it.key().cloned();
            on_raise(RaiseEvent {
                var: VarId(slot),
                old: l_min,
                new: new.clone(),
                l_max,
            });
            match new {
                Some(k) => self.l_max = Some(k),
                None => {
                    self.exhausted = true;
                    return None;
                }
            }
            self.p_min = (self.p_min + 1) % n;
        }
    }

    /// Steps past the current match by advancing the iterator at
    /// `p_min - 1`, which then holds the new maximum key.
    pub fn advance<P: IterPool + ?Sized>(&mut self, pool: &mut P) {
        if self.exhausted {
            return;
        }
        let n = self.order.len();
        let slot = self.order[(self.p_min + n - 1) % n];
        let it = pool.iter_at_mut(slot);
        it.next();
        match it.key() {
            Some(k) => self.l_max = Some(k.clone()),
            None => self.exhausted = true,
        }
    }
}

/// Leapfrog Triejoin over one level: yields, in increasing order, the keys
/// present in every input iterator. Zero inputs yield nothing.
pub struct LeapfrogJoin<I> {
    iters: Vec<I>,
    state: LeapfrogState,
    matched: bool,
    trace: Option<Trace>,
}

impl<I: LinearIterator> LeapfrogJoin<I> {
    pub fn new(iters: Vec<I>) -> Self {
        let state = LeapfrogState::init(&iters, (0..iters.len()).collect());
        Self {
            iters,
            state,
            matched: false,
            trace: None,
        }
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn state(&self) -> &LeapfrogState {
        &self.state
    }

    pub fn iters(&self) -> &[I] {
        &self.iters
    }

    pub fn into_iters(self) -> Vec<I> {
        self.iters
    }
}

impl<I: LinearIterator> Iterator for LeapfrogJoin<I> {
    type Item = Value;

    fn next(&mut self) -> Option<Value> {
        if self.matched {
            self.state.advance(&mut self.iters);
        }
        let trace = self.trace.as_ref();
        let found = self.state.search(&mut self.iters, |e| {
            if let Some(t) = trace {
                t.record(e)
            }
        });
        self.matched = found.is_some();
        found
    }
}

pub fn leapfrog_join<I: LinearIterator>(iters: Vec<I>) -> LeapfrogJoin<I> {
    LeapfrogJoin::new(iters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::iter::Instrumented;
    use proptest::prelude::*;

    fn d(v: &[i64]) -> Domain {
        Domain::from_ints(v.iter().copied())
    }

    fn xyz() -> Vec<Domain> {
        vec![
            d(&[1, 2, 3, 4, 9, 10, 11]),
            d(&[3, 4, 7, 10]),
            d(&[1, 4, 7, 10, 11]),
        ]
    }

    fn ints(vals: impl Iterator<Item = Value>) -> Vec<i64> {
        vals.map(|v| v.as_int().unwrap()).collect()
    }

    #[test]
    fn inc_domain_frame_condition() {
        let mut store = DomainStore::new(vec![d(&[4, 9, 10, 11]), d(&[4, 7, 10])]);
        inc_domain(&mut store, VarId(0));
        assert_eq!(store.get(VarId(0)), &d(&[9, 10, 11]));
        assert_eq!(store.get(VarId(1)), &d(&[4, 7, 10]));

        let mut single = DomainStore::new(vec![d(&[5])]);
        inc_domain(&mut single, VarId(0));
        assert!(single.is_false());
    }

    #[test]
    fn tailrec_worked_example() {
        let sols: Vec<Binding> = search_tailrec(DomainStore::new(xyz())).collect();
        assert_eq!(sols.len(), 2);
        for (b, v) in sols.iter().zip([4, 10]) {
            assert!(b.iter().all(|x| *x == Value::Int(v)));
        }
    }

    #[test]
    fn tailrec_state_after_first_solution() {
        let mut s = search_tailrec(DomainStore::new(xyz()));
        s.next().unwrap();
        // X's lower bound 4 was consumed; Y and Z keep theirs
        assert_eq!(s.store().get(VarId(0)), &d(&[9, 10, 11]));
        assert_eq!(s.store().get(VarId(1)), &d(&[4, 7, 10]));
        assert_eq!(s.store().get(VarId(2)), &d(&[4, 7, 10, 11]));
    }

    #[test]
    fn tailrec_single_variable_and_disjoint() {
        let one: Vec<_> = search_tailrec(DomainStore::new(vec![d(&[1, 2])])).collect();
        assert_eq!(one, vec![vec![Value::Int(1)], vec![Value::Int(2)]]);

        let k = 40;
        let trace = Trace::new();
        let disjoint = DomainStore::new(vec![Domain::from_ints(1..=k), Domain::from_ints(k + 1..=2 * k)]);
        assert_eq!(search_tailrec(disjoint).with_trace(trace.clone()).count(), 0);
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn tailrec_zero_vars_yields_empty_binding() {
        let sols: Vec<_> = search_tailrec(DomainStore::new(vec![])).collect();
        assert_eq!(sols, vec![Vec::<Value>::new()]);
    }

    #[test]
    fn leapfrog_worked_example() {
        let join = leapfrog_join(xyz());
        assert_eq!(join.state().order(), &[0, 2, 1]);
        assert_eq!(ints(join), vec![4, 10]);
    }

    #[test]
    fn leapfrog_identity_and_empty() {
        let syms = Domain::new(["a", "b", "c"].map(Value::sym));
        let out: Vec<_> = leapfrog_join(vec![syms.clone()]).collect();
        assert_eq!(out, syms.as_slice());
        assert_eq!(leapfrog_join(Vec::<Domain>::new()).count(), 0);
        assert_eq!(leapfrog_join(vec![d(&[1, 2]), Domain::empty()]).count(), 0);
    }

    #[test]
    fn leapfrog_trace_counts_seeks() {
        let trace = Trace::new();
        let join = leapfrog_join(xyz()).with_trace(trace.clone());
        assert_eq!(ints(join), vec![4, 10]);
        let events = trace.events();
        assert!(!events.is_empty());
        assert!(events.iter().all(|e| e.new.as_ref().is_none_or(|n| *n >= e.l_max)));
    }

    #[test]
    fn galloping_witness() {
        for k in [100i64, 10_000] {
            let iters = vec![
                Instrumented::new(Domain::from_ints(1..=k)),
                Instrumented::new(Domain::from_ints(k + 1..=2 * k)),
            ];
            let mut join = leapfrog_join(iters);
            assert_eq!(join.next(), None);
            let ops: usize = join.iters().iter().map(|i| i.counts().total()).sum();
            assert!(ops <= 2, "k={k}: {ops} ops");
        }
    }

    fn sorted_intersection(sets: &[Vec<i64>]) -> Vec<i64> {
        let mut out: Vec<i64> = sets[0]
            .iter()
            .copied()
            .filter(|v| sets.iter().all(|s| s.contains(v)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn engines_agree_with_intersection(
            sets in proptest::collection::vec(proptest::collection::vec(0i64..30, 0..20), 1..5)
        ) {
            let domains: Vec<Domain> = sets.iter().map(|s| Domain::from_ints(s.iter().copied())).collect();
            let expected = sorted_intersection(&sets);

            let iters: Vec<_> = domains.iter().cloned().map(Instrumented::new).collect();
            let leap = ints(leapfrog_join(iters));
            prop_assert_eq!(&leap, &expected);

            let tail: Vec<i64> = search_tailrec(DomainStore::new(domains.clone()))
                .map(|b| b[0].as_int().unwrap())
                .collect();
            prop_assert_eq!(&tail, &expected);

            let generic = ints(crate::cp::generic_intersection(domains, None));
            prop_assert_eq!(&generic, &expected);
        }
    }
}
