//! Variables, sorted domains and the domain store.

use std::fmt;
use std::sync::Arc;

use crate::iter::{gallop, LinearIterator};
use crate::value::Value;

/// Dense variable index, `0..n` for an `n`-variable problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A total assignment of variables to values, indexed by [`VarId`].
pub type Binding = Vec<Value>;

/// A strictly increasing set of admissible values.
///
/// The backing array is shared and never mutated; the domain is a window
/// `start..end` into it. Cloning yields an independent snapshot in O(1), and
/// shrinking from below only moves `start`, so a `Domain` doubles as a
/// destructive [`LinearIterator`] whose key is the lower bound.
#[derive(Clone)]
pub struct Domain {
    values: Arc<[Value]>,
    start: usize,
    end: usize,
}

impl Domain {
    /// Builds a domain from arbitrary values, sorting and removing duplicates.
    pub fn new(values: impl IntoIterator<Item = Value>) -> Self {
        let mut values: Vec<Value> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        Self::from_sorted_unchecked(values.into())
    }

    pub fn empty() -> Self {
        Self::from_sorted_unchecked(Arc::from(Vec::new()))
    }

    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(values.into_iter().map(Value::Int))
    }

    /// Wraps an already strictly increasing array.
    pub fn from_sorted_unchecked(values: Arc<[Value]>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        let end = values.len();
        Self {
            values,
            start: 0,
            end,
        }
    }

    /// A window over `values[start..end]`, which must be strictly increasing.
    pub(crate) fn window(values: Arc<[Value]>, start: usize, end: usize) -> Self {
        debug_assert!(start <= end && end <= values.len());
        Self { values, start, end }
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.values[self.start..self.end]
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.as_slice().binary_search(v).is_ok()
    }

    pub fn try_lower_bound(&self) -> Option<&Value> {
        self.as_slice().first()
    }

    /// The minimum element.
    ///
    /// Panics on an empty domain; callers check for a false store first.
    pub fn lower_bound(&self) -> &Value {
        self.try_lower_bound()
            .expect("lower bound of an empty domain")
    }

    /// Drops every element below `t`. Returns the new lower bound, or `None`
    /// if the domain became empty.
    pub fn raise_lower_bound(&mut self, t: &Value) -> Option<&Value> {
        self.start = gallop(&self.values[..self.end], self.start, t);
        self.try_lower_bound()
    }

    /// Drops the minimum element. Panics on an empty domain.
    pub fn remove_lower_bound(&mut self) {
        assert!(!self.is_empty(), "remove_lower_bound on an empty domain");
        self.start += 1;
    }

    /// Restricts the domain to the single value `v` (empty if `v` is absent).
    pub fn assign(&mut self, v: &Value) {
        self.start = gallop(&self.values[..self.end], self.start, v);
        if self.try_lower_bound() == Some(v) {
            self.end = self.start + 1;
        } else {
            self.start = self.end;
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Value> {
        self.as_slice().iter()
    }
}

impl LinearIterator for Domain {
    fn key(&self) -> Option<&Value> {
        self.try_lower_bound()
    }

    fn next(&mut self) {
        if !self.is_empty() {
            self.start += 1;
        }
    }

    fn seek(&mut self, target: &Value) {
        self.raise_lower_bound(target);
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for Domain {}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.as_slice()).finish()
    }
}

impl FromIterator<Value> for Domain {
    fn from_iter<T: IntoIterator<Item = Value>>(iter: T) -> Self {
        Domain::new(iter)
    }
}

/// One domain per variable.
#[derive(Clone, PartialEq, Eq)]
pub struct DomainStore {
    domains: Vec<Domain>,
}

impl DomainStore {
    pub fn new(domains: Vec<Domain>) -> Self {
        Self { domains }
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.domains.len()).map(VarId)
    }

    pub fn get(&self, x: VarId) -> &Domain {
        &self.domains[x.0]
    }

    pub fn get_mut(&mut self, x: VarId) -> &mut Domain {
        &mut self.domains[x.0]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    /// True iff some domain is empty.
    pub fn is_false(&self) -> bool {
        self.domains.iter().any(Domain::is_empty)
    }

    /// True iff every domain is non-empty and all lower bounds coincide.
    pub fn is_solved(&self) -> bool {
        let mut lbs = self.domains.iter().map(Domain::try_lower_bound);
        match lbs.next() {
            None => true,
            Some(None) => false,
            Some(Some(first)) => lbs.all(|lb| lb == Some(first)),
        }
    }

    /// True iff every domain holds exactly one value.
    pub fn is_assigned(&self) -> bool {
        self.domains.iter().all(|d| d.len() == 1)
    }

    /// The lower bound of every variable. Panics on a false store.
    pub fn lower_bounds(&self) -> Binding {
        self.domains.iter().map(|d| d.lower_bound().clone()).collect()
    }

    /// Variables whose domains differ between `self` and `other`.
    pub fn changed_vars(&self, other: &DomainStore) -> Vec<VarId> {
        self.vars()
            .filter(|&x| self.get(x) != other.get(x))
            .collect()
    }

    /// Pointwise subset test.
    pub fn is_subset_of(&self, other: &DomainStore) -> bool {
        self.domains.len() == other.domains.len()
            && self
                .domains
                .iter()
                .zip(&other.domains)
                .all(|(a, b)| a.iter().all(|v| b.contains(v)))
    }
}

impl fmt::Debug for DomainStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.domains.iter().enumerate().map(|(i, d)| (VarId(i), d)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(v: &[i64]) -> Domain {
        Domain::from_ints(v.iter().copied())
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(d(&[3, 4, 7, 10]).lower_bound(), &Value::Int(3));
        assert_eq!(d(&[5]).lower_bound(), &Value::Int(5));
        assert_eq!(d(&[1, 4, 7, 10, 11]).lower_bound(), &Value::Int(1));
    }

    #[test]
    #[should_panic]
    fn lower_bound_of_empty_panics() {
        Domain::empty().lower_bound();
    }

    #[test]
    fn raise_lower_bound_examples() {
        let mut x = d(&[1, 2, 3, 4, 9, 10, 11]);
        assert_eq!(x.raise_lower_bound(&Value::Int(3)), Some(&Value::Int(3)));
        assert_eq!(x, d(&[3, 4, 9, 10, 11]));

        let mut z = d(&[1, 4, 7, 10, 11]);
        z.raise_lower_bound(&Value::Int(4));
        assert_eq!(z, d(&[4, 7, 10, 11]));

        let mut e = d(&[1, 3]);
        assert_eq!(e.raise_lower_bound(&Value::Int(5)), None);
        assert!(e.is_empty());
    }

    #[test]
    fn remove_lower_bound_examples() {
        let mut x = d(&[4, 9, 10, 11]);
        x.remove_lower_bound();
        assert_eq!(x, d(&[9, 10, 11]));

        let mut s = d(&[5]);
        s.remove_lower_bound();
        assert!(s.is_empty());

        let mut y = d(&[4, 7, 10]);
        y.remove_lower_bound();
        assert_eq!(y, d(&[7, 10]));
    }

    #[test]
    #[should_panic]
    fn remove_lower_bound_of_empty_panics() {
        Domain::empty().remove_lower_bound();
    }

    #[test]
    fn seek_examples() {
        let mut it = d(&[1, 4, 7, 10, 11]);
        it.seek(&Value::Int(4));
        assert_eq!(it.key(), Some(&Value::Int(4)));
        it.seek(&Value::Int(4));
        assert_eq!(it.key(), Some(&Value::Int(4)));

        let k = 50;
        let mut run = Domain::from_ints(1..=k);
        run.seek(&Value::Int(k + 1));
        assert!(run.at_end());
    }

    #[test]
    fn snapshots_are_independent() {
        let mut a = d(&[1, 2, 3]);
        let b = a.clone();
        a.remove_lower_bound();
        assert_eq!(b, d(&[1, 2, 3]));
        assert_eq!(a, d(&[2, 3]));
    }

    #[test]
    fn assign_restricts_to_singleton() {
        let mut a = d(&[1, 2, 3]);
        a.assign(&Value::Int(2));
        assert_eq!(a, d(&[2]));
        a.assign(&Value::Int(7));
        assert!(a.is_empty());
    }

    #[test]
    fn store_predicates() {
        let s = DomainStore::new(vec![d(&[4, 9]), d(&[4]), d(&[4, 7])]);
        assert!(s.is_solved());
        assert!(!s.is_false());
        assert!(!s.is_assigned());
        let f = DomainStore::new(vec![d(&[4]), Domain::empty()]);
        assert!(f.is_false());
        assert!(!f.is_solved());
        assert!(DomainStore::new(vec![]).is_solved());
    }

    proptest! {
        #[test]
        fn raise_matches_filter(
            raw in proptest::collection::vec(0i64..40, 0..30),
            t in -5i64..45,
        ) {
            let dom = Domain::from_ints(raw.iter().copied());
            let expected = Domain::new(dom.iter().filter(|v| **v >= Value::Int(t)).cloned());
            let mut once = dom.clone();
            once.raise_lower_bound(&Value::Int(t));
            prop_assert_eq!(&once, &expected);
            let mut twice = once.clone();
            twice.raise_lower_bound(&Value::Int(t));
            prop_assert_eq!(&twice, &once);
            // seek visits the same key as raise + lower_bound
            let mut it = dom.clone();
            it.seek(&Value::Int(t));
            prop_assert_eq!(it.key(), once.try_lower_bound());
        }
    }
}
