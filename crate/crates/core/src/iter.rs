//! The linear-iterator protocol: forward-only cursors over strictly
//! increasing key sequences.

use crate::value::Value;

/// A cursor over a strictly increasing sequence of [`Value`]s.
///
/// `key` is `None` exactly when the cursor is at end. Neither `next` nor
/// `seek` ever moves the cursor backward.
pub trait LinearIterator {
    fn key(&self) -> Option<&Value>;

    /// Steps past the current key. No-op at end.
    fn next(&mut self);

    /// Moves to the least key `>= target`, or to the end if there is none.
    /// Callers only seek forward: `target` is never below the current key.
    fn seek(&mut self, target: &Value);

    fn at_end(&self) -> bool {
        self.key().is_none()
    }
}

impl<I: LinearIterator + ?Sized> LinearIterator for &mut I {
    fn key(&self) -> Option<&Value> {
        (**self).key()
    }
    fn next(&mut self) {
        (**self).next()
    }
    fn seek(&mut self, target: &Value) {
        (**self).seek(target)
    }
}

/// Least index `i` in `from..keys.len()` with `keys[i] >= target`, or
/// `keys.len()` when none exists. `keys[from..]` must be sorted.
///
/// Exponential probe followed by binary search, so the cost is logarithmic in
/// the distance skipped rather than in the length of the slice.
#[cfg(not(feature = "linear-seek"))]
pub fn gallop(keys: &[Value], from: usize, target: &Value) -> usize {
    if from >= keys.len() || keys[from] >= *target {
        return from;
    }
    // invariant: keys[lo] < target
    let mut lo = from;
    let mut step = 1;
    while lo + step < keys.len() && keys[lo + step] < *target {
        lo += step;
        step <<= 1;
    }
    let hi = (lo + step).min(keys.len());
    lo + 1 + keys[lo + 1..hi].partition_point(|k| k < target)
}

#[cfg(feature = "linear-seek")]
pub fn gallop(keys: &[Value], from: usize, target: &Value) -> usize {
    let mut i = from;
    while i < keys.len() && keys[i] < *target {
        i += 1;
    }
    i
}

/// Operation counts gathered by [`Instrumented`].
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounts {
    pub seeks: usize,
    pub nexts: usize,
}

impl OpCounts {
    pub fn total(&self) -> usize {
        self.seeks + self.nexts
    }
}

/// Wraps an iterator, counting `seek`/`next` calls and panicking if a seek
/// target lies below the current key.
#[derive(Debug, Clone)]
pub struct Instrumented<I> {
    inner: I,
    counts: OpCounts,
}

impl<I: LinearIterator> Instrumented<I> {
    pub fn new(inner: I) -> Self {
        Self {
            inner,
            counts: OpCounts::default(),
        }
    }

    pub fn counts(&self) -> OpCounts {
        self.counts
    }

    pub fn into_inner(self) -> I {
        self.inner
    }
}

impl<I: LinearIterator> LinearIterator for Instrumented<I> {
    fn key(&self) -> Option<&Value> {
        self.inner.key()
    }

    fn next(&mut self) {
        self.counts.nexts += 1;
        self.inner.next();
    }

    fn seek(&mut self, target: &Value) {
        if let Some(key) = self.inner.key() {
            assert!(
                target >= key,
                "backward seek: target {target:?} below current key {key:?}"
            );
        }
        self.counts.seeks += 1;
        self.inner.seek(target);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().copied().map(Value::Int).collect()
    }

    #[test]
    fn gallop_lands_on_least_upper_bound() {
        let keys = ints(&[1, 4, 7, 10, 11]);
        assert_eq!(gallop(&keys, 0, &Value::Int(4)), 1);
        assert_eq!(gallop(&keys, 1, &Value::Int(4)), 1);
        assert_eq!(gallop(&keys, 0, &Value::Int(5)), 2);
        assert_eq!(gallop(&keys, 0, &Value::Int(12)), 5);
        assert_eq!(gallop(&keys, 0, &Value::Int(0)), 0);
        assert_eq!(gallop(&keys, 5, &Value::Int(0)), 5);
    }

    proptest! {
        #[test]
        fn gallop_matches_scan(
            mut raw in proptest::collection::vec(-50i64..50, 0..60),
            from_frac in 0.0f64..1.0,
            target in -60i64..60,
        ) {
            raw.sort();
            raw.dedup();
            let keys = ints(&raw);
            let from = (from_frac * keys.len() as f64) as usize;
            let t = Value::Int(target);
            let expected = (from..keys.len()).find(|&i| keys[i] >= t).unwrap_or(keys.len());
            prop_assert_eq!(gallop(&keys, from, &t), expected);
        }
    }
}
