//! Sorted tries over n-ary relations and their navigating iterators.
//!
//! A trie is stored flattened: one array of keys per level, plus for every
//! non-leaf level the offset of each node's first child in the next level.
//! The children of key `i` at level `k` are `child_start[i]..child_start[i+1]`
//! at level `k + 1`. Siblings are strictly increasing, so every level range
//! is a valid [`Domain`] window.

use std::sync::Arc;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::iter::{gallop, LinearIterator};
use crate::value::Value;

pub type Tuple = Vec<Value>;

#[derive(Debug)]
struct Level {
    keys: Arc<[Value]>,
    /// `keys.len() + 1` offsets into the next level; empty on the last level.
    child_start: Vec<usize>,
}

/// An immutable relation stored as a trie under a column permutation:
/// level `k` holds column `perm[k]` of the original tuples.
#[derive(Debug)]
pub struct TrieRelation {
    name: String,
    arity: usize,
    perm: Vec<usize>,
    levels: Vec<Level>,
    len: usize,
}

pub(crate) fn check_permutation(perm: &[usize], arity: usize) -> Result<()> {
    let mut seen = vec![false; arity];
    let ok = perm.len() == arity
        && perm
            .iter()
            .all(|&p| p < arity && !std::mem::replace(&mut seen[p], true));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPermutation {
            perm: perm.to_vec(),
            arity,
        })
    }
}

impl TrieRelation {
    /// Builds a trie over `tuples` reordered by `perm`. Duplicates collapse.
    /// Fails on tuples whose length differs from `perm.len()`.
    pub fn build<'a>(
        name: &str,
        tuples: impl IntoIterator<Item = &'a Tuple>,
        perm: &[usize],
    ) -> Result<Self> {
        let arity = perm.len();
        check_permutation(perm, arity)?;
        let mut rows: Vec<Tuple> = Vec::new();
        for t in tuples {
            if t.len() != arity {
                return Err(Error::TupleArity {
                    relation: name.to_string(),
                    expected: arity,
                    found: t.len(),
                });
            }
            rows.push(perm.iter().map(|&c| t[c].clone()).collect());
        }
        rows.sort_unstable();
        rows.dedup();
        Ok(Self::from_sorted_rows(name, perm.to_vec(), &rows))
    }

    fn from_sorted_rows(name: &str, perm: Vec<usize>, rows: &[Tuple]) -> Self {
        let arity = perm.len();
        let mut keys: Vec<Vec<Value>> = vec![Vec::new(); arity];
        let mut child_start: Vec<Vec<usize>> = vec![Vec::new(); arity];
        let mut prev: Option<&Tuple> = None;
        for row in rows {
            let first_diff = match prev {
                None => 0,
                Some(p) => p.iter().zip(row).position(|(a, b)| a != b).unwrap_or(arity),
            };
            for lvl in first_diff..arity {
                if lvl + 1 < arity {
                    child_start[lvl].push(keys[lvl + 1].len());
                }
                keys[lvl].push(row[lvl].clone());
            }
            prev = Some(row);
        }
        for lvl in 0..arity.saturating_sub(1) {
            child_start[lvl].push(keys[lvl + 1].len());
        }
        let levels = keys
            .into_iter()
            .zip(child_start)
            .map(|(k, c)| Level {
                keys: k.into(),
                child_start: c,
            })
            .collect();
        Self {
            name: name.to_string(),
            arity,
            perm,
            levels,
            len: rows.len(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Number of distinct tuples.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Every root-to-leaf path, in lexicographic order (permuted columns).
    pub fn paths(&self) -> Vec<Tuple> {
        let mut out = Vec::with_capacity(self.len);
        let mut path = Vec::with_capacity(self.arity);
        if self.arity > 0 {
            self.collect_paths(0, 0, self.levels[0].keys.len(), &mut path, &mut out);
        }
        out
    }

    fn collect_paths(&self, lvl: usize, lo: usize, hi: usize, path: &mut Tuple, out: &mut Vec<Tuple>) {
        let level = &self.levels[lvl];
        for i in lo..hi {
            path.push(level.keys[i].clone());
            if lvl + 1 == self.arity {
                out.push(path.clone());
            } else {
                self.collect_paths(lvl + 1, level.child_start[i], level.child_start[i + 1], path, out);
            }
            path.pop();
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Cursor {
    pos: usize,
    end: usize,
}

/// A cursor into a [`TrieRelation`].
///
/// Starts at the root (depth −1, no key). `open` descends to the first child
/// of the current key, `up` returns to the parent exactly where it was left.
/// At depth `d >= 0` it behaves as a [`LinearIterator`] over the current
/// sibling keys.
#[derive(Debug, Clone)]
pub struct TrieIterator {
    trie: Arc<TrieRelation>,
    path: Vec<Cursor>,
}

impl TrieIterator {
    pub fn new(trie: Arc<TrieRelation>) -> Self {
        Self {
            path: Vec::with_capacity(trie.arity),
            trie,
        }
    }

    pub fn relation(&self) -> &Arc<TrieRelation> {
        &self.trie
    }

    /// Current level, −1 at the root.
    pub fn depth(&self) -> isize {
        self.path.len() as isize - 1
    }

    /// Descends to the first child of the current key (or to the first
    /// top-level key from the root). Panics when there is no key to descend
    /// from or the iterator is already on the last level.
    pub fn open(&mut self) {
        let cursor = match self.path.last() {
            None => {
                assert!(self.trie.arity > 0, "open on a nullary trie");
                Cursor {
                    pos: 0,
                    end: self.trie.levels[0].keys.len(),
                }
            }
            Some(c) => {
                let lvl = self.path.len() - 1;
                assert!(lvl + 1 < self.trie.arity, "open below the last level");
                assert!(c.pos < c.end, "open at end");
                let starts = &self.trie.levels[lvl].child_start;
                Cursor {
                    pos: starts[c.pos],
                    end: starts[c.pos + 1],
                }
            }
        };
        self.path.push(cursor);
    }

    /// Returns to the parent level. Panics at the root.
    pub fn up(&mut self) {
        self.path.pop().expect("up at the root");
    }

    /// An independent view of the remaining sibling keys at this level.
    pub fn level_iter(&self) -> Domain {
        let c = self.path.last().expect("level_iter at the root");
        let keys = self.trie.levels[self.path.len() - 1].keys.clone();
        Domain::window(keys, c.pos, c.end)
    }
}

impl LinearIterator for TrieIterator {
    fn key(&self) -> Option<&Value> {
        let c = self.path.last()?;
        if c.pos < c.end {
            Some(&self.trie.levels[self.path.len() - 1].keys[c.pos])
        } else {
            None
        }
    }

    fn next(&mut self) {
        if let Some(c) = self.path.last_mut() {
            if c.pos < c.end {
                c.pos += 1;
            }
        }
    }

    fn seek(&mut self, target: &Value) {
        let lvl = self.path.len().checked_sub(1).expect("seek at the root");
        let keys = &self.trie.levels[lvl].keys;
        let c = self.path.last_mut().unwrap();
        c.pos = gallop(&keys[..c.end], c.pos, target);
    }
}
