//! Named relations and the per-permutation trie cache.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::trie::{check_permutation, TrieRelation, Tuple};

/// An immutable set of tuples of one arity. Tries for any column order are
/// built on first request and cached.
#[derive(Debug)]
pub struct Relation {
    name: String,
    arity: usize,
    tuples: Vec<Tuple>,
    tries: RwLock<HashMap<Vec<usize>, Arc<TrieRelation>>>,
}

impl Relation {
    pub fn new(name: &str, arity: usize, tuples: impl IntoIterator<Item = Tuple>) -> Result<Self> {
        let mut tuples: Vec<Tuple> = tuples.into_iter().collect();
        if let Some(bad) = tuples.iter().find(|t| t.len() != arity) {
            return Err(Error::TupleArity {
                relation: name.to_string(),
                expected: arity,
                found: bad.len(),
            });
        }
        tuples.sort_unstable();
        tuples.dedup();
        Ok(Self {
            name: name.to_string(),
            arity,
            tuples,
            tries: RwLock::default(),
        })
    }

    pub fn empty(name: &str, arity: usize) -> Self {
        Self::new(name, arity, []).expect("no tuples to check")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Tuples in lexicographic order, without duplicates.
    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        self.tuples.binary_search(t).is_ok()
    }

    /// The trie with levels in `perm` column order.
    pub fn trie(&self, perm: &[usize]) -> Result<Arc<TrieRelation>> {
        check_permutation(perm, self.arity)?;
        if let Some(t) = self.tries.read().unwrap().get(perm) {
            return Ok(t.clone());
        }
        let trie = Arc::new(TrieRelation::build(&self.name, &self.tuples, perm)?);
        self.tries
            .write()
            .unwrap()
            .entry(perm.to_vec())
            .or_insert(trie.clone());
        Ok(trie)
    }

    /// Number of distinct permutations built so far.
    pub fn cached_tries(&self) -> usize {
        self.tries.read().unwrap().len()
    }
}

/// Relations by name.
#[derive(Debug, Default, Clone)]
pub struct Catalog {
    relations: BTreeMap<String, Arc<Relation>>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Relation>> {
        self.relations.get(name)
    }

    pub fn insert(&mut self, relation: Relation) {
        self.relations
            .insert(relation.name.clone(), Arc::new(relation));
    }

    /// Adds tuples to `name`, creating the relation if needed.
    pub fn extend(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Tuple>,
    ) -> Result<()> {
        let merged: Vec<Tuple> = match self.relations.get(name) {
            Some(r) => {
                if r.arity != arity {
                    return Err(Error::TupleArity {
                        relation: name.to_string(),
                        expected: r.arity,
                        found: arity,
                    });
                }
                r.tuples.iter().cloned().chain(tuples).collect()
            }
            None => tuples.into_iter().collect(),
        };
        self.insert(Relation::new(name, arity, merged)?);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<Relation>> {
        self.relations.values()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}
