//! Compiling a rule body into nested per-class leapfrogs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::catalog::{Catalog, Relation};
use crate::datalog::{Atom, Term};
use crate::error::{Error, Result};
use crate::trie::TrieRelation;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub atom: usize,
    pub arg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassKind {
    Var(String),
    Const(Value),
}

/// A set of argument occurrences forced equal. Constant classes have a
/// single admissible value.
#[derive(Debug, Clone)]
pub struct EqClass {
    pub kind: ClassKind,
    pub members: Vec<Occurrence>,
}

/// One atom's role in a class: it descends one trie level to join the
/// leapfrog, then `checks` more levels that must repeat the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Participant {
    pub atom: usize,
    pub level: usize,
    pub checks: usize,
}

#[derive(Debug, Clone)]
pub struct AtomPlan {
    pub atom: Atom,
    /// `perm[level]` is the argument stored at that trie level.
    pub perm: Vec<usize>,
    pub trie: Arc<TrieRelation>,
}

/// Classes in elimination order, each atom's trie permutation, and which
/// atoms take part in each class.
///
/// Constant classes come first, then variable classes in order of first
/// occurrence. Each atom's trie levels follow class order, so a class only
/// ever needs the next level of each participant.
#[derive(Debug, Clone)]
pub struct JoinPlan {
    classes: Vec<EqClass>,
    atoms: Vec<AtomPlan>,
    participants: Vec<Vec<Participant>>,
    /// Class index for each variable, variables in first-occurrence order.
    var_classes: Vec<usize>,
}

impl JoinPlan {
    /// Plans `body` against `catalog`.
    pub fn new(body: &[Atom], catalog: &Catalog) -> Result<Self> {
        Self::with_resolver(body, |_, atom| {
            catalog
                .get(&atom.predicate)
                .cloned()
                .ok_or_else(|| Error::UnknownPredicate(atom.predicate.clone()))
        })
    }

    /// Plans `body`, asking `resolve` for the relation behind each atom
    /// (by index). Lets callers substitute deltas for individual atoms.
    pub fn with_resolver(
        body: &[Atom],
        mut resolve: impl FnMut(usize, &Atom) -> Result<Arc<Relation>>,
    ) -> Result<Self> {
        let mut var_order: Vec<&str> = Vec::new();
        let mut const_order: Vec<&Value> = Vec::new();
        for atom in body {
            for term in &atom.args {
                match term {
                    Term::Var(v) if !var_order.contains(&v.as_str()) => var_order.push(v),
                    Term::Const(c) if !const_order.contains(&c) => const_order.push(c),
                    _ => {}
                }
            }
        }
        let rank_of_const: HashMap<&Value, usize> =
            const_order.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let rank_of_var: HashMap<&str, usize> = var_order
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, const_order.len() + i))
            .collect();
        let class_of = |t: &Term| match t {
            Term::Var(v) => rank_of_var[v.as_str()],
            Term::Const(c) => rank_of_const[c],
        };

        let mut classes: Vec<EqClass> = const_order
            .iter()
            .map(|c| ClassKind::Const((*c).clone()))
            .chain(var_order.iter().map(|v| ClassKind::Var(v.to_string())))
            .map(|kind| EqClass {
                kind,
                members: Vec::new(),
            })
            .collect();
        let mut participants: Vec<Vec<Participant>> = vec![Vec::new(); classes.len()];
        let mut atoms = Vec::with_capacity(body.len());

        for (i, atom) in body.iter().enumerate() {
            let relation = resolve(i, atom)?;
            if relation.arity() != atom.arity() {
                return Err(Error::ArityMismatch {
                    predicate: atom.predicate.clone(),
                    expected: relation.arity(),
                    found: atom.arity(),
                    line: atom.pos.line,
                    column: atom.pos.column,
                });
            }
            for (arg, term) in atom.args.iter().enumerate() {
                classes[class_of(term)].members.push(Occurrence { atom: i, arg });
            }
            let mut perm: Vec<usize> = (0..atom.arity()).collect();
            perm.sort_by_key(|&arg| (class_of(&atom.args[arg]), arg));
            let mut level = 0;
            while level < perm.len() {
                let class = class_of(&atom.args[perm[level]]);
                let run = perm[level..]
                    .iter()
                    .take_while(|&&a| class_of(&atom.args[a]) == class)
                    .count();
                participants[class].push(Participant {
                    atom: i,
                    level,
                    checks: run - 1,
                });
                level += run;
            }
            let trie = relation.trie(&perm)?;
            atoms.push(AtomPlan {
                atom: atom.clone(),
                perm,
                trie,
            });
        }

        let var_classes = (0..var_order.len()).map(|i| const_order.len() + i).collect();
        Ok(Self {
            classes,
            atoms,
            participants,
            var_classes,
        })
    }

    pub fn classes(&self) -> &[EqClass] {
        &self.classes
    }

    pub fn atoms(&self) -> &[AtomPlan] {
        &self.atoms
    }

    pub fn participants(&self, class: usize) -> &[Participant] {
        &self.participants[class]
    }

    /// Variable names in first-occurrence order; bindings follow this order.
    pub fn variables(&self) -> Vec<&str> {
        self.var_classes
            .iter()
            .map(|&c| match &self.classes[c].kind {
                ClassKind::Var(v) => v.as_str(),
                ClassKind::Const(_) => unreachable!("variable slot points at a constant class"),
            })
            .collect()
    }

    pub fn var_classes(&self) -> &[usize] {
        &self.var_classes
    }

    /// Position of `name` in [`JoinPlan::variables`].
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables().iter().position(|v| *v == name)
    }
}

impl fmt::Display for JoinPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            let perm: Vec<String> = a.perm.iter().map(usize::to_string).collect();
            writeln!(f, "atom {i} {} perm [{}]", a.atom, perm.join(","))?;
        }
        for (c, class) in self.classes.iter().enumerate() {
            let label = match &class.kind {
                ClassKind::Var(v) => v.clone(),
                ClassKind::Const(k) => format!("={k}"),
            };
            let members: Vec<String> = class
                .members
                .iter()
                .map(|o| format!("{}#{}.{}", self.atoms[o.atom].atom.predicate, o.atom, o.arg))
                .collect();
            let iters: Vec<String> = self.participants[c]
                .iter()
                .map(|p| {
                    let name = &self.atoms[p.atom].atom.predicate;
                    if p.checks == 0 {
                        format!("{name}#{}@{}", p.atom, p.level)
                    } else {
                        format!("{name}#{}@{}+{}", p.atom, p.level, p.checks)
                    }
                })
                .collect();
            writeln!(
                f,
                "class {c} {label}: {} | iterators {}",
                members.join(" "),
                iters.join(" ")
            )?;
        }
        Ok(())
    }
}
