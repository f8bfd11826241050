//! Semi-naive bottom-up evaluation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::catalog::{Catalog, Relation};
use crate::cp::Trace;
use crate::error::{Error, Result};
use crate::join::{execute, Engine, JoinPlan};
use crate::trie::Tuple;
use crate::value::Value;

use super::ast::{Atom, Program, Rule, Term};

/// How each head argument is filled from a binding.
enum HeadSlot {
    Var(usize),
    Const(Value),
}

fn head_slots(head: &Atom, plan: &JoinPlan) -> Vec<HeadSlot> {
    head.args
        .iter()
        .map(|t| match t {
            Term::Var(v) => HeadSlot::Var(plan.var_index(v).expect("range-restricted head")),
            Term::Const(c) => HeadSlot::Const(c.clone()),
        })
        .collect()
}

/// Statistics of one evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Semi-naive rounds after the initial one.
    pub rounds: usize,
    /// New facts found per round, the initial round first.
    pub new_facts: Vec<usize>,
}

/// Builds the extensional catalog: `program.facts` merged into `edb`, plus an
/// empty relation for every predicate that is used but has no facts.
pub fn prepare_catalog(program: &Program, mut edb: Catalog) -> Result<Catalog> {
    let mut grouped: BTreeMap<&str, (usize, Vec<Tuple>)> = BTreeMap::new();
    for fact in &program.facts {
        let entry = grouped
            .entry(&fact.predicate)
            .or_insert((fact.arity(), Vec::new()));
        entry.1.push(fact.to_tuple().expect("validated facts are ground"));
    }
    for (name, (arity, tuples)) in grouped {
        edb.extend(name, arity, tuples)?;
    }
    let used = program
        .rules
        .iter()
        .flat_map(|r| std::iter::once(&r.head).chain(&r.body));
    for atom in used {
        match edb.get(&atom.predicate) {
            Some(r) if r.arity() != atom.arity() => {
                return Err(Error::ArityMismatch {
                    predicate: atom.predicate.clone(),
                    expected: r.arity(),
                    found: atom.arity(),
                    line: atom.pos.line,
                    column: atom.pos.column,
                })
            }
            Some(_) => {}
            None => edb.insert(Relation::empty(&atom.predicate, atom.arity())),
        }
    }
    Ok(edb)
}

/// Semi-naive fixpoint evaluator.
///
/// The first round fires every rule against the extensional facts. Each
/// later round fires, for every rule and every body atom over a derived
/// predicate, a variant reading that atom from the previous round's delta
/// and all others from the full relations. New facts are buffered and
/// merged between rounds, so tries stay immutable while they are read.
pub struct Evaluator {
    engine: Engine,
    trace: Option<Trace>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new(Engine::Leapfrog)
    }
}

impl Evaluator {
    pub fn new(engine: Engine) -> Self {
        Self {
            engine,
            trace: None,
        }
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    fn fire(
        &self,
        rule: &Rule,
        plan: &JoinPlan,
        catalog: &Catalog,
        out: &mut BTreeMap<String, BTreeSet<Tuple>>,
    ) {
        let slots = head_slots(&rule.head, plan);
        let existing = catalog
            .get(&rule.head.predicate)
            .expect("head relation prepared");
        let mut exec = execute(plan, self.engine);
        if let Some(t) = &self.trace {
            exec = exec.with_trace(t.clone());
        }
        for binding in exec {
            let tuple: Tuple = slots
                .iter()
                .map(|s| match s {
                    HeadSlot::Var(i) => binding[*i].clone(),
                    HeadSlot::Const(c) => c.clone(),
                })
                .collect();
            if !existing.contains(&tuple) {
                out.entry(rule.head.predicate.clone())
                    .or_default()
                    .insert(tuple);
            }
        }
    }

    /// Evaluates `program` over `edb` plus its own facts.
    pub fn run(&self, program: &Program, edb: Catalog) -> Result<(Catalog, EvalStats)> {
        let mut catalog = prepare_catalog(program, edb)?;
        let mut stats = EvalStats::default();

        let mut delta: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
        for rule in &program.rules {
            let plan = JoinPlan::new(&rule.body, &catalog)?;
            self.fire(rule, &plan, &catalog, &mut delta);
        }

        loop {
            let found: usize = delta.values().map(BTreeSet::len).sum();
            stats.new_facts.push(found);
            if found == 0 {
                break;
            }
            let mut delta_rels: HashMap<String, Arc<Relation>> = HashMap::new();
            for (name, tuples) in std::mem::take(&mut delta) {
                let arity = catalog.get(&name).expect("prepared").arity();
                catalog.extend(&name, arity, tuples.iter().cloned())?;
                delta_rels.insert(name.clone(), Arc::new(Relation::new(&name, arity, tuples)?));
            }
            stats.rounds += 1;

            for rule in &program.rules {
                for (i, atom) in rule.body.iter().enumerate() {
                    if !delta_rels.contains_key(&atom.predicate) {
                        continue;
                    }
                    let plan = JoinPlan::with_resolver(&rule.body, |j, a| {
                        let rel = if j == i {
                            delta_rels.get(&a.predicate)
                        } else {
                            catalog.get(&a.predicate)
                        };
                        rel.cloned()
                            .ok_or_else(|| Error::UnknownPredicate(a.predicate.clone()))
                    })?;
                    self.fire(rule, &plan, &catalog, &mut delta);
                }
            }
        }
        Ok((catalog, stats))
    }
}

/// Least fixpoint of `program` over its own facts, using Leapfrog Triejoin.
pub fn evaluate_seminaive(program: &Program) -> Result<Catalog> {
    Evaluator::default()
        .run(program, Catalog::new())
        .map(|(c, _)| c)
}
