//! Brute-force reference semantics used to cross-check the engines.
//!
//! Nothing here touches tries, plans or leapfrogs: joins walk the stored
//! tuple lists atom by atom and keep the combinations that agree.

use std::collections::{BTreeSet, HashMap};

use crate::catalog::Catalog;
use crate::datalog::{prepare_catalog, Atom, Program, Term};
use crate::error::{Error, Result};
use crate::trie::Tuple;
use crate::value::Value;

/// Variables of `body` in order of first occurrence.
pub fn body_variables(body: &[Atom]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for atom in body {
        for t in &atom.args {
            if let Term::Var(v) = t {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }
    out
}

fn extend<'a>(
    body: &'a [Atom],
    relations: &[&'a [Tuple]],
    depth: usize,
    env: &mut HashMap<&'a str, Value>,
    vars: &[String],
    out: &mut BTreeSet<Vec<Value>>,
) {
    if depth == body.len() {
        out.insert(vars.iter().map(|v| env[v.as_str()].clone()).collect());
        return;
    }
    let atom = &body[depth];
    for tuple in relations[depth] {
        let mut bound_here: Vec<&str> = Vec::new();
        let mut ok = true;
        for (term, value) in atom.args.iter().zip(tuple) {
            match term {
                Term::Const(c) => ok = c == value,
                Term::Var(v) => match env.get(v.as_str()) {
                    Some(existing) => ok = existing == value,
                    None => {
                        env.insert(v, value.clone());
                        bound_here.push(v);
                    }
                },
            }
            if !ok {
                break;
            }
        }
        if ok {
            extend(body, relations, depth + 1, env, vars, out);
        }
        for v in bound_here {
            env.remove(v);
        }
    }
}

/// Every binding of `body`'s variables (in first-occurrence order) under
/// which each atom is a stored tuple.
pub fn nested_loop_join(body: &[Atom], catalog: &Catalog) -> Result<BTreeSet<Vec<Value>>> {
    let mut relations = Vec::with_capacity(body.len());
    for atom in body {
        let rel = catalog
            .get(&atom.predicate)
            .ok_or_else(|| Error::UnknownPredicate(atom.predicate.clone()))?;
        if rel.arity() != atom.arity() {
            return Err(Error::ArityMismatch {
                predicate: atom.predicate.clone(),
                expected: rel.arity(),
                found: atom.arity(),
                line: atom.pos.line,
                column: atom.pos.column,
            });
        }
        relations.push(rel.tuples());
    }
    let vars = body_variables(body);
    let mut out = BTreeSet::new();
    extend(body, &relations, 0, &mut HashMap::new(), &vars, &mut out);
    Ok(out)
}

/// Least fixpoint by re-deriving every rule from scratch each round until
/// nothing new appears.
pub fn naive_eval(program: &Program, edb: Catalog) -> Result<Catalog> {
    let mut catalog = prepare_catalog(program, edb)?;
    loop {
        let mut grew = false;
        let mut derived: Vec<(&str, usize, Vec<Tuple>)> = Vec::new();
        for rule in &program.rules {
            let vars = body_variables(&rule.body);
            let rows = nested_loop_join(&rule.body, &catalog)?;
            let heads: Vec<Tuple> = rows
                .iter()
                .map(|row| {
                    rule.head
                        .args
                        .iter()
                        .map(|t| match t {
                            Term::Const(c) => c.clone(),
                            Term::Var(v) => {
                                let i = vars.iter().position(|x| x == v).expect("range restricted");
                                row[i].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            derived.push((&rule.head.predicate, rule.head.arity(), heads));
        }
        for (name, arity, tuples) in derived {
            let before = catalog.get(name).map_or(0, |r| r.len());
            catalog.extend(name, arity, tuples)?;
            grew |= catalog.get(name).unwrap().len() > before;
        }
        if !grew {
            return Ok(catalog);
        }
    }
}
