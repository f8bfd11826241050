//! The `run` command: load a program and fact files, evaluate, and print
//! sorted, tab-separated results.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};

use crate::catalog::Catalog;
use crate::cp::Trace;
use crate::datalog::{self, parse_program_with, parse_query, Atom, Evaluator, Program};
use crate::error::{Error, Result};
use crate::join::{execute, Engine, JoinPlan};
use crate::oracle;
use crate::trie::Tuple;
use crate::value::SymbolTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum EngineChoice {
    /// Leapfrog Triejoin
    #[default]
    Lftj,
    /// Generic propagate-and-branch solver per equality class
    Generic,
    /// Nested-loop joins with naive fixpoint iteration
    Naive,
}

/// A `FILE:REL` fact source, optionally `FILE:REL/ARITY`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactSource {
    pub path: PathBuf,
    pub relation: String,
    pub arity: Option<usize>,
}

impl FromStr for FactSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (path, rel) = s
            .rsplit_once(':')
            .ok_or_else(|| format!("expected FILE:REL, got `{s}`"))?;
        let (relation, arity) = match rel.split_once('/') {
            Some((r, a)) => (
                r,
                Some(a.parse().map_err(|_| format!("invalid arity `{a}`"))?),
            ),
            None => (rel, None),
        };
        if path.is_empty() || relation.is_empty() {
            return Err(format!("expected FILE:REL, got `{s}`"));
        }
        Ok(Self {
            path: PathBuf::from(path),
            relation: relation.to_string(),
            arity,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Datalog program file
    #[arg(long)]
    pub program: PathBuf,

    /// CSV fact file for a relation, as FILE:REL (repeatable)
    #[arg(long = "facts", value_name = "FILE:REL")]
    pub facts: Vec<FactSource>,

    /// Comma-separated atoms to query; defaults to printing derived relations
    #[arg(long)]
    pub query: Option<String>,

    #[arg(long, value_enum, default_value_t = EngineChoice::Lftj)]
    pub engine: EngineChoice,

    /// Print the raiseLowerBound/seek event log
    #[arg(long)]
    pub trace: bool,

    /// Print the join plan of every rule and the query
    #[arg(long)]
    pub explain: bool,
}

impl RunConfig {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        Self {
            program: program.into(),
            facts: Vec::new(),
            query: None,
            engine: EngineChoice::Lftj,
            trace: false,
            explain: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_edb(cfg: &RunConfig, program: &Program, symbols: &mut SymbolTable) -> Result<Catalog> {
    let mut edb = Catalog::new();
    for src in &cfg.facts {
        let tuples = datalog::csv::load_facts(&src.path, &src.relation, symbols)?;
        let used = program
            .facts
            .iter()
            .chain(program.rules.iter().flat_map(|r| std::iter::once(&r.head).chain(&r.body)))
            .find(|a| a.predicate == src.relation)
            .map(Atom::arity);
        let arity = src
            .arity
            .or_else(|| tuples.first().map(Vec::len))
            .or(used);
        if let Some(arity) = arity {
            edb.extend(&src.relation, arity, tuples)?;
        }
    }
    Ok(edb)
}

fn write_rows(out: &mut String, header: &str, rows: &BTreeSet<Tuple>) {
    writeln!(out, "% {header}").unwrap();
    for row in rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", cells.join("\t")).unwrap();
    }
}

fn engine_of(choice: EngineChoice) -> Engine {
    match choice {
        EngineChoice::Generic => Engine::Generic,
        EngineChoice::Lftj | EngineChoice::Naive => Engine::Leapfrog,
    }
}

fn run_inner(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let mut symbols = SymbolTable::new();
    let text = read_file(&cfg.program)?;
    let program = parse_program_with(&text, &mut symbols)?;
    let edb = load_edb(cfg, &program, &mut symbols)?;
    let query = cfg
        .query
        .as_deref()
        .map(|q| parse_query(q, &mut symbols))
        .transpose()?;

    let trace = Trace::new();
    let catalog = match cfg.engine {
        EngineChoice::Naive => oracle::naive_eval(&program, edb)?,
        choice => {
            let mut ev = Evaluator::new(engine_of(choice));
            if cfg.trace {
                ev = ev.with_trace(trace.clone());
            }
            ev.run(&program, edb)?.0
        }
    };

    let query_plan = query
        .as_ref()
        .map(|body| JoinPlan::new(body, &catalog))
        .transpose()?;

    if cfg.explain {
        writeln!(out, "% explain").unwrap();
        for (i, rule) in program.rules.iter().enumerate() {
            writeln!(out, "%   rule {i}: {rule}").unwrap();
            for line in JoinPlan::new(&rule.body, &catalog)?.to_string().lines() {
                writeln!(out, "%     {line}").unwrap();
            }
        }
        if let (Some(body), Some(plan)) = (&query, &query_plan) {
            let atoms: Vec<String> = body.iter().map(ToString::to_string).collect();
            writeln!(out, "%   query: {}", atoms.join(", ")).unwrap();
            for line in plan.to_string().lines() {
                writeln!(out, "%     {line}").unwrap();
            }
        }
    }

    let query_rows = match (&query, &query_plan) {
        (Some(body), Some(plan)) => Some(match cfg.engine {
            EngineChoice::Naive => oracle::nested_loop_join(body, &catalog)?,
            choice => {
                let mut exec = execute(plan, engine_of(choice));
                if cfg.trace {
                    exec = exec.with_trace(trace.clone());
                }
                exec.collect()
            }
        }),
        _ => None,
    };

    if cfg.trace {
        writeln!(out, "% trace").unwrap();
        for e in trace.events() {
            writeln!(out, "%   {e}").unwrap();
        }
    }

    match (query_rows, &query_plan) {
        (Some(rows), Some(plan)) => {
            write_rows(out, &format!("query/{}", plan.variables().len()), &rows);
        }
        _ => {
            let mut idb = program.idb_predicates();
            idb.sort();
            for (name, arity) in idb {
                let rel = catalog.get(name).expect("derived relation present");
                let rows: BTreeSet<Tuple> = rel.tuples().iter().cloned().collect();
                write_rows(out, &format!("{name}/{arity}"), &rows);
            }
        }
    }
    Ok(())
}

/// Runs one configuration. Status is 0 on success, 1 on parse or
/// validation errors, 2 on I/O errors.
pub fn run(cfg: &RunConfig) -> RunOutput {
    let mut stdout = String::new();
    match run_inner(cfg, &mut stdout) {
        Ok(()) => RunOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutput {
            status: if e.is_io() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
