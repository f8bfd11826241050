//! Nested leapfrog execution of a [`JoinPlan`].

use std::iter;

use crate::cp::{generic_intersection, Trace};
use crate::domain::{Binding, DomainStore};
use crate::iter::LinearIterator;
use crate::lftj::{search_tailrec, LeapfrogState};
use crate::trie::TrieIterator;
use crate::value::Value;

use super::plan::{ClassKind, JoinPlan};

/// Which solver intersects the participants of each variable class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Fused Leapfrog Triejoin directly on the trie iterators.
    #[default]
    Leapfrog,
    /// Loop-form indomain-min search over a snapshot of each level.
    Tailrec,
    /// Propagate-and-branch search over a snapshot of each level.
    Generic,
}

enum Source {
    Leapfrog { state: LeapfrogState, matched: bool },
    /// Increasing candidate values; participants are seeked to each one.
    Values(Box<dyn Iterator<Item = Value>>),
}

struct Frame {
    source: Source,
    checks_open: bool,
}

enum Phase {
    Start,
    Running,
    Done,
}

/// Streams the bindings of a plan's variables, lexicographically in class
/// order. Holds one trie iterator per atom; entering a class opens the next
/// level of each participant, leaving it goes back up.
pub struct Execution<'p> {
    plan: &'p JoinPlan,
    engine: Engine,
    trace: Option<Trace>,
    iters: Vec<TrieIterator>,
    frames: Vec<Frame>,
    values: Vec<Option<Value>>,
    phase: Phase,
}

impl<'p> Execution<'p> {
    pub fn new(plan: &'p JoinPlan, engine: Engine) -> Self {
        Self {
            plan,
            engine,
            trace: None,
            iters: plan
                .atoms()
                .iter()
                .map(|a| TrieIterator::new(a.trie.clone()))
                .collect(),
            frames: Vec::with_capacity(plan.classes().len()),
            values: vec![None; plan.classes().len()],
            phase: Phase::Start,
        }
    }

    pub fn with_trace(mut self, trace: Trace) -> Self {
        self.trace = Some(trace);
        self
    }

    fn enter(&mut self, class: usize) {
        let plan = self.plan;
        let participants = plan.participants(class);
        for p in participants {
            self.iters[p.atom].open();
        }
        let source = match &plan.classes()[class].kind {
            ClassKind::Const(c) => Source::Values(Box::new(iter::once(c.clone()))),
            ClassKind::Var(_) => match self.engine {
                Engine::Leapfrog => Source::Leapfrog {
                    state: LeapfrogState::init(
                        &self.iters,
                        participants.iter().map(|p| p.atom).collect(),
                    ),
                    matched: false,
                },
                Engine::Generic => {
                    let domains = participants
                        .iter()
                        .map(|p| self.iters[p.atom].level_iter())
                        .collect();
                    Source::Values(Box::new(generic_intersection(domains, self.trace.clone())))
                }
                Engine::Tailrec => {
                    let domains = participants
                        .iter()
                        .map(|p| self.iters[p.atom].level_iter())
                        .collect();
                    let mut search = search_tailrec(DomainStore::new(domains));
                    if let Some(t) = &self.trace {
                        search = search.with_trace(t.clone());
                    }
                    Source::Values(Box::new(search.map(|b| b[0].clone())))
                }
            },
        };
        self.frames.push(Frame {
            source,
            checks_open: false,
        });
    }

    fn leave(&mut self, class: usize) {
        for p in self.plan.participants(class) {
            self.iters[p.atom].up();
        }
        self.frames.pop();
    }

    /// Descends the repeated-occurrence levels of each participant, requiring
    /// each to contain `v`. On failure everything opened here is undone.
    fn open_checks(&mut self, class: usize, v: &Value) -> bool {
        let plan = self.plan;
        let participants = plan.participants(class);
        for (i, p) in participants.iter().enumerate() {
            for depth in 0..p.checks {
                let it = &mut self.iters[p.atom];
                it.open();
                it.seek(v);
                if it.key() != Some(v) {
                    for _ in 0..=depth {
                        self.iters[p.atom].up();
                    }
                    for q in &participants[..i] {
                        for _ in 0..q.checks {
                            self.iters[q.atom].up();
                        }
                    }
                    return false;
                }
            }
        }
        true
    }

    fn close_checks(&mut self, class: usize) {
        for p in self.plan.participants(class) {
            for _ in 0..p.checks {
                self.iters[p.atom].up();
            }
        }
    }

    /// Next value for `class` under the current prefix, or `None` after
    /// leaving the class.
    fn next_value(&mut self, class: usize) -> Option<Value> {
        if std::mem::take(&mut self.frames[class].checks_open) {
            self.close_checks(class);
        }
        loop {
            let frame = &mut self.frames[class];
            let candidate = match &mut frame.source {
                Source::Leapfrog { state, matched } => {
                    if *matched {
                        state.advance(&mut self.iters);
                    }
                    let trace = self.trace.as_ref();
                    let v = state.search(&mut self.iters, |e| {
                        if let Some(t) = trace {
                            t.record(e)
                        }
                    });
                    *matched = v.is_some();
                    v
                }
                Source::Values(values) => match values.next() {
                    Some(v) => {
                        let mut hit = true;
                        for p in self.plan.participants(class) {
                            let it = &mut self.iters[p.atom];
                            it.seek(&v);
                            hit &= it.key() == Some(&v);
                        }
                        if !hit {
                            continue;
                        }
                        Some(v)
                    }
                    None => None,
                },
            };
            let Some(v) = candidate else {
                self.leave(class);
                return None;
            };
            if self.open_checks(class, &v) {
                self.frames[class].checks_open = true;
                return Some(v);
            }
        }
    }

    fn binding(&self) -> Binding {
        self.plan
            .var_classes()
            .iter()
            .map(|&c| self.values[c].clone().expect("bound class"))
            .collect()
    }
}

impl Iterator for Execution<'_> {
    type Item = Binding;

    fn next(&mut self) -> Option<Binding> {
        let m = self.plan.classes().len();
        let mut class = match self.phase {
            Phase::Done => return None,
            Phase::Start => {
                if m == 0 {
                    self.phase = Phase::Done;
                    return Some(Vec::new());
                }
                self.phase = Phase::Running;
                self.enter(0);
                0
            }
            Phase::Running => m - 1,
        };
        loop {
            match self.next_value(class) {
                Some(v) => {
                    self.values[class] = Some(v);
                    if class + 1 == m {
                        return Some(self.binding());
                    }
                    class += 1;
                    self.enter(class);
                }
                None => {
                    if class == 0 {
                        self.phase = Phase::Done;
                        return None;
                    }
                    class -= 1;
                }
            }
        }
    }
}

/// Runs `plan` with the given engine.
pub fn execute(plan: &JoinPlan, engine: Engine) -> Execution<'_> {
    Execution::new(plan, engine)
}
