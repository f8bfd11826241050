//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line even on success.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cpjoin::catalog::Catalog;
use cpjoin::cp::{allequal, generic_intersection, AllEqual, Propagator, RaiseEvent, VarMap};
use cpjoin::datalog::{evaluate_seminaive, parse_program, parse_query, Atom, Term};
use cpjoin::iter::Instrumented;
use cpjoin::join::{execute, plan, Engine};
use cpjoin::lftj::{leapfrog_join, search_tailrec};
use cpjoin::oracle::{naive_eval, nested_loop_join};
use cpjoin::{Domain, DomainStore, SymbolTable, Value, VarId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xyz() -> DomainStore {
    DomainStore::new(vec![
        Domain::from_ints([1, 2, 3, 4, 9, 10, 11]),
        Domain::from_ints([3, 4, 7, 10]),
        Domain::from_ints([1, 4, 7, 10, 11]),
    ])
}

const X: VarId = VarId(0);
const Y: VarId = VarId(1);
const Z: VarId = VarId(2);

fn raise(var: VarId, old: i64, new: i64, l_max: i64) -> RaiseEvent {
    RaiseEvent {
        var,
        old: Value::Int(old),
        new: Some(Value::Int(new)),
        l_max: Value::Int(l_max),
    }
}

fn trace_reproduction() -> Outcome {
    let mut store = xyz();
    let sorted = VarMap::sorted(&store, &[X, Y, Z]);
    ensure(sorted.slots() == [X, Z, Y], || {
        format!("initial order {:?}", sorted.slots())
    })?;

    let mut events = Vec::new();
    let started = Instant::now();
    let map = allequal(&mut store, &[X, Y, Z], |e| events.push(e));
    let elapsed = started.elapsed();

    ensure(map.is_some(), || "store became false".into())?;
    let expected = vec![
        raise(X, 1, 3, 3),
        raise(Z, 1, 4, 3),
        raise(Y, 3, 4, 4),
        raise(X, 3, 4, 4),
    ];
    ensure(events == expected, || format!("events {events:?}"))?;
    ensure(store.get(X) == &Domain::from_ints([4, 9, 10, 11]), || "D(X)".into())?;
    ensure(store.get(Y) == &Domain::from_ints([4, 7, 10]), || "D(Y)".into())?;
    ensure(store.get(Z) == &Domain::from_ints([4, 7, 10, 11]), || "D(Z)".into())?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}"))?;
    Ok(format!("4 raises X,Z,Y,X in {elapsed:?}"))
}

fn ints(vals: impl IntoIterator<Item = Value>) -> Vec<i64> {
    vals.into_iter().map(|v| v.as_int().unwrap()).collect()
}

fn making_a_choice() -> Outcome {
    let domains = xyz().domains().to_vec();
    let generic = ints(generic_intersection(domains.clone(), None));
    let tailrec = ints(search_tailrec(xyz()).map(|b| b[0].clone()));
    let leapfrog = ints(leapfrog_join(domains));
    for (name, got) in [("generic", &generic), ("tailrec", &tailrec), ("leapfrog", &leapfrog)] {
        ensure(got == &[4, 10], || format!("{name} yielded {got:?}"))?;
    }
    Ok("all three engines yield [4, 10]".into())
}

fn join_example() -> Outcome {
    let program = parse_program("p(a,b). p(c,d). p(e,f). q(a,1). q(c,2). q(g,3).").unwrap();
    let catalog = cpjoin::datalog::prepare_catalog(&program, Catalog::new()).unwrap();
    let body = parse_query("p(X,Y), q(X,Z)", &mut SymbolTable::new()).unwrap();
    let plan = plan(&body, &catalog).map_err(|e| e.to_string())?;
    ensure(plan.variables() == ["X", "Y", "Z"], || {
        format!("variables {:?}", plan.variables())
    })?;
    let expected = vec![
        vec![Value::sym("a"), Value::sym("b"), Value::Int(1)],
        vec![Value::sym("c"), Value::sym("d"), Value::Int(2)],
    ];
    for engine in [Engine::Leapfrog, Engine::Tailrec, Engine::Generic] {
        let rows: Vec<_> = execute(&plan, engine).collect();
        ensure(rows == expected, || format!("{engine:?} yielded {rows:?}"))?;
    }
    Ok("{X=a,Y=b,Z=1} and {X=c,Y=d,Z=2}".into())
}

fn random_instance(rng: &mut StdRng) -> (Catalog, Vec<Atom>) {
    let num_vars = rng.gen_range(1..=5);
    let num_atoms = rng.gen_range(1..=3);
    let mut catalog = Catalog::new();
    let mut body = Vec::new();
    for i in 0..num_atoms {
        let arity = rng.gen_range(1..=3);
        let name = format!("r{i}");
        let n = rng.gen_range(0..=50);
        let tuples: Vec<Vec<Value>> = (0..n)
            .map(|_| (0..arity).map(|_| Value::Int(rng.gen_range(0..20))).collect())
            .collect();
        catalog.extend(&name, arity, tuples).unwrap();
        let args = (0..arity)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    Term::Const(Value::Int(rng.gen_range(0..20)))
                } else {
                    Term::Var(format!("V{}", rng.gen_range(0..num_vars)))
                }
            })
            .collect();
        body.push(Atom::new(&name, args));
    }
    (catalog, body)
}

fn differential_join() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let started = Instant::now();
    let mut rows_seen = 0;
    for case in 0..1000 {
        let (catalog, body) = random_instance(&mut rng);
        let expected = nested_loop_join(&body, &catalog).map_err(|e| e.to_string())?;
        let plan = plan(&body, &catalog).map_err(|e| e.to_string())?;
        for engine in [Engine::Leapfrog, Engine::Tailrec, Engine::Generic] {
            let got: BTreeSet<_> = execute(&plan, engine).collect();
            ensure(got == expected, || {
                let atoms: Vec<String> = body.iter().map(ToString::to_string).collect();
                format!("case {case}: {} mismatch under {engine:?}", atoms.join(", "))
            })?;
        }
        rows_seen += expected.len();
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("1000 instances, {rows_seen} rows, 0 mismatches in {elapsed:?}"))
}

fn random_domains(rng: &mut StdRng, max_vars: usize, span: i64) -> Vec<Domain> {
    let n = rng.gen_range(1..=max_vars);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=span as usize);
            Domain::from_ints((0..len).map(|_| rng.gen_range(0..span)))
        })
        .collect()
}

fn engine_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut values = 0;
    for case in 0..1000 {
        let domains = random_domains(&mut rng, 5, 30);
        let generic = ints(generic_intersection(domains.clone(), None));
        let tailrec = ints(search_tailrec(DomainStore::new(domains.clone())).map(|b| b[0].clone()));
        let leapfrog = ints(leapfrog_join(domains));
        ensure(generic == tailrec && tailrec == leapfrog, || {
            format!("case {case}: generic {generic:?} tailrec {tailrec:?} leapfrog {leapfrog:?}")
        })?;
        values += leapfrog.len();
    }
    Ok(format!("1000 instances, {values} values, 0 mismatches"))
}

fn idempotence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for case in 0..1000 {
        let store = DomainStore::new(random_domains(&mut rng, 6, 25));
        let eq = AllEqual::over_all(&store);
        let once = eq.apply(&store);
        let twice = eq.apply(&once);
        ensure(once == twice, || format!("case {case}: {store:?}"))?;
    }
    Ok("allequal(allequal(D)) = allequal(D) on 1000 stores".into())
}

fn galloping_witness() -> Outcome {
    let mut report = String::new();
    for k in [100i64, 10_000, 1_000_000] {
        let iters = vec![
            Instrumented::new(Domain::from_ints(1..=k)),
            Instrumented::new(Domain::from_ints(k + 1..=2 * k)),
        ];
        let mut join = leapfrog_join(iters);
        ensure(join.next().is_none(), || format!("k={k}: non-empty join"))?;
        let ops: usize = join.iters().iter().map(|i| i.counts().total()).sum();
        ensure(ops <= 2, || format!("k={k}: {ops} operations"))?;
        write!(report, "k={k}: {ops} op(s); ").unwrap();
    }
    Ok(report.trim_end_matches("; ").to_string())
}

const TC: &str = "t(X,Y) :- e(X,Y). t(X,Z) :- e(X,Y), t(Y,Z).";

fn semi_naive() -> Outcome {
    let chain = parse_program(&format!("e(1,2). e(2,3). e(3,4). {TC}")).unwrap();
    let closure = evaluate_seminaive(&chain).map_err(|e| e.to_string())?;
    let pairs = closure.get("t").unwrap().len();
    ensure(pairs == 6, || format!("chain closure has {pairs} pairs"))?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let started = Instant::now();
    for case in 0..200 {
        let nodes = rng.gen_range(1..=15);
        let density = rng.gen_range(0.0..0.3);
        let mut src = String::new();
        for a in 0..nodes {
            for b in 0..nodes {
                if rng.gen_bool(density) {
                    write!(src, "e({a},{b}). ").unwrap();
                }
            }
        }
        src.push_str(TC);
        let program = parse_program(&src).unwrap();
        let fast = evaluate_seminaive(&program).map_err(|e| e.to_string())?;
        let slow = naive_eval(&program, Catalog::new()).map_err(|e| e.to_string())?;
        ensure(fast.get("t").unwrap().tuples() == slow.get("t").unwrap().tuples(), || {
            format!("case {case}: closures differ")
        })?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("chain = 6 pairs; 200 digraphs, 0 mismatches in {elapsed:?}"))
}

fn constant_space() -> Outcome {
    const N: i64 = 100_000;
    // a deliberately small stack: any per-solution frame growth would overflow
    let worker = std::thread::Builder::new()
        .stack_size(64 * 1024)
        .spawn(|| {
            let store = DomainStore::new(vec![
                Domain::from_ints(0..N),
                Domain::from_ints(0..N),
                Domain::from_ints(0..N),
            ]);
            search_tailrec(store).count()
        })
        .unwrap();
    let count = worker.join().map_err(|_| "search thread panicked".to_string())?;
    ensure(count == N as usize, || format!("{count} solutions"))?;
    Ok(format!("{count} solutions on a 64 KiB stack"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 allequal trace reproduction", trace_reproduction),
        ("2 unary join under three engines", making_a_choice),
        ("3 binary join example", join_example),
        ("4 differential join vs nested loops", differential_join),
        ("5 engine equivalence", engine_equivalence),
        ("6 allequal idempotence", idempotence),
        ("7 galloping witness", galloping_witness),
        ("8 semi-naive vs naive", semi_naive),
        ("9 constant-space search", constant_space),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
