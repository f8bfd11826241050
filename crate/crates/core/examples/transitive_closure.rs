// Transitive closure of a small graph by semi-naive evaluation, with the
// number of new facts per round.
//
//     cargo run --example transitive_closure

use std::error::Error;

use cpjoin::datalog::{parse_program, EvalStats, Evaluator};
use cpjoin::join::Engine;
use cpjoin::oracle::naive_eval;
use cpjoin::Catalog;

const PROGRAM: &str = "
    e(1,2). e(2,3). e(3,4). e(4,2).
    t(X,Y) :- e(X,Y).
    t(X,Z) :- e(X,Y), t(Y,Z).
";

pub fn run_example() -> Result<(usize, EvalStats), Box<dyn Error>> {
    let program = parse_program(PROGRAM)?;
    let (catalog, stats) = Evaluator::new(Engine::Leapfrog).run(&program, Catalog::new())?;
    let naive = naive_eval(&program, Catalog::new())?;
    let t = catalog.get("t").ok_or("t not derived")?;
    if t.tuples() != naive.get("t").ok_or("t not derived")?.tuples() {
        return Err("semi-naive and naive evaluation disagree".into());
    }
    Ok((t.len(), stats))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let (pairs, stats) = run_example()?;
    println!("{pairs} reachable pairs in {} rounds", stats.rounds);
    println!("new facts per round: {:?}", stats.new_facts);
    Ok(())
}
