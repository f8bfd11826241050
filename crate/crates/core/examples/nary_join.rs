// Plans and runs a three-way join with a repeated variable and a constant,
// then checks the result against the nested-loop oracle.
//
//     cargo run --example nary_join

use std::collections::BTreeSet;
use std::error::Error;

use cpjoin::datalog::{parse_program, parse_query, prepare_catalog};
use cpjoin::join::{execute, plan, Engine};
use cpjoin::oracle::nested_loop_join;
use cpjoin::{Catalog, SymbolTable};

const FACTS: &str = "
    edge(1,2). edge(2,3). edge(3,1). edge(3,4). edge(4,4).
    color(1,red). color(2,blue). color(3,red). color(4,red).
";

pub fn run_example() -> Result<(String, Vec<String>), Box<dyn Error>> {
    let mut symbols = SymbolTable::new();
    let catalog = prepare_catalog(&parse_program(FACTS)?, Catalog::new())?;
    let body = parse_query("edge(X,Y), edge(Y,Z), color(Z,red)", &mut symbols)?;
    let plan = plan(&body, &catalog)?;

    let rows: Vec<_> = execute(&plan, Engine::Leapfrog).collect();
    let oracle = nested_loop_join(&body, &catalog)?;
    if rows.iter().cloned().collect::<BTreeSet<_>>() != oracle {
        return Err("join disagrees with oracle".into());
    }
    let lines = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            cells.join("\t")
        })
        .collect();
    Ok((plan.to_string(), lines))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let (explain, rows) = run_example()?;
    print!("{explain}");
    println!("X\tY\tZ");
    for r in rows {
        println!("{r}");
    }
    Ok(())
}
