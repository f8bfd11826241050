// Drives the `run` command in-process with facts loaded from CSV files.
//
//     cargo run --example csv_facts

use std::error::Error;
use std::fs;

use cpjoin::cli::{run, EngineChoice, FactSource, RunConfig};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("cpjoin-csv-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("p.csv"), "a,b\nc,d\ne,f\n")?;
    fs::write(dir.join("q.csv"), "a,1\nc,2\ng,3\n")?;
    fs::write(dir.join("join.dl"), "pq(X,Y,Z) :- p(X,Y), q(X,Z).\n")?;

    let mut cfg = RunConfig::new(dir.join("join.dl"));
    cfg.facts = vec![
        format!("{}:p", dir.join("p.csv").display()).parse::<FactSource>()?,
        format!("{}:q", dir.join("q.csv").display()).parse::<FactSource>()?,
    ];
    cfg.engine = EngineChoice::Generic;
    let out = run(&cfg);
    fs::remove_dir_all(&dir)?;
    if out.status != 0 {
        return Err(out.stderr.into());
    }
    Ok(out.stdout)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    // % pq/3
    // a	b	1
    // c	d	2
    Ok(())
}
