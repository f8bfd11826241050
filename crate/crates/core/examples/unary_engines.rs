// Intersects three sorted lists with each of the three engines: the
// generic propagate-and-branch solver, its loop form, and Leapfrog.
//
//     cargo run --example unary_engines

use std::error::Error;

use cpjoin::cp::generic_intersection;
use cpjoin::lftj::{leapfrog_join, search_tailrec};
use cpjoin::{Domain, DomainStore, Value};

pub fn run_example() -> Result<[Vec<Value>; 3], Box<dyn Error>> {
    let domains = vec![
        Domain::from_ints([1, 2, 3, 4, 9, 10, 11]),
        Domain::from_ints([3, 4, 7, 10]),
        Domain::from_ints([1, 4, 7, 10, 11]),
    ];
    let generic: Vec<Value> = generic_intersection(domains.clone(), None).collect();
    let tailrec: Vec<Value> = search_tailrec(DomainStore::new(domains.clone()))
        .map(|binding| binding[0].clone())
        .collect();
    let leapfrog: Vec<Value> = leapfrog_join(domains).collect();
    if generic != tailrec || tailrec != leapfrog {
        return Err("engines disagree".into());
    }
    Ok([generic, tailrec, leapfrog])
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let [generic, tailrec, leapfrog] = run_example()?;
    println!("generic  {generic:?}");
    println!("tailrec  {tailrec:?}");
    println!("leapfrog {leapfrog:?}");
    Ok(())
}
