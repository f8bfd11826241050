// Runs the equality propagator on three integer domains and prints every
// lower-bound raise it performs.
//
//     cargo run --example allequal_trace

use std::error::Error;

use cpjoin::cp::{allequal, VarMap};
use cpjoin::{Domain, DomainStore, VarId};

pub fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let mut store = DomainStore::new(vec![
        Domain::from_ints([1, 2, 3, 4, 9, 10, 11]),
        Domain::from_ints([3, 4, 7, 10]),
        Domain::from_ints([1, 4, 7, 10, 11]),
    ]);
    let vars = [VarId(0), VarId(1), VarId(2)];
    let order = VarMap::sorted(&store, &vars);
    let names: Vec<String> = order.slots().iter().map(ToString::to_string).collect();
    let mut lines = vec![format!("initial order [{}]", names.join(", "))];

    allequal(&mut store, &vars, |e| lines.push(e.to_string())).ok_or("no common value")?;
    for x in store.vars() {
        lines.push(format!("{x} = {:?}", store.get(x)));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    // initial order [v0, v2, v1]
    // raise v0 1 -> 3 (l_max 3)
    // raise v2 1 -> 4 (l_max 3)
    // raise v1 3 -> 4 (l_max 4)
    // raise v0 3 -> 4 (l_max 4)
    // v0 = {4, 9, 10, 11}
    // ...
    Ok(())
}
