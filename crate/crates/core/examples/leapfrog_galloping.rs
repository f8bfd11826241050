// Joins {1..k} with {k+1..2k} and counts iterator operations. The first
// seek lands past the end of the lower list, so the count stays flat as k
// grows.
//
//     cargo run --release --example leapfrog_galloping

use std::error::Error;

use cpjoin::iter::Instrumented;
use cpjoin::lftj::leapfrog_join;
use cpjoin::Domain;

pub fn run_example() -> Result<Vec<(i64, usize)>, Box<dyn Error>> {
    let mut counts = Vec::new();
    for k in [100i64, 10_000, 1_000_000] {
        let iters = vec![
            Instrumented::new(Domain::from_ints(1..=k)),
            Instrumented::new(Domain::from_ints(k + 1..=2 * k)),
        ];
        let mut join = leapfrog_join(iters);
        if join.next().is_some() {
            return Err("disjoint ranges produced a match".into());
        }
        let ops = join.iters().iter().map(|i| i.counts().total()).sum();
        counts.push((k, ops));
    }
    Ok(counts)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    for (k, ops) in run_example()? {
        println!("k = {k:>9}: {ops} seek/next call(s)");
    }
    Ok(())
}
