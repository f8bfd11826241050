// Builds a trie over a ternary relation and walks it with open/up/seek.
//
//     cargo run --example trie_navigation

use std::error::Error;
use std::sync::Arc;

use cpjoin::trie::{TrieIterator, TrieRelation};
use cpjoin::{LinearIterator, Value};

fn row(v: [i64; 3]) -> Vec<Value> {
    v.into_iter().map(Value::Int).collect()
}

pub fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let tuples = [[1, 3, 4], [1, 3, 5], [1, 4, 6], [1, 4, 8], [3, 5, 2], [7, 1, 1]].map(row);
    let trie = Arc::new(TrieRelation::build("r", tuples.iter(), &[0, 1, 2])?);
    let mut out = Vec::new();

    let mut it = TrieIterator::new(trie);
    it.open();
    it.seek(&Value::Int(2));
    out.push(format!("seek 2 at depth {} -> {:?}", it.depth(), it.key()));

    it.up();
    it.open();
    // first key of the root level, then its children
    out.push(format!("depth {} key {:?}", it.depth(), it.key()));
    it.open();
    let mut second = Vec::new();
    while let Some(k) = it.key() {
        second.push(k.to_string());
        it.next();
    }
    out.push(format!("children of 1: {}", second.join(" ")));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
