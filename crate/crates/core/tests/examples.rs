macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }
    };
}

example!(allequal_trace);
example!(unary_engines);
example!(leapfrog_galloping);
example!(trie_navigation);
example!(nary_join);
example!(transitive_closure);
example!(csv_facts);

#[test]
fn allequal_trace_runs() {
    let lines = allequal_trace::run_example().unwrap();
    assert_eq!(lines[0], "initial order [v0, v2, v1]");
    assert_eq!(lines.iter().filter(|l| l.starts_with("raise")).count(), 4);
}

#[test]
fn unary_engines_agree() {
    let [g, _, _] = unary_engines::run_example().unwrap();
    assert_eq!(g, [cpjoin::Value::Int(4), cpjoin::Value::Int(10)]);
}

#[test]
fn leapfrog_galloping_is_flat() {
    for (_, ops) in leapfrog_galloping::run_example().unwrap() {
        assert!(ops <= 2);
    }
}

#[test]
fn trie_navigation_runs() {
    let lines = trie_navigation::run_example().unwrap();
    assert_eq!(lines.last().unwrap(), "children of 1: 3 4");
}

#[test]
fn nary_join_matches_oracle() {
    let (explain, rows) = nary_join::run_example().unwrap();
    assert!(explain.contains("class"));
    assert!(!rows.is_empty());
}

#[test]
fn transitive_closure_runs() {
    let (pairs, stats) = transitive_closure::run_example().unwrap();
    // node 1 reaches 2,3,4; each of 2,3,4 reaches all of 2,3,4
    assert_eq!(pairs, 12);
    assert_eq!(stats.new_facts.last(), Some(&0));
}

#[test]
fn csv_facts_runs() {
    assert_eq!(csv_facts::run_example().unwrap(), "% pq/3\na\tb\t1\nc\td\t2\n");
}
