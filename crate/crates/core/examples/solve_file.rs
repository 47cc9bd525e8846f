use std::env;
use std::fs;

use paso::ground::ground;
use paso::prefs::{pref_rule_index, rank, relations};
use paso::solver::{answer_sets, SolverConfig};

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| "crates/core/fixtures/nurse_example2.paso".into());
    let mode = env::args().nth(2).unwrap_or_else(|| "maximal".into());
    let text = fs::read_to_string(&path).expect("readable input");
    let program = paso::parse_program(&text).expect("parses");
    let g = ground(&program).expect("grounds");
    let sets = answer_sets(&g, &SolverConfig::default()).expect("solves");
    for (i, h) in sets.iter().enumerate() {
        let idx: Vec<String> = g.pref_rules.iter().map(|r| pref_rule_index(h, r).to_string()).collect();
        println!("h{} [{}]: {h}", i + 1, idx.join(" "));
    }
    let relation = relations().get(&mode).expect("known mode");
    let result = rank(&sets, &g.pref_rules, relation.as_ref());
    println!("strata: {:?}", result.strata);
    println!("issues: {:?}", result.partial_report);
}
