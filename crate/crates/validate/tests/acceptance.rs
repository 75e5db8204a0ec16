//! One line per acceptance criterion; fails if any criterion is red.

#[test]
fn acceptance() {
    let outcomes = qtor_validate::evaluate().expect("grid runs without sampling errors");
    println!();
    for o in &outcomes {
        println!("{o}");
    }
    let red: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    assert!(red.is_empty(), "criteria {red:?} failed");
}
