mod common;

use common::props::{CASES, SUITES};

fn run(name: &str) {
    let (_, suite) = SUITES.iter().find(|(n, _)| *n == name).expect("suite");
    if let Err(e) = suite(CASES) {
        panic!("{name}: {e}");
    }
}

#[test]
fn involutions() {
    run("invert and mirror involutions");
}

#[test]
fn common_multiple_identity() {
    run("common multiple identity");
}

#[test]
fn one_side_empty() {
    run("one side empty");
}

#[test]
fn strategy_independence() {
    run("strategy independence");
}

#[test]
fn left_cancellation() {
    run("left cancellation");
}

#[test]
fn sign_antisymmetry() {
    run("sign antisymmetry");
}

#[test]
fn sign_trichotomy_and_consistency() {
    run("sign trichotomy and consistency");
}

#[test]
fn sign_left_invariance() {
    run("sign left invariance");
}

#[test]
fn positive_cone() {
    run("positive cone");
}

#[test]
fn fraction_validity() {
    run("fraction validity");
}

#[test]
fn word_problem_against_faithful_action() {
    run("word problem against a faithful action");
}

#[test]
fn certificate_replay() {
    run("certificate replay");
}
