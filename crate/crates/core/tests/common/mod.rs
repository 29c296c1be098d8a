//! Shared fixtures: the bundled course-scheduling instance, its four
//! answer sets, and the hand-checked satisfaction table for its ten
//! ground preference rules.

#![allow(dead_code)]

pub mod classical;
pub mod gen;
pub mod props;

use std::path::PathBuf;

use faso_core::kernel::{FuzzyInterpretation, Literal, PreferenceRule, Program};
use faso_core::parser::parse_program;
use faso_core::preferences::SatOutcome;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn corpus_source(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap()
}

pub fn corpus_program(name: &str) -> Program {
    parse_program(&corpus_source(name)).unwrap()
}

pub fn literal(text: &str) -> Literal {
    parse_program(&format!("{text}:1."))
        .unwrap()
        .generators
        .remove(0)
        .head
        .remove(0)
        .literal
}

pub fn interp(pairs: &[(&str, &str)]) -> FuzzyInterpretation {
    FuzzyInterpretation::from_pairs(
        pairs.iter().map(|(l, g)| (literal(l), g.parse().unwrap())),
    )
    .unwrap()
}

/// The scheduling instance's preference rules, written out against the
/// concrete schedules below (no variables left to instantiate). Rule k
/// gets id `p<k-1>` from the parser.
pub const SCHEDULING_PREFERENCES: &str = "\
#prefer teaches(i1,c1):0.9 > teaches(i1,c2):0.5.
#prefer teaches(i2,c2):0.7 > teaches(i2,c1):0.4.
#prefer at(s1,c1):0.5 || at(s2,c1):0.5 <- teaches(i1,c1):0.9.
#prefer at(s1,c2):0.5 || at(s2,c2):0.5 <- teaches(i1,c2):0.5.
#prefer at(s1,c1):0.9 > at(s2,c1):0.2 <- teaches(i2,c1):0.4.
#prefer at(s1,c2):0.9 > at(s2,c2):0.2 <- teaches(i2,c2):0.7.
#prefer in(r1,c1):0.8 <- teaches(i1,c1):0.9.
#prefer in(r1,c2):0.8 <- teaches(i1,c2):0.5.
#prefer in(r1,c1):0.3 <- teaches(i2,c1):0.4.
#prefer in(r1,c2):0.3 <- teaches(i2,c2):0.7.
";

pub fn scheduling_preference_rules() -> Vec<PreferenceRule> {
    parse_program(SCHEDULING_PREFERENCES).unwrap().preferences
}

/// The four schedules, best-to-worst under the Maximal strategy.
pub fn scheduling_answer_sets() -> [FuzzyInterpretation; 4] {
    [
        interp(&[
            ("teaches(i1,c1)", "0.9"),
            ("teaches(i2,c2)", "0.7"),
            ("at(s1,c1)", "0.5"),
            ("at(s2,c2)", "0.2"),
            ("in(r1,c1)", "0.8"),
            ("in(r1,c2)", "0.3"),
            ("course(c1)", "1"),
            ("course(c2)", "1"),
        ]),
        interp(&[
            ("teaches(i1,c1)", "0.9"),
            ("teaches(i2,c2)", "0.7"),
            ("at(s2,c1)", "0.5"),
            ("at(s1,c2)", "0.9"),
            ("in(r1,c1)", "0.8"),
            ("in(r1,c2)", "0.3"),
            ("course(c1)", "1"),
            ("course(c2)", "1"),
        ]),
        interp(&[
            ("teaches(i1,c2)", "0.5"),
            ("teaches(i2,c1)", "0.4"),
            ("at(s1,c1)", "0.9"),
            ("at(s2,c2)", "0.5"),
            ("in(r1,c1)", "0.3"),
            ("in(r1,c2)", "0.8"),
            ("course(c1)", "1"),
            ("course(c2)", "1"),
        ]),
        interp(&[
            ("teaches(i1,c2)", "0.5"),
            ("teaches(i2,c1)", "0.4"),
            ("at(s2,c1)", "0.2"),
            ("at(s1,c2)", "0.5"),
            ("in(r1,c1)", "0.3"),
            ("in(r1,c2)", "0.8"),
            ("course(c1)", "1"),
            ("course(c2)", "1"),
        ]),
    ]
}

/// Satisfaction of each of the ten preference rules by each schedule,
/// checked by hand against the rules above. Row k is schedule k+1,
/// column j is rule `p<j>`.
pub fn satisfaction_table() -> [[SatOutcome; 10]; 4] {
    use SatOutcome::{Irr, Sat};
    [
        [Sat(1), Sat(1), Sat(1), Irr, Irr, Sat(2), Sat(1), Irr, Irr, Sat(1)],
        [Sat(1), Sat(1), Sat(1), Irr, Irr, Sat(1), Sat(1), Irr, Irr, Sat(1)],
        [Sat(2), Sat(2), Irr, Sat(1), Sat(1), Irr, Irr, Sat(1), Sat(1), Irr],
        [Sat(2), Sat(2), Irr, Sat(1), Sat(2), Irr, Irr, Sat(1), Sat(1), Irr],
    ]
}
