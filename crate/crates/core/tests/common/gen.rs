//! Seeded random program generation for the cross-checking suites.
//! Everything is deterministic in the seed, so failures reproduce.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classical::{Combo, PrefRule, Rule};

const ATOMS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const GRADES: [&str; 3] = ["0.3", "0.6", "1"];

fn grade(rng: &mut ChaCha8Rng) -> &'static str {
    GRADES.choose(rng).unwrap()
}

fn atom(rng: &mut ChaCha8Rng, atoms: usize) -> &'static str {
    ATOMS[..atoms].choose(rng).unwrap()
}

fn literal(rng: &mut ChaCha8Rng, atoms: usize, classical_neg: bool) -> String {
    let sign = if classical_neg && rng.gen_bool(0.2) { "-" } else { "" };
    format!("{sign}{}", atom(rng, atoms))
}

fn generator_rules(
    rng: &mut ChaCha8Rng,
    atoms: usize,
    max_rules: usize,
    classical_neg: bool,
    naf: bool,
) -> String {
    let mut source = String::new();
    for _ in 0..rng.gen_range(1..=max_rules) {
        let head: Vec<String> = (0..rng.gen_range(1..=2))
            .map(|_| format!("{}:{}", literal(rng, atoms, classical_neg), grade(rng)))
            .collect();
        let mut body: Vec<String> = (0..rng.gen_range(0..=2))
            .map(|_| format!("{}:{}", literal(rng, atoms, classical_neg), grade(rng)))
            .collect();
        if naf && rng.gen_bool(0.4) {
            body.push(format!("not {}:{}", literal(rng, atoms, classical_neg), grade(rng)));
        }
        source.push_str(&head.join(" v "));
        if !body.is_empty() {
            source.push_str(" <- ");
            source.push_str(&body.join(", "));
        }
        source.push_str(".\n");
    }
    source
}

/// Graded programs exercising disjunction, classical negation, and
/// negation as failure; small enough for the exhaustive engine.
pub fn fuzzy_generators(seed: u64) -> String {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let atoms = rng.gen_range(2..=4);
    generator_rules(rng, atoms, 5, true, true)
}

/// Negation-free variant (no `not`, no classical negation).
pub fn fuzzy_generators_positive(seed: u64) -> String {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let atoms = rng.gen_range(2..=4);
    generator_rules(rng, atoms, 5, false, false)
}

/// Generators plus graded preference rules.
pub fn fuzzy_optimization(seed: u64) -> String {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed ^ 0x51ed_2701);
    let atoms = rng.gen_range(2..=4);
    let mut source = generator_rules(rng, atoms, 4, false, true);
    for _ in 0..rng.gen_range(1..=3) {
        let combos: Vec<String> = (0..rng.gen_range(1..=3))
            .map(|_| match rng.gen_range(0..4) {
                0 => format!("{}:{}", atom(rng, atoms), grade(rng)),
                1 => format!("not {}:{}", atom(rng, atoms), grade(rng)),
                2 => format!(
                    "{}:{} && {}:{}",
                    atom(rng, atoms),
                    grade(rng),
                    atom(rng, atoms),
                    grade(rng)
                ),
                _ => format!(
                    "{}:{} || {}:{}",
                    atom(rng, atoms),
                    grade(rng),
                    atom(rng, atoms),
                    grade(rng)
                ),
            })
            .collect();
        source.push_str("#prefer ");
        source.push_str(&combos.join(" > "));
        if rng.gen_bool(0.6) {
            source.push_str(&format!(" <- {}:{}", atom(rng, atoms), grade(rng)));
            if rng.gen_bool(0.3) {
                source.push_str(&format!(", not {}:{}", atom(rng, atoms), grade(rng)));
            }
        }
        source.push_str(".\n");
    }
    source
}

pub struct BooleanCase {
    pub rules: Vec<Rule>,
    pub prefs: Vec<PrefRule>,
    pub atoms: Vec<String>,
    pub source: String,
}

fn boolean_combo(rng: &mut ChaCha8Rng, atoms: usize) -> Combo {
    let leaf = |rng: &mut ChaCha8Rng| {
        let name = atom(rng, atoms).to_string();
        if rng.gen_bool(0.3) {
            Combo::Not(name)
        } else {
            Combo::Atom(name)
        }
    };
    match rng.gen_range(0..3) {
        0 => leaf(rng),
        1 => Combo::And(Box::new(leaf(rng)), Box::new(leaf(rng))),
        _ => Combo::Or(Box::new(leaf(rng)), Box::new(leaf(rng))),
    }
}

fn render_combo(combo: &Combo) -> String {
    match combo {
        Combo::Atom(a) => format!("{a}:1"),
        Combo::Not(a) => format!("not {a}:1"),
        Combo::And(l, r) => format!("{} && {}", render_combo(l), render_combo(r)),
        Combo::Or(l, r) => format!("{} || {}", render_combo(l), render_combo(r)),
    }
}

/// A program over plain atoms with every annotation equal to 1, built
/// side by side as oracle structures and as concrete source text.
pub fn boolean_case(seed: u64) -> BooleanCase {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed ^ 0xc0ff_ee11);
    let n_atoms = rng.gen_range(2..=8);
    let atoms: Vec<String> = ATOMS[..n_atoms].iter().map(|a| a.to_string()).collect();

    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let head: Vec<String> =
            (0..rng.gen_range(1..=2)).map(|_| atom(rng, n_atoms).to_string()).collect();
        let pos: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|_| atom(rng, n_atoms).to_string()).collect();
        let neg: Vec<String> = if rng.gen_bool(0.4) {
            vec![atom(rng, n_atoms).to_string()]
        } else {
            Vec::new()
        };
        rules.push(Rule { head, pos, neg });
    }

    let mut prefs = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let combos: Vec<Combo> =
            (0..rng.gen_range(1..=3)).map(|_| boolean_combo(rng, n_atoms)).collect();
        let pos: Vec<String> = if rng.gen_bool(0.5) {
            vec![atom(rng, n_atoms).to_string()]
        } else {
            Vec::new()
        };
        let neg: Vec<String> = if rng.gen_bool(0.3) {
            vec![atom(rng, n_atoms).to_string()]
        } else {
            Vec::new()
        };
        prefs.push(PrefRule { combos, pos, neg });
    }

    let mut source = String::new();
    for rule in &rules {
        let head: Vec<String> = rule.head.iter().map(|a| format!("{a}:1")).collect();
        source.push_str(&head.join(" v "));
        let mut body: Vec<String> = rule.pos.iter().map(|a| format!("{a}:1")).collect();
        body.extend(rule.neg.iter().map(|a| format!("not {a}:1")));
        if !body.is_empty() {
            source.push_str(" <- ");
            source.push_str(&body.join(", "));
        }
        source.push_str(".\n");
    }
    for pref in &prefs {
        let combos: Vec<String> = pref.combos.iter().map(render_combo).collect();
        source.push_str("#prefer ");
        source.push_str(&combos.join(" > "));
        let mut body: Vec<String> = pref.pos.iter().map(|a| format!("{a}:1")).collect();
        body.extend(pref.neg.iter().map(|a| format!("not {a}:1")));
        if !body.is_empty() {
            source.push_str(" <- ");
            source.push_str(&body.join(", "));
        }
        source.push_str(".\n");
    }

    BooleanCase { rules, prefs, atoms, source }
}
