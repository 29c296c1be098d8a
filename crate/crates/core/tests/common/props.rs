//! Randomized cross-checking suites, shared between the property tests
//! and the acceptance gate. Each suite panics on the first violation,
//! naming the seed so the case reproduces.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use faso_core::grounder::{ground_program, GroundOptions};
use faso_core::kernel::{
    AnnotatedLiteral, Annotation, Atom, Combination, FuzzyInterpretation, GeneratorRule, Grade,
    Literal, PreferenceRule,
};
use faso_core::parser::parse_program;
use faso_core::preferences::{
    compare_rule, holds_combination, maximal_compare, pareto_compare, rank, ComparisonOutcome,
    Strategy,
};
use faso_core::solver::{
    enumerate_answer_sets, fuzzy_reduct, is_answer_set, satisfies_program, Engine, SolveOptions,
    SolveReport,
};
use faso_core::translator::{
    to_dnf, translate, verify_translation, TranslateOptions, AUX_PREFIX,
};

use super::gen;
use super::{corpus_program, scheduling_answer_sets, scheduling_preference_rules};

fn rendered(report: &SolveReport) -> Vec<String> {
    report.answer_sets.iter().map(|i| i.to_string()).collect()
}

fn render_rules(rules: &[GeneratorRule]) -> Vec<String> {
    rules.iter().map(|r| r.to_string()).collect()
}

fn rule_literals(rule: &GeneratorRule) -> impl Iterator<Item = &AnnotatedLiteral> {
    rule.head.iter().chain(&rule.pos_body).chain(&rule.neg_body)
}

/// Both engines return the same answer sets on every generated program.
pub fn engine_agreement(cases: u64) {
    let options = SolveOptions::default();
    for seed in 0..cases {
        let source = gen::fuzzy_generators(seed);
        let rules = parse_program(&source).unwrap().generators;
        let split = enumerate_answer_sets(&rules, Engine::Split, &options).unwrap();
        let brute = enumerate_answer_sets(&rules, Engine::Brute, &options).unwrap();
        assert_eq!(
            rendered(&split),
            rendered(&brute),
            "engines disagree on seed {seed}:\n{source}"
        );
    }
}

fn arbitrary_interpretation(rules: &[GeneratorRule], seed: u64) -> FuzzyInterpretation {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed ^ 0xab);
    let literals: BTreeSet<Literal> = rules
        .iter()
        .flat_map(rule_literals)
        .map(|al| al.literal.clone())
        .collect();
    let mut interpretation = FuzzyInterpretation::empty();
    for literal in literals {
        if let Some(grade) = ["0.3", "0.6", "1"].get(rng.gen_range(0..4)) {
            interpretation.raise(&literal, &grade.parse().unwrap());
        }
    }
    interpretation
}

/// The reduct is the whole program when nothing is negated, and taking
/// it twice changes nothing.
pub fn reduct_laws(cases: u64) {
    for seed in 0..cases {
        let positive = parse_program(&gen::fuzzy_generators_positive(seed)).unwrap().generators;
        let interpretation = arbitrary_interpretation(&positive, seed);
        assert_eq!(
            render_rules(&fuzzy_reduct(&positive, &interpretation)),
            render_rules(&positive),
            "seed {seed}"
        );

        let rules = parse_program(&gen::fuzzy_generators(seed)).unwrap().generators;
        let interpretation = arbitrary_interpretation(&rules, seed);
        let once = fuzzy_reduct(&rules, &interpretation);
        let twice = fuzzy_reduct(&once, &interpretation);
        assert_eq!(render_rules(&twice), render_rules(&once), "seed {seed}");
    }
}

/// Exhaustive check that nothing below `interpretation` models the
/// reduct: every supported literal ranges over the grades its predicate
/// can take, bounded by its current grade.
fn no_smaller_model(
    rules: &[GeneratorRule],
    reduct: &[GeneratorRule],
    interpretation: &FuzzyInterpretation,
) -> bool {
    let mut pool: BTreeMap<String, BTreeSet<Grade>> = BTreeMap::new();
    for al in rules.iter().flat_map(rule_literals) {
        pool.entry(al.literal.atom.predicate.clone())
            .or_default()
            .insert(al.annotation.eval_ground().unwrap());
    }
    for grades in pool.values_mut() {
        grades.insert(Grade::one());
    }

    let support: Vec<(Literal, Grade)> =
        interpretation.support().map(|(l, g)| (l.clone(), g.clone())).collect();
    let domains: Vec<Vec<Grade>> = support
        .iter()
        .map(|(literal, bound)| {
            let mut domain = vec![Grade::zero()];
            domain.extend(
                pool[&literal.atom.predicate].iter().filter(|g| *g <= bound).cloned(),
            );
            domain.dedup();
            domain
        })
        .collect();

    let mut counter = vec![0usize; support.len()];
    loop {
        let mut point = FuzzyInterpretation::empty();
        for (i, (literal, _)) in support.iter().enumerate() {
            let grade = &domains[i][counter[i]];
            if !grade.is_zero() {
                point.raise(literal, grade);
            }
        }
        if point != *interpretation && satisfies_program(&point, reduct) {
            return false;
        }
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < domains[pos].len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Every answer set the solver returns is consistent, models its own
/// reduct, and has nothing smaller that does.
pub fn minimality_of_returned_answer_sets(cases: u64) {
    let options = SolveOptions::default();
    for seed in 0..cases {
        let source = gen::fuzzy_generators(seed);
        let rules = parse_program(&source).unwrap().generators;
        let report = enumerate_answer_sets(&rules, Engine::Split, &options).unwrap();
        for interpretation in &report.answer_sets {
            assert!(interpretation.is_consistent(), "seed {seed}: {interpretation}");
            let reduct = fuzzy_reduct(&rules, interpretation);
            assert!(
                satisfies_program(interpretation, &reduct),
                "seed {seed}: {interpretation} fails its reduct\n{source}"
            );
            assert!(
                no_smaller_model(&rules, &reduct, interpretation),
                "seed {seed}: {interpretation} is not minimal\n{source}"
            );
            assert!(is_answer_set(&rules, interpretation), "seed {seed}: {interpretation}");
        }
    }
}

/// Reflexivity, swap symmetry, and antisymmetry of every comparison,
/// plus rank tiers forming a partition.
pub fn comparison_laws(cases: u64) {
    let options = SolveOptions::default();
    for seed in 0..cases {
        let source = gen::fuzzy_optimization(seed);
        let program = parse_program(&source).unwrap();
        let report =
            enumerate_answer_sets(&program.generators, Engine::Split, &options).unwrap();
        let sets = &report.answer_sets;

        for a in sets {
            for rule in &program.preferences {
                assert_eq!(compare_rule(a, a, rule), ComparisonOutcome::Equal, "seed {seed}");
            }
            assert_eq!(pareto_compare(a, a, &program.preferences), ComparisonOutcome::Equal);
            assert_eq!(maximal_compare(a, a, &program.preferences), ComparisonOutcome::Equal);
        }
        for a in sets {
            for b in sets {
                for rule in &program.preferences {
                    let forward = compare_rule(a, b, rule);
                    assert_eq!(forward.flipped(), compare_rule(b, a, rule), "seed {seed}");
                }
                let pareto = pareto_compare(a, b, &program.preferences);
                assert_eq!(pareto.flipped(), pareto_compare(b, a, &program.preferences));
                let maximal = maximal_compare(a, b, &program.preferences);
                assert_eq!(maximal.flipped(), maximal_compare(b, a, &program.preferences));
                assert_ne!(maximal, ComparisonOutcome::Incomparable, "seed {seed}");
            }
        }

        for strategy in [Strategy::Pareto, Strategy::Maximal] {
            let ranked = rank(sets, &program.preferences, strategy);
            let mut seen: Vec<usize> = ranked.tiers.concat();
            seen.sort_unstable();
            assert_eq!(seen, (0..sets.len()).collect::<Vec<_>>(), "seed {seed}");
        }
    }
}

fn check_strictness_pairs(sets: &[FuzzyInterpretation], rules: &[PreferenceRule]) {
    for a in sets {
        for b in sets {
            if pareto_compare(a, b, rules) == ComparisonOutcome::FirstStrict {
                assert_eq!(
                    maximal_compare(a, b, rules),
                    ComparisonOutcome::FirstStrict,
                    "{a} vs {b}"
                );
            }
        }
    }
}

/// A Pareto-strict win always carries over to the Maximal strategy —
/// on the bundled instance and on random programs.
pub fn pareto_strict_implies_maximal_strict(cases: u64) {
    let options = SolveOptions::default();

    let scheduling =
        ground_program(&corpus_program("scheduling.faso"), &GroundOptions::default()).unwrap();
    check_strictness_pairs(&scheduling_answer_sets(), &scheduling.preferences);
    check_strictness_pairs(&scheduling_answer_sets(), &scheduling_preference_rules());

    let neutral = corpus_program("intro_neutral.faso");
    let report = enumerate_answer_sets(&neutral.generators, Engine::Split, &options).unwrap();
    check_strictness_pairs(&report.answer_sets, &neutral.preferences);

    for seed in 0..cases {
        let program = parse_program(&gen::fuzzy_optimization(seed)).unwrap();
        let report =
            enumerate_answer_sets(&program.generators, Engine::Split, &options).unwrap();
        check_strictness_pairs(&report.answer_sets, &program.preferences);
    }
}

fn random_combination(rng: &mut ChaCha8Rng, leaves: usize) -> Combination {
    const NAMES: [&str; 10] = ["t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"];
    if leaves == 1 {
        let al = AnnotatedLiteral::new(
            Literal::positive(Atom::new(NAMES[rng.gen_range(0..NAMES.len())], Vec::new())),
            Annotation::Const(Grade::one()),
        );
        return if rng.gen_bool(0.3) { Combination::Naf(al) } else { Combination::Lit(al) };
    }
    let left = rng.gen_range(1..leaves);
    let (l, r) = (random_combination(rng, left), random_combination(rng, leaves - left));
    if rng.gen_bool(0.5) {
        Combination::and(l, r)
    } else {
        Combination::or(l, r)
    }
}

/// Compiling preferences away preserves the whole story: bijective
/// answer sets, agreeing satisfaction outcomes, and per answer set and
/// rule exactly one of the `sat`/`irr` marker families derived.
pub fn translation_verification(cases: u64) {
    let solve_options = SolveOptions::default();
    let translate_options = TranslateOptions::default();

    let mut programs: Vec<(String, faso_core::kernel::Program)> = (0..cases)
        .map(|seed| {
            let source = gen::fuzzy_optimization(seed);
            let program = parse_program(&source).unwrap();
            (format!("seed {seed}:\n{source}"), program)
        })
        .collect();
    for name in ["intro.faso", "intro_neutral.faso", "constraints.faso", "scheduling.faso"] {
        let ground = ground_program(&corpus_program(name), &GroundOptions::default()).unwrap();
        programs.push((name.to_string(), ground));
    }

    for (label, program) in &programs {
        let report =
            verify_translation(program, &translate_options, &solve_options).unwrap();
        assert!(report.all_matched(), "{label}");
        assert_eq!(report.checks.len(), {
            let sets = enumerate_answer_sets(&program.generators, Engine::Split, &solve_options)
                .unwrap()
                .answer_sets
                .len();
            sets * program.preferences.len()
        });

        // Marker exclusivity on the compiled side.
        let translation = translate(program, &translate_options).unwrap();
        let compiled =
            enumerate_answer_sets(&translation.program.generators, Engine::Split, &solve_options)
                .unwrap();
        for image in &compiled.answer_sets {
            for rule in &program.preferences {
                let rid = rule.id.as_str().replace('.', "_");
                let irr = image
                    .support()
                    .any(|(l, _)| l.atom.predicate == format!("{AUX_PREFIX}sat_{rid}_irr"));
                let sat_prefix = format!("{AUX_PREFIX}sat_{rid}_");
                let some_index = image.support().any(|(l, _)| {
                    l.atom.predicate.starts_with(&sat_prefix)
                        && l.atom.predicate[sat_prefix.len()..].parse::<usize>().is_ok()
                });
                assert_ne!(irr, some_index, "{label}: rule {rid} in {image}");
            }
        }
    }
}

/// The disjunctive normal form holds exactly when the original
/// combination does, over every truth assignment to its atoms.
pub fn dnf_equivalence(cases: u64) {
    let options = TranslateOptions::default();
    for seed in 0..cases {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed ^ 0xd4f);
        let leaves = rng.gen_range(1..=10);
        let combination = random_combination(rng, leaves);
        let clauses = to_dnf(&combination, &options).unwrap();

        let atoms: BTreeSet<String> = combination
            .literals()
            .into_iter()
            .map(|al| al.literal.atom.predicate.clone())
            .collect();
        let atoms: Vec<String> = atoms.into_iter().collect();
        for bits in 0..(1u32 << atoms.len()) {
            let mut interpretation = FuzzyInterpretation::empty();
            for (k, name) in atoms.iter().enumerate() {
                if bits & (1 << k) != 0 {
                    interpretation
                        .raise(&Literal::positive(Atom::new(name.as_str(), Vec::new())), &Grade::one());
                }
            }
            assert_eq!(
                holds_combination(&interpretation, &combination),
                clauses.holds(&interpretation),
                "seed {seed}, assignment {bits:b}"
            );
        }
    }
}
