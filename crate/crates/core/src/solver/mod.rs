//! Answer-set semantics for ground generator programs.
//!
//! An interpretation satisfies `A:μ` when `μ ≤ I(A)` and `not A:μ` when
//! `μ ≰ I(A)`; a rule is satisfied when a satisfied body implies some
//! satisfied head disjunct. The reduct of a program with respect to `I`
//! keeps exactly the rules whose negative body `I` leaves unblocked,
//! stripped of that negative body, and `I` is an answer set when it is a
//! minimal fuzzy model of its own reduct.
//!
//! Two enumeration engines are kept side by side on purpose. The split
//! engine stratifies the literal dependency graph and searches lazily
//! over head-disjunct choices and negative-literal assumptions; the brute
//! engine walks the whole vocabulary lattice and filters by
//! [`is_answer_set`]. The brute engine is the reference oracle: it stays
//! in the crate permanently and the test suite holds the two engines to
//! identical output.
//!
//! Program satisfaction checks, in addition to per-rule satisfaction,
//! that each atom's grade dominates the strongest satisfied head
//! occurrence among fired rules. That condition follows from per-disjunct
//! satisfaction and has never changed a verdict here; it is kept because
//! the semantics states it.
//!
//! Interpretations that support both a literal and its classical
//! complement are rejected as answer-set candidates.

mod brute;
mod split;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::kernel::{Annotation, FuzzyInterpretation, GeneratorRule, Grade, Literal, RuleId};

/// Resource failure while solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// A fixpoint loop ran longer than the configured cap. With constant
    /// annotations every raise loop terminates well under any sane cap,
    /// so in practice this surfaces only with very small configured caps.
    #[error("fixpoint computation did not stabilize within {limit} iterations")]
    IterationCapExceeded { limit: u64 },
    /// The brute engine's candidate space is larger than the configured cap.
    #[error("candidate space of about {estimated} interpretations exceeds the cap of {limit}")]
    CandidateSpaceExceeded { estimated: u128, limit: u64 },
}

/// Which enumeration engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Stratified search over head choices and negation assumptions.
    Split,
    /// Exhaustive walk of the vocabulary lattice; the reference oracle.
    Brute,
}

/// Resource limits for solving.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Cap on sweeps of any single fixpoint loop (default 10000).
    pub iteration_cap: u64,
    /// Cap on the brute engine's candidate space (default 1000000).
    pub candidate_cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { iteration_cap: 10_000, candidate_cap: 1_000_000 }
    }
}

/// Work performed during one enumeration.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// Candidate interpretations that reached the answer-set check.
    pub candidates_examined: u64,
    /// Total fixpoint sweeps across the whole search.
    pub fixpoint_iterations: u64,
    pub elapsed: Duration,
}

/// The answer sets of a program, in deterministic order.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Duplicate-free, sorted by rendered support text.
    pub answer_sets: Vec<FuzzyInterpretation>,
    pub stats: SolveStats,
}

/// One choice of head disjunct per rule, the unit the positive-program
/// model search branches over. Indices are within the rule's head length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitSelection(pub BTreeMap<RuleId, usize>);

/// `true` iff a satisfied body implies a satisfied head disjunct.
pub fn satisfies_rule(interpretation: &FuzzyInterpretation, rule: &GeneratorRule) -> bool {
    let body = rule
        .pos_body
        .iter()
        .all(|al| interpretation.satisfies(&al.literal, &resolved(&al.annotation)))
        && rule
            .neg_body
            .iter()
            .all(|al| !interpretation.satisfies(&al.literal, &resolved(&al.annotation)));
    !body
        || rule
            .head
            .iter()
            .any(|al| interpretation.satisfies(&al.literal, &resolved(&al.annotation)))
}

/// Every rule satisfied, plus the per-atom dominance check over satisfied
/// head occurrences of fired rules (see the module docs).
pub fn satisfies_program(interpretation: &FuzzyInterpretation, rules: &[GeneratorRule]) -> bool {
    if !rules.iter().all(|r| satisfies_rule(interpretation, r)) {
        return false;
    }
    let mut strongest: HashMap<&Literal, Grade> = HashMap::new();
    for rule in rules {
        let fired = rule
            .pos_body
            .iter()
            .all(|al| interpretation.satisfies(&al.literal, &resolved(&al.annotation)))
            && rule
                .neg_body
                .iter()
                .all(|al| !interpretation.satisfies(&al.literal, &resolved(&al.annotation)));
        if !fired {
            continue;
        }
        for al in &rule.head {
            let grade = resolved(&al.annotation);
            if interpretation.satisfies(&al.literal, &grade) {
                let entry = strongest.entry(&al.literal).or_insert_with(Grade::zero);
                if grade > *entry {
                    *entry = grade;
                }
            }
        }
    }
    strongest.iter().all(|(literal, grade)| interpretation.satisfies(literal, grade))
}

/// Rules whose negative body `interpretation` leaves unblocked, stripped
/// of that negative body; order preserved, ids kept.
pub fn fuzzy_reduct(
    rules: &[GeneratorRule],
    interpretation: &FuzzyInterpretation,
) -> Vec<GeneratorRule> {
    rules
        .iter()
        .filter(|rule| {
            rule.neg_body
                .iter()
                .all(|al| !interpretation.satisfies(&al.literal, &resolved(&al.annotation)))
        })
        .map(|rule| GeneratorRule { neg_body: Vec::new(), ..rule.clone() })
        .collect()
}

/// The minimal fuzzy models of a negation-free program.
///
/// For every [`SplitSelection`] the monotone raise operator — when a
/// rule's body is satisfied, lift the chosen disjunct's literal to at
/// least its head annotation — is iterated to fixpoint; fixpoints that
/// are consistent and satisfy the rules as full disjunctive rules are
/// kept, and dominated fixpoints are discarded.
pub fn least_models_of_positive(
    rules: &[GeneratorRule],
    options: &SolveOptions,
) -> Result<Vec<FuzzyInterpretation>, SolveError> {
    debug_assert!(rules.iter().all(|r| r.neg_body.is_empty()), "program must be negation-free");
    let head_sizes: Vec<usize> = rules.iter().map(|r| r.head.len()).collect();

    let mut fixpoints: Vec<FuzzyInterpretation> = Vec::new();
    let mut choice = vec![0usize; rules.len()];
    loop {
        let mut selection = SplitSelection::default();
        for (rule, &index) in rules.iter().zip(&choice) {
            selection.0.insert(rule.id.clone(), index);
        }

        let mut interpretation = FuzzyInterpretation::empty();
        let mut sweeps = 0u64;
        loop {
            sweeps += 1;
            if sweeps > options.iteration_cap {
                return Err(SolveError::IterationCapExceeded { limit: options.iteration_cap });
            }
            let mut changed = false;
            for rule in rules {
                let fired = rule
                    .pos_body
                    .iter()
                    .all(|al| interpretation.satisfies(&al.literal, &resolved(&al.annotation)));
                if !fired {
                    continue;
                }
                let chosen = &rule.head[selection.0[&rule.id]];
                changed |= interpretation.raise(&chosen.literal, &resolved(&chosen.annotation));
            }
            if !changed {
                break;
            }
        }

        if interpretation.is_consistent()
            && satisfies_program(&interpretation, rules)
            && !fixpoints.contains(&interpretation)
        {
            fixpoints.push(interpretation);
        }

        let mut pos = choice.len();
        loop {
            if pos == 0 {
                let mut minimal: Vec<FuzzyInterpretation> = fixpoints
                    .iter()
                    .filter(|i| !fixpoints.iter().any(|j| j.lt(i)))
                    .cloned()
                    .collect();
                minimal.sort_by_cached_key(FuzzyInterpretation::to_string);
                return Ok(minimal);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < head_sizes[pos] {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Answer-set check: `interpretation` is consistent, satisfies its own
/// reduct, and no strictly smaller point of the vocabulary lattice does.
pub fn is_answer_set(rules: &[GeneratorRule], interpretation: &FuzzyInterpretation) -> bool {
    if !interpretation.is_consistent() {
        return false;
    }
    let interned = Interned::build(rules, Some(interpretation));
    let state = interned.state_of(interpretation).expect("interpretation interned with rules");
    let reduct = reduct_state(&interned.rules, &state);
    satisfies_state(&state, &reduct) && !has_smaller_model(&state, &reduct, &interned)
}

/// All answer sets of the program, by either engine. Both engines return
/// the identical duplicate-free set, sorted by rendered support text.
pub fn enumerate_answer_sets(
    rules: &[GeneratorRule],
    engine: Engine,
    options: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let interned = Interned::build(rules, None);
    let (states, counters) = match engine {
        Engine::Split => split::solve(&interned, options)?,
        Engine::Brute => brute::solve(&interned, options)?,
    };
    let mut answer_sets: Vec<FuzzyInterpretation> =
        states.iter().map(|s| interned.interpretation(s)).collect();
    answer_sets.sort_by_cached_key(FuzzyInterpretation::to_string);
    Ok(SolveReport {
        answer_sets,
        stats: SolveStats {
            candidates_examined: counters.candidates,
            fixpoint_iterations: counters.iterations,
            elapsed: start.elapsed(),
        },
    })
}

fn resolved(annotation: &Annotation) -> Grade {
    annotation.eval_ground().expect("rule annotations are resolved after grounding")
}

// ---------------------------------------------------------------------------
// Interned representation shared by the engines: literals become indices,
// grades become ranks into a sorted table, and every comparison is integer.

pub(super) struct Interned {
    pub rules: Vec<IntRule>,
    pub literals: Vec<Literal>,
    pub grades: Vec<Grade>,
    /// Literal index of the classical complement, when it occurs too.
    pub complement: Vec<Option<usize>>,
    /// Per literal: ascending grade ranks of `{0} ∪ vocabulary(predicate)`.
    pub vocab: Vec<Vec<u32>>,
}

pub(super) struct IntRule {
    pub head: Vec<(usize, u32)>,
    pub pos: Vec<(usize, u32)>,
    pub neg: Vec<(usize, u32)>,
}

#[derive(Default)]
pub(super) struct Counters {
    pub candidates: u64,
    pub iterations: u64,
}

impl Interned {
    fn build(rules: &[GeneratorRule], extra: Option<&FuzzyInterpretation>) -> Interned {
        let mut grade_set: BTreeSet<Grade> = [Grade::zero(), Grade::one()].into();
        let mut pred_vocab: BTreeMap<String, BTreeSet<Grade>> = BTreeMap::new();
        let mut literals: Vec<Literal> = Vec::new();
        let mut ids: HashMap<Literal, usize> = HashMap::new();

        let mut note = |al_literal: &Literal,
                        grade: &Grade,
                        literals: &mut Vec<Literal>,
                        ids: &mut HashMap<Literal, usize>| {
            if !ids.contains_key(al_literal) {
                ids.insert(al_literal.clone(), literals.len());
                literals.push(al_literal.clone());
            }
            pred_vocab
                .entry(al_literal.atom.predicate.clone())
                .or_default()
                .insert(grade.clone());
        };

        for rule in rules {
            for al in rule.head.iter().chain(&rule.pos_body).chain(&rule.neg_body) {
                let grade = resolved(&al.annotation);
                grade_set.insert(grade.clone());
                note(&al.literal, &grade, &mut literals, &mut ids);
            }
        }
        if let Some(interpretation) = extra {
            for (literal, grade) in interpretation.support() {
                grade_set.insert(grade.clone());
                note(literal, grade, &mut literals, &mut ids);
            }
        }
        for vocab in pred_vocab.values_mut() {
            vocab.insert(Grade::one());
        }

        let grades: Vec<Grade> = grade_set.into_iter().collect();
        let rank_of: HashMap<&Grade, u32> =
            grades.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();

        let int_rules = rules
            .iter()
            .map(|rule| {
                let convert = |als: &[crate::kernel::AnnotatedLiteral]| {
                    als.iter()
                        .map(|al| (ids[&al.literal], rank_of[&resolved(&al.annotation)]))
                        .collect()
                };
                IntRule {
                    head: convert(&rule.head),
                    pos: convert(&rule.pos_body),
                    neg: convert(&rule.neg_body),
                }
            })
            .collect();

        let complement = literals.iter().map(|l| ids.get(&l.complement()).copied()).collect();
        let vocab = literals
            .iter()
            .map(|l| {
                let mut ranks = vec![0u32];
                if let Some(set) = pred_vocab.get(&l.atom.predicate) {
                    ranks.extend(set.iter().map(|g| rank_of[g]).filter(|&r| r != 0));
                }
                ranks.sort_unstable();
                ranks
            })
            .collect();

        Interned { rules: int_rules, literals, grades, complement, vocab }
    }

    fn state_of(&self, interpretation: &FuzzyInterpretation) -> Option<Vec<u32>> {
        let mut state = vec![0u32; self.literals.len()];
        let rank_of: HashMap<&Grade, u32> =
            self.grades.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
        for (literal, grade) in interpretation.support() {
            let id = self.literals.iter().position(|l| l == literal)?;
            state[id] = *rank_of.get(grade)?;
        }
        Some(state)
    }

    pub fn interpretation(&self, state: &[u32]) -> FuzzyInterpretation {
        FuzzyInterpretation::from_pairs(state.iter().enumerate().filter(|(_, &r)| r > 0).map(
            |(id, &rank)| (self.literals[id].clone(), self.grades[rank as usize].clone()),
        ))
        .expect("engine states are consistent")
    }

    /// The strongest grade any head occurrence can give each literal.
    pub fn max_head_ranks(&self) -> Vec<u32> {
        let mut best = vec![0u32; self.literals.len()];
        for rule in &self.rules {
            for &(l, r) in &rule.head {
                best[l] = best[l].max(r);
            }
        }
        best
    }
}

pub(super) fn state_consistent(state: &[u32], complement: &[Option<usize>]) -> bool {
    state
        .iter()
        .enumerate()
        .all(|(l, &g)| g == 0 || complement[l].map_or(true, |c| state[c] == 0))
}

fn body_fires(state: &[u32], rule: &IntRule) -> bool {
    rule.pos.iter().all(|&(l, r)| state[l] >= r) && rule.neg.iter().all(|&(l, r)| state[l] < r)
}

/// Interned [`satisfies_program`]: rule satisfaction plus the per-atom
/// dominance check.
pub(super) fn satisfies_state(state: &[u32], rules: &[IntRule]) -> bool {
    let mut strongest = vec![0u32; state.len()];
    for rule in rules {
        if !body_fires(state, rule) {
            continue;
        }
        let mut satisfied = false;
        for &(l, r) in &rule.head {
            if state[l] >= r {
                satisfied = true;
                strongest[l] = strongest[l].max(r);
            }
        }
        if !satisfied {
            return false;
        }
    }
    strongest.iter().zip(state).all(|(&m, &g)| m <= g)
}

/// Interned [`fuzzy_reduct`].
pub(super) fn reduct_state(rules: &[IntRule], state: &[u32]) -> Vec<IntRule> {
    rules
        .iter()
        .filter(|rule| rule.neg.iter().all(|&(l, r)| state[l] < r))
        .map(|rule| IntRule { head: rule.head.clone(), pos: rule.pos.clone(), neg: Vec::new() })
        .collect()
}

/// Reduct satisfaction without materializing the reduct; used by the
/// brute engine's inner loop.
pub(super) fn satisfies_own_reduct(state: &[u32], rules: &[IntRule]) -> bool {
    let mut strongest = vec![0u32; state.len()];
    for rule in rules {
        if rule.neg.iter().any(|&(l, r)| state[l] >= r) {
            continue; // not in the reduct
        }
        if !rule.pos.iter().all(|&(l, r)| state[l] >= r) {
            continue;
        }
        let mut satisfied = false;
        for &(l, r) in &rule.head {
            if state[l] >= r {
                satisfied = true;
                strongest[l] = strongest[l].max(r);
            }
        }
        if !satisfied {
            return false;
        }
    }
    strongest.iter().zip(state).all(|(&m, &g)| m <= g)
}

/// Whether some strictly smaller lattice point also models the reduct.
///
/// Candidate points range, per supported literal, over `{0}` plus the
/// vocabulary grades up to the current grade. Only literals occurring in
/// a disjunctive head are enumerated: everything else is forced, so the
/// least fixpoint of the single-head rules pins it. Any smaller model
/// dominates the fixpoint of its own head choices, and that fixpoint is
/// itself a model, so checking the fixpoints alone is exact — and it
/// keeps the search space independent of how many derived atoms a
/// program has.
pub(super) fn has_smaller_model(state: &[u32], reduct: &[IntRule], interned: &Interned) -> bool {
    let n = state.len();
    let mut is_choice = vec![false; n];
    for rule in reduct {
        if rule.head.len() > 1 {
            for &(l, _) in &rule.head {
                is_choice[l] = true;
            }
        }
    }
    let definite: Vec<&IntRule> = reduct.iter().filter(|r| r.head.len() == 1).collect();
    let choice: Vec<usize> = (0..n).filter(|&l| state[l] > 0 && is_choice[l]).collect();
    let domains: Vec<Vec<u32>> = choice
        .iter()
        .map(|&l| interned.vocab[l].iter().copied().filter(|&r| r <= state[l]).collect())
        .collect();

    let mut counter = vec![0usize; choice.len()];
    loop {
        let mut point = vec![0u32; n];
        let mut feasible = true;
        for (i, &l) in choice.iter().enumerate() {
            point[l] = domains[i][counter[i]];
        }
        // Close under the forced rules, never leaving the sublattice
        // below `state`. A forced raise past `state` (or past a pinned
        // head choice) means no model lives below `state` with these
        // choices, so the point dies.
        'fixpoint: loop {
            let mut changed = false;
            for rule in &definite {
                let (h, grade) = rule.head[0];
                if point[h] >= grade || rule.pos.iter().any(|&(l, r)| point[l] < r) {
                    continue;
                }
                if is_choice[h] || grade > state[h] {
                    feasible = false;
                    break 'fixpoint;
                }
                point[h] = grade;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        if feasible && point != state && satisfies_state(&point, reduct) {
            return true;
        }
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return false;
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
