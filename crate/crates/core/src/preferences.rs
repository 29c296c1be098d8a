//! Comparing and ranking answer sets by preference rules.
//!
//! A preference rule `C_1 ≻ … ≻ C_k ← body` is satisfied at the smallest
//! index whose combination holds, and is irrelevant when its body does
//! not hold or no combination does. Pairs of answer sets are compared
//! per combination, per rule, and then aggregated: Pareto demands every
//! rule agree, Maximal counts the rules favouring each side.
//!
//! Comparison is four-valued. The strict and equal cases come from the
//! preference semantics; [`ComparisonOutcome::Incomparable`] covers the
//! genuinely uncovered cases (for example, both answer sets satisfy a
//! conjunction with opposing strict children) instead of forcing them
//! into equality.

use std::fmt;

use crate::kernel::{
    Annotation, Combination, FuzzyInterpretation, Grade, PreferenceRule,
};

/// How an interpretation satisfies one preference rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatOutcome {
    /// The smallest 1-based combination index that holds.
    Sat(usize),
    /// Body unsatisfied, or satisfied with no holding combination.
    Irr,
}

impl fmt::Display for SatOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatOutcome::Sat(index) => write!(f, "sat({index})"),
            SatOutcome::Irr => write!(f, "irr"),
        }
    }
}

/// Verdict of one comparison. A single call never reports both strict
/// directions, and swapping the arguments mirrors the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonOutcome {
    FirstStrict,
    SecondStrict,
    Equal,
    Incomparable,
}

impl ComparisonOutcome {
    /// The outcome as seen with the arguments swapped.
    pub fn flipped(self) -> ComparisonOutcome {
        match self {
            ComparisonOutcome::FirstStrict => ComparisonOutcome::SecondStrict,
            ComparisonOutcome::SecondStrict => ComparisonOutcome::FirstStrict,
            other => other,
        }
    }

    /// First at least as preferred: strict or equal.
    fn first_at_least(self) -> bool {
        matches!(self, ComparisonOutcome::FirstStrict | ComparisonOutcome::Equal)
    }

    fn second_at_least(self) -> bool {
        matches!(self, ComparisonOutcome::SecondStrict | ComparisonOutcome::Equal)
    }
}

impl fmt::Display for ComparisonOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComparisonOutcome::FirstStrict => "first",
            ComparisonOutcome::SecondStrict => "second",
            ComparisonOutcome::Equal => "equal",
            ComparisonOutcome::Incomparable => "incomparable",
        })
    }
}

/// Aggregation strategy for [`rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Pareto,
    Maximal,
}

/// Result of ranking: tier indices refer to the input answer-set list.
#[derive(Debug, Clone)]
pub struct RankReport {
    /// Most preferred first. Tiers partition the input indices; members
    /// of one tier are mutually Equal or Incomparable.
    pub tiers: Vec<Vec<usize>>,
    /// `pairwise[i][j]` compares answer set `i` against `j`.
    pub pairwise: Vec<Vec<ComparisonOutcome>>,
    /// True when tier extraction stalled on a preference cycle; the
    /// remaining answer sets then form the final tier together.
    pub cycles_detected: bool,
}

fn resolved(annotation: &Annotation) -> Grade {
    annotation.eval_ground().expect("preference rules are resolved after grounding")
}

/// Satisfaction of a ground boolean combination.
pub fn holds_combination(interpretation: &FuzzyInterpretation, combination: &Combination) -> bool {
    match combination {
        Combination::Lit(al) => interpretation.satisfies(&al.literal, &resolved(&al.annotation)),
        Combination::Naf(al) => !interpretation.satisfies(&al.literal, &resolved(&al.annotation)),
        Combination::And(left, right) => {
            holds_combination(interpretation, left) && holds_combination(interpretation, right)
        }
        Combination::Or(left, right) => {
            holds_combination(interpretation, left) || holds_combination(interpretation, right)
        }
    }
}

/// The satisfaction outcome of one ground preference rule.
pub fn sat_outcome(interpretation: &FuzzyInterpretation, rule: &PreferenceRule) -> SatOutcome {
    let fired = rule
        .pos_body
        .iter()
        .all(|al| interpretation.satisfies(&al.literal, &resolved(&al.annotation)))
        && rule
            .neg_body
            .iter()
            .all(|al| !interpretation.satisfies(&al.literal, &resolved(&al.annotation)));
    if !fired {
        return SatOutcome::Irr;
    }
    rule.combinations
        .iter()
        .position(|c| holds_combination(interpretation, c))
        .map_or(SatOutcome::Irr, |i| SatOutcome::Sat(i + 1))
}

/// Compare two answer sets with respect to one ground combination.
pub fn compare_combination(
    first: &FuzzyInterpretation,
    second: &FuzzyInterpretation,
    combination: &Combination,
) -> ComparisonOutcome {
    match (holds_combination(first, combination), holds_combination(second, combination)) {
        (true, false) => ComparisonOutcome::FirstStrict,
        (false, true) => ComparisonOutcome::SecondStrict,
        (false, false) => ComparisonOutcome::Equal,
        (true, true) => match combination {
            Combination::Lit(al) => {
                grade_order(&first.grade_of(&al.literal), &second.grade_of(&al.literal))
            }
            // Less of a negated literal is the preferred side.
            Combination::Naf(al) => {
                grade_order(&second.grade_of(&al.literal), &first.grade_of(&al.literal))
            }
            Combination::And(left, right) => {
                let children =
                    [compare_combination(first, second, left), compare_combination(first, second, right)];
                all_at_least(&children)
            }
            Combination::Or(left, right) => {
                let children =
                    [compare_combination(first, second, left), compare_combination(first, second, right)];
                match all_at_least(&children) {
                    // A disjunction with balanced support on both sides
                    // counts as equal rather than incomparable.
                    ComparisonOutcome::Incomparable => {
                        let firsts = children.iter().filter(|o| o.first_at_least()).count();
                        let seconds = children.iter().filter(|o| o.second_at_least()).count();
                        if firsts == seconds {
                            ComparisonOutcome::Equal
                        } else {
                            ComparisonOutcome::Incomparable
                        }
                    }
                    decided => decided,
                }
            }
        },
    }
}

/// Compare two answer sets with respect to one ground preference rule:
/// smaller satisfied index wins, equal indices defer to the combination,
/// satisfaction beats irrelevance.
pub fn compare_rule(
    first: &FuzzyInterpretation,
    second: &FuzzyInterpretation,
    rule: &PreferenceRule,
) -> ComparisonOutcome {
    match (sat_outcome(first, rule), sat_outcome(second, rule)) {
        (SatOutcome::Sat(i), SatOutcome::Sat(j)) if i < j => ComparisonOutcome::FirstStrict,
        (SatOutcome::Sat(i), SatOutcome::Sat(j)) if i > j => ComparisonOutcome::SecondStrict,
        (SatOutcome::Sat(i), SatOutcome::Sat(_)) => {
            compare_combination(first, second, &rule.combinations[i - 1])
        }
        (SatOutcome::Sat(_), SatOutcome::Irr) => ComparisonOutcome::FirstStrict,
        (SatOutcome::Irr, SatOutcome::Sat(_)) => ComparisonOutcome::SecondStrict,
        (SatOutcome::Irr, SatOutcome::Irr) => ComparisonOutcome::Equal,
    }
}

/// Pareto aggregation: strict needs one strict rule and no opposition.
pub fn pareto_compare(
    first: &FuzzyInterpretation,
    second: &FuzzyInterpretation,
    rules: &[PreferenceRule],
) -> ComparisonOutcome {
    let outcomes: Vec<ComparisonOutcome> =
        rules.iter().map(|r| compare_rule(first, second, r)).collect();
    all_at_least(&outcomes)
}

/// Maximal aggregation: count the rules on which each side is at least
/// as preferred; the larger count wins. Never incomparable.
pub fn maximal_compare(
    first: &FuzzyInterpretation,
    second: &FuzzyInterpretation,
    rules: &[PreferenceRule],
) -> ComparisonOutcome {
    let outcomes: Vec<ComparisonOutcome> =
        rules.iter().map(|r| compare_rule(first, second, r)).collect();
    let firsts = outcomes.iter().filter(|o| o.first_at_least()).count();
    let seconds = outcomes.iter().filter(|o| o.second_at_least()).count();
    match firsts.cmp(&seconds) {
        std::cmp::Ordering::Greater => ComparisonOutcome::FirstStrict,
        std::cmp::Ordering::Less => ComparisonOutcome::SecondStrict,
        std::cmp::Ordering::Equal => ComparisonOutcome::Equal,
    }
}

/// Rank answer sets into preference tiers under the chosen strategy.
///
/// Tiers are extracted greedily: every answer set not strictly beaten by
/// a remaining one joins the next tier, in input order. If at some step
/// nothing qualifies, the strict relation has a cycle; the leftovers
/// become one final tier and the report says so.
pub fn rank(
    answer_sets: &[FuzzyInterpretation],
    rules: &[PreferenceRule],
    strategy: Strategy,
) -> RankReport {
    let compare = match strategy {
        Strategy::Pareto => pareto_compare,
        Strategy::Maximal => maximal_compare,
    };
    let n = answer_sets.len();
    let pairwise: Vec<Vec<ComparisonOutcome>> = (0..n)
        .map(|i| (0..n).map(|j| compare(&answer_sets[i], &answer_sets[j], rules)).collect())
        .collect();

    let mut tiers = Vec::new();
    let mut cycles_detected = false;
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let tier: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                remaining.iter().all(|&j| pairwise[i][j] != ComparisonOutcome::SecondStrict)
            })
            .collect();
        if tier.is_empty() {
            cycles_detected = true;
            tiers.push(remaining);
            break;
        }
        remaining.retain(|i| !tier.contains(i));
        tiers.push(tier);
    }

    RankReport { tiers, pairwise, cycles_detected }
}

fn grade_order(first: &Grade, second: &Grade) -> ComparisonOutcome {
    match first.cmp(second) {
        std::cmp::Ordering::Greater => ComparisonOutcome::FirstStrict,
        std::cmp::Ordering::Less => ComparisonOutcome::SecondStrict,
        std::cmp::Ordering::Equal => ComparisonOutcome::Equal,
    }
}

/// Strict iff some member is strict and none opposes; equal iff all are.
fn all_at_least(outcomes: &[ComparisonOutcome]) -> ComparisonOutcome {
    if outcomes.iter().all(|&o| o == ComparisonOutcome::Equal) {
        ComparisonOutcome::Equal
    } else if outcomes.iter().all(|o| o.first_at_least()) {
        ComparisonOutcome::FirstStrict
    } else if outcomes.iter().all(|o| o.second_at_least()) {
        ComparisonOutcome::SecondStrict
    } else {
        ComparisonOutcome::Incomparable
    }
}
