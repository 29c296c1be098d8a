//! Compiling preference rules down to plain generator rules.
//!
//! Each preference rule `C_1 ≻ … ≻ C_k ← body` becomes a family of
//! auxiliary definitions over fresh atoms: `aux_body_<rid>` holds when
//! the rule's body does, `aux_sat_<rid>_<i>` holds when additionally
//! `C_i` does (one rule per clause of `C_i`'s disjunctive normal form),
//! and `aux_sat_<rid>_irr` holds when the body fails or no combination
//! holds. Satisfaction outcomes of the source rule can then be read off
//! the answer sets of an ordinary program: the smallest derived index is
//! the satisfied index, the irrelevance atom marks irrelevance.
//!
//! Non-minimal `aux_sat_<rid>_<i>` atoms are derived too when their
//! combination holds; readers take the minimum. The `aux_` predicate
//! namespace is reserved — source programs using it are refused.
//!
//! [`verify_translation`] solves both programs and checks the
//! correspondence end to end: answer sets must agree one-to-one on
//! non-auxiliary literals, and every satisfaction outcome must match the
//! auxiliary atoms. It exists to catch semantics drift between the
//! preference evaluator and this compilation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kernel::{
    AnnotatedLiteral, Annotation, Atom, Combination, FuzzyInterpretation, GeneratorRule, Grade,
    Literal, Program, RuleId,
};
use crate::preferences::{sat_outcome, SatOutcome};
use crate::solver::{enumerate_answer_sets, Engine, SolveError, SolveOptions};

/// Reserved namespace for generated predicates.
pub const AUX_PREFIX: &str = "aux_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    /// Normalizing a combination produced more clauses than allowed.
    #[error("disjunctive normal form exceeds {limit} clauses")]
    SizeExplosion { limit: usize },
    /// The source program uses the reserved `aux_` namespace.
    #[error("predicate {predicate:?} collides with the reserved prefix \"aux_\"")]
    ReservedPrefixCollision { predicate: String },
}

#[derive(Debug, Clone)]
pub struct TranslateOptions {
    /// Cap on DNF clauses per combination (default 4096).
    pub max_clauses: usize,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions { max_clauses: 4096 }
    }
}

/// One conjunct of a DNF clause: a literal, possibly under
/// negation-as-failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfElement {
    pub negated: bool,
    pub literal: AnnotatedLiteral,
}

/// A boolean combination flattened to disjunctive normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfCombination {
    pub clauses: Vec<Vec<DnfElement>>,
}

impl DnfCombination {
    /// Satisfaction of the flattened combination; agrees with
    /// [`crate::preferences::holds_combination`] on the source.
    pub fn holds(&self, interpretation: &FuzzyInterpretation) -> bool {
        self.clauses.iter().any(|clause| {
            clause.iter().all(|element| {
                let grade = element
                    .literal
                    .annotation
                    .eval_ground()
                    .expect("combinations are resolved after grounding");
                interpretation.satisfies(&element.literal.literal, &grade) != element.negated
            })
        })
    }
}

/// Flatten a combination by distributing conjunction over disjunction.
/// Clause order follows the source left to right.
pub fn to_dnf(
    combination: &Combination,
    options: &TranslateOptions,
) -> Result<DnfCombination, TranslateError> {
    let clauses = dnf_clauses(combination, options.max_clauses)?;
    Ok(DnfCombination { clauses })
}

fn dnf_clauses(
    combination: &Combination,
    limit: usize,
) -> Result<Vec<Vec<DnfElement>>, TranslateError> {
    let clauses = match combination {
        Combination::Lit(al) => {
            vec![vec![DnfElement { negated: false, literal: al.clone() }]]
        }
        Combination::Naf(al) => {
            vec![vec![DnfElement { negated: true, literal: al.clone() }]]
        }
        Combination::Or(left, right) => {
            let mut clauses = dnf_clauses(left, limit)?;
            clauses.extend(dnf_clauses(right, limit)?);
            clauses
        }
        Combination::And(left, right) => {
            let left = dnf_clauses(left, limit)?;
            let right = dnf_clauses(right, limit)?;
            let mut clauses = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    let mut clause = l.clone();
                    clause.extend(r.iter().cloned());
                    clauses.push(clause);
                }
            }
            clauses
        }
    };
    if clauses.len() > limit {
        return Err(TranslateError::SizeExplosion { limit });
    }
    Ok(clauses)
}

/// The compiled program plus an index of the generated atoms.
#[derive(Debug, Clone)]
pub struct TranslationOutput {
    /// Source generator rules followed by the compiled preference rules;
    /// no preference rules remain.
    pub program: Program,
    /// `(source preference-rule id, "body" | "irr" | combination index)`
    /// to the generated predicate name.
    pub rule_index: BTreeMap<(RuleId, String), String>,
}

/// Compile every preference rule to auxiliary generator rules.
pub fn translate(
    program: &Program,
    options: &TranslateOptions,
) -> Result<TranslationOutput, TranslateError> {
    for al in program.annotated_literals() {
        let predicate = &al.literal.atom.predicate;
        if predicate.starts_with(AUX_PREFIX) {
            return Err(TranslateError::ReservedPrefixCollision { predicate: predicate.clone() });
        }
    }

    let one = || Annotation::Const(Grade::one());
    let head_of = |predicate: &str| {
        vec![AnnotatedLiteral::new(Literal::positive(Atom::new(predicate, Vec::new())), one())]
    };
    let positive = |predicate: &str| {
        AnnotatedLiteral::new(Literal::positive(Atom::new(predicate, Vec::new())), one())
    };

    let mut generators = program.generators.clone();
    let mut spans = program.spans.clone();
    let mut rule_index = BTreeMap::new();
    for rule in &program.preferences {
        let parent_span = program.spans.get(&rule.id).copied().unwrap_or_default();
        let mut emit = |name: String, head_pred: &str, pos_body, neg_body| {
            let id = RuleId::derived(name);
            spans.insert(id.clone(), parent_span);
            generators.push(GeneratorRule { id, head: head_of(head_pred), pos_body, neg_body });
        };

        let rid = rule.id.as_str().replace('.', "_");
        let body_pred = format!("aux_body_{rid}");
        let irr_pred = format!("aux_sat_{rid}_irr");

        emit(
            format!("t_{rid}_body"),
            &body_pred,
            rule.pos_body.clone(),
            rule.neg_body.clone(),
        );
        rule_index.insert((rule.id.clone(), "body".to_string()), body_pred.clone());

        let mut sat_preds = Vec::new();
        for (index, combination) in rule.combinations.iter().enumerate() {
            let sat_pred = format!("aux_sat_{rid}_{}", index + 1);
            let dnf = to_dnf(combination, options)?;
            for (clause_no, clause) in dnf.clauses.iter().enumerate() {
                let mut pos_body = vec![positive(&body_pred)];
                let mut neg_body = Vec::new();
                for element in clause {
                    if element.negated {
                        neg_body.push(element.literal.clone());
                    } else {
                        pos_body.push(element.literal.clone());
                    }
                }
                emit(
                    format!("t_{rid}_sat_{}_{}", index + 1, clause_no + 1),
                    &sat_pred,
                    pos_body,
                    neg_body,
                );
            }
            rule_index.insert((rule.id.clone(), (index + 1).to_string()), sat_pred.clone());
            sat_preds.push(sat_pred);
        }

        emit(format!("t_{rid}_irr_1"), &irr_pred, Vec::new(), vec![positive(&body_pred)]);
        emit(
            format!("t_{rid}_irr_2"),
            &irr_pred,
            vec![positive(&body_pred)],
            sat_preds.iter().map(|p| positive(p)).collect(),
        );
        rule_index.insert((rule.id.clone(), "irr".to_string()), irr_pred);
    }

    Ok(TranslationOutput {
        program: Program { generators, preferences: Vec::new(), spans },
        rule_index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    /// Answer sets of the compiled program, restricted to source
    /// literals, do not match the source answer sets one-to-one.
    #[error("answer sets do not correspond one-to-one: {original} original, {translated} translated")]
    CorrespondenceFailure { original: usize, translated: usize },
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One satisfaction readback: the outcome computed on the source side
/// and whether the compiled side's auxiliary atoms agree.
#[derive(Debug, Clone)]
pub struct VerificationCheck {
    pub answer_set: FuzzyInterpretation,
    pub rule: RuleId,
    pub outcome: SatOutcome,
    pub matched: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub checks: Vec<VerificationCheck>,
}

impl VerificationReport {
    pub fn all_matched(&self) -> bool {
        self.checks.iter().all(|c| c.matched)
    }
}

/// Solve the source program and its compilation and check that they tell
/// the same story (see the module docs).
pub fn verify_translation(
    program: &Program,
    options: &TranslateOptions,
    solve_options: &SolveOptions,
) -> Result<VerificationReport, VerifyError> {
    let translation = translate(program, options)?;
    let original =
        enumerate_answer_sets(&program.generators, Engine::Split, solve_options)?.answer_sets;
    let translated =
        enumerate_answer_sets(&translation.program.generators, Engine::Split, solve_options)?
            .answer_sets;

    let correspondence_failure = || VerifyError::CorrespondenceFailure {
        original: original.len(),
        translated: translated.len(),
    };
    if original.len() != translated.len() {
        return Err(correspondence_failure());
    }

    // Pair each source answer set with the unique compiled one agreeing
    // on non-auxiliary literals.
    let mut unmatched: Vec<&FuzzyInterpretation> = translated.iter().collect();
    let mut pairs = Vec::new();
    for interpretation in &original {
        let position = unmatched
            .iter()
            .position(|t| {
                t.restricted(|l| !l.atom.predicate.starts_with(AUX_PREFIX)) == *interpretation
            })
            .ok_or_else(correspondence_failure)?;
        pairs.push((interpretation, unmatched.swap_remove(position)));
    }

    let mut checks = Vec::new();
    for (interpretation, image) in pairs {
        for rule in &program.preferences {
            let outcome = sat_outcome(interpretation, rule);
            let lookup = |key: &str| {
                let predicate = &translation.rule_index[&(rule.id.clone(), key.to_string())];
                image.satisfies(&Literal::positive(Atom::new(predicate, Vec::new())), &Grade::one())
            };
            let derived_min = (1..=rule.combinations.len())
                .find(|i| lookup(&i.to_string()));
            let derived_irr = lookup("irr");
            let matched = match outcome {
                SatOutcome::Sat(i) => derived_min == Some(i) && !derived_irr,
                SatOutcome::Irr => derived_irr && derived_min.is_none(),
            };
            checks.push(VerificationCheck {
                answer_set: interpretation.clone(),
                rule: rule.id.clone(),
                outcome,
                matched,
            });
        }
    }
    Ok(VerificationReport { checks })
}
