//! Fuzzy interpretations over finite supports.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::grade::Grade;
use super::syntax::{Atom, Literal};

/// Why a set of literal/grade pairs does not form an interpretation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretationError {
    /// Both `a` and `-a` were given positive grades.
    #[error("interpretation assigns positive grades to both {0} and its classical complement")]
    Inconsistent(Atom),
    /// The same literal appeared twice with different grades.
    #[error("literal {0} appears with conflicting grades")]
    Conflicting(Literal),
}

/// A mapping from literals to grades with finite support.
///
/// A literal absent from the support has grade `0`; inserting a literal at
/// grade `0` is the same as not mentioning it, so equality is equality of
/// supports. Consistent interpretations never hold both an atom and its
/// classical complement; [`FuzzyInterpretation::from_pairs`] enforces this
/// and the solver rejects candidates that would violate it.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzyInterpretation {
    support: BTreeMap<Literal, Grade>,
}

impl FuzzyInterpretation {
    /// The empty interpretation: every literal at grade `0`.
    pub fn empty() -> FuzzyInterpretation {
        FuzzyInterpretation::default()
    }

    /// Builds an interpretation, normalizing away zero grades and rejecting
    /// inconsistent or conflicting inputs.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Literal, Grade)>,
    ) -> Result<FuzzyInterpretation, InterpretationError> {
        let mut interp = FuzzyInterpretation::empty();
        for (literal, grade) in pairs {
            if grade.is_zero() {
                continue;
            }
            if let Some(existing) = interp.support.get(&literal) {
                if *existing != grade {
                    return Err(InterpretationError::Conflicting(literal));
                }
                continue;
            }
            if interp.support.contains_key(&literal.complement()) {
                return Err(InterpretationError::Inconsistent(literal.atom));
            }
            interp.support.insert(literal, grade);
        }
        Ok(interp)
    }

    /// The grade of a literal; `0` when outside the support.
    pub fn grade_of(&self, literal: &Literal) -> Grade {
        self.support.get(literal).cloned().unwrap_or_else(Grade::zero)
    }

    /// `grade <= I(literal)`, the satisfaction test for a positive
    /// annotated literal. Grade `0` is satisfied by every interpretation.
    pub fn satisfies(&self, literal: &Literal, grade: &Grade) -> bool {
        match self.support.get(literal) {
            Some(current) => grade <= current,
            None => grade.is_zero(),
        }
    }

    /// Whether the literal has a positive grade.
    pub fn defines(&self, literal: &Literal) -> bool {
        self.support.contains_key(literal)
    }

    /// Raises the literal to at least `grade`; returns whether the
    /// interpretation changed. Raising to `0` is a no-op.
    pub fn raise(&mut self, literal: &Literal, grade: &Grade) -> bool {
        if grade.is_zero() {
            return false;
        }
        match self.support.get_mut(literal) {
            Some(current) if *current >= *grade => false,
            Some(current) => {
                *current = grade.clone();
                true
            }
            None => {
                self.support.insert(literal.clone(), grade.clone());
                true
            }
        }
    }

    /// No atom is held together with its classical complement.
    pub fn is_consistent(&self) -> bool {
        self.support.keys().all(|lit| !self.support.contains_key(&lit.complement()))
    }

    /// Pointwise order: every literal's grade here is at most its grade in
    /// `other`.
    pub fn leq(&self, other: &FuzzyInterpretation) -> bool {
        self.support
            .iter()
            .all(|(literal, grade)| other.satisfies(literal, grade))
    }

    /// Strictly below in the pointwise order.
    pub fn lt(&self, other: &FuzzyInterpretation) -> bool {
        self != other && self.leq(other)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Literal, &Grade)> {
        self.support.iter()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Keeps only the literals admitted by the filter.
    pub fn restricted(&self, keep: impl Fn(&Literal) -> bool) -> FuzzyInterpretation {
        FuzzyInterpretation {
            support: self
                .support
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, g)| (l.clone(), g.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for FuzzyInterpretation {
    /// `{a:0.3, b:1}` with entries in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (literal, grade)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{literal}:{grade}")?;
        }
        write!(f, "}}")
    }
}
