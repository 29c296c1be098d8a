//! Shared vocabulary of the whole crate: grades, terms, literals,
//! annotations, rules, programs, and interpretations.

mod grade;
mod interp;
mod syntax;

pub use grade::{Grade, GradeError};
pub use interp::{FuzzyInterpretation, InterpretationError};
pub use syntax::{
    AnnotatedLiteral, Annotation, AnnotationFn, Atom, Combination, EvalError, GeneratorRule,
    Literal, PreferenceRule, Program, RuleId, Sign, SourceSpan, Term,
};
