//! Fuzzy answer set programming with preference-based optimization.
//!
//! A program has two layers. *Generator rules* are disjunctive fuzzy rules
//! whose stable semantics produces fuzzy answer sets: interpretations that
//! map literals to exact rational grades in `[0, 1]`. *Preference rules*
//! rank those answer sets by boolean combinations of annotated literals,
//! ordered from most to least preferred.
//!
//! The crate is organized along the pipeline:
//!
//! * [`kernel`] — grades, syntax, interpretations;
//! * [`parser`] — text format in, canonical text out;
//! * [`grounder`] — variable instantiation over the Herbrand universe and
//!   the per-predicate grade vocabulary;
//! * [`solver`] — answer-set enumeration (a split-based engine and a
//!   brute-force reference engine), satisfaction checks, reducts;
//! * [`preferences`] — satisfaction degrees of preference rules, pairwise
//!   comparison, Pareto/Maximal ranking;
//! * [`translator`] — compilation of preference rules into plain generator
//!   rules over auxiliary atoms, plus a self-check that the compiled form
//!   agrees with the direct semantics.

pub mod grounder;
pub mod kernel;
pub mod parser;
pub mod preferences;
pub mod solver;
pub mod translator;
