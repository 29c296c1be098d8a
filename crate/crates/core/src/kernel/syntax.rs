//! Abstract syntax shared by every stage of the pipeline.
//!
//! Programs have two layers: generator rules (disjunctive rules over
//! annotated literals, possibly with negation as failure) produce the
//! answer sets, and preference rules (`#prefer` statements) rank them.
//! Equality on all of these types is structural; source spans are kept
//! in a side table on [`Program`] and never take part in comparisons.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::grade::Grade;

/// A first-order term: a constant, an object variable, or a compound term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::Var(_) => false,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(name) => {
                out.insert(name.clone());
            }
            Term::Compound(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    pub(crate) fn substitute(&self, map: &HashMap<String, Term>) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Var(name) => map.get(name).cloned().unwrap_or_else(|| self.clone()),
            Term::Compound(functor, args) => Term::Compound(
                functor.clone(),
                args.iter().map(|t| t.substitute(map)).collect(),
            ),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(name) | Term::Var(name) => write!(f, "{name}"),
            Term::Compound(functor, args) => {
                write!(f, "{functor}(")?;
                display_csv(f, args)?;
                write!(f, ")")
            }
        }
    }
}

/// A predicate applied to terms. Propositional atoms have no arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom { predicate: predicate.into(), args }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            display_csv(f, &self.args)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Classical polarity of a literal. `Neg` is strong negation (`-a`), not
/// negation as failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// An atom or its classical negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub sign: Sign,
    pub atom: Atom,
}

impl Literal {
    pub fn positive(atom: Atom) -> Literal {
        Literal { sign: Sign::Pos, atom }
    }

    pub fn negative(atom: Atom) -> Literal {
        Literal { sign: Sign::Neg, atom }
    }

    /// The literal standing for the opposite classical polarity.
    pub fn complement(&self) -> Literal {
        Literal {
            sign: match self.sign {
                Sign::Pos => Sign::Neg,
                Sign::Neg => Sign::Pos,
            },
            atom: self.atom.clone(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Neg {
            write!(f, "-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// The fixed family of annotation functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnnotationFn {
    Min,
    Max,
    Prod,
    Bsum,
    Compl,
}

impl AnnotationFn {
    pub fn name(self) -> &'static str {
        match self {
            AnnotationFn::Min => "min",
            AnnotationFn::Max => "max",
            AnnotationFn::Prod => "prod",
            AnnotationFn::Bsum => "bsum",
            AnnotationFn::Compl => "compl",
        }
    }

    pub fn from_name(name: &str) -> Option<AnnotationFn> {
        Some(match name {
            "min" => AnnotationFn::Min,
            "max" => AnnotationFn::Max,
            "prod" => AnnotationFn::Prod,
            "bsum" => AnnotationFn::Bsum,
            "compl" => AnnotationFn::Compl,
            _ => return None,
        })
    }

    /// `compl` is unary; the other functions take two or more arguments.
    pub fn arity_ok(self, n: usize) -> bool {
        match self {
            AnnotationFn::Compl => n == 1,
            _ => n >= 2,
        }
    }

    fn fold(self, args: &[Grade]) -> Grade {
        if self == AnnotationFn::Compl {
            return args[0].compl();
        }
        let mut acc = args[0].clone();
        for arg in &args[1..] {
            acc = match self {
                AnnotationFn::Min => acc.min(arg.clone()),
                AnnotationFn::Max => acc.max(arg.clone()),
                AnnotationFn::Prod => acc.prod(arg),
                AnnotationFn::Bsum => acc.bsum(arg),
                AnnotationFn::Compl => unreachable!(),
            };
        }
        acc
    }
}

/// Evaluation failure for an annotation expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("annotation variable {0} is unbound")]
    UnboundVariable(String),
}

/// A truth-degree expression: a constant grade, an annotation variable, or
/// an application of an [`AnnotationFn`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Annotation {
    Const(Grade),
    Var(String),
    Func(AnnotationFn, Vec<Annotation>),
}

impl Annotation {
    /// Evaluates under a variable binding. Closed under `[0, 1]` by
    /// construction: every annotation function maps the unit interval into
    /// itself.
    pub fn eval(&self, binding: &HashMap<String, Grade>) -> Result<Grade, EvalError> {
        match self {
            Annotation::Const(grade) => Ok(grade.clone()),
            Annotation::Var(name) => binding
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
            Annotation::Func(func, args) => {
                let args: Vec<Grade> =
                    args.iter().map(|a| a.eval(binding)).collect::<Result<_, _>>()?;
                Ok(func.fold(&args))
            }
        }
    }

    /// Evaluates a variable-free annotation.
    pub fn eval_ground(&self) -> Result<Grade, EvalError> {
        self.eval(&HashMap::new())
    }

    /// The constant grade, if this annotation is one.
    pub fn const_grade(&self) -> Option<&Grade> {
        match self {
            Annotation::Const(grade) => Some(grade),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Annotation::Const(_) => true,
            Annotation::Var(_) => false,
            Annotation::Func(_, args) => args.iter().all(Annotation::is_ground),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Annotation::Const(_) => {}
            Annotation::Var(name) => {
                out.insert(name.clone());
            }
            Annotation::Func(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub(crate) fn substitute(&self, map: &HashMap<String, Grade>) -> Annotation {
        match self {
            Annotation::Const(_) => self.clone(),
            Annotation::Var(name) => match map.get(name) {
                Some(grade) => Annotation::Const(grade.clone()),
                None => self.clone(),
            },
            Annotation::Func(func, args) => {
                Annotation::Func(*func, args.iter().map(|a| a.substitute(map)).collect())
            }
        }
    }
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Annotation::Const(grade) => write!(f, "{grade}"),
            Annotation::Var(name) => write!(f, "{name}"),
            Annotation::Func(func, args) => {
                write!(f, "{}(", func.name())?;
                display_csv(f, args)?;
                write!(f, ")")
            }
        }
    }
}

/// A literal paired with the degree expression it must reach.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedLiteral {
    pub literal: Literal,
    pub annotation: Annotation,
}

impl AnnotatedLiteral {
    pub fn new(literal: Literal, annotation: Annotation) -> AnnotatedLiteral {
        AnnotatedLiteral { literal, annotation }
    }

    pub fn is_ground(&self) -> bool {
        self.literal.is_ground() && self.annotation.is_ground()
    }
}

impl fmt::Display for AnnotatedLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.literal, self.annotation)
    }
}

/// Stable rule identifier. Parsed rules get `g<i>`/`p<i>` in source order;
/// ground instances extend the parent id with an instance index (`g2.7`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId(String);

impl RuleId {
    pub fn generator(index: usize) -> RuleId {
        RuleId(format!("g{index}"))
    }

    pub fn preference(index: usize) -> RuleId {
        RuleId(format!("p{index}"))
    }

    pub fn instance(&self, index: usize) -> RuleId {
        RuleId(format!("{}.{index}", self.0))
    }

    /// Id for a synthesized rule, e.g. translation output.
    pub fn derived(name: impl Into<String>) -> RuleId {
        RuleId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunctive generator rule
/// `h1 v ... v hm <- b1, ..., bk, not c1, ..., not cn.`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorRule {
    pub id: RuleId,
    /// Head disjuncts; never empty.
    pub head: Vec<AnnotatedLiteral>,
    pub pos_body: Vec<AnnotatedLiteral>,
    /// Literals under negation as failure.
    pub neg_body: Vec<AnnotatedLiteral>,
}

impl GeneratorRule {
    pub fn is_fact(&self) -> bool {
        self.pos_body.is_empty() && self.neg_body.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.head.iter().chain(&self.pos_body).chain(&self.neg_body).all(AnnotatedLiteral::is_ground)
    }
}

impl fmt::Display for GeneratorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, disjunct) in self.head.iter().enumerate() {
            if i > 0 {
                write!(f, " v ")?;
            }
            write!(f, "{disjunct}")?;
        }
        display_body(f, &self.pos_body, &self.neg_body)?;
        write!(f, ".")
    }
}

/// A boolean combination of annotated literals, as used in preference-rule
/// heads. Negation as failure applies to literals only, never to a compound
/// combination.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Combination {
    Lit(AnnotatedLiteral),
    Naf(AnnotatedLiteral),
    And(Box<Combination>, Box<Combination>),
    Or(Box<Combination>, Box<Combination>),
}

impl Combination {
    pub fn and(left: Combination, right: Combination) -> Combination {
        Combination::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Combination, right: Combination) -> Combination {
        Combination::Or(Box::new(left), Box::new(right))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Combination::Lit(al) | Combination::Naf(al) => al.is_ground(),
            Combination::And(l, r) | Combination::Or(l, r) => l.is_ground() && r.is_ground(),
        }
    }

    /// All annotated literals mentioned, in source order.
    pub fn literals(&self) -> Vec<&AnnotatedLiteral> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a AnnotatedLiteral>) {
        match self {
            Combination::Lit(al) | Combination::Naf(al) => out.push(al),
            Combination::And(l, r) | Combination::Or(l, r) => {
                l.collect_literals(out);
                r.collect_literals(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Combination::Or(..) => 1,
            Combination::And(..) => 2,
            Combination::Lit(_) | Combination::Naf(_) => 3,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        // Parenthesize a looser child, and a right-hand child of equal
        // precedence, so that printing preserves the tree shape.
        let mine = self.precedence();
        if mine < parent || (right && mine == parent && mine < 3) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Combination::Lit(al) => write!(f, "{al}"),
            Combination::Naf(al) => write!(f, "not {al}"),
            Combination::And(l, r) => {
                l.fmt_child(f, 2, false)?;
                write!(f, " && ")?;
                r.fmt_child(f, 2, true)
            }
            Combination::Or(l, r) => {
                l.fmt_child(f, 1, false)?;
                write!(f, " || ")?;
                r.fmt_child(f, 1, true)
            }
        }
    }
}

/// A preference rule `#prefer C1 > ... > Ck <- body.` Combinations are
/// listed from most to least preferred; the order is significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreferenceRule {
    pub id: RuleId,
    /// Ranked combinations; never empty.
    pub combinations: Vec<Combination>,
    pub pos_body: Vec<AnnotatedLiteral>,
    pub neg_body: Vec<AnnotatedLiteral>,
}

impl PreferenceRule {
    pub fn is_ground(&self) -> bool {
        self.combinations.iter().all(Combination::is_ground)
            && self.pos_body.iter().chain(&self.neg_body).all(AnnotatedLiteral::is_ground)
    }
}

impl fmt::Display for PreferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#prefer ")?;
        for (i, combination) in self.combinations.iter().enumerate() {
            if i > 0 {
                write!(f, " > ")?;
            }
            write!(f, "{combination}")?;
        }
        display_body(f, &self.pos_body, &self.neg_body)?;
        write!(f, ".")
    }
}

/// Position of a statement in its source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A whole program: the generator layer plus the preference layer.
///
/// `spans` maps rule ids to source positions when the program came from
/// text; it is diagnostic only and excluded from equality.
#[derive(Debug, Clone, Default)]
pub struct Program {
    pub generators: Vec<GeneratorRule>,
    pub preferences: Vec<PreferenceRule>,
    pub spans: BTreeMap<RuleId, SourceSpan>,
}

impl Program {
    pub fn is_ground(&self) -> bool {
        self.generators.iter().all(GeneratorRule::is_ground)
            && self.preferences.iter().all(PreferenceRule::is_ground)
    }

    /// Every predicate mentioned anywhere, with the literal carrying it.
    pub(crate) fn annotated_literals(&self) -> impl Iterator<Item = &AnnotatedLiteral> {
        let gen = self
            .generators
            .iter()
            .flat_map(|r| r.head.iter().chain(&r.pos_body).chain(&r.neg_body));
        let pref = self.preferences.iter().flat_map(|r| {
            r.combinations
                .iter()
                .flat_map(|c| c.literals())
                .chain(r.pos_body.iter())
                .chain(r.neg_body.iter())
        });
        gen.chain(pref)
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.preferences == other.preferences
    }
}

impl Eq for Program {}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.generators {
            writeln!(f, "{rule}")?;
        }
        for rule in &self.preferences {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

fn display_csv<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

fn display_body(
    f: &mut fmt::Formatter<'_>,
    pos: &[AnnotatedLiteral],
    neg: &[AnnotatedLiteral],
) -> fmt::Result {
    if pos.is_empty() && neg.is_empty() {
        return Ok(());
    }
    write!(f, " <- ")?;
    let mut first = true;
    for al in pos {
        if !first {
            write!(f, ", ")?;
        }
        write!(f, "{al}")?;
        first = false;
    }
    for al in neg {
        if !first {
            write!(f, ", ")?;
        }
        write!(f, "not {al}")?;
        first = false;
    }
    Ok(())
}
