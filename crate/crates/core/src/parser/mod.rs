//! Text format: parsing and canonical rendering.
//!
//! Statements end with `.`; `v` separates head disjuncts; `<-` introduces a
//! body; `not` is negation as failure and `-` classical negation; `:`
//! attaches an annotation to a literal. Preference rules start with
//! `#prefer` and separate their ranked combinations with `>`; inside a
//! combination `&&`, `||` and parentheses build boolean structure. `%`
//! starts a line comment. Identifiers begin with a lowercase letter,
//! variables with an uppercase one; `not` and `v` are reserved words.
//! Annotation constants are decimal (`0.3`) or rational (`1/3`) literals
//! in the unit interval.

mod lexer;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::kernel::{
    AnnotatedLiteral, Annotation, AnnotationFn, Atom, Combination, GeneratorRule, Grade,
    GradeError, Literal, PreferenceRule, Program, RuleId, SourceSpan, Term,
};

use lexer::{Token, TokenKind};

/// Rejection of a source text, with the position that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: {message}")]
    Syntax { span: SourceSpan, message: String },
    /// A predicate was used with two different argument counts.
    #[error("{span}: predicate {predicate} used with {found} arguments, expected {expected}")]
    Arity { span: SourceSpan, predicate: String, expected: usize, found: usize },
    /// A head or negative-body variable is not grounded by the positive body.
    #[error("rule {rule}: unsafe variable {variable}: {reason}")]
    Safety { rule: RuleId, variable: String, reason: String },
    /// An annotation constant lies outside `[0, 1]`.
    #[error("{span}: annotation {value} is outside [0, 1]")]
    AnnotationRange { span: SourceSpan, value: String },
}

/// Parses a program and validates arity consistency and rule safety.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let tokens = lexer::tokenize(src)?;
    let mut parser = Parser { src, tokens, pos: 0 };
    let program = parser.program()?;
    validate(&program)?;
    Ok(program)
}

/// Canonical text for a program. `parse_program` of the result returns an
/// equal program.
pub fn render_program(program: &Program) -> String {
    program.to_string()
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::default();
        while self.pos < self.tokens.len() {
            let start = self.pos;
            if self.peek_is(&TokenKind::Prefer) {
                let id = RuleId::preference(program.preferences.len());
                let rule = self.preference_rule(id.clone())?;
                program.spans.insert(id, self.statement_span(start));
                program.preferences.push(rule);
            } else {
                let id = RuleId::generator(program.generators.len());
                let rule = self.generator_rule(id.clone())?;
                program.spans.insert(id, self.statement_span(start));
                program.generators.push(rule);
            }
        }
        Ok(program)
    }

    fn statement_span(&self, start: usize) -> SourceSpan {
        let first = &self.tokens[start];
        let last = &self.tokens[self.pos - 1];
        SourceSpan {
            line: first.span.line,
            column: first.span.column,
            length: (last.end - first.start) as u32,
        }
    }

    fn generator_rule(&mut self, id: RuleId) -> Result<GeneratorRule, ParseError> {
        let mut head = vec![self.annotated_literal()?];
        while self.eat(&TokenKind::Vee) {
            head.push(self.annotated_literal()?);
        }
        let (pos_body, neg_body) = self.optional_body()?;
        self.expect(&TokenKind::Dot)?;
        Ok(GeneratorRule { id, head, pos_body, neg_body })
    }

    fn preference_rule(&mut self, id: RuleId) -> Result<PreferenceRule, ParseError> {
        self.expect(&TokenKind::Prefer)?;
        let mut combinations = vec![self.combination()?];
        while self.eat(&TokenKind::Gt) {
            combinations.push(self.combination()?);
        }
        let (pos_body, neg_body) = self.optional_body()?;
        self.expect(&TokenKind::Dot)?;
        Ok(PreferenceRule { id, combinations, pos_body, neg_body })
    }

    fn optional_body(
        &mut self,
    ) -> Result<(Vec<AnnotatedLiteral>, Vec<AnnotatedLiteral>), ParseError> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.eat(&TokenKind::Arrow) {
            loop {
                if self.eat(&TokenKind::Not) {
                    neg.push(self.annotated_literal()?);
                } else {
                    pos.push(self.annotated_literal()?);
                }
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        Ok((pos, neg))
    }

    fn combination(&mut self) -> Result<Combination, ParseError> {
        let mut left = self.conjunction()?;
        while self.eat(&TokenKind::OrOr) {
            left = Combination::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Combination, ParseError> {
        let mut left = self.combination_atom()?;
        while self.eat(&TokenKind::AndAnd) {
            left = Combination::and(left, self.combination_atom()?);
        }
        Ok(left)
    }

    fn combination_atom(&mut self) -> Result<Combination, ParseError> {
        if self.eat(&TokenKind::LParen) {
            let inner = self.combination()?;
            self.expect(&TokenKind::RParen)?;
            return Ok(inner);
        }
        if self.eat(&TokenKind::Not) {
            // Negation as failure attaches to a single literal here; `not`
            // in front of a parenthesized combination is not part of the
            // language.
            return Ok(Combination::Naf(self.annotated_literal()?));
        }
        Ok(Combination::Lit(self.annotated_literal()?))
    }

    fn annotated_literal(&mut self) -> Result<AnnotatedLiteral, ParseError> {
        let literal = self.literal()?;
        self.expect(&TokenKind::Colon)?;
        let annotation = self.annotation()?;
        Ok(AnnotatedLiteral { literal, annotation })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let sign = self.eat(&TokenKind::Minus);
        let atom = self.atom()?;
        Ok(if sign { Literal::negative(atom) } else { Literal::positive(atom) })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (predicate, _) = self.ident("predicate")?;
        let mut args = Vec::new();
        if self.eat(&TokenKind::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
            self.expect(&TokenKind::RParen)?;
        }
        Ok(Atom { predicate, args })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if let TokenKind::Var(name) = &self.peek()?.kind {
            let name = name.clone();
            self.pos += 1;
            return Ok(Term::Var(name));
        }
        let (name, _) = self.ident("term")?;
        if self.eat(&TokenKind::LParen) {
            let mut args = Vec::new();
            loop {
                args.push(self.term()?);
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
            self.expect(&TokenKind::RParen)?;
            Ok(Term::Compound(name, args))
        } else {
            Ok(Term::Const(name))
        }
    }

    fn annotation(&mut self) -> Result<Annotation, ParseError> {
        let token = self.peek()?.clone();
        match &token.kind {
            TokenKind::Number(text) => {
                self.pos += 1;
                let mut literal = text.clone();
                if self.eat(&TokenKind::Slash) {
                    let denom = self.number()?;
                    literal = format!("{literal}/{denom}");
                }
                match literal.parse::<Grade>() {
                    Ok(grade) => Ok(Annotation::Const(grade)),
                    Err(GradeError::OutOfRange(_)) => {
                        Err(ParseError::AnnotationRange { span: token.span, value: literal })
                    }
                    Err(GradeError::Malformed(_)) => Err(ParseError::Syntax {
                        span: token.span,
                        message: format!("malformed grade literal {literal:?}"),
                    }),
                }
            }
            TokenKind::Var(name) => {
                self.pos += 1;
                Ok(Annotation::Var(name.clone()))
            }
            TokenKind::Ident(name) => {
                let Some(func) = AnnotationFn::from_name(name) else {
                    return Err(ParseError::Syntax {
                        span: token.span,
                        message: format!(
                            "unknown annotation function {name:?} (expected min, max, prod, bsum, or compl)"
                        ),
                    });
                };
                self.pos += 1;
                self.expect(&TokenKind::LParen)?;
                let mut args = vec![self.annotation()?];
                while self.eat(&TokenKind::Comma) {
                    args.push(self.annotation()?);
                }
                self.expect(&TokenKind::RParen)?;
                if !func.arity_ok(args.len()) {
                    let expected = match func {
                        AnnotationFn::Compl => "exactly 1 argument".to_string(),
                        _ => "at least 2 arguments".to_string(),
                    };
                    return Err(ParseError::Syntax {
                        span: token.span,
                        message: format!("{} takes {expected}", func.name()),
                    });
                }
                Ok(Annotation::Func(func, args))
            }
            other => Err(ParseError::Syntax {
                span: token.span,
                message: format!("expected an annotation, found {}", other.describe()),
            }),
        }
    }

    fn number(&mut self) -> Result<String, ParseError> {
        let token = self.peek()?.clone();
        if let TokenKind::Number(text) = &token.kind {
            self.pos += 1;
            Ok(text.clone())
        } else {
            Err(ParseError::Syntax {
                span: token.span,
                message: format!("expected a number, found {}", token.kind.describe()),
            })
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        let token = self.peek()?.clone();
        match &token.kind {
            TokenKind::Ident(name) => {
                self.pos += 1;
                Ok((name.clone(), token.span))
            }
            other => Err(ParseError::Syntax {
                span: token.span,
                message: format!("expected a {what} name, found {}", other.describe()),
            }),
        }
    }

    fn peek(&self) -> Result<&Token, ParseError> {
        self.tokens.get(self.pos).ok_or_else(|| ParseError::Syntax {
            span: self.end_span(),
            message: "unexpected end of input".to_string(),
        })
    }

    fn peek_is(&self, kind: &TokenKind) -> bool {
        self.tokens.get(self.pos).is_some_and(|t| t.kind == *kind)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_is(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<(), ParseError> {
        if self.eat(kind) {
            return Ok(());
        }
        match self.tokens.get(self.pos) {
            Some(token) => Err(ParseError::Syntax {
                span: token.span,
                message: format!("expected {}, found {}", kind.describe(), token.kind.describe()),
            }),
            None => Err(ParseError::Syntax {
                span: self.end_span(),
                message: format!("expected {}, found end of input", kind.describe()),
            }),
        }
    }

    fn end_span(&self) -> SourceSpan {
        match self.tokens.last() {
            Some(token) => token.span,
            None => SourceSpan { line: 1, column: self.src.len() as u32 + 1, length: 0 },
        }
    }
}

/// Arity consistency across the program and safety of every generator rule.
fn validate(program: &Program) -> Result<(), ParseError> {
    let mut arities: HashMap<&str, usize> = HashMap::new();
    for al in program.annotated_literals() {
        let atom = &al.literal.atom;
        let seen = *arities.entry(&atom.predicate).or_insert(atom.args.len());
        if seen != atom.args.len() {
            return Err(ParseError::Arity {
                span: SourceSpan::default(),
                predicate: atom.predicate.clone(),
                expected: seen,
                found: atom.args.len(),
            });
        }
    }

    for rule in &program.generators {
        let mut body_object_vars = BTreeSet::new();
        let mut body_annotation_vars = BTreeSet::new();
        for al in &rule.pos_body {
            for arg in &al.literal.atom.args {
                arg.collect_vars(&mut body_object_vars);
            }
            al.annotation.collect_vars(&mut body_annotation_vars);
        }
        for al in rule.head.iter().chain(&rule.neg_body) {
            let mut object_vars = BTreeSet::new();
            for arg in &al.literal.atom.args {
                arg.collect_vars(&mut object_vars);
            }
            if let Some(var) = object_vars.difference(&body_object_vars).next() {
                return Err(ParseError::Safety {
                    rule: rule.id.clone(),
                    variable: var.clone(),
                    reason: "does not occur in the positive body".to_string(),
                });
            }
            let mut annotation_vars = BTreeSet::new();
            al.annotation.collect_vars(&mut annotation_vars);
            if let Some(var) = annotation_vars.difference(&body_annotation_vars).next() {
                return Err(ParseError::Safety {
                    rule: rule.id.clone(),
                    variable: var.clone(),
                    reason: "does not occur in a positive body annotation".to_string(),
                });
            }
        }
        check_position_clash(
            &rule.id,
            rule.head.iter().chain(&rule.pos_body).chain(&rule.neg_body),
        )?;
    }

    for rule in &program.preferences {
        // Preference rules have no binding requirement: unbound object
        // variables range over the universe and unbound annotation
        // variables over the grade vocabulary. Only position clashes are
        // errors.
        let combo_literals = rule.combinations.iter().flat_map(|c| c.literals());
        check_position_clash(
            &rule.id,
            combo_literals.chain(&rule.pos_body).chain(&rule.neg_body),
        )?;
    }
    Ok(())
}

/// A variable name may not stand for both a term and a grade.
fn check_position_clash<'a>(
    rule: &RuleId,
    literals: impl Iterator<Item = &'a AnnotatedLiteral>,
) -> Result<(), ParseError> {
    let mut object_vars = BTreeSet::new();
    let mut annotation_vars = BTreeSet::new();
    for al in literals {
        for arg in &al.literal.atom.args {
            arg.collect_vars(&mut object_vars);
        }
        al.annotation.collect_vars(&mut annotation_vars);
    }
    if let Some(var) = object_vars.intersection(&annotation_vars).next() {
        return Err(ParseError::Safety {
            rule: rule.clone(),
            variable: var.clone(),
            reason: "used both as an object variable and as an annotation variable".to_string(),
        });
    }
    Ok(())
}
