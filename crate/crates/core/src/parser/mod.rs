//! Recursive-descent parser for the `.paso` language.
//!
//! ```text
//! program     ::= statement*
//! statement   ::= "#strategy" IDENT "=" IDENT "."
//!               | "#domain" VAR "=" "{" const ("," const)* "}" "."
//!               | "#pref" pref_head body_opt "."
//!               | gen_head body_opt "."
//!               | pref_head body_opt "."         (head contains ">>", "&&" or "||")
//! gen_head    ::= head_atom ("|" head_atom)*
//! head_atom   ::= atom (":" annotation)?
//! body_opt    ::= (":-" (body_item ("," body_item)*)?)?
//! body_item   ::= "not" formula (":" annotation)?
//!               | formula (":" annotation)?
//!               | term ("==" | "!=") term
//! formula     ::= literal | "(" literal (op literal)+ ")"
//! op          ::= "^" SID                        (conjunctive strategy)
//!               | "v" SID                        (disjunctive strategy, e.g. `vind`)
//! literal     ::= "-"? IDENT ("(" term ("," term)* ")")?
//! annotation  ::= item | "[" item "," item "]"
//! item        ::= NUMBER ("/" NUMBER)? | VAR | FN "(" item ("," item)* ")"
//! pref_head   ::= combo (">>" combo)*
//! combo       ::= conj ("||" conj)*
//! conj        ::= unary ("&&" unary)*
//! unary       ::= "not" formula (":" annotation)? | formula (":" annotation)? | "(" combo ")"
//! ```
//!
//! Unannotated formulas carry `[1,1]`; `:α` is shorthand for `:[α,α]`.
//! Classical negation (`-p`) is only accepted in preference rules.

mod lexer;


use num_traits::One;
use thiserror::Error;

use crate::annotation::{Annotation, AnnotationFn, AnnotationItem};
use crate::interval::{format_prob, parse_prob, Prob};
use crate::strategy::{builtin, StrategyKind, StrategyRegistry};
use crate::syntax::{
    AnnotatedFormula, Body, CompareOp, Combination, Comparison, DomainDecl, GeneratorRule, HeadAtom, HybridFormula,
    Literal, PreferenceRule, Program, StrategyDecl, Term,
};

use self::lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("lexical error: {0}")]
    Lexical(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown {kind} strategy `{id}`")]
    UnknownStrategy { id: String, kind: StrategyKind },
    #[error("`not` may only prefix an annotated hybrid literal, not a combination")]
    NafInCombination,
    #[error("annotation out of range: {0}")]
    AnnotationRange(String),
}

/// Parses program text with the built-in strategy registry.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    Parser::new(text, builtin())?.program()
}

/// Parses program text, resolving strategy ids against `registry`.
pub fn parse_program_with(text: &str, registry: &StrategyRegistry) -> Result<Program, ParseError> {
    Parser::new(text, registry)?.program()
}

/// Prints a program in concrete syntax. `parse_program(&format_program(p)) == p`.
pub fn format_program(program: &Program) -> String {
    program.to_string()
}

struct Parser<'r> {
    tokens: Vec<Token>,
    pos: usize,
    registry: &'r StrategyRegistry,
}

type PResult<T> = Result<T, ParseError>;

impl<'r> Parser<'r> {
    fn new(text: &str, registry: &'r StrategyRegistry) -> PResult<Self> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0, registry })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, kind }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(self.error(ParseErrorKind::Syntax(msg.into())))
    }

    fn expect(&mut self, tok: &Tok) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.syntax(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn program(mut self) -> PResult<Program> {
        let mut program = Program::default();
        while *self.peek() != Tok::Eof {
            self.statement(&mut program)?;
        }
        Ok(program)
    }

    fn statement(&mut self, program: &mut Program) -> PResult<()> {
        match self.peek().clone() {
            Tok::Directive(name) => match name.as_str() {
                "strategy" => {
                    self.bump();
                    let decl = self.strategy_directive()?;
                    program.strategies.push(decl);
                }
                "domain" => {
                    self.bump();
                    let decl = self.domain_directive()?;
                    program.domains.push(decl);
                }
                "pref" => {
                    self.bump();
                    let rule = self.preference_rule()?;
                    program.preference_rules.push(rule);
                }
                other => return self.syntax(format!("unknown directive `#{other}`")),
            },
            _ => {
                if self.head_is_preference() {
                    let rule = self.preference_rule()?;
                    program.preference_rules.push(rule);
                } else {
                    let rule = self.generator_rule()?;
                    program.generator_rules.push(rule);
                }
            }
        }
        Ok(())
    }

    fn head_is_preference(&self) -> bool {
        self.tokens[self.pos..]
            .iter()
            .map(|t| &t.tok)
            .take_while(|t| !matches!(t, Tok::If | Tok::Dot | Tok::Eof))
            .any(|t| matches!(t, Tok::Prefer | Tok::AndAnd | Tok::OrOr))
    }

    fn strategy_directive(&mut self) -> PResult<StrategyDecl> {
        let predicate = match self.bump() {
            Tok::Ident(p) => p,
            other => return self.syntax(format!("expected predicate name, found {other}")),
        };
        self.expect(&Tok::Assign)?;
        let id = match self.peek().clone() {
            Tok::Ident(id) => id,
            other => return self.syntax(format!("expected strategy id, found {other}")),
        };
        let strategy = self
            .registry
            .get(StrategyKind::Disjunctive, &id)
            .ok_or_else(|| self.error(ParseErrorKind::UnknownStrategy { id, kind: StrategyKind::Disjunctive }))?;
        self.bump();
        self.expect(&Tok::Dot)?;
        Ok(StrategyDecl { predicate, strategy })
    }

    fn domain_directive(&mut self) -> PResult<DomainDecl> {
        let var = match self.bump() {
            Tok::Var(v) => v,
            other => return self.syntax(format!("expected variable, found {other}")),
        };
        self.expect(&Tok::Assign)?;
        self.expect(&Tok::LBrace)?;
        let mut constants = Vec::new();
        loop {
            match self.bump() {
                Tok::Ident(c) | Tok::Number(c) => constants.push(c),
                other => return self.syntax(format!("expected constant, found {other}")),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RBrace)?;
        self.expect(&Tok::Dot)?;
        Ok(DomainDecl { var, constants })
    }

    fn generator_rule(&mut self) -> PResult<GeneratorRule> {
        let mut head = Vec::new();
        loop {
            if *self.peek() == Tok::Minus {
                return self.syntax("classical negation is not allowed in generator rules");
            }
            if *self.peek() == Tok::Ident("not".into()) {
                return self.syntax("`not` is not allowed in rule heads");
            }
            let atom = self.literal(false)?;
            let annotation = self.annotation_opt()?;
            head.push(HeadAtom { atom, annotation });
            if !self.eat(&Tok::Bar) {
                break;
            }
        }
        let body = self.body_opt(false)?;
        self.expect(&Tok::Dot)?;
        Ok(GeneratorRule { head, body })
    }

    fn preference_rule(&mut self) -> PResult<PreferenceRule> {
        let mut head = vec![self.combination()?];
        while self.eat(&Tok::Prefer) {
            head.push(self.combination()?);
        }
        let body = self.body_opt(true)?;
        self.expect(&Tok::Dot)?;
        Ok(PreferenceRule { head, body })
    }

    fn body_opt(&mut self, allow_negation: bool) -> PResult<Body> {
        let mut body = Body::default();
        if !self.eat(&Tok::If) {
            return Ok(body);
        }
        if *self.peek() == Tok::Dot {
            return Ok(body);
        }
        loop {
            self.body_item(&mut body, allow_negation)?;
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(body)
    }

    fn body_item(&mut self, body: &mut Body, allow_negation: bool) -> PResult<()> {
        if self.is_naf_keyword() {
            self.bump();
            let item = self.annotated_formula(allow_negation)?;
            body.naf.push(item);
            return Ok(());
        }
        let is_cmp = matches!(self.peek(), Tok::Var(_) | Tok::Ident(_) | Tok::Number(_))
            && matches!(self.peek_at(1), Tok::EqEq | Tok::NotEq);
        if is_cmp {
            let left = self.term()?;
            let op = match self.bump() {
                Tok::EqEq => CompareOp::Eq,
                _ => CompareOp::Neq,
            };
            let right = self.term()?;
            body.comparisons.push(Comparison { left, op, right });
            return Ok(());
        }
        let item = self.annotated_formula(allow_negation)?;
        body.positive.push(item);
        Ok(())
    }

    fn is_naf_keyword(&self) -> bool {
        *self.peek() == Tok::Ident("not".into())
            && matches!(self.peek_at(1), Tok::Ident(_) | Tok::LParen | Tok::Minus)
    }

    fn annotated_formula(&mut self, allow_negation: bool) -> PResult<AnnotatedFormula> {
        let formula = self.formula(allow_negation)?;
        let annotation = self.annotation_opt()?;
        Ok(AnnotatedFormula { formula, annotation })
    }

    fn formula(&mut self, allow_negation: bool) -> PResult<HybridFormula> {
        if *self.peek() != Tok::LParen {
            return Ok(HybridFormula::Single(self.literal(allow_negation)?));
        }
        self.bump();
        let first = self.literal(allow_negation)?;
        let mut parts = vec![first];
        let mut strategy = None;
        while *self.peek() != Tok::RParen {
            let (kind, id) = match self.peek().clone() {
                Tok::Caret => {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Ident(id) => (StrategyKind::Conjunctive, id),
                        other => return self.syntax(format!("expected strategy id after `^`, found {other}")),
                    }
                }
                Tok::Ident(word) if word.starts_with('v') && word.len() > 1 => {
                    (StrategyKind::Disjunctive, word[1..].to_string())
                }
                other => return self.syntax(format!("expected `^sid`, `vsid` or `)`, found {other}")),
            };
            let s = self
                .registry
                .get(kind, &id)
                .ok_or_else(|| self.error(ParseErrorKind::UnknownStrategy { id, kind }))?;
            match &strategy {
                None => strategy = Some(s),
                Some(prev) if *prev == s => {}
                Some(_) => return self.syntax("a hybrid formula uses one connective and one strategy"),
            }
            self.bump();
            let part = self.literal(allow_negation)?;
            if parts.contains(&part) {
                return self.syntax(format!("`{part}` occurs twice in the same hybrid formula"));
            }
            parts.push(part);
        }
        self.bump();
        match strategy {
            Some(strategy) => Ok(HybridFormula::Compound { strategy, parts }),
            None => self.syntax("parenthesized formula needs at least two parts"),
        }
    }

    fn literal(&mut self, allow_negation: bool) -> PResult<Literal> {
        let negated = if *self.peek() == Tok::Minus {
            if !allow_negation {
                return self.syntax("classical negation is not allowed in generator rules");
            }
            self.bump();
            true
        } else {
            false
        };
        let predicate = match self.peek().clone() {
            Tok::Ident(p) if p != "not" => p,
            other => return self.syntax(format!("expected literal, found {other}")),
        };
        self.bump();
        let mut terms = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                terms.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(Literal { predicate, terms, negated })
    }

    fn term(&mut self) -> PResult<Term> {
        match self.bump() {
            Tok::Ident(c) | Tok::Number(c) => Ok(Term::Const(c)),
            Tok::Var(v) => Ok(Term::Var(v)),
            other => self.syntax(format!("expected term, found {other}")),
        }
    }

    fn annotation_opt(&mut self) -> PResult<Annotation> {
        if !self.eat(&Tok::Colon) {
            return Ok(Annotation::one());
        }
        let (line, column) = (self.tokens[self.pos].line, self.tokens[self.pos].column);
        let annotation = if self.eat(&Tok::LBracket) {
            let lower = self.annotation_item()?;
            self.expect(&Tok::Comma)?;
            let upper = self.annotation_item()?;
            self.expect(&Tok::RBracket)?;
            Annotation::new(lower, upper)
        } else {
            Annotation::point(self.annotation_item()?)
        };
        if let Some(Err(e)) = annotation.as_constant() {
            return Err(ParseError { line, column, kind: ParseErrorKind::AnnotationRange(e.to_string()) });
        }
        Ok(annotation)
    }

    fn annotation_item(&mut self) -> PResult<AnnotationItem> {
        match self.peek().clone() {
            Tok::Number(n) => {
                let at = self.pos;
                let mut text = n;
                self.bump();
                if self.eat(&Tok::Slash) {
                    match self.bump() {
                        Tok::Number(d) => text = format!("{text}/{d}"),
                        other => return self.syntax(format!("expected denominator, found {other}")),
                    }
                }
                let value = parse_prob(&text)
                    .ok_or_else(|| self.error(ParseErrorKind::Syntax(format!("bad number `{text}`"))))?;
                if value > Prob::one() {
                    let t = &self.tokens[at];
                    return Err(ParseError {
                        line: t.line,
                        column: t.column,
                        kind: ParseErrorKind::AnnotationRange(format!(
                            "annotation constant {} lies outside [0,1]",
                            format_prob(&value)
                        )),
                    });
                }
                Ok(AnnotationItem::Const(value))
            }
            Tok::Minus => Err(self.error(ParseErrorKind::AnnotationRange(
                "annotation constants cannot be negative".into(),
            ))),
            Tok::Var(v) => {
                self.bump();
                Ok(AnnotationItem::Var(v))
            }
            Tok::Ident(name) => {
                let func = AnnotationFn::from_name(&name)
                    .ok_or_else(|| self.error(ParseErrorKind::Syntax(format!("unknown annotation function `{name}`"))))?;
                self.bump();
                self.expect(&Tok::LParen)?;
                let mut args = Vec::new();
                loop {
                    args.push(self.annotation_item()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::RParen)?;
                Ok(AnnotationItem::Apply(func, args))
            }
            other => self.syntax(format!("expected annotation, found {other}")),
        }
    }

    fn combination(&mut self) -> PResult<Combination> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::OrOr) {
            let right = self.conjunction()?;
            left = Combination::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> PResult<Combination> {
        let mut left = self.unary()?;
        while self.eat(&Tok::AndAnd) {
            let right = self.unary()?;
            left = Combination::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Combination> {
        if self.is_naf_keyword() {
            self.bump();
            if *self.peek() == Tok::LParen {
                let save = self.pos;
                return match self.annotated_formula(true) {
                    Ok(item) => Ok(Combination::naf_leaf(item)),
                    Err(_) => {
                        self.pos = save;
                        Err(self.error(ParseErrorKind::NafInCombination))
                    }
                };
            }
            return Ok(Combination::naf_leaf(self.annotated_formula(true)?));
        }
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            match self.annotated_formula(true) {
                Ok(item) => return Ok(Combination::leaf(item)),
                // Range and strategy errors inside a real hybrid formula are final.
                Err(e) if !matches!(e.kind, ParseErrorKind::Syntax(_)) => return Err(e),
                Err(_) => self.pos = save,
            }
            self.bump();
            let inner = self.combination()?;
            self.expect(&Tok::RParen)?;
            return Ok(inner);
        }
        Ok(Combination::leaf(self.annotated_formula(true)?))
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::oracle::{gen_random, RandomParams};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn format_then_parse_is_identity(seed in any::<u64>(), classical in any::<bool>()) {
            let program = gen_random(seed, RandomParams::default(), classical);
            let text = format_program(&program);
            let back = parse_program(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(&back, &program);
            prop_assert_eq!(format_program(&back), text);
        }
    }
}
