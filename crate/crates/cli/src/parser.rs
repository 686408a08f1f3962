//! Recursive-descent parser producing a [`Program`].

use lhott_core::Rational;
use num_bigint::BigInt;

use crate::ast::*;
use crate::error::ParseError;
use crate::lexer::{tokenize, Tok, Token};

pub fn parse(text: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    p.program()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

const STATEMENTS: [&str; 7] = ["corr", "functor", "group", "groupoid", "kernel", "print", "system"];

fn kw(s: &str) -> String {
    format!("`{s}`")
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<String>) -> PResult<T> {
        let t = self.peek();
        Err(ParseError::new(t.span, &format!("unexpected {}", t.tok.describe()), expected))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.advance())
        } else {
            let d = match &tok {
                Tok::Newline => "newline".to_string(),
                Tok::Eof => "end of input".to_string(),
                t => kw(t.symbol()),
            };
            self.fail(vec![d])
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> PResult<Span> {
        if self.at_keyword(word) {
            Ok(self.advance().span)
        } else {
            self.fail(vec![kw(word)])
        }
    }

    /// Consumes one of `words`, returning its index.
    fn one_of(&mut self, words: &[&str]) -> PResult<(usize, Span)> {
        if let Tok::Ident(s) = &self.peek().tok {
            if let Some(i) = words.iter().position(|w| w == s) {
                return Ok((i, self.advance().span));
            }
        }
        self.fail(words.iter().map(|w| kw(w)).collect())
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let span = self.advance().span;
                Ok(Spanned::new(s, span))
            }
            _ => self.fail(vec!["identifier".into()]),
        }
    }

    fn num(&mut self) -> PResult<Num> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let span = self.peek().span;
                let v = s
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(span, "integer literal is too large", vec![]))?;
                self.advance();
                Ok(Spanned::new(v, span))
            }
            _ => self.fail(vec!["integer".into()]),
        }
    }

    fn big(&mut self) -> PResult<BigInt> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let v: BigInt = s.parse().expect("lexer yields digit strings");
                self.advance();
                Ok(v)
            }
            _ => self.fail(vec!["integer".into()]),
        }
    }

    fn skip_newlines(&mut self) {
        while self.eat(&Tok::Newline) {}
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek().tok, Tok::Newline | Tok::Semi | Tok::Comma) {
            self.advance();
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut prog = Program {
            declarations: Vec::new(),
            commands: Vec::new(),
        };
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::Eof {
                return Ok(prog);
            }
            let (which, span) = self.one_of(&STATEMENTS)?;
            match STATEMENTS[which] {
                "print" => prog.commands.push(self.command(span)?),
                word => prog.declarations.push(self.declaration(word)?),
            }
            if self.peek().tok != Tok::Eof {
                self.expect(Tok::Newline)?;
            }
        }
    }

    fn declaration(&mut self, word: &str) -> PResult<Decl> {
        let name = self.ident()?;
        let body = match word {
            "group" => {
                self.expect(Tok::Eq)?;
                DeclBody::Group(self.group_expr()?)
            }
            "groupoid" => {
                self.expect(Tok::Eq)?;
                DeclBody::Groupoid(self.groupoid_expr()?)
            }
            "functor" => {
                self.expect(Tok::Colon)?;
                let domain = self.ident()?;
                self.expect(Tok::Arrow)?;
                let codomain = self.ident()?;
                self.expect(Tok::Eq)?;
                DeclBody::Functor {
                    domain,
                    codomain,
                    body: self.functor_expr()?,
                }
            }
            "system" => {
                self.keyword("on")?;
                let base = self.ident()?;
                self.expect(Tok::Eq)?;
                DeclBody::System {
                    base,
                    body: self.system_expr()?,
                }
            }
            "corr" => {
                self.expect(Tok::Eq)?;
                let left = self.ident()?;
                self.expect(Tok::LeftArrow)?;
                let apex = self.ident()?;
                self.expect(Tok::Arrow)?;
                let right = self.ident()?;
                self.keyword("via")?;
                let left_leg = self.ident()?;
                self.expect(Tok::Comma)?;
                let right_leg = self.ident()?;
                DeclBody::Corr {
                    left,
                    apex,
                    right,
                    left_leg,
                    right_leg,
                }
            }
            _ => {
                self.keyword("on")?;
                let corr = self.ident()?;
                self.expect(Tok::Colon)?;
                let target = self.ident()?;
                self.expect(Tok::Le)?;
                let source = self.ident()?;
                self.expect(Tok::Eq)?;
                let body = if self.at_keyword("unit") {
                    self.advance();
                    KernelExpr::Unit
                } else if self.peek().tok == Tok::LBrace {
                    KernelExpr::Explicit(self.matrix_entries()?)
                } else {
                    return self.fail(vec![kw("unit"), kw("{")]);
                };
                DeclBody::Kernel {
                    corr,
                    target,
                    source,
                    body,
                }
            }
        };
        Ok(Decl { name, body })
    }

    fn group_expr(&mut self) -> PResult<GroupExpr> {
        let (which, _) = self.one_of(&["cyclic", "symmetric", "table"])?;
        Ok(match which {
            0 => GroupExpr::Cyclic(self.num()?),
            1 => GroupExpr::Symmetric(self.num()?),
            _ => GroupExpr::Table(self.int_rows()?),
        })
    }

    /// `{ 0 1; 1 0 }`, rows separated by `;` or newlines.
    fn int_rows(&mut self) -> PResult<Vec<Vec<Num>>> {
        self.expect(Tok::LBrace)?;
        let mut rows = Vec::new();
        let mut row = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Int(_) => row.push(self.num()?),
                Tok::Semi | Tok::Newline => {
                    self.advance();
                    if !row.is_empty() {
                        rows.push(std::mem::take(&mut row));
                    }
                }
                Tok::RBrace => {
                    self.advance();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                    return Ok(rows);
                }
                _ => return self.fail(vec!["integer".into(), kw(";"), kw("}")]),
            }
        }
    }

    fn groupoid_expr(&mut self) -> PResult<GroupoidExpr> {
        let (which, _) = self.one_of(&["B", "discrete", "action", "product", "union"])?;
        Ok(match which {
            0 => GroupoidExpr::Delooping(self.ident()?),
            1 => GroupoidExpr::Discrete(self.num()?),
            2 => {
                let group = self.ident()?;
                self.keyword("on")?;
                let points = self.num()?;
                let rows = self.int_rows()?;
                GroupoidExpr::Action { group, points, rows }
            }
            3 => GroupoidExpr::Product(self.ident()?, self.ident()?),
            _ => GroupoidExpr::Union(self.ident()?, self.ident()?),
        })
    }

    fn functor_expr(&mut self) -> PResult<FunctorExpr> {
        if self.peek().tok == Tok::LBrace {
            self.advance();
            self.skip_separators();
            self.keyword("objects")?;
            self.expect(Tok::Colon)?;
            let objects = self.int_list()?;
            self.skip_separators();
            self.keyword("morphisms")?;
            self.expect(Tok::Colon)?;
            let morphisms = self.int_list()?;
            self.skip_separators();
            self.expect(Tok::RBrace)?;
            return Ok(FunctorExpr::Explicit { objects, morphisms });
        }
        let words = ["terminal", "id", "proj1", "proj2"];
        if let Tok::Ident(s) = &self.peek().tok {
            if let Some(i) = words.iter().position(|w| w == s) {
                self.advance();
                return Ok([FunctorExpr::Terminal, FunctorExpr::Identity, FunctorExpr::Proj1, FunctorExpr::Proj2][i].clone());
            }
        }
        let mut expected: Vec<String> = words.iter().map(|w| kw(w)).collect();
        expected.push(kw("{"));
        self.fail(expected)
    }

    fn int_list(&mut self) -> PResult<Vec<Num>> {
        let mut v = Vec::new();
        while matches!(self.peek().tok, Tok::Int(_)) {
            v.push(self.num()?);
        }
        Ok(v)
    }

    fn system_expr(&mut self) -> PResult<SystemExpr> {
        let (which, _) = self.one_of(&["unit", "dims"])?;
        if which == 0 {
            return Ok(SystemExpr::Unit);
        }
        self.expect(Tok::LBracket)?;
        let mut dims = Vec::new();
        while !self.eat(&Tok::RBracket) {
            dims.push(self.num()?);
            if !self.eat(&Tok::Comma) && self.peek().tok != Tok::RBracket {
                return self.fail(vec![kw(","), kw("]")]);
            }
        }
        self.keyword("trans")?;
        Ok(SystemExpr::Explicit {
            dims,
            transports: self.matrix_entries()?,
        })
    }

    /// `{ <index>: <matrix> ... }`, entries separated by whitespace,
    /// newlines, `;` or `,`.
    fn matrix_entries(&mut self) -> PResult<Vec<(Num, MatrixLit)>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            if !matches!(self.peek().tok, Tok::Int(_)) {
                return self.fail(vec!["integer".into(), kw("}")]);
            }
            let k = self.num()?;
            self.expect(Tok::Colon)?;
            out.push((k, self.matrix()?));
        }
    }

    fn matrix(&mut self) -> PResult<MatrixLit> {
        let span = self.expect(Tok::LBracket)?.span;
        let mut rows = Vec::new();
        loop {
            if self.eat(&Tok::RBracket) {
                return Ok(MatrixLit { rows, span });
            }
            if self.peek().tok != Tok::LBracket {
                return self.fail(vec![kw("["), kw("]")]);
            }
            rows.push(self.vector()?);
            self.eat(&Tok::Comma);
        }
    }

    /// `[a, b, ...]` of rationals; commas are optional.
    fn vector(&mut self) -> PResult<Vec<Entry>> {
        self.expect(Tok::LBracket)?;
        let mut v = Vec::new();
        loop {
            if self.eat(&Tok::RBracket) {
                return Ok(v);
            }
            v.push(self.rational()?);
            self.eat(&Tok::Comma);
        }
    }

    fn rational(&mut self) -> PResult<Entry> {
        let span = self.peek().span;
        let negative = self.eat(&Tok::Minus);
        if !matches!(self.peek().tok, Tok::Int(_)) {
            let mut expected = vec!["integer".to_string()];
            if !negative {
                expected.extend([kw("-"), kw("]")]);
            }
            return self.fail(expected);
        }
        let mut n = self.big()?;
        if negative {
            n = -n;
        }
        let d = if self.eat(&Tok::Slash) {
            let dspan = self.peek().span;
            let d = self.big()?;
            if d == BigInt::from(0) {
                return Err(ParseError::new(dspan, "zero denominator", vec![]));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Spanned::new(Rational::new(n, d), span))
    }

    fn command(&mut self, span: Span) -> PResult<Command> {
        const COMMANDS: [&str; 7] = ["axioms", "card", "dw", "matrix", "prod", "sum", "transform"];
        let (which, _) = self.one_of(&COMMANDS)?;
        let kind = match COMMANDS[which] {
            "card" => CommandKind::Card(self.ident()?),
            "sum" => CommandKind::Sum(self.ident()?, self.ident()?),
            "prod" => CommandKind::Prod(self.ident()?, self.ident()?),
            "transform" => {
                let k = self.ident()?;
                CommandKind::Transform(k, self.optional_vector()?)
            }
            "axioms" => {
                let f = self.ident()?;
                let a = self.ident()?;
                let b = if matches!(self.peek().tok, Tok::Ident(_)) {
                    Some(self.ident()?)
                } else {
                    None
                };
                CommandKind::Axioms(f, a, b)
            }
            "dw" => {
                let g = self.ident()?;
                self.keyword("genus")?;
                CommandKind::Dw(g, self.num()?)
            }
            _ => {
                let path = match &self.peek().tok {
                    Tok::Str(s) => Spanned::new(s.clone(), self.peek().span),
                    _ => return self.fail(vec!["string".into()]),
                };
                self.advance();
                CommandKind::Matrix(path, self.optional_vector()?)
            }
        };
        Ok(Command { span, kind })
    }

    fn optional_vector(&mut self) -> PResult<Option<Vec<Entry>>> {
        if self.peek().tok == Tok::LBracket {
            Ok(Some(self.vector()?))
        } else {
            Ok(None)
        }
    }
}
