//! Recursive-descent parser and name resolution.
//!
//! ```text
//! script  := stmt*
//! stmt    := ring | ideal | query
//! ring    := "ring" NAME "=" field "[" NAME ("," NAME)* "]" ("order" ("lex"|"grevlex"))? ";"
//! field   := "QQ" | "GF" "(" INT ")"
//! ideal   := "ideal" NAME "=" (op "(" NAME ("," NAME)* ")" | poly ("," poly)*) ";"
//! op      := "intersect" | "sum" | "product" | "colon" | "sat"
//! query   := ("gb"|"dim"|"height"|"ass"|"minprimes"|"cm") NAME ";"
//!          | ("grade"|"icm"|"colon"|"sat"|"intersect") NAME ","? NAME ";"
//!          | "verify" SUITE ("trials" INT)? ("seed" INT)? ";"
//! poly    := ("+"|"-")? term (("+"|"-") term)*
//! term    := factor ("*" factor)*
//! factor  := INT ("/" INT)? | NAME ("^" INT)?
//! SUITE   := NAME ("-" NAME)*
//! ```

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ast::*;
use crate::error::{ParseError, ParseErrorKind, Pos};
use crate::lexer::{tokenize, Tok, Token};

/// Tokenizes and parses; names are resolved against the current ring as
/// they are read.
pub fn parse(source: &str) -> Result<Script, ParseError> {
    let tokens = tokenize(source)?;
    Parser { tokens, at: 0, scope: None }.script()
}

/// Names visible after a ring declaration.
struct Scope {
    ring: String,
    vars: HashSet<String>,
    ideals: HashSet<String>,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    scope: Option<Scope>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.tokens[(self.at + offset).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(ParseErrorKind::Syntax, t.pos, format!("expected {expected}, found {}", t.tok))
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump().pos)
        } else {
            Err(self.syntax(&tok.to_string()))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn scope(&self, pos: Pos, what: &str) -> Result<&Scope, ParseError> {
        self.scope.as_ref().ok_or_else(|| undeclared(pos, format!("{what} precedes any ring")))
    }

    fn ideal_ref(&mut self) -> Result<String, ParseError> {
        let pos = self.peek().pos;
        let name = self.name("an ideal name")?;
        if !self.scope(pos, "ideal reference")?.ideals.contains(&name) {
            return Err(undeclared(pos, format!("ideal `{name}` is not declared")));
        }
        Ok(name)
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => Err(self.syntax(&format!("`{word}`"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match &self.peek().tok {
            Tok::Int(d) => {
                let d = d.clone();
                Ok((d, self.bump().pos))
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u64, ParseError> {
        let (digits, pos) = self.int(what)?;
        digits
            .parse()
            .map_err(|_| ParseError::new(ParseErrorKind::Syntax, pos, format!("{what} {digits} is too large")))
    }

    fn script(mut self) -> Result<Script, ParseError> {
        let mut stmts = Vec::new();
        while self.peek().tok != Tok::Eof {
            stmts.push(self.stmt()?);
        }
        Ok(Script { stmts })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.peek().pos;
        let word = match &self.peek().tok {
            Tok::Ident(w) => w.clone(),
            _ => return Err(self.syntax("a statement")),
        };
        match word.as_str() {
            "ring" => {
                let decl = self.ring(pos)?;
                let vars = decl.vars.iter().cloned().collect();
                self.scope = Some(Scope { ring: decl.name.clone(), vars, ideals: HashSet::new() });
                Ok(Stmt::Ring(decl))
            }
            "ideal" => {
                let decl = self.ideal(pos)?;
                self.scope.as_mut().unwrap().ideals.insert(decl.name.clone());
                Ok(Stmt::Ideal(decl))
            }
            "verify" => self.verify(pos).map(Stmt::Query),
            other => match QueryKind::from_name(other) {
                Some(kind) => self.query(kind, pos).map(Stmt::Query),
                None => Err(self.syntax("a statement")),
            },
        }
    }

    fn ring(&mut self, pos: Pos) -> Result<RingDecl, ParseError> {
        self.bump();
        let name = self.name("a ring name")?;
        self.expect(Tok::Eq)?;
        let field = match &self.peek().tok {
            Tok::Ident(f) if f == "QQ" => {
                self.bump();
                FieldAst::Rationals
            }
            Tok::Ident(f) if f == "GF" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let (p, _) = self.int("a prime modulus")?;
                self.expect(Tok::RParen)?;
                FieldAst::Prime(p)
            }
            _ => return Err(self.syntax("`QQ` or `GF(p)`")),
        };
        self.expect(Tok::LBracket)?;
        let mut vars = vec![self.name("a variable name")?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            vars.push(self.name("a variable name")?);
        }
        self.expect(Tok::RBracket)?;
        let order = if matches!(&self.peek().tok, Tok::Ident(w) if w == "order") {
            self.bump();
            match self.name("`lex` or `grevlex`")?.as_str() {
                "lex" => Some(OrderAst::Lex),
                "grevlex" => Some(OrderAst::Grevlex),
                _ => {
                    self.at -= 1;
                    return Err(self.syntax("`lex` or `grevlex`"));
                }
            }
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        Ok(RingDecl { name, field, vars, order, span: Span(pos) })
    }

    fn ideal(&mut self, pos: Pos) -> Result<IdealDecl, ParseError> {
        self.bump();
        let name = self.name("an ideal name")?;
        self.scope(pos, &format!("ideal `{name}`"))?;
        self.expect(Tok::Eq)?;
        let op = match &self.peek().tok {
            Tok::Ident(w) if *self.peek_at(1) == Tok::LParen => IdealOp::from_name(w),
            _ => None,
        };
        let expr = match op {
            Some(op) => {
                let op_pos = self.bump().pos;
                self.expect(Tok::LParen)?;
                let mut args = vec![self.ideal_ref()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    args.push(self.ideal_ref()?);
                }
                self.expect(Tok::RParen)?;
                if args.len() != 2 {
                    return Err(ParseError::new(
                        ParseErrorKind::Arity,
                        op_pos,
                        format!("`{}` takes 2 ideals, given {}", op.name(), args.len()),
                    ));
                }
                IdealExpr::Op { op, args }
            }
            None => {
                let mut polys = vec![self.poly()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    polys.push(self.poly()?);
                }
                IdealExpr::Generators(polys)
            }
        };
        self.expect(Tok::Semi)?;
        Ok(IdealDecl { name, expr, span: Span(pos) })
    }

    fn poly(&mut self) -> Result<PolyAst, ParseError> {
        let mut terms = Vec::new();
        let mut sign = match self.peek().tok {
            Tok::Minus | Tok::Plus => {
                let t = self.bump();
                Some((t.tok, t.pos))
            }
            _ => None,
        };
        loop {
            if let Some((op, pos)) = &sign {
                if !matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_)) {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        *pos,
                        format!("dangling {op}: expected a number or variable, found {}", self.peek().tok),
                    ));
                }
            }
            let mut term = self.term()?;
            if matches!(sign, Some((Tok::Minus, _))) {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            sign = match self.peek().tok {
                Tok::Minus | Tok::Plus => {
                    let t = self.bump();
                    Some((t.tok, t.pos))
                }
                _ => break,
            };
        }
        Ok(PolyAst { terms })
    }

    fn term(&mut self) -> Result<TermAst, ParseError> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        loop {
            match self.peek().tok.clone() {
                Tok::Int(digits) => {
                    self.bump();
                    let num: BigInt = digits.parse().unwrap();
                    let value = if self.peek().tok == Tok::Slash {
                        self.bump();
                        let (den, pos) = self.int("a denominator")?;
                        let den: BigInt = den.parse().unwrap();
                        if den.is_zero() {
                            return Err(ParseError::new(ParseErrorKind::Syntax, pos, "zero denominator"));
                        }
                        BigRational::new(num, den)
                    } else {
                        BigRational::from_integer(num)
                    };
                    coeff *= value;
                }
                Tok::Ident(var) => {
                    let pos = self.bump().pos;
                    let scope = self.scope.as_ref().unwrap();
                    if !scope.vars.contains(&var) {
                        return Err(undeclared(pos, format!("`{var}` is not a variable of ring {}", scope.ring)));
                    }
                    let exp = if self.peek().tok == Tok::Caret {
                        self.bump();
                        let (digits, pos) = self.int("an exponent")?;
                        digits.parse::<u32>().map_err(|_| {
                            ParseError::new(ParseErrorKind::Syntax, pos, format!("exponent {digits} is too large"))
                        })?
                    } else {
                        1
                    };
                    factors.push((var, exp));
                }
                _ => return Err(self.syntax("a number or variable")),
            }
            if self.peek().tok != Tok::Star {
                return Ok(TermAst { coeff, factors });
            }
            self.bump();
        }
    }

    fn query(&mut self, kind: QueryKind, pos: Pos) -> Result<Query, ParseError> {
        self.scope(pos, &format!("`{}`", kind.name()))?;
        self.bump();
        let mut args = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            args.push(self.ideal_ref()?);
            if self.peek().tok == Tok::Comma && matches!(self.peek_at(1), Tok::Ident(_)) {
                self.bump();
            }
        }
        if self.peek().tok != Tok::Semi {
            return Err(self.syntax("an ideal name or `;`"));
        }
        if args.len() != kind.arity() {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                pos,
                format!("`{}` takes {} ideal(s), given {}", kind.name(), kind.arity(), args.len()),
            ));
        }
        self.bump();
        Ok(Query::Ideal { kind, args, span: Span(pos) })
    }

    fn verify(&mut self, pos: Pos) -> Result<Query, ParseError> {
        self.bump();
        let mut suite = self.name("a suite name")?;
        while self.peek().tok == Tok::Minus {
            self.bump();
            suite.push('-');
            suite.push_str(&self.name("a suite name")?);
        }
        let mut trials = None;
        let mut seed = None;
        if matches!(&self.peek().tok, Tok::Ident(w) if w == "trials") {
            self.keyword("trials")?;
            trials = Some(self.small_int("a trial count")?);
        }
        if matches!(&self.peek().tok, Tok::Ident(w) if w == "seed") {
            self.keyword("seed")?;
            seed = Some(self.small_int("a seed")?);
        }
        if self.peek().tok != Tok::Semi {
            return Err(self.syntax("`trials`, `seed` or `;`"));
        }
        self.bump();
        Ok(Query::Verify { suite, trials, seed, span: Span(pos) })
    }
}

fn undeclared(pos: Pos, message: String) -> ParseError {
    ParseError::new(ParseErrorKind::Undeclared, pos, message)
}
