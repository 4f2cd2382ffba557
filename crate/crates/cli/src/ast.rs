//! Syntax tree of a script. Source positions are carried in [`Span`], which
//! does not take part in equality, so a reprinted script compares equal to
//! the original.

use num_rational::BigRational;

use crate::error::Pos;

#[derive(Debug, Clone, Copy)]
pub struct Span(pub Pos);

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ring(RingDecl),
    Ideal(IdealDecl),
    Query(Query),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldAst {
    Rationals,
    /// Modulus as written; validated when the ring is built.
    Prime(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderAst {
    Lex,
    Grevlex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldAst,
    pub vars: Vec<String>,
    pub order: Option<OrderAst>,
    pub span: Span,
}

/// A product of a coefficient and variable powers, in written order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermAst {
    pub coeff: BigRational,
    pub factors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyAst {
    pub terms: Vec<TermAst>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Intersect,
    Sum,
    Product,
    Colon,
    Sat,
}

impl IdealOp {
    pub fn from_name(name: &str) -> Option<IdealOp> {
        Some(match name {
            "intersect" => IdealOp::Intersect,
            "sum" => IdealOp::Sum,
            "product" => IdealOp::Product,
            "colon" => IdealOp::Colon,
            "sat" => IdealOp::Sat,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            IdealOp::Intersect => "intersect",
            IdealOp::Sum => "sum",
            IdealOp::Product => "product",
            IdealOp::Colon => "colon",
            IdealOp::Sat => "sat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    Generators(Vec<PolyAst>),
    Op { op: IdealOp, args: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub expr: IdealExpr,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Gb,
    Dim,
    Height,
    Ass,
    Minprimes,
    Cm,
    Grade,
    Icm,
    Colon,
    Sat,
    Intersect,
}

impl QueryKind {
    pub fn from_name(name: &str) -> Option<QueryKind> {
        Some(match name {
            "gb" => QueryKind::Gb,
            "dim" => QueryKind::Dim,
            "height" => QueryKind::Height,
            "ass" => QueryKind::Ass,
            "minprimes" => QueryKind::Minprimes,
            "cm" => QueryKind::Cm,
            "grade" => QueryKind::Grade,
            "icm" => QueryKind::Icm,
            "colon" => QueryKind::Colon,
            "sat" => QueryKind::Sat,
            "intersect" => QueryKind::Intersect,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Gb => "gb",
            QueryKind::Dim => "dim",
            QueryKind::Height => "height",
            QueryKind::Ass => "ass",
            QueryKind::Minprimes => "minprimes",
            QueryKind::Cm => "cm",
            QueryKind::Grade => "grade",
            QueryKind::Icm => "icm",
            QueryKind::Colon => "colon",
            QueryKind::Sat => "sat",
            QueryKind::Intersect => "intersect",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            QueryKind::Gb
            | QueryKind::Dim
            | QueryKind::Height
            | QueryKind::Ass
            | QueryKind::Minprimes
            | QueryKind::Cm => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Ideal { kind: QueryKind, args: Vec<String>, span: Span },
    Verify { suite: String, trials: Option<u64>, seed: Option<u64>, span: Span },
}

impl Query {
    pub fn span(&self) -> Span {
        match self {
            Query::Ideal { span, .. } | Query::Verify { span, .. } => *span,
        }
    }
}
