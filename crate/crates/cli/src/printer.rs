//! Canonical text of a script: `parse(print(s))` equals `s` up to source
//! positions.

use std::fmt;

use num_traits::{One, Signed};

use crate::ast::*;

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.stmts {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring(r) => write!(f, "{r}"),
            Stmt::Ideal(i) => write!(f, "{i}"),
            Stmt::Query(q) => write!(f, "{q};"),
        }
    }
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match &self.field {
            FieldAst::Rationals => "QQ".to_string(),
            FieldAst::Prime(p) => format!("GF({p})"),
        };
        write!(f, "ring {} = {field}[{}]", self.name, self.vars.join(","))?;
        match self.order {
            Some(OrderAst::Lex) => write!(f, " order lex")?,
            Some(OrderAst::Grevlex) => write!(f, " order grevlex")?,
            None => {}
        }
        write!(f, ";")
    }
}

impl fmt::Display for IdealDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ideal {} = ", self.name)?;
        match &self.expr {
            IdealExpr::Op { op, args } => write!(f, "{}({})", op.name(), args.join(", "))?,
            IdealExpr::Generators(polys) => {
                for (i, p) in polys.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
            }
        }
        write!(f, ";")
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &TermAst) -> fmt::Result {
    let magnitude = t.coeff.abs();
    let factors: Vec<String> = t
        .factors
        .iter()
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{magnitude}*{}", factors.join("*"))
    }
}

impl fmt::Display for PolyAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, t)?;
        }
        Ok(())
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Ideal { kind, args, .. } => write!(f, "{} {}", kind.name(), args.join(" ")),
            Query::Verify { suite, trials, seed, .. } => {
                write!(f, "verify {suite}")?;
                if let Some(t) = trials {
                    write!(f, " trials {t}")?;
                }
                if let Some(s) = seed {
                    write!(f, " seed {s}")?;
                }
                Ok(())
            }
        }
    }
}
