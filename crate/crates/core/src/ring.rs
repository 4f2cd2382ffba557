use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::TermOrder;

/// An affine polynomial ring `k[x_1, ..., x_n]` with a fixed term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    field: FieldSpec,
    variables: Vec<String>,
    order: TermOrder,
}

pub type RingRef = Arc<Ring>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        field: FieldSpec,
        variables: impl IntoIterator<Item = S>,
        order: TermOrder,
    ) -> Result<RingRef> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let TermOrder::Block { split } = order {
            if split > variables.len() {
                return Err(Error::InvalidRing(format!(
                    "block split {split} exceeds {} variables",
                    variables.len()
                )));
            }
        }
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p as u64)?;
        }
        Ok(Arc::new(Ring { field, variables, order }))
    }

    /// `QQ[vars]` with grevlex.
    pub fn rational(variables: &[&str]) -> RingRef {
        Ring::new(FieldSpec::Rationals, variables.iter().copied(), TermOrder::Grevlex)
            .expect("valid ring")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Result<RingRef> {
        Ring::new(self.field, self.variables.iter().cloned(), order)
    }

    /// Variable name not yet used in this ring, based on `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.var_index(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| self.var_index(n).is_none())
            .unwrap()
    }
}

impl fmt::Display for Ring {
    /// Input-language form, e.g. `QQ[x,y] order grevlex`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.variables.join(","))?;
        match self.order {
            TermOrder::Lex => write!(f, " order lex"),
            TermOrder::Grevlex => write!(f, " order grevlex"),
            TermOrder::Block { split } => write!(f, " order block({split})"),
        }
    }
}
