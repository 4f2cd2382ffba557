//! Input language and batch front end for `icm-core`.
//!
//! A script declares a ring, ideals in that ring, and queries about the
//! cyclic modules `R/J`:
//!
//! ```text
//! ring R = QQ[x1,x2,x3,y1,y2,y3];
//! ideal I = x1,x2,x3;
//! ideal Jy = y1,y2,y3;
//! ideal J = intersect(I,Jy);
//! icm J I;
//! ```

pub mod ast;
pub mod error;
pub mod exec;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use error::{ParseError, ParseErrorKind, Pos};
pub use exec::{execute, run_source, Options, Outcome};
pub use parser::parse;
