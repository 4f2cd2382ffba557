//! Computational commutative algebra over affine polynomial rings: Groebner
//! bases, ideal operations, Krull dimension, grade with certificates, and
//! checks of the I-Cohen-Macaulay condition
//! `grade(I, M) + dim M/IM = dim M` for cyclic modules `M = R/J`.

pub mod checker;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod lab;
pub mod monomial;
pub mod monomial_ideal;
pub mod poly;
pub mod ring;
pub mod settings;

pub use checker::{icm_report, IcmReport, RelationReport, Side};
pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use groebner::{buchberger, ReducedGb};
pub use ideal::{Ideal, SaturationResult};
pub use invariants::{CyclicModule, GradeWitness, MonomialPrime};
pub use monomial::{Monomial, TermOrder};
pub use poly::Polynomial;
pub use ring::{Ring, RingRef};
pub use settings::Settings;
