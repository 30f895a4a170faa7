pub mod engine;
pub mod error;
pub mod germ;
pub mod ideal;
pub mod invariants;
pub mod module;
pub mod report;
pub mod ring;

pub use error::{Error, ErrorClass, Result};
pub use ring::{CoefficientField, Field, Fp, Monomial, MonomialOrdering, Polynomial, Rational, RingMap, RingSpec};
