//! Exact polynomial arithmetic, monomial orderings and the text format.

pub mod field;
pub mod map;
pub mod monomial;
pub mod order;
mod parse;
pub mod poly;
pub mod spec;

pub use field::{CoefficientField, Field, Fp, Rational};
pub use map::{GraphRing, RingMap};
pub use monomial::Monomial;
pub use order::MonomialOrdering;
pub use poly::Polynomial;
pub use spec::{Block, RingSpec};
