//! Exact polynomial arithmetic and expression parsing.

pub mod mpoly;
pub mod parse;
pub mod rat;
pub mod ratfunc;
pub mod ring;
pub mod unipoly;

pub use mpoly::{MPoly, Monomial, Var};
pub use parse::{parse, ParseError};
pub use rat::{GaussRat, Rat};
pub use ratfunc::{gcd_over_qt, RatFunc};
pub use ring::{Domain, Field, Ring};
pub use unipoly::UniPoly;
