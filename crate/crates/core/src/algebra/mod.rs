//! Exact arithmetic: prime fields, jet rings, their endomorphisms, and small
//! linear algebra over `F_p`.

pub mod endo;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod series;
pub mod unipoly;

pub use endo::{apply_endomorphism, compose_endomorphisms, RingEndomorphism};
pub use field::{primitive_root_of_unity, PrimeField};
pub use linalg::Matrix;
pub use parse::parse_series;
pub use series::{Monomial, Series, TruncatedLocalRing, DEFAULT_TRUNCATION};
pub use unipoly::UniPoly;
