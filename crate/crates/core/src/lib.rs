//! Computable pieces of the theory of tame cyclic quotients over
//! equal-characteristic complete discrete valuation rings.
//!
//! The modules build on each other bottom-up:
//!
//! * [`algebra`]: prime fields, jet rings `F_p[[x]]/m^(N+1)`, their endomorphisms.
//! * [`action`]: weight systems, recognising and diagonalising tame actions.
//! * [`invariant`]: the invariant ring of a diagonal action as a monoid algebra,
//!   and the presentation of the quotient model.
//! * [`fiber`]: fixed loci, the special-fiber algebra, fibers of the
//!   weak Néron model over the fixed locus, and sections through fixed points.
//! * [`motivic`]: classes in `Z[L]`, the Serre invariant and the rational volume.
//! * [`count`]: brute-force point counts used as an independent oracle.
//! * [`sweep`]: seeded randomized checks over all of the above.
//! * [`cli`]: the `tamequot` command-line front end.

pub mod action;
pub mod algebra;
pub mod cli;
pub mod count;
pub mod error;
pub mod fiber;
pub mod invariant;
pub mod motivic;
pub mod sweep;

pub use error::{Error, Result};
