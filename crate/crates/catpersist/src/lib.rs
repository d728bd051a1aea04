//! Persistence for filtered simplicial complexes over exact field arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: dense linear algebra over GF(p) and the rationals, including
//!   cokernel projections and ranks of induced maps on quotients.
//! * [`complex`]: simplices, filtered complexes, Vietoris-Rips construction,
//!   group actions and labeled poset families.
//! * [`persistence`]: persistence functions, cornerpoint multiplicities,
//!   diagrams and interval decompositions.
//! * [`coloring`]: isotypic (group) and poset (label subset) colorings of
//!   diagrams, with rank additivity checks.
//! * [`distance`]: bottleneck and multicolored bottleneck distances with
//!   witness matchings, plus interleaving certificates on interval modules.
//!
//! Filtration values are exact rationals throughout; floats entering through
//! I/O are converted exactly (every finite f64 is a dyadic rational), so all
//! comparisons downstream are exact.

pub mod coloring;
pub mod complex;
pub mod distance;
pub mod field;
pub mod persistence;
pub mod value;

pub use field::{FieldSpec, Matrix, Scalar, Subspace};
pub use value::{ExtValue, Rat};
