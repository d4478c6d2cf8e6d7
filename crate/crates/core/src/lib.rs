//! Exact Hirzebruch-Jung continued fractions and minimal resolutions of
//! two-dimensional toric cones, weighted projective planes `P(1, m, n)` and
//! Hirzebruch surfaces.
//!
//! * [`lattice`]: vectors, determinants, unimodular companions, cones.
//! * [`hjcfrac`]: expansions via the integer r-sequence and the rational
//!   β-sequence.
//! * [`desing`]: resolution of a single cone, with a full trace.
//! * [`fan`]: complete fans, `D(1, m, n)`, closed-form families, refinement
//!   and self-intersection numbers.
//! * [`oracle`]: brute-force hull oracle and verification reports.
//!
//! ```
//! use toric_hj::hjcfrac::hj_expand;
//! assert_eq!(hj_expand(182, 27).unwrap().to_string(), "[[7, 4, 7]]");
//! ```

pub mod desing;
pub mod error;
pub mod fan;
pub mod hjcfrac;
pub mod lattice;
pub mod oracle;

#[cfg(test)]
mod testutil;

pub use desing::{desingularize, init_data, is_smooth_cone, DesingularizationTrace, InitData};
pub use error::{Error, Result};
pub use fan::{minimal_desingularization, Fan2D, Family, WeightTriple};
pub use hjcfrac::{beta_sequence, hj_eval, hj_expand, r_sequence, HJExpansion, RSequence, Rational};
pub use lattice::{det2, is_primitive, unimodular_companion, Cone2, LatticeVector, Orientation};
