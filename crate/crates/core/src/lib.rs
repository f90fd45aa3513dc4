//! Subspace codes in the Grassmannian, their Pluecker-coordinate geometry,
//! and list decoding of lifted rank-metric (Gabidulin) codes.
//!
//! The pipeline: [`field`] and [`linalg`] provide exact arithmetic over
//! `F_q` and `F_{q^l}`; [`subspace`] models points of the Grassmannian with
//! the subspace and injection metrics; [`pluecker`] embeds them projectively
//! via their maximal minors; [`balls`] describes metric balls both by linear
//! equations on Pluecker coordinates and by a rational parametrization;
//! [`gabidulin`] constructs rank-metric codes, their liftings, and the
//! associated block-code views; [`decode`] implements the two list decoders
//! plus a brute-force oracle and list-size bounds; [`channel`] simulates an
//! operator channel with deletions and insertions.

pub mod balls;
pub mod channel;
pub mod decode;
pub mod exec;
pub mod field;
pub mod gabidulin;
pub mod linalg;
pub mod pluecker;
pub mod subspace;

pub use field::{Field, FieldElement};
pub use linalg::Matrix;
pub use subspace::{Metric, Subspace};
