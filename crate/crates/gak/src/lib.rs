//! Two-layer geometric-algebra rotor kit for all signatures with
//! p + q + r < 6.
//!
//! The generic layer ([`multivector`], [`study`], [`rotor`]) works on dense
//! coefficient arrays over any metric and provides normalization (polar
//! decomposition), principal square roots, the invariant bivector
//! decomposition and closed-form exponential/logarithmic maps. The fast
//! layer ([`kernels`]) is a set of coefficient-level routines on fixed
//! packed orderings for R_4, R_{3,1}, R_{3,0,1} and R_{4,1}, numerically
//! equivalent to the generic path, which doubles as its correctness oracle.
//!
//! [`doc`] holds the JSON document format used by the `gak` CLI and the
//! fuzz targets; [`suites`] holds the seeded property suites behind
//! `gak check` and the acceptance tests.

pub mod doc;
pub mod error;
pub mod kernels;
pub mod multivector;
pub mod rotor;
pub mod signature;
pub mod study;
pub mod suites;

pub use error::GaError;
pub use multivector::{Multivector, Parity};
pub use rotor::{BivectorSplit, PolarParts, Rotor};
pub use signature::{Blade, Signature};
pub use study::{Branch, StudyClass, StudyNumber};

/// Default absolute tolerance on unit-scale data.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative threshold below which a Study norm counts as singular.
pub const REL_SINGULAR: f64 = 1e-12;

/// Relative threshold below which an invariant split counts as degenerate
/// (isoclinic) and gets flagged rather than divided through.
pub const SPLIT_DEGENERACY: f64 = 1e-9;
