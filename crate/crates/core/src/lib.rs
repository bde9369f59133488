//! Exact decision procedures and non-covering certificates for systems of
//! congruences.
//!
//! The crate is `no_std` (it needs `alloc`). Everything on the certificate
//! path is exact: integers are `u64`/`i128` where the value is bounded by an
//! enumeration limit, and probabilities are [`BigRational`]s.
//!
//! * [`residue`] and [`system`]: residue classes, the Chinese remainder
//!   intersection, brute-force and interval coverage checks, minimality and
//!   multiplicity.
//! * [`constructions`]: an explicit minimal covering family with prescribed
//!   moduli and the shift expansion that trades the first classes for
//!   multiplicity.
//! * [`distortion`]: the distortion measures, their moments and the
//!   resulting non-covering certificate.
//! * [`analytic`]: exact finite forms of the moment and smooth-number bounds,
//!   plus high-precision evaluation of the minimum-modulus bound shapes.

#![no_std]

extern crate alloc;

pub mod analytic;
pub mod arith;
pub mod constructions;
pub mod distortion;
mod error;
pub mod residue;
pub mod system;

pub use error::{Error, Result};
pub use residue::ResidueClass;
pub use system::{CongruenceSystem, CoverageReport, Limits, Minimality};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
