//! Numerics for the symmetrized polydisc, the tetrablock and the pentablock:
//! classification of points, the automorphism actions, orbit decompositions of
//! distinguished-boundary points, Blaschke interpolation, and a structured
//! singular value estimator used as an independent membership test.

pub mod automorphisms;
pub mod blaschke;
pub mod classify;
pub mod disc;
pub mod domains;
pub mod error;
pub mod matrix2;
pub mod mu;
pub mod orbits;
pub mod roots;
pub mod sampling;
pub mod selftest;

pub use num_complex::Complex64;

pub use automorphisms::{AutParams, PentaAutParams, TetraAutParams};
pub use blaschke::BlaschkeProduct;
pub use disc::DiscAutomorphism;
pub use domains::{DomainPoint, Gamma2Point, GammaNPoint, PentaPoint, TetraPoint, Tolerance};
pub use error::{Error, ErrorClass, Result};
pub use matrix2::Mat2;
pub use mu::{Membership, MuBracket, Structure};
pub use orbits::{Decomposition, DecompositionStratum};
pub use sampling::{Sampler, Stratum};
