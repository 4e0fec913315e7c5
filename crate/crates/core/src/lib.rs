//! Exact computations in the endomorphism semigroup of a free commutative or
//! free associative algebra over `Q` or `Q(sqrt d)`.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, table files and the
//! command-line front end live in the `endw-tools` crate.

#![no_std]

extern crate alloc;

pub mod autos;
pub mod endaut;
pub mod endo;
pub mod error;
pub mod freealg;
pub mod galois;
pub mod scalars;

pub use autos::{basic_element, BasicElementWitness, ElementaryGenerator, TameAutomorphism};
pub use endaut::{
    apply_bijection, base_image_check, centrality_probe, conjugate, decompose_blackbox, law_checks, normalize,
    solve_product_coefficients, BijectionWord, CanonicalQuasiInner, LinearBijection, OracleTable, PrimitiveBijection,
};
pub use endo::{theorem2_probe_set, ConstEndo, Endomorphism, ProbeSet};
pub use error::{DecomposeError, Error, Result};
pub use freealg::{AlgebraElement, AlgebraKind, Context, Monomial};
pub use galois::{in_double_prime, in_prime_set, sample_ideal, EndoSample, PrincipalBasicIdeal};
pub use scalars::{Field, FieldAutomorphism, Scalar};
