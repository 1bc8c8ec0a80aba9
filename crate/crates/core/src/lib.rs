//! Exact arithmetic for the root-of-unity averaging transform on
//! rational functions: cyclotomic integers, sparse multivariate
//! polynomials, the universal transformed pair `(G, H)`, the projective
//! self-maps it induces, and machine checks for the identities they
//! satisfy.

pub mod cyclo;
pub mod elimination;
pub mod error;
pub mod jacobian;
pub mod landen;
pub mod multipoly;
pub mod powermap;
pub mod ratfunc;
pub mod report;
pub mod rings;
pub mod sample;
pub mod suites;
pub mod unipoly;

pub use error::{Error, Result};
