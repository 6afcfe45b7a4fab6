//! Exact alcove geometry for irreducible reduced root systems.
//!
//! Everything is computed over the rationals: root data, the fundamental
//! group Ω, the isometry group of the fundamental alcove, the
//! Komrakov–Premet polytope 𝒦 and its sliced fundamental polytope ℒ, and
//! checks of fundamental-domain and stratified-centralizer properties.

pub mod diagram;
pub mod error;
pub mod exactlin;
pub mod fundcheck;
pub mod group;
pub mod polytope;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use exactlin::{RatMat, RatVec, Rational};
pub use rootsys::{Family, RootSystem, RootSystemId};
