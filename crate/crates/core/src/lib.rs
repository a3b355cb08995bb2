//! Planar forests, their Hopf algebras, and planarly branched rough paths.
//!
//! The crate is layered bottom-up. [`forest`] and [`algebra`] hold the
//! combinatorial objects and exact arithmetic; [`hopf`], [`characters`] and
//! [`morphisms`] build the Hopf-algebraic layer on top of them; [`roughpath`]
//! and [`rde`] turn that layer into signatures, lifts, extensions and a
//! Lie–Butcher integrator on homogeneous spaces. [`repro`] bundles the
//! end-to-end checks and [`io`] the file formats shared with the CLI.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod forest;
pub mod hopf;
pub mod io;
pub mod morphisms;
pub mod rde;
pub mod repro;
pub mod roughpath;

pub use algebra::{rat, Graded, LinearFunctional, Rational, Real, Series, Word};
pub use error::{Error, Result};
pub use forest::{Letter, NonplanarForest, PlanarForest, PlanarTree};
