//! Symmetry-based matching decoders for bivariate bicycle (BB) codes.
//!
//! A BB code is fixed by two commuting bivariate polynomials over GF(2) and a
//! (possibly twisted) torus. This crate builds such codes, discovers their
//! symmetries, extracts the associated logical operators with the cylinder
//! trick, and decodes bit-flip noise by minimum-weight perfect matching on
//! symmetry graphs — optionally augmented with simplex over-matching, belief
//! propagation reweighting, and L/R classical pre-decoding. A benchmark
//! harness drives Monte Carlo sweeps and exhaustive low-weight error counts.

pub mod bench;
pub mod bits;
pub mod bp;
pub mod code;
pub mod cylinder;
pub mod gf2;
pub mod graph;
pub mod pipeline;
pub mod poly;
pub mod registry;
pub mod simplex;
pub mod symmetry;
pub mod topology;

mod blossom;

pub use bits::BinaryVector;
pub use code::BBCode;
pub use gf2::BinaryMatrix;
pub use poly::{LatticePoly, PauliVec, TorusShape};
