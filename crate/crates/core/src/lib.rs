//! Exact models of the group `G = (ℤ/2)*(ℤ/2)*(ℤ/2)*(ℤ/2) ⋊ 𝔖₄` acting on the
//! Mukai lattice of a Hessian quartic surface.
//!
//! The same group is realized several ways:
//!
//! - [`lattice`]: the even unimodular lattice Λ ≅ E₁₀ with its distinguished roots.
//! - [`coxeter`]: the Coxeter diagram of the polytope `P`, its cusps and parity character.
//! - [`group`]: normal forms for `G`, its action on Λ, and nef-cone reduction.
//! - [`quaternion`]: the image of `G` in SO(3) via Hurwitz quaternions.
//! - [`padic`] and [`tree`]: the 3-adic splitting and the Bruhat–Tits tree of PGL₂(ℚ₃).
//! - [`game`]: reflecting a tetrahedron across its facets.
//!
//! Everything is exact: rationals over `i128`, 3-adic numbers with tracked precision.

pub mod coxeter;
pub mod error;
pub mod game;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod padic;
pub mod perm;
pub mod quaternion;
pub mod rational;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
