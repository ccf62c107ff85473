//! Explicit bounds on average Selmer ranks of elliptic curves `y^2 = x^3 + Ax + B`
//! over Galois extensions, together with the exact local ingredients those bounds
//! are assembled from.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function on
//! immutable values; file formats, threading and the command line live in the
//! `selbound` companion crate.
//!
//! Module map:
//!
//! * [`arith`]: valuations, Kronecker symbols, factorization, prime sieving and
//!   factorization of polynomials over prime fields.
//! * [`numfield`]: descriptors for the base field `F` and the extension `K/F`,
//!   prime decomposition, `ω_F`, `r₁` and the squarefree set `𝒬(F)`.
//! * [`curves`]: the height-ordered family, reduction types at `ℓ ≥ 5`, twists.
//! * [`localdata`]: closed-form norm indices, local caps and the genus bound.
//! * [`bounds`]: rigorous interval evaluation of `C_p(K/F)` and the composers.
//! * [`lattice`]: fixed spaces and `H¹(G,Λ)[p]` for integral representations.
//! * [`census`]: the allocation-free enumeration kernel used by the harness.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod census;
pub mod curves;
mod error;
pub mod lattice;
pub mod localdata;
pub mod numfield;

pub use error::{Error, Result};
