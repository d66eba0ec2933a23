//! Exact algebra for cyclotomic Hecke algebras of types `G(r,1,n)` and
//! `G(r,p,n)`, cyclotomic quiver Hecke algebras, the isomorphism between
//! them, and their fixed-point subalgebras under the shift automorphism.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![allow(clippy::type_complexity)]

extern crate alloc;

pub mod bkiso;
pub mod error;
pub mod fixedpoint;
pub mod params;
pub mod presentations;
pub mod quiver;
pub mod repalg;
pub mod report;
pub mod rewrite;
pub mod scalars;

pub use error::{Error, Result};
