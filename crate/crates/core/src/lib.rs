//! Exact Galois descent of matrix representations.
//!
//! Given a representation of an algebra by invertible matrices over a field E
//! carrying a finite abelian group G of automorphisms, this crate decides
//! whether the representation can be conjugated into the fixed field F = E^G
//! and, when it can, constructs a conjugating matrix. The machinery is the
//! classical one: intertwiners, 1-cocycles G → GL_d(E), the averaging
//! operator Π_C, and a constructive form of Hilbert's Theorem 90, together
//! with Las Vegas norm-equation solvers over finite fields and a bounded
//! search plus embedding-sign obstruction test over cyclotomic fields.
//!
//! All arithmetic is exact: GF(p^n) towers with explicit moduli, and Q(ζ_n)
//! with arbitrary-precision rational coefficients. Every randomized solver
//! takes an explicit seed and certifies its output by re-checking the
//! defining equation before returning.

pub mod arith;
pub mod cocycle;
pub mod cyclotomic;
pub mod descent;
pub mod error;
pub mod fftower;
pub mod format;
pub mod matrix;
pub mod normsolve;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testfields {
    use crate::fftower::{make_field, FieldCtx};

    pub fn gf4() -> FieldCtx {
        make_field(2, 2, 1, Some(vec![1, 1, 1])).unwrap()
    }

    pub fn gf8() -> FieldCtx {
        make_field(2, 3, 1, Some(vec![1, 1, 0, 1])).unwrap()
    }

    pub fn gf9() -> FieldCtx {
        make_field(3, 2, 1, Some(vec![1, 0, 1])).unwrap()
    }

    pub fn gf16_over_gf2() -> FieldCtx {
        make_field(2, 4, 1, Some(vec![1, 1, 0, 0, 1])).unwrap()
    }

    pub fn gf16_over_gf4() -> FieldCtx {
        make_field(2, 4, 2, Some(vec![1, 1, 0, 0, 1])).unwrap()
    }

    pub fn gf64_over_gf2() -> FieldCtx {
        make_field(2, 6, 1, Some(vec![1, 1, 0, 0, 0, 0, 1])).unwrap()
    }
}
