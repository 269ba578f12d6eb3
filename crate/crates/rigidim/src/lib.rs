//! Exact homological invariants of finite-dimensional quiver algebras.
//!
//! Builds bound path algebras kQ/I over Q or F_p with exact arithmetic,
//! computes projective/injective resolutions of their representations, and
//! from those the classical dimensions (global, injective, dominant), the
//! rigidity degree of a module, and the rigidity dimension of the algebra —
//! the supremum of dominant dimensions of endomorphism algebras of
//! generator-cogenerators with finite global dimension.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod cli;
pub mod endo;
pub mod error;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod presets;
pub mod rep;
pub mod rigidity;
pub mod scalar;
pub mod scalg;

pub use algebra::{Algebra, Arrow, BasisPath, Quiver, Relation};
pub use cli::cli_main;
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};

/// Outcome of an isomorphism test. `Unknown` means the randomized search for
/// an invertible homomorphism was exhausted without a verdict; callers must
/// degrade gracefully (report a bound instead of an exact value) rather than
/// guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iso {
    Yes,
    No,
    Unknown,
}

impl Iso {
    pub fn is_yes(self) -> bool {
        self == Iso::Yes
    }

    pub fn is_no(self) -> bool {
        self == Iso::No
    }
}
