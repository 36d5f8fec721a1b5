//! Workbench for quadratic algebras on three generators in exact arithmetic:
//! Koszul duals, twists by graded automorphisms, Ore extensions and graded
//! skew Clifford algebras, together with the point-scheme machinery
//! (multilinearization, the cubic divisor, pointwise evaluation of the curve
//! automorphism) and a classifier for ternary cubics.
//!
//! Scalars are exact elements of the rationals, a prime field, or a simple
//! algebraic extension of either; nothing is ever approximated. Where a
//! question would require an extension the workbench cannot build (degree at
//! least 3, or a tower), the answer is an explicit `NeedsExtension`-style
//! verdict rather than a guess.

pub mod catalog;
pub mod commalg;
pub mod field;
pub mod gsca;
pub mod linalg;
pub mod ncgroebner;
pub mod ncpoly;
pub mod parse;
pub mod pointscheme;
pub mod quadalg;
pub mod specfile;

pub use field::{Field, FieldError, Scalar};
pub use linalg::Matrix;
pub use ncpoly::{GenCtx, MapMode, NcPoly, Word};
pub use quadalg::{OreData, QuadraticAlgebra};
