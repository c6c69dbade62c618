//! Constructive invariants of analytic cyclic homology over `Z_(p)`.
//!
//! Everything is computed exactly at a finite truncation: X-complex and de
//! Rham homology of commutative presentations, tube-algebra membership in the
//! even forms with the Fedosov product, the lifting recursion built from a
//! connection, idempotent lifting, Leavitt and Cohn path-algebra invariants,
//! and strong Gröbner bases over the integers.

pub mod algebra;
pub mod derham;
pub mod error;
pub mod graphs;
pub mod groebner;
pub mod lift;
pub mod linalg;
pub mod ncforms;
pub mod sample;
pub mod scalars;
pub mod tube;
pub mod univariate;

pub use algebra::{AlgebraKind, AlgebraPresentation, AlgebraSpec, Element, GrowthProfile, Monomial};
pub use error::{Error, Result};
pub use ncforms::Form;
pub use scalars::{PrimeConfig, Residue, Scalar, Valuation};
