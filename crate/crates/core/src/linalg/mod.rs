//! Exact linear algebra over Z and Z/m.

pub mod finab;
pub mod howell;
pub mod matrix;
pub mod smith;
pub mod zmod;

pub use finab::{invariant_factors, quotient_invariants, FinAbGroup};
pub use howell::{howell_form, kernel_mod, kernel_of_basis, ModuleBasis};
pub use matrix::{Matrix, Scalar};
pub use smith::{smith_normal_form, SmithForm};
pub use zmod::Zmod;
