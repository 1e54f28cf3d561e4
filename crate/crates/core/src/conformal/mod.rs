//! Finite-rank free conformal algebras and the λ-product engine.
//!
//! Every product is evaluated at an explicit fresh parameter and moved to
//! its attachment point by substitution, so all identities reduce to zero
//! tests of polynomial vectors. Checks run over basis tuples only, which is
//! enough because sesquilinearity holds by construction.

mod algebra;
mod element;
mod endo;
mod report;
mod table;

pub use algebra::ConformalAlgebra;
pub(crate) use algebra::{apply_at, check_basis_names, default_basis, fresh_for, lin, refl};
pub use element::ParamElement;
pub(crate) use element::sum;
pub use endo::{apply_composite, ConformalEndo};
pub use report::{CheckReport, Counterexample};
pub use table::BilinearTable;
