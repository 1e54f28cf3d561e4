//! Extending structures: a conformal algebra `J` enlarged by a free module
//! `K` through four bilinear maps, the unified product they define on
//! `J ⊕ K`, and the conditions U1..U7 that make it Jacobi-Jordan.
//!
//! Each Uk is one component of the Jacobi sum on a mixed basis triple
//! (U2, U3 from `(a, b, x)`; U4, U5 from `(a, x, y)`; U6, U7 from
//! `(x, y, z)`), evaluated straight from the four maps rather than through
//! the unified table, so the two checks are genuinely independent.

mod conditions;
mod datum;
mod equivalence;

pub use conditions::{SpecializedVerdict, UnifiedVerdict};
pub use datum::ExtendingDatum;
pub use equivalence::{check_equivalence, transport, EquivalencePair};
