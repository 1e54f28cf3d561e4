//! Symbolic verification and construction engine for finite-rank
//! Jacobi-Jordan conformal algebras.
//!
//! The core is generic over the coefficient field via [`Scalar`]; the
//! aliases at the crate root fix it to exact rationals, which is what every
//! identity check should use.

pub mod conformal;
pub mod constructions;
pub mod error;
pub mod extending;
pub mod finite;
pub mod fixtures;
pub mod operators;
pub mod polyring;
pub mod random;
pub mod representations;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type Poly = polyring::Poly<Rational>;
pub type PolyMatrix = polyring::PolyMatrix<Rational>;
pub type LinearForm = polyring::LinearForm<Rational>;
pub type ParamElement = conformal::ParamElement<Rational>;
pub type BilinearTable = conformal::BilinearTable<Rational>;
pub type ConformalAlgebra = conformal::ConformalAlgebra<Rational>;
pub type ConformalEndo = conformal::ConformalEndo<Rational>;
pub type CheckReport = conformal::CheckReport<Rational>;
pub type Counterexample = conformal::Counterexample<Rational>;

pub type FiniteAlgebra = finite::FiniteAlgebra<Rational>;
pub type FiniteLinearMap = finite::FiniteLinearMap<Rational>;
pub type MockGD = finite::MockGD<Rational>;
pub type ConformalRep = representations::ConformalRep<Rational>;
pub type ModuleMap = operators::ModuleMap<Rational>;
pub type ConformalBilinearForm = operators::ConformalBilinearForm<Rational>;
pub type QuadraticDecomposition = constructions::QuadraticDecomposition<Rational>;
pub type ExtendingDatum = extending::ExtendingDatum<Rational>;
pub type EquivalencePair = extending::EquivalencePair<Rational>;
pub type UnifiedVerdict = extending::UnifiedVerdict<Rational>;
pub type SpecializedVerdict = extending::SpecializedVerdict<Rational>;

pub use polyring::Var;

/// `n` as an exact rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as an exact rational.
pub fn qr(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
