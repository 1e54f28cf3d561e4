//! Exact multivariate polynomials in named indeterminates.
//!
//! The indeterminate `D` plays the role of ∂; `L`, `M`, `N` are the formal
//! parameters λ, μ, ν. Arithmetic never rounds when the coefficients are
//! exact, and every value is kept in canonical form so identity checks are
//! plain zero tests.

mod matrix;
mod monomial;
mod poly;
mod var;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::Poly;
pub(crate) use poly::scalar_factor;
pub use var::Var;

use crate::scalar::Scalar;

/// `a*D + sum(c_v * v) + k`, the shape of every attachment point such as
/// `L + M` or `-L - D`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S> {
    pub constant: S,
    pub coefficients: Vec<(Var, S)>,
}

impl<S: Scalar> LinearForm<S> {
    pub fn var(v: Var) -> Self {
        LinearForm {
            constant: S::zero(),
            coefficients: vec![(v, S::one())],
        }
    }

    /// `v1 + v2 + ...`
    pub fn sum(vars: &[Var]) -> Self {
        LinearForm {
            constant: S::zero(),
            coefficients: vars.iter().map(|v| (v.clone(), S::one())).collect(),
        }
    }

    /// `-v1 - v2 - ... - D`, the reflected point `-λ-∂` and its relatives.
    pub fn reflected(vars: &[Var]) -> Self {
        let mut coefficients: Vec<_> = vars.iter().map(|v| (v.clone(), -S::one())).collect();
        coefficients.push((Var::D, -S::one()));
        LinearForm {
            constant: S::zero(),
            coefficients,
        }
    }

    pub fn to_poly(&self) -> Poly<S> {
        let mut p = Poly::constant(self.constant.clone());
        for (v, c) in &self.coefficients {
            p += &Poly::var(v.clone()).scale(c);
        }
        p
    }

    /// `None` unless `p` has degree at most one.
    pub fn from_poly(p: &Poly<S>) -> Option<Self> {
        if p.total_degree() > 1 {
            return None;
        }
        let coefficients = p
            .vars()
            .into_iter()
            .map(|v| {
                let c = p.coeff(&Monomial::var(v.clone()));
                (v, c)
            })
            .collect();
        Some(LinearForm {
            constant: p.constant_term(),
            coefficients,
        })
    }
}

impl<S: Scalar> From<LinearForm<S>> for Poly<S> {
    fn from(w: LinearForm<S>) -> Self {
        w.to_poly()
    }
}
