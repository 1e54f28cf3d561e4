use std::fmt;

use super::ParamElement;
use crate::scalar::Scalar;

/// One violated identity: the law's name, the basis indices (zero based)
/// it was evaluated at, and the nonzero left-hand side.
#[derive(Clone, PartialEq, Debug)]
pub struct Counterexample<S: Scalar> {
    pub law: String,
    pub indices: Vec<usize>,
    pub residual: ParamElement<S>,
    /// Names of the basis the residual is written in.
    pub basis: Vec<String>,
}

impl<S: Scalar> Counterexample<S> {
    /// Scalar-valued identities (pairings, determinants) carry an empty
    /// basis and a rank-one residual, rendered as the bare polynomial.
    pub fn render_residual(&self) -> String {
        if self.basis.is_empty() && self.residual.rank() == 1 {
            return self.residual.coeff(0).to_string();
        }
        self.residual.render(&self.basis)
    }
}

/// The outcome of an identity check: every failing basis tuple, in basis
/// index order.
#[derive(Clone, PartialEq, Debug)]
pub struct CheckReport<S: Scalar> {
    counterexamples: Vec<Counterexample<S>>,
}

impl<S: Scalar> CheckReport<S> {
    pub fn pass() -> Self {
        CheckReport {
            counterexamples: Vec::new(),
        }
    }

    /// Keeps only the nonzero residuals.
    pub fn from_residuals(
        law: &str,
        basis: &[String],
        residuals: impl IntoIterator<Item = (Vec<usize>, ParamElement<S>)>,
    ) -> Self {
        CheckReport {
            counterexamples: residuals
                .into_iter()
                .filter(|(_, r)| !r.is_zero())
                .map(|(indices, residual)| Counterexample {
                    law: law.to_string(),
                    indices,
                    residual,
                    basis: basis.to_vec(),
                })
                .collect(),
        }
    }

    /// Records a failure whose residual is kept even when it is zero, as
    /// for a vanishing determinant.
    pub fn failure(law: &str, basis: &[String], indices: Vec<usize>, residual: ParamElement<S>) -> Self {
        CheckReport {
            counterexamples: vec![Counterexample {
                law: law.to_string(),
                indices,
                residual,
                basis: basis.to_vec(),
            }],
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn counterexamples(&self) -> &[Counterexample<S>] {
        &self.counterexamples
    }

    pub fn merge(mut self, other: CheckReport<S>) -> Self {
        self.counterexamples.extend(other.counterexamples);
        self
    }

    pub fn laws_failed(&self) -> Vec<&str> {
        let mut laws: Vec<&str> = Vec::new();
        for c in &self.counterexamples {
            if !laws.contains(&c.law.as_str()) {
                laws.push(&c.law);
            }
        }
        laws
    }

    pub fn relabel(mut self, f: impl Fn(&str) -> String) -> Self {
        for c in &mut self.counterexamples {
            c.law = f(&c.law);
        }
        self
    }

    pub fn only_law(&self, law: &str) -> Self {
        CheckReport {
            counterexamples: self
                .counterexamples
                .iter()
                .filter(|c| c.law == law)
                .cloned()
                .collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for CheckReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("passed");
        }
        writeln!(f, "failed ({} counterexamples)", self.counterexamples.len())?;
        for c in &self.counterexamples {
            let idx: Vec<String> = c.indices.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(f, "  {} at ({}): {}", c.law, idx.join(","), c.render_residual())?;
        }
        Ok(())
    }
}
