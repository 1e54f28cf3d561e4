use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::polyring::{scalar_factor, Poly, Var};
use crate::scalar::Scalar;

/// An element `sum_k p_k(∂, params) e_k` of a free module over the
/// ∂-polynomial ring, with coefficients depending on a declared set of
/// formal parameters.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamElement<S: Scalar> {
    coeffs: Vec<Poly<S>>,
    params: BTreeSet<Var>,
}

impl<S: Scalar> ParamElement<S> {
    pub fn zero(rank: usize) -> Self {
        ParamElement {
            coeffs: vec![Poly::zero(); rank],
            params: BTreeSet::new(),
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Self::zero(rank);
        e.coeffs[i] = Poly::one();
        e
    }

    /// Builds an element whose parameters are every indeterminate other
    /// than `D` that occurs in `coeffs`.
    pub fn new(coeffs: Vec<Poly<S>>) -> Self {
        let params = coeffs
            .iter()
            .flat_map(Poly::vars)
            .filter(|v| *v != Var::D)
            .collect();
        ParamElement { coeffs, params }
    }

    /// Builds an element with an explicit parameter set, which must cover
    /// the coefficients' indeterminates.
    pub fn with_params(coeffs: Vec<Poly<S>>, params: BTreeSet<Var>) -> Result<Self> {
        if params.contains(&Var::D) {
            return Err(Error::ParamCollision("D".into()));
        }
        for p in &coeffs {
            if let Some(v) = p.vars().into_iter().find(|v| *v != Var::D && !params.contains(v)) {
                return Err(Error::UnknownParam(v.to_string()));
            }
        }
        Ok(ParamElement { coeffs, params })
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly<S> {
        &self.coeffs[k]
    }

    pub fn params(&self) -> &BTreeSet<Var> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Multiplies every coefficient by `p`, which may bring new parameters.
    pub fn mul_poly(&self, p: &Poly<S>) -> Self {
        let mut params = self.params.clone();
        params.extend(p.vars().into_iter().filter(|v| *v != Var::D));
        ParamElement {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
            params,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        ParamElement {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
            params: self.params.clone(),
        }
    }

    /// Substitutes `t ↦ w` in every coefficient, realizing `a_w b` from
    /// `a_t b`. A `D` inside `w` is the ambient ∂ of this element.
    pub fn attach(&self, t: &Var, w: &Poly<S>) -> Result<Self> {
        if !self.params.contains(t) {
            return Err(Error::UnknownParam(t.to_string()));
        }
        let mut params = self.params.clone();
        params.remove(t);
        params.extend(w.vars().into_iter().filter(|v| *v != Var::D));
        Ok(ParamElement {
            coeffs: self.coeffs.iter().map(|p| p.substitute(t, w)).collect(),
            params,
        })
    }

    /// Substitutes into the coefficients without touching the parameter
    /// bookkeeping. Used for `D`, which is never a parameter.
    pub(crate) fn map_coeffs(&self, f: impl Fn(&Poly<S>) -> Poly<S>) -> Self {
        ParamElement {
            coeffs: self.coeffs.iter().map(f).collect(),
            params: self.params.clone(),
        }
    }

    /// Adds parameters to the declared set (used when the result of an
    /// identity must live over a fixed parameter set).
    pub fn extend_params(mut self, extra: impl IntoIterator<Item = Var>) -> Self {
        self.params.extend(extra.into_iter().filter(|v| *v != Var::D));
        self
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(self.zip(other, |a, b| a + b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly<S>, &Poly<S>) -> Poly<S>) -> Self {
        ParamElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
            params: self.params.union(&other.params).cloned().collect(),
        }
    }

    /// Concatenates coordinates, `(a, x)` in a direct sum.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        ParamElement {
            coeffs,
            params: self.params.union(&other.params).cloned().collect(),
        }
    }

    /// Coordinates `range` as an element of the corresponding summand.
    pub fn project(&self, range: std::ops::Range<usize>) -> Self {
        ParamElement {
            coeffs: self.coeffs[range].to_vec(),
            params: self.params.clone(),
        }
    }

    /// Canonical rendering against the given basis names, e.g.
    /// `(D + 3*L - 1)*e3` or `3*e`.
    pub fn render(&self, basis: &[String]) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = basis
                .get(k)
                .cloned()
                .unwrap_or_else(|| format!("e{}", k + 1));
            let (neg, body) = render_coefficient(c, &name);
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Returns `(negative, text)` for the term `c * name`.
fn render_coefficient<S: Scalar>(c: &Poly<S>, name: &str) -> (bool, String) {
    if c.num_terms() == 1 {
        let (m, a) = c.terms().next().unwrap();
        let neg = a.is_negative();
        let mono = Poly::term(S::one(), m.clone());
        let abs = a.abs();
        let text = match (m.is_one(), abs.is_one()) {
            (true, true) => name.to_string(),
            (true, false) => format!("{}*{name}", scalar_factor(&abs)),
            (false, true) => format!("{mono}*{name}"),
            (false, false) => format!("{}*{mono}*{name}", scalar_factor(&abs)),
        };
        (neg, text)
    } else {
        (false, format!("({c})*{name}"))
    }
}

impl<S: Scalar> fmt::Display for ParamElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl<S: Scalar> Add for &ParamElement<S> {
    type Output = ParamElement<S>;
    /// Panics on a rank mismatch; use [`ParamElement::checked_add`] for
    /// untrusted input.
    fn add(self, rhs: &ParamElement<S>) -> ParamElement<S> {
        assert_eq!(self.rank(), rhs.rank(), "adding elements of different rank");
        self.zip(rhs, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for &ParamElement<S> {
    type Output = ParamElement<S>;
    fn sub(self, rhs: &ParamElement<S>) -> ParamElement<S> {
        assert_eq!(self.rank(), rhs.rank(), "subtracting elements of different rank");
        self.zip(rhs, |a, b| a - b)
    }
}

impl<S: Scalar> Neg for &ParamElement<S> {
    type Output = ParamElement<S>;
    fn neg(self) -> ParamElement<S> {
        self.map_coeffs(|p| -p)
    }
}

/// Sums a nonempty list of same-rank elements.
pub(crate) fn sum<S: Scalar>(rank: usize, items: impl IntoIterator<Item = ParamElement<S>>) -> ParamElement<S> {
    items
        .into_iter()
        .fold(ParamElement::zero(rank), |acc, x| &acc + &x)
}
