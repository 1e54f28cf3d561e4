use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{Monomial, Var};
use crate::scalar::Scalar;

/// A multivariate polynomial with coefficients in `S`.
///
/// Terms are kept in a map keyed by [`Monomial`] with zero coefficients
/// never stored, so structurally equal values are equal polynomials.
#[derive(Clone, PartialEq)]
pub struct Poly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(S::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(S::one(), Monomial::var(v))
    }

    pub fn term(c: S, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one())
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().cloned())
            .collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every occurrence of `x` by `e` and expands.
    pub fn substitute(&self, x: &Var, e: &Poly<S>) -> Self {
        if !self.contains_var(x) {
            return self.clone();
        }
        let mut powers: Vec<Poly<S>> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (k, rest) = m.split(x);
            while powers.len() <= k as usize {
                let next = powers.last().unwrap() * e;
                powers.push(next);
            }
            let rest = Poly::term(c.clone(), rest);
            out += &(&rest * &powers[k as usize]);
        }
        out
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, subs: &[(Var, Poly<S>)]) -> Self {
        // Route through internal placeholders so replacements never see
        // each other's output.
        let mut p = self.clone();
        let placeholders: Vec<Var> = (0..subs.len()).map(|i| Var::fresh(1_000_000 + i)).collect();
        for ((x, _), ph) in subs.iter().zip(&placeholders) {
            p = p.substitute(x, &Poly::var(ph.clone()));
        }
        for ((_, e), ph) in subs.iter().zip(&placeholders) {
            p = p.substitute(ph, e);
        }
        p
    }

    pub fn eval(&self, x: &Var, c: &S) -> Self {
        self.substitute(x, &Poly::constant(c.clone()))
    }

    /// Coefficient of `x^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, x: &Var, k: u32) -> Self {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split(x);
            (e == k).then(|| (rest, c.clone()))
        }))
    }
}

impl<S: Scalar> Default for Poly<S> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<S: Scalar> From<Var> for Poly<S> {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl<S: Scalar> AddAssign<&Poly<S>> for Poly<S> {
    fn add_assign(&mut self, rhs: &Poly<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Poly<S>> for Poly<S> {
    fn sub_assign(&mut self, rhs: &Poly<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $tr<&Poly<S>> for Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: &Poly<S>) -> Poly<S> {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

/// Renders a positive scalar as a factor, wrapping non-integers in parens.
pub(crate) fn scalar_factor<S: Scalar>(c: &S) -> String {
    let s = c.to_string();
    if s.chars().all(|ch| ch.is_ascii_digit()) {
        s
    } else {
        format!("({s})")
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text: terms in decreasing graded-lex order, explicit `*`,
/// unit coefficients omitted, e.g. `(2/3)*D^2*L - 1`.
impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if m.is_one() {
                abs.to_string()
            } else if abs.is_one() {
                render_monomial(m)
            } else {
                format!("{}*{}", scalar_factor(&abs), render_monomial(m))
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Poly<Rational>;

    fn d() -> P {
        Poly::var(Var::D)
    }
    fn l() -> P {
        Poly::var(Var::L)
    }
    fn m() -> P {
        Poly::var(Var::M)
    }
    fn int(n: i64) -> P {
        Poly::int(n)
    }

    #[test]
    fn like_terms_cancel() {
        let p = &d() + &(&int(3) * &l());
        let q = &(&int(2) * &d()) - &(&int(3) * &l());
        assert_eq!(&p + &q, &int(3) * &d());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&d() + &int(1)) * &(&d() - &int(1));
        assert_eq!(p, &d().pow(2) - &int(1));
        assert_eq!(p.to_string(), "D^2 - 1");
    }

    #[test]
    fn scalar_multiply() {
        let p = &(&int(2) * &d()) + &(&int(4) * &l());
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(p.scale(&half), &d() + &(&int(2) * &l()));
    }

    #[test]
    fn substitution_examples() {
        // D + 3M - 1 with M -> -L - D
        let p = &(&d() + &(&int(3) * &m())) - &int(1);
        let e = &(-&l()) - &d();
        let r = p.substitute(&Var::M, &e);
        assert_eq!(r.to_string(), "-2*D - 3*L - 1");

        assert!(m().pow(2).substitute(&Var::M, &P::zero()).is_zero());

        let dm = &d() * &m();
        assert_eq!(
            dm.substitute(&Var::M, &(&l() + &m())),
            &(&d() * &l()) + &(&d() * &m())
        );
    }

    #[test]
    fn equality_and_zero() {
        assert_eq!(&d() + &l(), &l() + &d());
        assert!((&(&d() + &l()) - &(&d() + &l())).is_zero());
        assert_ne!(&int(2) * &d(), d());
    }

    #[test]
    fn rendering() {
        let third = Rational::new(2.into(), 3.into());
        let p = &(&P::constant(third) * &(&d().pow(2) * &l())) - &int(1);
        assert_eq!(p.to_string(), "(2/3)*D^2*L - 1");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!((-&d()).to_string(), "-D");
        let q = &(&int(-2) * &d()) + &P::constant(Rational::new((-1).into(), 2.into()));
        assert_eq!(q.to_string(), "-2*D - 1/2");
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let p = &d() - &l();
        let swapped = p.substitute_all(&[(Var::D, l()), (Var::L, d())]);
        assert_eq!(swapped, &l() - &d());
    }

    #[test]
    fn works_over_machine_floats() {
        let p: Poly<f64> = &Poly::var(Var::D) + &Poly::constant(0.5);
        let sq = &p * &p;
        assert_eq!(sq.coeff(&Monomial::one()), 0.25);
        assert_eq!(sq.coeff(&Monomial::var(Var::D)), 1.0);
    }
}
