//! Finite-dimensional algebras by structure constants, and the constructions
//! linking anti-associative, anti-Novikov and mock-GD algebras.
//!
//! These checks run directly on coefficient vectors. They share
//! [`CheckReport`] with the conformal checks, with residuals written as
//! constant elements.

use rayon::prelude::*;

use crate::conformal::{check_basis_names, default_basis, CheckReport, ParamElement};
use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyMatrix};
use crate::scalar::Scalar;

fn vzero<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

fn vadd<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn vsub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn vsum<S: Scalar>(n: usize, items: impl IntoIterator<Item = Vec<S>>) -> Vec<S> {
    items.into_iter().fold(vzero(n), |acc, v| vadd(&acc, &v))
}

fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vzero(n);
    v[i] = S::one();
    v
}

pub(crate) fn constant_element<S: Scalar>(v: &[S]) -> ParamElement<S> {
    ParamElement::new(v.iter().map(|c| Poly::constant(c.clone())).collect())
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect()
}

fn report<S: Scalar>(
    law: &str,
    basis: &[String],
    residuals: Vec<(Vec<usize>, Vec<S>)>,
) -> CheckReport<S> {
    CheckReport::from_residuals(
        law,
        basis,
        residuals.into_iter().map(|(idx, v)| (idx, constant_element(&v))),
    )
}

/// A finite-dimensional algebra given by the products of its basis vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteAlgebra<S> {
    basis: Vec<String>,
    table: Vec<Vec<S>>,
}

impl<S: Scalar> FiniteAlgebra<S> {
    pub fn zero(dim: usize) -> Self {
        FiniteAlgebra {
            basis: default_basis("e", dim),
            table: vec![vzero(dim); dim * dim],
        }
    }

    /// Builds from `(i, j, coordinates of e_i e_j)`; unlisted products are zero.
    pub fn from_products(basis: Vec<String>, products: impl IntoIterator<Item = (usize, usize, Vec<S>)>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Shape("dimension must be positive".into()));
        }
        check_basis_names(&basis, n)?;
        let mut a = FiniteAlgebra {
            basis,
            table: vec![vzero(n); n * n],
        };
        for (i, j, v) in products {
            a.set(i, j, v)?;
        }
        Ok(a)
    }

    pub fn from_fn(basis: Vec<String>, f: impl Fn(usize, usize) -> Vec<S>) -> Result<Self> {
        let n = basis.len();
        Self::from_products(basis, pairs(n).into_iter().map(|(i, j)| (i, j, f(i, j))))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<S>) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::Shape(format!("product ({i}, {j}) outside dimension {n}")));
        }
        if v.len() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: v.len(),
            });
        }
        self.table[i * n + j] = v;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        check_basis_names(&names, self.dim())?;
        self.basis = names;
        Ok(self)
    }

    /// Coordinates of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[S] {
        &self.table[i * self.dim() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(|c| c.is_zero())
    }

    pub fn e(&self, i: usize) -> Vec<S> {
        unit(self.dim(), i)
    }

    /// The product of two coordinate vectors.
    pub fn mul(&self, a: &[S], b: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out: Vec<S> = vzero(n);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x.clone() * y.clone();
                for (k, c) in self.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    fn pair_law(&self, law: &str, f: impl Fn(&[S], &[S]) -> Vec<S> + Sync) -> CheckReport<S> {
        let n = self.dim();
        let residuals = pairs(n)
            .into_par_iter()
            .map(|(i, j)| (vec![i, j], f(&self.e(i), &self.e(j))))
            .collect();
        report(law, &self.basis, residuals)
    }

    fn triple_law(&self, law: &str, f: impl Fn(&[S], &[S], &[S]) -> Vec<S> + Sync) -> CheckReport<S> {
        let n = self.dim();
        let residuals = triples(n)
            .into_par_iter()
            .map(|(i, j, k)| (vec![i, j, k], f(&self.e(i), &self.e(j), &self.e(k))))
            .collect();
        report(law, &self.basis, residuals)
    }

    pub fn check_commutative(&self) -> CheckReport<S> {
        self.pair_law("commutativity", |a, b| vsub(&self.mul(a, b), &self.mul(b, a)))
    }

    pub fn check_associative(&self) -> CheckReport<S> {
        self.triple_law("associativity", |a, b, c| {
            vsub(&self.mul(&self.mul(a, b), c), &self.mul(a, &self.mul(b, c)))
        })
    }

    /// Commutativity and `a(bc) + b(ca) + c(ab) = 0`.
    pub fn check_jacobi_jordan(&self) -> CheckReport<S> {
        let jacobi = self.triple_law("jacobi", |a, b, c| {
            let n = self.dim();
            vsum(
                n,
                [
                    self.mul(a, &self.mul(b, c)),
                    self.mul(b, &self.mul(c, a)),
                    self.mul(c, &self.mul(a, b)),
                ],
            )
        });
        self.check_commutative().merge(jacobi)
    }

    /// `ab = -ba` and `(ab)c + a(bc) = 0`.
    pub fn check_anti_comm_anti_assoc(&self) -> CheckReport<S> {
        let ac = self.pair_law("anti-commutativity", |a, b| vadd(&self.mul(a, b), &self.mul(b, a)));
        let aa = self.triple_law("anti-associativity", |a, b, c| {
            vadd(&self.mul(&self.mul(a, b), c), &self.mul(a, &self.mul(b, c)))
        });
        ac.merge(aa)
    }

    /// `(a, b, c)^- = (ab)c + a(bc)`.
    fn anti_associator(&self, a: &[S], b: &[S], c: &[S]) -> Vec<S> {
        vadd(&self.mul(&self.mul(a, b), c), &self.mul(a, &self.mul(b, c)))
    }

    /// `a(bc) = -b(ac)` and `(a, b, c)^- + (a, c, b)^- = 0`.
    pub fn check_anti_novikov(&self) -> CheckReport<S> {
        let first = self.triple_law("left-anti-commutativity", |a, b, c| {
            vadd(&self.mul(a, &self.mul(b, c)), &self.mul(b, &self.mul(a, c)))
        });
        let second = self.triple_law("symmetric-anti-associator", |a, b, c| {
            vadd(&self.anti_associator(a, b, c), &self.anti_associator(a, c, b))
        });
        first.merge(second)
    }

    /// `d(ab) = d(a)b + a d(b)`.
    pub fn check_derivation(&self, d: &FiniteLinearMap<S>) -> Result<CheckReport<S>> {
        self.require_dim(d)?;
        Ok(self.pair_law("derivation", |a, b| {
            let lhs = d.apply(&self.mul(a, b));
            let rhs = vadd(&self.mul(&d.apply(a), b), &self.mul(a, &d.apply(b)));
            vsub(&lhs, &rhs)
        }))
    }

    fn require_dim(&self, d: &FiniteLinearMap<S>) -> Result<()> {
        if d.dim() != self.dim() {
            return Err(Error::RankMismatch {
                expected: self.dim(),
                found: d.dim(),
            });
        }
        Ok(())
    }

    fn require_anti_assoc_derivation(&self, d: &FiniteLinearMap<S>) -> Result<()> {
        let r = self.check_anti_comm_anti_assoc();
        if !r.passed() {
            return Err(Error::Precondition(format!(
                "algebra is not anti-commutative anti-associative\n{r}"
            )));
        }
        let r = self.check_derivation(d)?;
        if !r.passed() {
            return Err(Error::Precondition(format!("map is not a derivation\n{r}")));
        }
        Ok(())
    }

    /// `a ∘ b = d(a) b` for an anti-commutative anti-associative algebra and
    /// one of its derivations.
    pub fn anti_novikov_from_derivation(&self, d: &FiniteLinearMap<S>) -> Result<FiniteAlgebra<S>> {
        self.require_anti_assoc_derivation(d)?;
        FiniteAlgebra::from_fn(self.basis.clone(), |i, j| self.mul(&d.apply(&self.e(i)), &self.e(j)))
    }

    /// `a ∗ b = d(a) b + d(b) a` together with `a ∘ b = d(a) b`.
    pub fn mock_gd_from_derivation(&self, d: &FiniteLinearMap<S>) -> Result<MockGD<S>> {
        self.require_anti_assoc_derivation(d)?;
        let circ = FiniteAlgebra::from_fn(self.basis.clone(), |i, j| self.mul(&d.apply(&self.e(i)), &self.e(j)))?;
        let star = FiniteAlgebra::from_fn(self.basis.clone(), |i, j| {
            vadd(
                &self.mul(&d.apply(&self.e(i)), &self.e(j)),
                &self.mul(&d.apply(&self.e(j)), &self.e(i)),
            )
        })?;
        MockGD::new(star, circ)
    }

    /// The mock-GD algebra `(A, ∗, ∘)` with `a ∗ b = a ∘ b + b ∘ a`.
    pub fn mock_gd_from_anti_novikov(&self) -> Result<MockGD<S>> {
        let r = self.check_anti_novikov();
        if !r.passed() {
            return Err(Error::Precondition(format!("algebra is not anti-Novikov\n{r}")));
        }
        let star = FiniteAlgebra::from_fn(self.basis.clone(), |i, j| {
            vadd(self.structure(i, j), self.structure(j, i))
        })?;
        MockGD::new(star, self.clone())
    }
}

/// A linear endomorphism, `d(e_j) = sum_i matrix[i][j] e_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteLinearMap<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> FiniteLinearMap<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("linear map matrix must be square".into()));
        }
        Ok(FiniteLinearMap { rows })
    }

    pub fn zero(n: usize) -> Self {
        FiniteLinearMap {
            rows: vec![vzero(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        FiniteLinearMap {
            rows: (0..n).map(|i| unit(n, i)).collect(),
        }
    }

    pub fn diagonal(d: Vec<S>) -> Self {
        let n = d.len();
        FiniteLinearMap {
            rows: d
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut r = vzero(n);
                    r[i] = c;
                    r
                })
                .collect(),
        }
    }

    /// Left multiplication `b ↦ e_i b`.
    pub fn left_multiplication(a: &FiniteAlgebra<S>, i: usize) -> Self {
        let n = a.dim();
        FiniteLinearMap {
            rows: (0..n)
                .map(|r| (0..n).map(|k| a.structure(i, k)[r].clone()).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.rows[i][j]
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.dim();
        FiniteLinearMap {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(S::zero(), |acc, k| {
                                acc + self.rows[i][k].clone() * other.rows[k][j].clone()
                            })
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        FiniteLinearMap {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| vadd(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        FiniteLinearMap {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.is_zero())
    }

    /// The same matrix with constant polynomial entries.
    pub fn to_poly_matrix(&self) -> PolyMatrix<S> {
        let n = self.dim();
        PolyMatrix::from_fn(n, n, |i, j| Poly::constant(self.rows[i][j].clone()))
    }
}

/// A pair of products `(∗, ∘)` on one space.
#[derive(Clone, PartialEq, Debug)]
pub struct MockGD<S> {
    star: FiniteAlgebra<S>,
    circ: FiniteAlgebra<S>,
}

impl<S: Scalar> MockGD<S> {
    pub fn new(star: FiniteAlgebra<S>, circ: FiniteAlgebra<S>) -> Result<Self> {
        if star.dim() != circ.dim() {
            return Err(Error::RankMismatch {
                expected: star.dim(),
                found: circ.dim(),
            });
        }
        let circ = FiniteAlgebra {
            basis: star.basis.clone(),
            table: circ.table,
        };
        Ok(MockGD { star, circ })
    }

    pub fn zero(dim: usize) -> Self {
        MockGD {
            star: FiniteAlgebra::zero(dim),
            circ: FiniteAlgebra::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.star.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        self.star.basis_names()
    }

    pub fn star(&self) -> &FiniteAlgebra<S> {
        &self.star
    }

    pub fn circ(&self) -> &FiniteAlgebra<S> {
        &self.circ
    }

    /// The five-term compatibility between `∗` and `∘`.
    pub fn compatibility_residual(&self, a: &[S], b: &[S], c: &[S]) -> Vec<S> {
        let (s, o) = (&self.star, &self.circ);
        vsum(
            self.dim(),
            [
                o.mul(a, &s.mul(b, c)),
                s.mul(a, &o.mul(b, c)),
                o.mul(&s.mul(a, b), c),
                o.mul(b, &s.mul(a, c)),
                s.mul(b, &o.mul(a, c)),
            ],
        )
    }

    /// `∗` Jacobi-Jordan, `∘` anti-Novikov and their compatibility. Laws
    /// of the two products are prefixed with `star:` and `circ:`.
    pub fn check(&self) -> CheckReport<S> {
        let star = relabel(self.star.check_jacobi_jordan(), "star");
        let circ = relabel(self.circ.check_anti_novikov(), "circ");
        let compat = self.star.triple_law("compatibility", |a, b, c| self.compatibility_residual(a, b, c));
        star.merge(circ).merge(compat)
    }
}

fn relabel<S: Scalar>(r: CheckReport<S>, tag: &str) -> CheckReport<S> {
    r.relabel(|law| format!("{tag}:{law}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::{q, Rational};

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn one_dim_idempotent() -> FiniteAlgebra<Rational> {
        FiniteAlgebra::from_products(vec!["e".into()], [(0, 0, qv(&[1]))]).unwrap()
    }

    #[test]
    fn jacobi_jordan_fd() {
        assert!(fixtures::b2().check_jacobi_jordan().passed());
        assert!(FiniteAlgebra::<Rational>::zero(3).check_jacobi_jordan().passed());
        let r = one_dim_idempotent().check_jacobi_jordan();
        assert_eq!(r.counterexamples().len(), 1);
        assert_eq!(r.counterexamples()[0].render_residual(), "3*e");
    }

    #[test]
    fn anti_comm_anti_assoc() {
        assert!(fixtures::aa3().check_anti_comm_anti_assoc().passed());
        assert!(FiniteAlgebra::<Rational>::zero(2).check_anti_comm_anti_assoc().passed());
        let r = fixtures::b2().check_anti_comm_anti_assoc();
        let c = &r.counterexamples()[0];
        assert_eq!((c.law.as_str(), c.indices.clone()), ("anti-commutativity", vec![0, 0]));
    }

    #[test]
    fn anti_novikov() {
        assert!(fixtures::mgd3().circ().check_anti_novikov().passed());
        assert!(FiniteAlgebra::<Rational>::zero(2).check_anti_novikov().passed());
        let r = one_dim_idempotent().check_anti_novikov();
        let c = &r.counterexamples()[0];
        assert_eq!(c.law, "left-anti-commutativity");
        assert_eq!(c.render_residual(), "2*e");
    }

    #[test]
    fn derivations() {
        let aa3 = fixtures::aa3();
        assert!(aa3.check_derivation(&fixtures::d3()).unwrap().passed());
        assert!(aa3.check_derivation(&FiniteLinearMap::zero(3)).unwrap().passed());
        let d = FiniteLinearMap::diagonal(qv(&[1, 0, 0]));
        let r = aa3.check_derivation(&d).unwrap();
        assert_eq!(r.counterexamples()[0].indices, vec![0, 1]);
        assert_eq!(r.counterexamples()[0].render_residual(), "-e3");
        assert!(aa3.check_derivation(&FiniteLinearMap::zero(2)).is_err());
    }

    #[test]
    fn mock_gd_checks() {
        assert!(fixtures::mgd3().check().passed());
        assert!(MockGD::<Rational>::zero(2).check().passed());
        assert!(matches!(
            MockGD::new(fixtures::b2(), fixtures::aa3()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn constructions_from_derivation() {
        let aa3 = fixtures::aa3();
        let d3 = fixtures::d3();
        let circ = aa3.anti_novikov_from_derivation(&d3).unwrap();
        assert_eq!(&circ, fixtures::mgd3().circ());
        assert!(circ.check_anti_novikov().passed());
        let g = aa3.mock_gd_from_derivation(&d3).unwrap();
        assert_eq!(g, fixtures::mgd3());
        assert_eq!(g, circ.mock_gd_from_anti_novikov().unwrap());
        assert!(matches!(
            aa3.anti_novikov_from_derivation(&FiniteLinearMap::identity(3)),
            Err(Error::Precondition(_))
        ));
        let z = FiniteAlgebra::<Rational>::zero(2);
        assert!(z.anti_novikov_from_derivation(&FiniteLinearMap::identity(2)).unwrap().is_zero());
        assert_eq!(z.mock_gd_from_derivation(&FiniteLinearMap::zero(2)).unwrap(), MockGD::zero(2));
    }

    #[test]
    fn star_is_commutative() {
        let g = fixtures::mgd3().circ().mock_gd_from_anti_novikov().unwrap();
        assert_eq!(g.star().structure(0, 1), &qv(&[0, 0, -1])[..]);
        assert!(g.star().check_commutative().passed());
    }
}
