//! Current algebras, tensor and semidirect products, and the correspondence
//! between mock-GD algebras and quadratic conformal algebras.

use crate::conformal::{refl, BilinearTable, ConformalAlgebra};
use crate::error::{Error, Result};
use crate::finite::{FiniteAlgebra, MockGD};
use crate::polyring::{Monomial, Poly, Var};
use crate::representations::ConformalRep;
use crate::scalar::Scalar;

/// `a_λ b = a b`, with constant structure constants.
pub fn current_algebra<S: Scalar>(a: &FiniteAlgebra<S>) -> ConformalAlgebra<S> {
    let n = a.dim();
    let table = BilinearTable::from_fn(n, n, n, |i, j| {
        a.structure(i, j).iter().map(|c| Poly::constant(c.clone())).collect()
    })
    .unwrap();
    ConformalAlgebra::new(a.basis_names().to_vec(), table).unwrap()
}

/// `(a ⊗ x)_λ (b ⊗ y) = (a b) ⊗ (x_λ y)` for a commutative associative `A`.
/// The basis vector `a_p ⊗ x_i` has index `p * rank(B) + i` and is named
/// `{a_p}_{x_i}`.
pub fn tensor_with_comm_assoc<S: Scalar>(a: &FiniteAlgebra<S>, b: &ConformalAlgebra<S>) -> Result<ConformalAlgebra<S>> {
    let r = a.check_commutative().merge(a.check_associative());
    if !r.passed() {
        return Err(Error::Precondition(format!("algebra is not commutative and associative\n{r}")));
    }
    let (da, nb) = (a.dim(), b.rank());
    let n = da * nb;
    let table = BilinearTable::from_fn(n, n, n, |u, v| {
        let (p, i) = (u / nb, u % nb);
        let (q, j) = (v / nb, v % nb);
        let mut out = vec![Poly::zero(); n];
        for (r, c) in a.structure(p, q).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, x) in b.structure(i, j).iter().enumerate() {
                out[r * nb + k] = x.scale(c);
            }
        }
        out
    })?;
    let names = a
        .basis_names()
        .iter()
        .flat_map(|p| b.basis_names().iter().map(move |x| format!("{p}_{x}")))
        .collect();
    ConformalAlgebra::new(names, table)
}

/// Names for `extra` that avoid `taken`, by appending `_` as needed.
pub(crate) fn disjoint_names(taken: &[String], extra: &[String]) -> Vec<String> {
    let mut used: Vec<String> = taken.to_vec();
    extra
        .iter()
        .map(|x| {
            let mut name = x.clone();
            while used.contains(&name) {
                name.push('_');
            }
            used.push(name.clone());
            name
        })
        .collect()
}

/// `(a, m)_λ (b, n) = (a_λ b, π(a)_λ n + π(b)_{-λ-∂} m)` on `A ⊕ M`.
pub fn semidirect_product<S: Scalar>(rep: &ConformalRep<S>) -> Result<ConformalAlgebra<S>> {
    let r = rep.check();
    if !r.passed() {
        return Err(Error::Precondition(format!("not a representation\n{r}")));
    }
    Ok(semidirect_unchecked(rep))
}

/// The block product of [`semidirect_product`] without checking `rep`.
pub fn semidirect_unchecked<S: Scalar>(rep: &ConformalRep<S>) -> ConformalAlgebra<S> {
    let a = rep.algebra();
    let (n, m) = (a.rank(), rep.module_rank());
    let reflected = refl::<S>(&[Var::L]);
    let table = BilinearTable::from_fn(n + m, n + m, n + m, |u, v| {
        let mut out = vec![Poly::zero(); n + m];
        match (u < n, v < n) {
            (true, true) => out[..n].clone_from_slice(a.structure(u, v)),
            (true, false) => {
                for q in 0..m {
                    out[n + q] = rep.action(u).get(q, v - n).clone();
                }
            }
            (false, true) => {
                for q in 0..m {
                    out[n + q] = rep.action(v).get(q, u - n).substitute(&Var::L, &reflected);
                }
            }
            (false, false) => {}
        }
        out
    })
    .unwrap();
    let mut names = a.basis_names().to_vec();
    names.extend(disjoint_names(a.basis_names(), rep.module_basis()));
    ConformalAlgebra::new(names, table).unwrap()
}

/// `u_λ v = u ∗ v + ∂(u ∘ v) + λ(u ∘ v - v ∘ u)` for any pair of products,
/// without checking the mock-GD axioms.
pub fn quadratic_algebra<S: Scalar>(g: &MockGD<S>) -> ConformalAlgebra<S> {
    let n = g.dim();
    let (d, l) = (Poly::var(Var::D), Poly::var(Var::L));
    let table = BilinearTable::from_fn(n, n, n, |i, j| {
        (0..n)
            .map(|k| {
                let w = g.star().structure(i, j)[k].clone();
                let u = g.circ().structure(i, j)[k].clone();
                let v = u.clone() - g.circ().structure(j, i)[k].clone();
                &(&Poly::constant(w) + &d.scale(&u)) + &l.scale(&v)
            })
            .collect()
    })
    .unwrap();
    ConformalAlgebra::new(g.basis_names().to_vec(), table).unwrap()
}

/// The quadratic conformal algebra of a mock-GD algebra.
pub fn quadratic_from_mock_gd<S: Scalar>(g: &MockGD<S>) -> Result<ConformalAlgebra<S>> {
    let r = g.check();
    if !r.passed() {
        return Err(Error::Precondition(format!("not a mock-GD algebra\n{r}")));
    }
    Ok(quadratic_algebra(g))
}

/// The products `∗` (constant part) and `∘` (∂ part) of a quadratic
/// conformal algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticDecomposition<S> {
    pub star: FiniteAlgebra<S>,
    pub circ: FiniteAlgebra<S>,
}

impl<S: Scalar> QuadraticDecomposition<S> {
    pub fn to_mock_gd(&self) -> MockGD<S> {
        MockGD::new(self.star.clone(), self.circ.clone()).expect("both parts have the algebra's rank")
    }
}

/// Reads `a_λ b = ∂u + λv + w` back into `(∗, ∘) = (w, u)`, requiring
/// `v_ij = u_ij - u_ji`.
pub fn mock_gd_from_quadratic<S: Scalar>(a: &ConformalAlgebra<S>) -> Result<QuadraticDecomposition<S>> {
    let n = a.rank();
    let (md, ml) = (Monomial::var(Var::D), Monomial::var(Var::L));
    let mut w = vec![vec![S::zero(); n]; n * n];
    let mut u = w.clone();
    let mut v = w.clone();
    for i in 0..n {
        for j in 0..n {
            for (k, p) in a.structure(i, j).iter().enumerate() {
                for (mono, _) in p.terms() {
                    if mono.degree() > 1 {
                        return Err(Error::NotQuadratic(format!(
                            "{} λ {} has a term of degree {}",
                            a.basis_names()[i],
                            a.basis_names()[j],
                            mono.degree()
                        )));
                    }
                }
                w[i * n + j][k] = p.constant_term();
                u[i * n + j][k] = p.coeff(&md);
                v[i * n + j][k] = p.coeff(&ml);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let expected = u[i * n + j][k].clone() - u[j * n + i][k].clone();
                if v[i * n + j][k] != expected {
                    return Err(Error::NotQuadratic(format!(
                        "λ-coefficient of {} λ {} is not the commutator of its ∂-coefficients",
                        a.basis_names()[i],
                        a.basis_names()[j]
                    )));
                }
            }
        }
    }
    let names = a.basis_names().to_vec();
    let part = |t: &Vec<Vec<S>>| FiniteAlgebra::from_fn(names.clone(), |i, j| t[i * n + j].clone());
    Ok(QuadraticDecomposition {
        star: part(&w)?,
        circ: part(&u)?,
    })
}
