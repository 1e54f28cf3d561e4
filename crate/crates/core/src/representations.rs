//! Conformal representations on free modules of finite rank.
//!
//! An action is stored as one matrix per algebra basis vector,
//! `π(e_i)_λ m_k = sum_q A_i[q][k](∂, λ) m_q`, and evaluated by the same
//! engine as λ-products: `π(p(∂) e_i)_λ = p(-λ) π(e_i)_λ` on the left and
//! `π(a)_λ ∂ = (λ + ∂) π(a)_λ` on the right.
//!
//! The conformal dual of a free rank-m module is again free, with the dual
//! basis `f^j` determined by `(P(∂) f^j)_μ (m_k) = P(-μ) δ_jk`. Writing
//! `π*(e_i)_λ f^j = sum_q B_i[q][j](∂, λ) f^q` and imposing
//! `(π*(a)_λ f)_μ m = f_{μ-λ}(π(a)_λ m)` on basis vectors gives
//! `B_i[k][j](-μ, λ) = A_i[j][k](μ - λ, λ)`, hence
//! `B_i(D, L) = A_i(-D - L, L)^T`.

use rayon::prelude::*;

use crate::conformal::{lin, BilinearTable, CheckReport, ConformalAlgebra, ParamElement};
use crate::error::{Error, Result};
use crate::finite::{constant_element, FiniteAlgebra, FiniteLinearMap};
use crate::polyring::{Poly, PolyMatrix, Var};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct ConformalRep<S: Scalar> {
    algebra: ConformalAlgebra<S>,
    module_basis: Vec<String>,
    action: Vec<PolyMatrix<S>>,
    table: BilinearTable<S>,
}

impl<S: Scalar> ConformalRep<S> {
    pub fn new(algebra: ConformalAlgebra<S>, module_basis: Vec<String>, action: Vec<PolyMatrix<S>>) -> Result<Self> {
        let (n, m) = (algebra.rank(), module_basis.len());
        crate::conformal::check_basis_names(&module_basis, m)?;
        if action.len() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: action.len(),
            });
        }
        if let Some(bad) = action.iter().find(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Shape(format!(
                "action matrix is {}x{} on a module of rank {m}",
                bad.rows(),
                bad.cols()
            )));
        }
        let table = BilinearTable::from_fn(n, m, m, |i, k| (0..m).map(|q| action[i].get(q, k).clone()).collect())?;
        Ok(ConformalRep {
            algebra,
            module_basis,
            action,
            table,
        })
    }

    pub fn zero(algebra: ConformalAlgebra<S>, m: usize) -> Self {
        let n = algebra.rank();
        Self::new(
            algebra,
            crate::conformal::default_basis("m", m),
            vec![PolyMatrix::zeros(m, m); n],
        )
        .unwrap()
    }

    /// The adjoint representation `π(a)_λ b = a_λ b`.
    pub fn adjoint(algebra: &ConformalAlgebra<S>) -> Self {
        let n = algebra.rank();
        let action = (0..n)
            .map(|i| PolyMatrix::from_fn(n, n, |q, k| algebra.structure(i, k)[q].clone()))
            .collect();
        Self::new(algebra.clone(), algebra.basis_names().to_vec(), action).unwrap()
    }

    /// Builds from a table of `π(e_i)_λ m_k`, entry `(i, k)`.
    pub fn from_table(algebra: ConformalAlgebra<S>, module_basis: Vec<String>, table: &BilinearTable<S>) -> Result<Self> {
        let m = module_basis.len();
        if table.left_rank() != algebra.rank() || table.right_rank() != m || table.out_rank() != m {
            return Err(Error::Shape("action table does not match the algebra and module".into()));
        }
        let action = (0..algebra.rank())
            .map(|i| PolyMatrix::from_fn(m, m, |q, k| table.get(i, k)[q].clone()))
            .collect();
        Self::new(algebra, module_basis, action)
    }

    pub fn algebra(&self) -> &ConformalAlgebra<S> {
        &self.algebra
    }

    pub fn module_rank(&self) -> usize {
        self.module_basis.len()
    }

    pub fn module_basis(&self) -> &[String] {
        &self.module_basis
    }

    /// The matrix of `π(e_i)_λ`.
    pub fn action(&self, i: usize) -> &PolyMatrix<S> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[PolyMatrix<S>] {
        &self.action
    }

    pub fn table(&self) -> &BilinearTable<S> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.action.iter().all(PolyMatrix::is_zero)
    }

    pub fn m(&self, k: usize) -> ParamElement<S> {
        ParamElement::basis(self.module_rank(), k)
    }

    /// `π(a)_t v` at the fresh parameter `t`.
    pub fn act(&self, a: &ParamElement<S>, v: &ParamElement<S>, t: &Var) -> Result<ParamElement<S>> {
        self.table.apply(a, v, t)
    }

    /// `π(a)_w v`.
    pub fn act_at(&self, a: &ParamElement<S>, v: &ParamElement<S>, w: &Poly<S>) -> Result<ParamElement<S>> {
        crate::conformal::apply_at(&self.table, a, v, w)
    }

    /// `π(e_i λ e_j)_{λ+μ} m_k + π(e_i)_λ π(e_j)_μ m_k + π(e_j)_μ π(e_i)_λ m_k`.
    pub fn rep_residual(&self, i: usize, j: usize, k: usize) -> ParamElement<S> {
        let a = &self.algebra;
        let (ei, ej, mk) = (a.e(i), a.e(j), self.m(k));
        let run = || -> Result<ParamElement<S>> {
            let ab = a.product(&ei, &ej, &Var::L)?;
            let t1 = self.act_at(&ab, &mk, &lin(&[Var::L, Var::M]))?;
            let t2 = self.act(&ei, &self.act(&ej, &mk, &Var::M)?, &Var::L)?;
            let t3 = self.act(&ej, &self.act(&ei, &mk, &Var::L)?, &Var::M)?;
            Ok((&(&t1 + &t2) + &t3).extend_params([Var::L, Var::M]))
        };
        run().expect("basis vectors with fixed parameters")
    }

    pub fn check(&self) -> CheckReport<S> {
        let (n, m) = (self.algebra.rank(), self.module_rank());
        let idx: Vec<_> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
            .collect();
        let residuals: Vec<_> = idx
            .into_par_iter()
            .map(|(i, j, k)| (vec![i, j, k], self.rep_residual(i, j, k)))
            .collect();
        CheckReport::from_residuals("rep", &self.module_basis, residuals)
    }

    /// The representation on the conformal dual, with matrices
    /// `B_i(D, L) = A_i(-D - L, L)^T` on the dual basis.
    pub fn dual(&self) -> Result<Self> {
        let r = self.check();
        if !r.passed() {
            return Err(Error::Precondition(format!("not a representation\n{r}")));
        }
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> Self {
        let reflected = crate::conformal::refl::<S>(&[Var::L]);
        let action = self
            .action
            .iter()
            .map(|a| a.substitute(&Var::D, &reflected).transpose())
            .collect();
        let names = self
            .module_basis
            .iter()
            .map(|b| match b.strip_prefix("f_") {
                Some(orig) => orig.to_string(),
                None => format!("f_{b}"),
            })
            .collect();
        Self::new(self.algebra.clone(), names, action).unwrap()
    }
}

/// `ρ(e_i e_j) m_k + ρ(e_i) ρ(e_j) m_k + ρ(e_j) ρ(e_i) m_k = 0`.
pub fn check_finite_rep<S: Scalar>(a: &FiniteAlgebra<S>, rho: &[FiniteLinearMap<S>]) -> Result<CheckReport<S>> {
    let n = a.dim();
    if rho.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: rho.len(),
        });
    }
    let m = rho.first().map(FiniteLinearMap::dim).unwrap_or(0);
    if rho.iter().any(|r| r.dim() != m) {
        return Err(Error::Shape("action matrices of different sizes".into()));
    }
    let lin_comb = |v: &[S]| {
        v.iter()
            .zip(rho)
            .fold(FiniteLinearMap::zero(m), |acc, (c, r)| acc.add(&r.scale(c)))
    };
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = lin_comb(&a.mul(&a.e(i), &a.e(j)));
            let total = lhs
                .add(&rho[i].compose(&rho[j]))
                .add(&rho[j].compose(&rho[i]));
            for k in 0..m {
                let col: Vec<S> = (0..m).map(|q| total.get(q, k).clone()).collect();
                residuals.push((vec![i, j, k], constant_element(&col)));
            }
        }
    }
    let names = crate::conformal::default_basis("m", m);
    Ok(CheckReport::from_residuals("finite-rep", &names, residuals))
}

/// The representation of the current algebra with constant matrices `ρ(e_i)`.
pub fn current_rep<S: Scalar>(a: &FiniteAlgebra<S>, rho: &[FiniteLinearMap<S>]) -> Result<ConformalRep<S>> {
    let r = check_finite_rep(a, rho)?;
    if !r.passed() {
        return Err(Error::Precondition(format!("not a representation of the finite algebra\n{r}")));
    }
    let m = rho.first().map(FiniteLinearMap::dim).unwrap_or(0);
    ConformalRep::new(
        crate::constructions::current_algebra(a),
        crate::conformal::default_basis("m", m),
        rho.iter().map(FiniteLinearMap::to_poly_matrix).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, q, Rational};

    type P = Poly<Rational>;

    #[test]
    fn adjoint_and_zero() {
        let cur2 = fixtures::cur2();
        assert!(ConformalRep::adjoint(&cur2).check().passed());
        assert!(ConformalRep::zero(cur2.clone(), 3).check().passed());
        assert!(ConformalRep::adjoint(&fixtures::q3()).check().passed());
    }

    #[test]
    fn identity_action_fails() {
        let cur2 = fixtures::cur2();
        let r = ConformalRep::new(
            cur2.clone(),
            vec!["m1".into(), "m2".into()],
            vec![PolyMatrix::identity(2), PolyMatrix::zeros(2, 2)],
        )
        .unwrap();
        let rep = r.check();
        assert!(!rep.passed());
        let c = &rep.counterexamples()[0];
        assert_eq!(c.indices, vec![0, 0, 0]);
        assert_eq!(c.render_residual(), "2*m1");
    }

    #[test]
    fn current_rep_examples() {
        let b2 = fixtures::b2();
        let rho = vec![FiniteLinearMap::left_multiplication(&b2, 0), FiniteLinearMap::left_multiplication(&b2, 1)];
        let r = current_rep(&b2, &rho).unwrap();
        assert!(r.check().passed());
        let zero = vec![FiniteLinearMap::zero(2), FiniteLinearMap::zero(2)];
        assert!(current_rep(&b2, &zero).unwrap().is_zero());
        let bad = vec![
            FiniteLinearMap::new(vec![vec![q(1)]]).unwrap(),
            FiniteLinearMap::new(vec![vec![q(-2)]]).unwrap(),
        ];
        assert!(matches!(current_rep(&b2, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn dual_examples() {
        let adj = ConformalRep::adjoint(&fixtures::cur2());
        let dual = adj.dual().unwrap();
        let expected = PolyMatrix::from_rows(vec![vec![P::zero(), P::one()], vec![P::zero(), P::zero()]]).unwrap();
        assert_eq!(dual.action(0), &expected);
        assert!(dual.check().passed());
        let back = dual.dual().unwrap();
        assert_eq!(back.actions(), adj.actions());
        assert_eq!(back.module_basis(), adj.module_basis());
        assert!(ConformalRep::zero(fixtures::cur2(), 2).dual().unwrap().is_zero());
    }

    #[test]
    fn dual_of_nonconstant_action() {
        let adj = ConformalRep::adjoint(&fixtures::q3());
        let dual = adj.dual().unwrap();
        assert!(dual.check().passed());
        assert_eq!(dual.dual().unwrap().actions(), adj.actions());
    }
}
