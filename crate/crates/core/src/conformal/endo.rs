use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyMatrix, Var};
use crate::scalar::Scalar;

use super::algebra::{apply_at, lin};
use super::{BilinearTable, CheckReport, ConformalAlgebra, ParamElement};

/// A conformal linear map of a free rank-n module, `f_λ e_k = sum_r F[r][k] e_r`
/// with `F` a matrix over `{D, L}`. It is extended by `f_λ ∂ = (λ + ∂) f_λ`,
/// the same rule the λ-product uses for its right argument.
#[derive(Clone, PartialEq, Debug)]
pub struct ConformalEndo<S: Scalar> {
    matrix: PolyMatrix<S>,
    table: BilinearTable<S>,
}

impl<S: Scalar> ConformalEndo<S> {
    pub fn new(matrix: PolyMatrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "conformal endomorphism must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        let table = BilinearTable::from_fn(1, n, n, |_, k| {
            (0..n).map(|r| matrix.get(r, k).clone()).collect()
        })?;
        Ok(ConformalEndo { matrix, table })
    }

    pub fn zero(n: usize) -> Self {
        Self::new(PolyMatrix::zeros(n, n)).unwrap()
    }

    pub fn identity(n: usize) -> Self {
        Self::new(PolyMatrix::identity(n)).unwrap()
    }

    /// `a_λ -`, left multiplication by `e_i`.
    pub fn left_multiplication(a: &ConformalAlgebra<S>, i: usize) -> Self {
        let n = a.rank();
        Self::new(PolyMatrix::from_fn(n, n, |r, k| a.structure(i, k)[r].clone())).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &PolyMatrix<S> {
        &self.matrix
    }

    /// `f_t x` at the fresh parameter `t`.
    pub fn apply(&self, x: &ParamElement<S>, t: &Var) -> Result<ParamElement<S>> {
        self.table.apply(&ParamElement::basis(1, 0), x, t)
    }

    /// `f_w x`; a `D` in `w` is the ambient ∂ of the result.
    pub fn apply_at(&self, x: &ParamElement<S>, w: &Poly<S>) -> Result<ParamElement<S>> {
        apply_at(&self.table, &ParamElement::basis(1, 0), x, w)
    }

    /// The matrix `H(D, α, ν)` of `(f_α g)_ν`, computed from
    /// `(f_α g)_{α+β} = f_α g_β` directly on matrices:
    /// `H = F(D, α) · G(α + D, ν - α)`.
    pub fn compose(&self, g: &ConformalEndo<S>, alpha: &Var, nu: &Var) -> Result<PolyMatrix<S>> {
        if g.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        let a = Poly::var(alpha.clone());
        let f = self.matrix.substitute(&Var::L, &a);
        let g = g.matrix.map(|p| {
            p.substitute_all(&[
                (Var::D, &a + &Poly::var(Var::D)),
                (Var::L, &Poly::var(nu.clone()) - &a),
            ])
        });
        Ok(f.mul(&g))
    }
}

/// Applies a composite matrix `H(D, α, ν)` from [`ConformalEndo::compose`]
/// to `x` at `α ↦ alpha_at`, `ν ↦ nu_at`, both written with the ambient ∂
/// of the result.
pub fn apply_composite<S: Scalar>(
    h: &PolyMatrix<S>,
    alpha: &Var,
    nu: &Var,
    x: &ParamElement<S>,
    alpha_at: &Poly<S>,
    nu_at: &Poly<S>,
) -> Result<ParamElement<S>> {
    if h.cols() != x.rank() {
        return Err(Error::RankMismatch {
            expected: h.cols(),
            found: x.rank(),
        });
    }
    let shifted = nu_at + &Poly::var(Var::D);
    let subs = [(alpha.clone(), alpha_at.clone()), (nu.clone(), nu_at.clone())];
    let mut out = vec![Poly::zero(); h.rows()];
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.substitute(&Var::D, &shifted);
        for (r, o) in out.iter_mut().enumerate() {
            let e = h.get(r, k);
            if !e.is_zero() {
                *o += &(&c * &e.substitute_all(&subs));
            }
        }
    }
    let mut params = x.params().clone();
    for p in [alpha_at, nu_at] {
        params.extend(p.vars().into_iter().filter(|v| *v != Var::D));
    }
    ParamElement::with_params(out, params)
}

impl<S: Scalar> ConformalAlgebra<S> {
    /// `d_λ(a_μ b) + (d_λ a)_{λ+μ} b + a_μ(d_λ b)` at `(e_i, e_j)`.
    pub fn anti_derivation_residual(&self, d: &ConformalEndo<S>, i: usize, j: usize) -> Result<ParamElement<S>> {
        if d.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: d.rank(),
            });
        }
        let (a, b) = (self.e(i), self.e(j));
        let ab = self.product(&a, &b, &Var::M)?;
        let t1 = d.apply(&ab, &Var::L)?;
        let da = d.apply(&a, &Var::L)?;
        let t2 = self.product_at(&da, &b, &lin(&[Var::L, Var::M]))?;
        let db = d.apply(&b, &Var::L)?;
        let t3 = self.product(&a, &db, &Var::M)?;
        Ok((&(&t1 + &t2) + &t3).extend_params([Var::L, Var::M]))
    }

    pub fn check_anti_derivation(&self, d: &ConformalEndo<S>) -> Result<CheckReport<S>> {
        let n = self.rank();
        if d.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: d.rank(),
            });
        }
        let pairs: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let residuals: Vec<_> = pairs
            .into_par_iter()
            .map(|(i, j)| (vec![i, j], self.anti_derivation_residual(d, i, j).unwrap()))
            .collect();
        Ok(CheckReport::from_residuals("anti-derivation", self.basis_names(), residuals))
    }
}
