//! O-operators, Rota-Baxter operators, conformal bilinear forms and
//! symplectic structures, with the left anti-symmetric products they induce.

use rayon::prelude::*;

use crate::conformal::{fresh_for, lin, refl, BilinearTable, CheckReport, ConformalAlgebra, ParamElement};
use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyMatrix, Var};
use crate::representations::ConformalRep;
use crate::scalar::Scalar;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

fn scalar_element<S: Scalar>(p: Poly<S>) -> ParamElement<S> {
    ParamElement::new(vec![p])
}

/// An 𝔽[∂]-module homomorphism between free modules, `T(e_k) = sum_r T[r][k] e_r`
/// with entries in `D` only.
#[derive(Clone, PartialEq, Debug)]
pub struct ModuleMap<S: Scalar> {
    matrix: PolyMatrix<S>,
}

impl<S: Scalar> ModuleMap<S> {
    /// `matrix` is target rank by source rank.
    pub fn new(matrix: PolyMatrix<S>) -> Result<Self> {
        for p in matrix.entries() {
            if let Some(v) = p.vars().into_iter().find(|v| *v != Var::D) {
                return Err(Error::ForeignVar(v.to_string()));
            }
        }
        Ok(ModuleMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        ModuleMap {
            matrix: PolyMatrix::identity(n),
        }
    }

    pub fn zero(target: usize, source: usize) -> Self {
        ModuleMap {
            matrix: PolyMatrix::zeros(target, source),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix<S> {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `T x`; `T` commutes with ∂, so coefficients just multiply.
    pub fn apply(&self, x: &ParamElement<S>) -> ParamElement<S> {
        assert_eq!(x.rank(), self.source_rank(), "module map applied to an element of the wrong rank");
        let coeffs = (0..self.target_rank())
            .map(|r| {
                let mut acc = Poly::zero();
                for (k, c) in x.coeffs().iter().enumerate() {
                    let t = self.matrix.get(r, k);
                    if !c.is_zero() && !t.is_zero() {
                        acc += &(c * t);
                    }
                }
                acc
            })
            .collect();
        ParamElement::with_params(coeffs, x.params().clone()).unwrap()
    }

    /// The inverse over 𝔽[∂], when the determinant is a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        if !self.matrix.is_square() {
            return Err(Error::NotBijective("map is not square".into()));
        }
        let det = self.matrix.det();
        self.matrix
            .inverse()
            .map(|matrix| ModuleMap { matrix })
            .ok_or_else(|| Error::NotBijective(format!("determinant {det} is not a nonzero constant")))
    }
}

fn require_shape(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(what.to_string()))
    }
}

/// `Tu_λ Tv - T(π(Tu)_λ v + π(Tv)_{-λ-∂} u)` at module basis vectors.
pub fn o_operator_residual<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>, u: usize, v: usize) -> ParamElement<S> {
    let a = rep.algebra();
    let (mu, mv) = (rep.m(u), rep.m(v));
    let (tu, tv) = (t.apply(&mu), t.apply(&mv));
    let lhs = a.product(&tu, &tv, &Var::L).unwrap();
    let inner = &rep.act(&tu, &mv, &Var::L).unwrap() + &rep.act_at(&tv, &mu, &refl(&[Var::L])).unwrap();
    (&lhs - &t.apply(&inner)).extend_params([Var::L])
}

pub fn check_o_operator<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>) -> Result<CheckReport<S>> {
    require_shape(
        t.source_rank() == rep.module_rank() && t.target_rank() == rep.algebra().rank(),
        "O-operator must map the module into the algebra",
    )?;
    let residuals: Vec<_> = pairs(rep.module_rank())
        .into_par_iter()
        .map(|(u, v)| (vec![u, v], o_operator_residual(t, rep, u, v)))
        .collect();
    Ok(CheckReport::from_residuals("o-operator", rep.algebra().basis_names(), residuals))
}

/// `R(a)_λ R(b) - R(R(a)_λ b + a_λ R(b)) - α R(a_λ b)`.
pub fn rota_baxter_residual<S: Scalar>(a: &ConformalAlgebra<S>, r: &ModuleMap<S>, alpha: &S, i: usize, j: usize) -> ParamElement<S> {
    let (x, y) = (a.e(i), a.e(j));
    let (rx, ry) = (r.apply(&x), r.apply(&y));
    let lhs = a.product(&rx, &ry, &Var::L).unwrap();
    let inner = &a.product(&rx, &y, &Var::L).unwrap() + &a.product(&x, &ry, &Var::L).unwrap();
    let weighted = r.apply(&a.product(&x, &y, &Var::L).unwrap()).scale(alpha);
    (&(&lhs - &r.apply(&inner)) - &weighted).extend_params([Var::L])
}

pub fn check_rota_baxter<S: Scalar>(a: &ConformalAlgebra<S>, r: &ModuleMap<S>, alpha: &S) -> Result<CheckReport<S>> {
    let n = a.rank();
    require_shape(
        r.source_rank() == n && r.target_rank() == n,
        "Rota-Baxter operator must be square of the algebra's rank",
    )?;
    let residuals: Vec<_> = pairs(n)
        .into_par_iter()
        .map(|(i, j)| (vec![i, j], rota_baxter_residual(a, r, alpha, i, j)))
        .collect();
    Ok(CheckReport::from_residuals("rota-baxter", a.basis_names(), residuals))
}

/// `u ∗_λ v = π(Tu)_λ v` on the module of `rep`.
pub fn induced_las_from_o_operator<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>) -> Result<ConformalAlgebra<S>> {
    let r = check_o_operator(t, rep)?;
    if !r.passed() {
        return Err(Error::Precondition(format!("not an O-operator\n{r}")));
    }
    Ok(induced_unchecked(t, rep))
}

fn induced_unchecked<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>) -> ConformalAlgebra<S> {
    let m = rep.module_rank();
    let table = BilinearTable::from_fn(m, m, m, |i, j| {
        rep.act(&t.apply(&rep.m(i)), &rep.m(j), &Var::L).unwrap().coeffs().to_vec()
    })
    .unwrap();
    ConformalAlgebra::new(rep.module_basis().to_vec(), table).unwrap()
}

/// `T(u ∘_λ v) - Tu_λ Tv`, where `∘` is the admissible product of the
/// induced algebra. Expanding `∘` turns this into the O-operator identity,
/// so an O-operator is a homomorphism from `(M, ∘)` to the algebra.
pub fn check_t_homomorphism<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>, induced: &ConformalAlgebra<S>) -> Result<CheckReport<S>> {
    require_shape(
        induced.rank() == rep.module_rank() && t.source_rank() == rep.module_rank(),
        "induced algebra does not live on the module",
    )?;
    let adm = induced.admissible_algebra();
    let a = rep.algebra();
    let residuals: Vec<_> = pairs(rep.module_rank())
        .into_par_iter()
        .map(|(u, v)| {
            let lhs = t.apply(&adm.product(&adm.e(u), &adm.e(v), &Var::L).unwrap());
            let rhs = a.product(&t.apply(&rep.m(u)), &t.apply(&rep.m(v)), &Var::L).unwrap();
            (vec![u, v], (&lhs - &rhs).extend_params([Var::L]))
        })
        .collect();
    Ok(CheckReport::from_residuals("t-homomorphism", a.basis_names(), residuals))
}

/// `a ∗_λ b = T(π(a)_λ T⁻¹(b))` on the algebra, for an invertible O-operator.
pub fn compatible_las_from_bijective<S: Scalar>(t: &ModuleMap<S>, rep: &ConformalRep<S>) -> Result<ConformalAlgebra<S>> {
    let r = check_o_operator(t, rep)?;
    if !r.passed() {
        return Err(Error::Precondition(format!("not an O-operator\n{r}")));
    }
    let inv = t.inverse()?;
    let a = rep.algebra();
    let n = a.rank();
    let table = BilinearTable::from_fn(n, n, n, |i, j| {
        let b = inv.apply(&a.e(j));
        t.apply(&rep.act(&a.e(i), &b, &Var::L).unwrap()).coeffs().to_vec()
    })?;
    let out = ConformalAlgebra::new(a.basis_names().to_vec(), table)?;
    if out.admissible_algebra().table() != a.table() {
        return Err(Error::Precondition("induced product is not compatible with the algebra".into()));
    }
    Ok(out)
}

/// A conformal bilinear form on a free module, `Φ_ij(λ) = φ_λ(e_i, e_j)`,
/// extended by `φ_λ(p(∂)u, q(∂)v) = p(-λ) q(λ) φ_λ(u, v)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ConformalBilinearForm<S: Scalar> {
    phi: PolyMatrix<S>,
}

impl<S: Scalar> ConformalBilinearForm<S> {
    pub fn new(phi: PolyMatrix<S>) -> Result<Self> {
        require_shape(phi.is_square(), "form matrix must be square")?;
        for p in phi.entries() {
            if let Some(v) = p.vars().into_iter().find(|v| *v != Var::L) {
                return Err(Error::ForeignVar(v.to_string()));
            }
        }
        Ok(ConformalBilinearForm { phi })
    }

    pub fn constant(phi: &[Vec<S>]) -> Result<Self> {
        let n = phi.len();
        require_shape(phi.iter().all(|r| r.len() == n), "form matrix must be square")?;
        Self::new(PolyMatrix::from_fn(n, n, |i, j| Poly::constant(phi[i][j].clone())))
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn matrix(&self) -> &PolyMatrix<S> {
        &self.phi
    }

    /// `φ_t(u, v)` at the fresh parameter `t`.
    pub fn pair(&self, u: &ParamElement<S>, v: &ParamElement<S>, t: &Var) -> Result<Poly<S>> {
        let n = self.rank();
        if u.rank() != n || v.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: if u.rank() != n { u.rank() } else { v.rank() },
            });
        }
        if u.params().contains(t) || v.params().contains(t) || *t == Var::D {
            return Err(Error::ParamCollision(t.to_string()));
        }
        let tp = Poly::var(t.clone());
        let minus = -&tp;
        let mut acc = Poly::zero();
        for (i, ui) in u.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ui = ui.substitute(&Var::D, &minus);
            for (j, vj) in v.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let f = self.phi.get(i, j);
                if f.is_zero() {
                    continue;
                }
                acc += &(&(&ui * &vj.substitute(&Var::D, &tp)) * &f.substitute(&Var::L, &tp));
            }
        }
        Ok(acc)
    }

    /// `φ_w(u, v)`.
    pub fn pair_at(&self, u: &ParamElement<S>, v: &ParamElement<S>, w: &Poly<S>) -> Result<Poly<S>> {
        let t = fresh_for(&[u, v]);
        Ok(self.pair(u, v, &t)?.substitute(&t, w))
    }

    /// Skew-symmetry `Φ(λ)^T = -Φ(-λ)` entrywise and nondegeneracy, read as
    /// `det Φ` being a nonzero constant.
    pub fn check_skew_nondegenerate(&self) -> CheckReport<S> {
        self.check_skew().merge(self.check_nondegenerate())
    }

    pub fn check_skew(&self) -> CheckReport<S> {
        let minus_l = -&Poly::var(Var::L);
        let residuals = pairs(self.rank()).into_iter().map(|(i, j)| {
            let r = self.phi.get(i, j) + &self.phi.get(j, i).substitute(&Var::L, &minus_l);
            (vec![i, j], scalar_element(r))
        });
        CheckReport::from_residuals("skew", &[], residuals)
    }

    pub fn check_nondegenerate(&self) -> CheckReport<S> {
        let det = self.phi.det();
        match det.as_constant() {
            Some(c) if !c.is_zero() => CheckReport::pass(),
            _ => CheckReport::failure("nondegenerate", &[], vec![], scalar_element(det)),
        }
    }
}

/// `φ_λ(a, b_μ c) + φ_μ(b, a_λ c) + φ_{λ+μ}(a_λ b, c)` at basis vectors.
pub fn symplectic_residual<S: Scalar>(a: &ConformalAlgebra<S>, f: &ConformalBilinearForm<S>, i: usize, j: usize, k: usize) -> Poly<S> {
    let (x, y, z) = (a.e(i), a.e(j), a.e(k));
    let t1 = f.pair(&x, &a.product(&y, &z, &Var::M).unwrap(), &Var::L).unwrap();
    let t2 = f.pair(&y, &a.product(&x, &z, &Var::L).unwrap(), &Var::M).unwrap();
    let t3 = f
        .pair_at(&a.product(&x, &y, &Var::L).unwrap(), &z, &lin(&[Var::L, Var::M]))
        .unwrap();
    &(&t1 + &t2) + &t3
}

pub fn check_symplectic<S: Scalar>(a: &ConformalAlgebra<S>, f: &ConformalBilinearForm<S>) -> Result<CheckReport<S>> {
    require_shape(f.rank() == a.rank(), "form rank differs from algebra rank")?;
    let pre = f.check_skew_nondegenerate();
    if !pre.passed() {
        return Err(Error::Precondition(format!("form is not skew and nondegenerate\n{pre}")));
    }
    let n = a.rank();
    let idx: Vec<_> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let residuals: Vec<_> = idx
        .into_par_iter()
        .map(|(i, j, k)| {
            let r = scalar_element(symplectic_residual(a, f, i, j, k)).extend_params([Var::L, Var::M]);
            (vec![i, j, k], r)
        })
        .collect();
    Ok(CheckReport::from_residuals("symplectic", &[], residuals))
}

fn finite_det<S: Scalar>(phi: &[Vec<S>]) -> S {
    let n = phi.len();
    PolyMatrix::from_fn(n, n, |i, j| Poly::constant(phi[i][j].clone()))
        .det()
        .constant_term()
}

/// `(Cur A, Φ = phi)` for a finite symplectic Jacobi-Jordan algebra.
pub fn current_symplectic<S: Scalar>(
    a: &crate::finite::FiniteAlgebra<S>,
    phi: &[Vec<S>],
) -> Result<(ConformalAlgebra<S>, ConformalBilinearForm<S>)> {
    let n = a.dim();
    if phi.len() != n || phi.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("form must be {n}x{n}")));
    }
    for (i, j) in pairs(n) {
        if phi[i][j] != -phi[j][i].clone() {
            return Err(Error::Precondition(format!("form is not skew at ({}, {})", i + 1, j + 1)));
        }
    }
    if finite_det(phi).is_zero() {
        return Err(Error::Precondition("form is degenerate".into()));
    }
    let bil = |u: &[S], v: &[S]| {
        let mut acc = S::zero();
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                acc = acc + x.clone() * y.clone() * phi[i][j].clone();
            }
        }
        acc
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (a.e(i), a.e(j), a.e(k));
                let r = bil(&x, &a.mul(&y, &z)) + bil(&y, &a.mul(&x, &z)) + bil(&a.mul(&x, &y), &z);
                if !r.is_zero() {
                    return Err(Error::Precondition(format!(
                        "invariance fails at ({}, {}, {}): {r}",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok((crate::constructions::current_algebra(a), ConformalBilinearForm::constant(phi)?))
}

/// Solves `φ_μ(a ∘_λ b, c) = φ_{μ-λ}(b, a_λ c)` for `a ∘_λ b`.
///
/// With `X(∂, λ)` the coordinates of `e_a ∘_λ e_b`, the identity on `c = e_k`
/// reads `sum_i X_i(-μ, λ) Φ_ik(μ) = sum_r C_{ak,r}(μ - λ, λ) Φ_br(μ - λ)`.
/// Multiplying by the polynomial inverse of `Φ(μ)` and putting `μ = -∂`
/// gives `X`.
pub fn induced_las_from_symplectic<S: Scalar>(a: &ConformalAlgebra<S>, f: &ConformalBilinearForm<S>) -> Result<ConformalAlgebra<S>> {
    let r = check_symplectic(a, f)?;
    if !r.passed() {
        return Err(Error::Precondition(format!("form is not symplectic\n{r}")));
    }
    let n = a.rank();
    let m = Poly::var(Var::M);
    let shifted = &m - &Poly::var(Var::L);
    let inv = f
        .phi
        .substitute(&Var::L, &m)
        .inverse()
        .expect("nondegenerate forms have a polynomial inverse");
    let minus_d = -&Poly::var(Var::D);
    let table = BilinearTable::from_fn(n, n, n, |ia, ib| {
        let rhs: Vec<Poly<S>> = (0..n)
            .map(|k| {
                let mut acc = Poly::zero();
                for rr in 0..n {
                    let c = &a.structure(ia, k)[rr];
                    let p = f.phi.get(ib, rr);
                    if c.is_zero() || p.is_zero() {
                        continue;
                    }
                    let c = c.substitute(&Var::D, &shifted);
                    acc += &(&c * &p.substitute(&Var::L, &shifted));
                }
                acc
            })
            .collect();
        (0..n)
            .map(|i| {
                let mut x = Poly::zero();
                for (k, rk) in rhs.iter().enumerate() {
                    if !rk.is_zero() {
                        x += &(rk * inv.get(k, i));
                    }
                }
                x.substitute(&Var::M, &minus_d)
            })
            .collect()
    })?;
    let out = ConformalAlgebra::new(a.basis_names().to_vec(), table)?;
    let las = out.check_left_anti_symmetric();
    if !las.passed() || out.admissible_algebra().table() != a.table() {
        return Err(Error::Precondition(
            "induced product is not a compatible left anti-symmetric structure".into(),
        ));
    }
    Ok(out)
}
