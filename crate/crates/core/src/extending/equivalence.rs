use crate::conformal::{refl, sum, CheckReport, ParamElement};
use crate::error::{Error, Result};
use crate::operators::ModuleMap;
use crate::polyring::{Poly, PolyMatrix, Var};
use crate::scalar::Scalar;

use super::ExtendingDatum;

/// Module maps `r: K → J` and `s: K → K` defining `φ(a, x) = (a + r(x), s(x))`.
#[derive(Clone, PartialEq, Debug)]
pub struct EquivalencePair<S: Scalar> {
    pub r: ModuleMap<S>,
    pub s: ModuleMap<S>,
}

impl<S: Scalar> EquivalencePair<S> {
    pub fn identity(n: usize, m: usize) -> Self {
        EquivalencePair {
            r: ModuleMap::zero(n, m),
            s: ModuleMap::identity(m),
        }
    }

    /// `φ` as an `(n+m) × (n+m)` matrix on `J ⊕ K`.
    pub fn phi(&self) -> PolyMatrix<S> {
        let (n, m) = (self.r.target_rank(), self.s.target_rank());
        PolyMatrix::from_fn(n + m, n + m, |i, k| match (i < n, k < n) {
            (true, true) if i == k => Poly::one(),
            (true, false) => self.r.matrix().get(i, k - n).clone(),
            (false, false) => self.s.matrix().get(i - n, k - n).clone(),
            _ => Poly::zero(),
        })
    }

    fn validate(&self, n: usize, m: usize) -> Result<()> {
        let r = self.r.matrix();
        let s = self.s.matrix();
        if (r.rows(), r.cols()) != (n, m) || (s.rows(), s.cols()) != (m, m) {
            return Err(Error::Shape(format!(
                "pair has r {}x{} and s {}x{}, expected {n}x{m} and {m}x{m}",
                r.rows(),
                r.cols(),
                s.rows(),
                s.cols()
            )));
        }
        if !s.is_unimodular() {
            return Err(Error::NotBijective(format!("det s = {} is not a nonzero constant", s.det())));
        }
        Ok(())
    }
}

fn same_shape<S: Scalar>(u: &ExtendingDatum<S>, v: &ExtendingDatum<S>) -> Result<()> {
    if u.j().table() != v.j().table() {
        return Err(Error::Shape("the two data extend different algebras".into()));
    }
    if u.k_rank() != v.k_rank() {
        return Err(Error::RankMismatch {
            expected: u.k_rank(),
            found: v.k_rank(),
        });
    }
    Ok(())
}

struct Ctx<'a, S: Scalar> {
    u: &'a ExtendingDatum<S>,
    v: &'a ExtendingDatum<S>,
    pair: &'a EquivalencePair<S>,
    l: Poly<S>,
    rl: Poly<S>,
}

impl<S: Scalar> Ctx<'_, S> {
    fn r(&self, x: &ParamElement<S>) -> ParamElement<S> {
        self.pair.r.apply(x)
    }

    fn s(&self, x: &ParamElement<S>) -> ParamElement<S> {
        self.pair.s.apply(x)
    }

    fn rs1(&self, i: usize, p: usize) -> ParamElement<S> {
        let (u, v) = (self.u, self.v);
        let (a, x) = (u.a(i), u.x(p));
        let lhs = &u.tj(&x, &a, &self.rl) + &self.r(&u.tk(&x, &a, &self.rl));
        let rhs = &u.jp(&a, &self.r(&x), &self.l) + &v.tj(&self.s(&x), &a, &self.rl);
        (&lhs - &rhs).extend_params([Var::L])
    }

    fn rs2(&self, i: usize, p: usize) -> ParamElement<S> {
        let (u, v) = (self.u, self.v);
        let (a, x) = (u.a(i), u.x(p));
        let lhs = self.s(&u.tk(&x, &a, &self.rl));
        let rhs = v.tk(&self.s(&x), &a, &self.rl);
        (&lhs - &rhs).extend_params([Var::L])
    }

    fn rs3(&self, p: usize, q: usize) -> ParamElement<S> {
        let (u, v) = (self.u, self.v);
        let (x, y) = (u.x(p), u.x(q));
        let (rx, ry, sx, sy) = (self.r(&x), self.r(&y), self.s(&x), self.s(&y));
        let lhs = &u.om(&x, &y, &self.l) + &self.r(&u.ci(&x, &y, &self.l));
        let rhs = sum(
            u.j_rank(),
            [
                u.jp(&rx, &ry, &self.l),
                v.tj(&sx, &ry, &self.l),
                v.tj(&sy, &rx, &self.rl),
                v.om(&sx, &sy, &self.l),
            ],
        );
        (&lhs - &rhs).extend_params([Var::L])
    }

    fn rs4(&self, p: usize, q: usize) -> ParamElement<S> {
        let (u, v) = (self.u, self.v);
        let (x, y) = (u.x(p), u.x(q));
        let (rx, ry, sx, sy) = (self.r(&x), self.r(&y), self.s(&x), self.s(&y));
        let lhs = self.s(&u.ci(&x, &y, &self.l));
        let rhs = sum(
            u.k_rank(),
            [
                v.tk(&sx, &ry, &self.l),
                v.tk(&sy, &rx, &self.rl),
                v.ci(&sx, &sy, &self.l),
            ],
        );
        (&lhs - &rhs).extend_params([Var::L])
    }
}

/// Whether `pair` is an equivalence from `u` to `v`, i.e. whether
/// `φ(a, x) = (a + r(x), s(x))` is an algebra map between the two unified
/// products (laws `rs1`..`rs4`). With `cohomologous` set, `s` must also be
/// the identity (law `cohomologous`).
pub fn check_equivalence<S: Scalar>(
    u: &ExtendingDatum<S>,
    v: &ExtendingDatum<S>,
    pair: &EquivalencePair<S>,
    cohomologous: bool,
) -> Result<CheckReport<S>> {
    same_shape(u, v)?;
    let (n, m) = (u.j_rank(), u.k_rank());
    pair.validate(n, m)?;
    let ctx = Ctx {
        u,
        v,
        pair,
        l: Poly::var(Var::L),
        rl: refl(&[Var::L]),
    };
    let jb = u.j().basis_names().to_vec();
    let kb = u.k_basis().to_vec();
    let mixed: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |p| (i, p))).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
    let collect = |law: &str, basis: &[String], tuples: &[(usize, usize)], f: &dyn Fn(usize, usize) -> ParamElement<S>| {
        CheckReport::from_residuals(law, basis, tuples.iter().map(|&(a, b)| (vec![a, b], f(a, b))))
    };
    let mut report = collect("rs1", &jb, &mixed, &|i, p| ctx.rs1(i, p))
        .merge(collect("rs2", &kb, &mixed, &|i, p| ctx.rs2(i, p)))
        .merge(collect("rs3", &jb, &pairs, &|p, q| ctx.rs3(p, q)))
        .merge(collect("rs4", &kb, &pairs, &|p, q| ctx.rs4(p, q)));
    if cohomologous {
        let off = (0..m).map(|p| {
            let x = u.x(p);
            (vec![p], &ctx.s(&x) - &x)
        });
        report = report.merge(CheckReport::from_residuals("cohomologous", &kb, off));
    }
    Ok(report)
}

/// The datum `v` for which `pair` is an equivalence from `u`: the unified
/// product of `u` pushed forward along `φ`, read back with the same `J`.
pub fn transport<S: Scalar>(u: &ExtendingDatum<S>, pair: &EquivalencePair<S>) -> Result<ExtendingDatum<S>> {
    let (n, m) = (u.j_rank(), u.k_rank());
    pair.validate(n, m)?;
    let e = u.unified_product();
    let phi = pair.phi();
    let inv = phi.inverse().expect("φ is unimodular when s is");
    let column = |mat: &PolyMatrix<S>, k: usize| ParamElement::new((0..n + m).map(|r| mat.get(r, k).clone()).collect());
    let push = |x: &ParamElement<S>| -> ParamElement<S> {
        let coeffs = (0..n + m)
            .map(|r| {
                let mut acc = Poly::zero();
                for (k, c) in x.coeffs().iter().enumerate() {
                    if !c.is_zero() && !phi.get(r, k).is_zero() {
                        acc += &(c * phi.get(r, k));
                    }
                }
                acc
            })
            .collect();
        ParamElement::with_params(coeffs, x.params().clone()).unwrap()
    };
    let table = crate::conformal::BilinearTable::from_fn(n + m, n + m, n + m, |a, b| {
        let prod = e.product(&column(&inv, a), &column(&inv, b), &Var::L).unwrap();
        push(&prod).coeffs().to_vec()
    })?;
    let pushed = crate::conformal::ConformalAlgebra::new(e.basis_names().to_vec(), table)?;
    let mut v = ExtendingDatum::extract(&pushed, &(0..n).collect::<Vec<_>>())?;
    if v.k_basis() != u.k_basis() {
        v = ExtendingDatum::new(
            v.j().clone(),
            u.k_basis().to_vec(),
            v.act_j().clone(),
            v.act_k().clone(),
            v.omega().clone(),
            v.circ().clone(),
        )?;
    }
    Ok(v)
}
