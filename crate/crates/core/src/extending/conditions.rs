use rayon::prelude::*;

use crate::conformal::{lin, refl, sum, CheckReport, ConformalAlgebra, ParamElement};
use crate::error::{Error, Result};
use crate::polyring::{Poly, Var};
use crate::scalar::Scalar;

use super::ExtendingDatum;

/// Attachment points shared by all conditions.
struct At<S: Scalar> {
    l: Poly<S>,
    m: Poly<S>,
    lm: Poly<S>,
    rl: Poly<S>,
    rm: Poly<S>,
    rlm: Poly<S>,
}

impl<S: Scalar> At<S> {
    fn new() -> Self {
        At {
            l: Poly::var(Var::L),
            m: Poly::var(Var::M),
            lm: lin(&[Var::L, Var::M]),
            rl: refl(&[Var::L]),
            rm: refl(&[Var::M]),
            rlm: refl(&[Var::L, Var::M]),
        }
    }
}

/// The verdict on a datum: whether `J` itself is Jacobi-Jordan (a standing
/// assumption, checked here rather than trusted) and the seven conditions
/// U1..U7 under which the unified product is Jacobi-Jordan.
#[derive(Clone, PartialEq, Debug)]
pub struct UnifiedVerdict<S: Scalar> {
    pub base: CheckReport<S>,
    pub conditions: [CheckReport<S>; 7],
}

impl<S: Scalar> UnifiedVerdict<S> {
    pub fn overall(&self) -> bool {
        self.base.passed() && self.conditions.iter().all(CheckReport::passed)
    }

    /// `k` is 1..=7.
    pub fn condition(&self, k: usize) -> &CheckReport<S> {
        &self.conditions[k - 1]
    }

    /// Names of the failing conditions, `base` first if `J` fails.
    pub fn failed(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.base.passed() {
            out.push("base".to_string());
        }
        for (k, c) in self.conditions.iter().enumerate() {
            if !c.passed() {
                out.push(format!("U{}", k + 1));
            }
        }
        out
    }

    /// Everything in one report, laws labelled `base:…` and `U1`..`U7`.
    pub fn report(&self) -> CheckReport<S> {
        self.conditions
            .iter()
            .fold(self.base.clone().relabel(|l| format!("base:{l}")), |acc, c| acc.merge(c.clone()))
    }
}

/// A verdict for a twisted or crossed product: the full `verdict` decides,
/// `listed` holds the specialization's own condition list for diagnostics.
#[derive(Clone, PartialEq, Debug)]
pub struct SpecializedVerdict<S: Scalar> {
    pub kind: &'static str,
    pub verdict: UnifiedVerdict<S>,
    pub listed: Vec<(String, CheckReport<S>)>,
}

impl<S: Scalar> SpecializedVerdict<S> {
    pub fn passed(&self) -> bool {
        self.verdict.overall()
    }

    pub fn listed_passed(&self) -> bool {
        self.listed.iter().all(|(_, r)| r.passed())
    }
}

impl<S: Scalar> ExtendingDatum<S> {
    fn j_basis(&self) -> Vec<String> {
        self.j().basis_names().to_vec()
    }

    fn k_names(&self) -> Vec<String> {
        self.k_basis().to_vec()
    }

    fn finish(&self, r: ParamElement<S>) -> ParamElement<S> {
        r.extend_params([Var::L, Var::M])
    }

    /// `(ω_λ(x_p, x_q) - ω_{-λ-∂}(x_q, x_p), x_p ∘_λ x_q - x_q ∘_{-λ-∂} x_p)`
    /// in `J ⊕ K`.
    pub fn u1_residual(&self, p: usize, q: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (x, y) = (self.x(p), self.x(q));
        let jpart = &self.om(&x, &y, &at.l) - &self.om(&y, &x, &at.rl);
        let kpart = &self.ci(&x, &y, &at.l) - &self.ci(&y, &x, &at.rl);
        jpart.concat(&kpart).extend_params([Var::L])
    }

    /// The J-component of the Jacobi sum at `(e_i, e_j, x_p)`.
    pub fn u2_residual(&self, i: usize, j: usize, p: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (a, b, x) = (self.a(i), self.a(j), self.x(p));
        let terms = [
            self.jp(&a, &self.tj(&x, &b, &at.rm), &at.l),
            self.tj(&self.tk(&x, &b, &at.rm), &a, &at.rl),
            self.tj(&x, &self.jp(&a, &b, &at.l), &at.rlm),
            self.jp(&b, &self.tj(&x, &a, &at.rl), &at.m),
            self.tj(&self.tk(&x, &a, &at.rl), &b, &at.rm),
        ];
        self.finish(sum(self.j_rank(), terms))
    }

    /// The K-component of the Jacobi sum at `(e_i, e_j, x_p)`.
    pub fn u3_residual(&self, i: usize, j: usize, p: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (a, b, x) = (self.a(i), self.a(j), self.x(p));
        let terms = [
            self.tk(&self.tk(&x, &b, &at.rm), &a, &at.rl),
            self.tk(&x, &self.jp(&a, &b, &at.l), &at.rlm),
            self.tk(&self.tk(&x, &a, &at.rl), &b, &at.rm),
        ];
        self.finish(sum(self.k_rank(), terms))
    }

    /// The J-component of the Jacobi sum at `(e_i, x_p, x_q)`.
    pub fn u4_residual(&self, i: usize, p: usize, q: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (a, x, y) = (self.a(i), self.x(p), self.x(q));
        let xa = (self.tj(&x, &a, &at.rl), self.tk(&x, &a, &at.rl));
        let ya = (self.tj(&y, &a, &at.rl), self.tk(&y, &a, &at.rl));
        let terms = [
            self.jp(&a, &self.om(&x, &y, &at.m), &at.l),
            self.tj(&self.ci(&x, &y, &at.m), &a, &at.rl),
            self.tj(&y, &xa.0, &at.rlm),
            self.om(&xa.1, &y, &at.lm),
            self.tj(&x, &ya.0, &at.m),
            self.om(&x, &ya.1, &at.m),
        ];
        self.finish(sum(self.j_rank(), terms))
    }

    /// The K-component of the Jacobi sum at `(e_i, x_p, x_q)`.
    pub fn u5_residual(&self, i: usize, p: usize, q: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (a, x, y) = (self.a(i), self.x(p), self.x(q));
        let xa = (self.tj(&x, &a, &at.rl), self.tk(&x, &a, &at.rl));
        let ya = (self.tj(&y, &a, &at.rl), self.tk(&y, &a, &at.rl));
        let terms = [
            self.tk(&self.ci(&x, &y, &at.m), &a, &at.rl),
            self.tk(&y, &xa.0, &at.rlm),
            self.ci(&xa.1, &y, &at.lm),
            self.tk(&x, &ya.0, &at.m),
            self.ci(&x, &ya.1, &at.m),
        ];
        self.finish(sum(self.k_rank(), terms))
    }

    /// The J-component of the Jacobi sum at `(x_p, x_q, x_r)`.
    pub fn u6_residual(&self, p: usize, q: usize, r: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (x, y, z) = (self.x(p), self.x(q), self.x(r));
        let terms = [
            self.tj(&x, &self.om(&y, &z, &at.m), &at.l),
            self.om(&x, &self.ci(&y, &z, &at.m), &at.l),
            self.tj(&z, &self.om(&x, &y, &at.l), &at.rlm),
            self.om(&self.ci(&x, &y, &at.l), &z, &at.lm),
            self.tj(&y, &self.om(&x, &z, &at.l), &at.m),
            self.om(&y, &self.ci(&x, &z, &at.l), &at.m),
        ];
        self.finish(sum(self.j_rank(), terms))
    }

    /// The K-component of the Jacobi sum at `(x_p, x_q, x_r)`.
    pub fn u7_residual(&self, p: usize, q: usize, r: usize) -> ParamElement<S> {
        let at = At::<S>::new();
        let (x, y, z) = (self.x(p), self.x(q), self.x(r));
        let terms = [
            self.tk(&x, &self.om(&y, &z, &at.m), &at.l),
            self.ci(&x, &self.ci(&y, &z, &at.m), &at.l),
            self.tk(&z, &self.om(&x, &y, &at.l), &at.rlm),
            self.ci(&self.ci(&x, &y, &at.l), &z, &at.lm),
            self.tk(&y, &self.om(&x, &z, &at.l), &at.m),
            self.ci(&y, &self.ci(&x, &z, &at.l), &at.m),
        ];
        self.finish(sum(self.k_rank(), terms))
    }

    fn grid(
        &self,
        law: &str,
        basis: &[String],
        dims: &[usize],
        f: impl Fn(&[usize]) -> ParamElement<S> + Sync,
    ) -> CheckReport<S> {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for &d in dims {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        let residuals: Vec<_> = tuples.into_par_iter().map(|t| {
            let r = f(&t);
            (t, r)
        }).collect();
        CheckReport::from_residuals(law, basis, residuals)
    }

    fn jk_basis(&self) -> Vec<String> {
        let mut b = self.j_basis();
        b.extend(self.k_names());
        b
    }

    /// Runs U1..U7 over all basis tuples. Indices in counterexamples are
    /// positions within `J` for algebra arguments and within `K` for module
    /// arguments, in argument order.
    pub fn check_extending_structure(&self) -> UnifiedVerdict<S> {
        let (n, m) = (self.j_rank(), self.k_rank());
        let (jb, kb) = (self.j_basis(), self.k_names());
        let conditions = [
            self.grid("U1", &self.jk_basis(), &[m, m], |t| self.u1_residual(t[0], t[1])),
            self.grid("U2", &jb, &[n, n, m], |t| self.u2_residual(t[0], t[1], t[2])),
            self.grid("U3", &kb, &[n, n, m], |t| self.u3_residual(t[0], t[1], t[2])),
            self.grid("U4", &jb, &[n, m, m], |t| self.u4_residual(t[0], t[1], t[2])),
            self.grid("U5", &kb, &[n, m, m], |t| self.u5_residual(t[0], t[1], t[2])),
            self.grid("U6", &jb, &[m, m, m], |t| self.u6_residual(t[0], t[1], t[2])),
            self.grid("U7", &kb, &[m, m, m], |t| self.u7_residual(t[0], t[1], t[2])),
        ];
        UnifiedVerdict {
            base: self.j().check_jacobi_jordan(),
            conditions,
        }
    }

    /// `(K, ∘)` as a conformal algebra of its own.
    pub fn circ_algebra(&self) -> ConformalAlgebra<S> {
        ConformalAlgebra::new(self.k_names(), self.circ().clone()).unwrap()
    }

    fn omega_symmetry(&self) -> CheckReport<S> {
        let at = At::<S>::new();
        let m = self.k_rank();
        self.grid("omega-symmetry", &self.j_basis(), &[m, m], |t| {
            let (x, y) = (self.x(t[0]), self.x(t[1]));
            (&self.om(&x, &y, &at.l) - &self.om(&y, &x, &at.rl)).extend_params([Var::L])
        })
    }

    fn circ_jacobi_jordan(&self) -> CheckReport<S> {
        self.circ_algebra()
            .check_jacobi_jordan()
            .relabel(|_| "circ-jacobi-jordan".to_string())
    }

    /// Twisted product: `⊳` and `⊲` must vanish. Listed conditions are
    /// `(K, ∘)` Jacobi-Jordan, the symmetry of ω and the ω-cocycle identity.
    pub fn check_twisted(&self) -> Result<SpecializedVerdict<S>> {
        if !(self.act_j().is_zero() && self.act_k().is_zero()) {
            return Err(Error::Precondition("twisted product needs ⊳ = ⊲ = 0".into()));
        }
        let m = self.k_rank();
        let at = At::<S>::new();
        let cocycle = self.grid("omega-cocycle", &self.j_basis(), &[m, m, m], |t| {
            let (x, y, z) = (self.x(t[0]), self.x(t[1]), self.x(t[2]));
            let terms = [
                self.om(&x, &self.ci(&y, &z, &at.m), &at.l),
                self.om(&self.ci(&x, &y, &at.l), &z, &at.lm),
                self.om(&y, &self.ci(&x, &z, &at.l), &at.m),
            ];
            self.finish(sum(self.j_rank(), terms))
        });
        Ok(SpecializedVerdict {
            kind: "twisted",
            verdict: self.check_extending_structure(),
            listed: vec![
                ("circ-jacobi-jordan".into(), self.circ_jacobi_jordan()),
                ("omega-symmetry".into(), self.omega_symmetry()),
                ("omega-cocycle".into(), cocycle),
            ],
        })
    }

    /// Crossed product: `⊲` must vanish. With `⊲ = 0` the three listed
    /// identities are U2, U4 and U6.
    pub fn check_crossed(&self) -> Result<SpecializedVerdict<S>> {
        if !self.act_k().is_zero() {
            return Err(Error::Precondition("crossed product needs ⊲ = 0".into()));
        }
        let verdict = self.check_extending_structure();
        let relabel = |k: usize, name: &str| verdict.condition(k).clone().relabel(|_| name.to_string());
        let listed = vec![
            ("circ-jacobi-jordan".into(), self.circ_jacobi_jordan()),
            ("omega-symmetry".into(), self.omega_symmetry()),
            ("crossed-1".into(), relabel(2, "crossed-1")),
            ("crossed-2".into(), relabel(4, "crossed-2")),
            ("crossed-3".into(), relabel(6, "crossed-3")),
        ];
        Ok(SpecializedVerdict {
            kind: "crossed",
            verdict,
            listed,
        })
    }
}
