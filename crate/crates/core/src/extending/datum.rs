use crate::conformal::{apply_at, refl, BilinearTable, ConformalAlgebra, ParamElement};
use crate::constructions::disjoint_names;
use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyMatrix, Var};
use crate::representations::ConformalRep;
use crate::scalar::Scalar;

/// Four conformal bilinear maps between a conformal algebra `J` of rank n
/// and a free module `K` of rank m:
///
/// - `x ⊳_λ a ∈ J` (`act_j`, an m × n table into J),
/// - `x ⊲_λ a ∈ K` (`act_k`, m × n into K),
/// - `ω_λ(x, y) ∈ J` (`omega`, m × m into J),
/// - `x ∘_λ y ∈ K` (`circ`, m × m into K).
#[derive(Clone, PartialEq, Debug)]
pub struct ExtendingDatum<S: Scalar> {
    j: ConformalAlgebra<S>,
    k_basis: Vec<String>,
    act_j: BilinearTable<S>,
    act_k: BilinearTable<S>,
    omega: BilinearTable<S>,
    circ: BilinearTable<S>,
}

fn expect_shape<S: Scalar>(t: &BilinearTable<S>, name: &str, shape: (usize, usize, usize)) -> Result<()> {
    let got = (t.left_rank(), t.right_rank(), t.out_rank());
    if got != shape {
        return Err(Error::Shape(format!(
            "{name} table is {}x{}->{}, expected {}x{}->{}",
            got.0, got.1, got.2, shape.0, shape.1, shape.2
        )));
    }
    Ok(())
}

impl<S: Scalar> ExtendingDatum<S> {
    pub fn new(
        j: ConformalAlgebra<S>,
        k_basis: Vec<String>,
        act_j: BilinearTable<S>,
        act_k: BilinearTable<S>,
        omega: BilinearTable<S>,
        circ: BilinearTable<S>,
    ) -> Result<Self> {
        let (n, m) = (j.rank(), k_basis.len());
        crate::conformal::check_basis_names(&k_basis, m)?;
        expect_shape(&act_j, "actJ", (m, n, n))?;
        expect_shape(&act_k, "actK", (m, n, m))?;
        expect_shape(&omega, "omega", (m, m, n))?;
        expect_shape(&circ, "circ", (m, m, m))?;
        Ok(ExtendingDatum {
            j,
            k_basis,
            act_j,
            act_k,
            omega,
            circ,
        })
    }

    /// The datum with all four maps zero, whose unified product is `J ⊕ K`.
    pub fn zero(j: ConformalAlgebra<S>, k_basis: Vec<String>) -> Self {
        let (n, m) = (j.rank(), k_basis.len());
        Self::new(
            j,
            k_basis,
            BilinearTable::zero(m, n, n),
            BilinearTable::zero(m, n, m),
            BilinearTable::zero(m, m, n),
            BilinearTable::zero(m, m, m),
        )
        .unwrap()
    }

    pub fn j(&self) -> &ConformalAlgebra<S> {
        &self.j
    }

    pub fn j_rank(&self) -> usize {
        self.j.rank()
    }

    pub fn k_rank(&self) -> usize {
        self.k_basis.len()
    }

    pub fn k_basis(&self) -> &[String] {
        &self.k_basis
    }

    pub fn act_j(&self) -> &BilinearTable<S> {
        &self.act_j
    }

    pub fn act_k(&self) -> &BilinearTable<S> {
        &self.act_k
    }

    pub fn omega(&self) -> &BilinearTable<S> {
        &self.omega
    }

    pub fn circ(&self) -> &BilinearTable<S> {
        &self.circ
    }

    /// `x_p ⊳_λ e_a = v`.
    pub fn set_act_j(&mut self, p: usize, a: usize, v: Vec<Poly<S>>) -> Result<()> {
        self.act_j.set(p, a, v)
    }

    /// `x_p ⊲_λ e_a = v`.
    pub fn set_act_k(&mut self, p: usize, a: usize, v: Vec<Poly<S>>) -> Result<()> {
        self.act_k.set(p, a, v)
    }

    /// `ω_λ(x_p, x_q) = v`.
    pub fn set_omega(&mut self, p: usize, q: usize, v: Vec<Poly<S>>) -> Result<()> {
        self.omega.set(p, q, v)
    }

    /// `x_p ∘_λ x_q = v`.
    pub fn set_circ(&mut self, p: usize, q: usize, v: Vec<Poly<S>>) -> Result<()> {
        self.circ.set(p, q, v)
    }

    pub fn x(&self, p: usize) -> ParamElement<S> {
        ParamElement::basis(self.k_rank(), p)
    }

    pub fn a(&self, i: usize) -> ParamElement<S> {
        self.j.e(i)
    }

    pub(crate) fn tj(&self, x: &ParamElement<S>, a: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        apply_at(&self.act_j, x, a, w).unwrap()
    }

    pub(crate) fn tk(&self, x: &ParamElement<S>, a: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        apply_at(&self.act_k, x, a, w).unwrap()
    }

    pub(crate) fn om(&self, x: &ParamElement<S>, y: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        apply_at(&self.omega, x, y, w).unwrap()
    }

    pub(crate) fn ci(&self, x: &ParamElement<S>, y: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        apply_at(&self.circ, x, y, w).unwrap()
    }

    pub(crate) fn jp(&self, a: &ParamElement<S>, b: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        self.j.product_at(a, b, w).unwrap()
    }

    /// The product on `J ⊕ K`:
    /// `(a, x)_λ (b, y) = (a_λ b + x ⊳_λ b + y ⊳_{-λ-∂} a + ω_λ(x, y),
    /// x ⊲_λ b + y ⊲_{-λ-∂} a + x ∘_λ y)`. J comes first in the basis.
    pub fn unified_product(&self) -> ConformalAlgebra<S> {
        let (n, m) = (self.j_rank(), self.k_rank());
        let reflected = refl::<S>(&[Var::L]);
        let table = BilinearTable::from_fn(n + m, n + m, n + m, |u, v| {
            let mut out = Vec::with_capacity(n + m);
            match (u < n, v < n) {
                (true, true) => {
                    out.extend_from_slice(self.j.structure(u, v));
                    out.extend(std::iter::repeat_n(Poly::zero(), m));
                }
                (false, true) => {
                    out.extend_from_slice(self.act_j.get(u - n, v));
                    out.extend_from_slice(self.act_k.get(u - n, v));
                }
                (true, false) => {
                    let refl_at = |p: &Poly<S>| p.substitute(&Var::L, &reflected);
                    out.extend(self.act_j.get(v - n, u).iter().map(refl_at));
                    out.extend(self.act_k.get(v - n, u).iter().map(refl_at));
                }
                (false, false) => {
                    out.extend_from_slice(self.omega.get(u - n, v - n));
                    out.extend_from_slice(self.circ.get(u - n, v - n));
                }
            }
            out
        })
        .unwrap();
        let mut names = self.j.basis_names().to_vec();
        names.extend(disjoint_names(self.j.basis_names(), &self.k_basis));
        ConformalAlgebra::new(names, table).unwrap()
    }

    /// Reads the datum off an algebra on `J ⊕ K`, with `j_indices` (zero
    /// based) spanning the subalgebra `J` and the remaining basis vectors
    /// spanning `K`, both in index order.
    ///
    /// Products `a_λ x` must be the reflections of `x_λ a`, as they are in
    /// any algebra where commutativity holds on mixed pairs; otherwise the
    /// datum could not reproduce them.
    pub fn extract(e: &ConformalAlgebra<S>, j_indices: &[usize]) -> Result<Self> {
        let total = e.rank();
        let mut js: Vec<usize> = j_indices.to_vec();
        js.sort_unstable();
        js.dedup();
        if js.is_empty() || js.iter().any(|&i| i >= total) {
            return Err(Error::Shape("J must be a nonempty set of basis indices".into()));
        }
        let ks: Vec<usize> = (0..total).filter(|i| !js.contains(i)).collect();
        let n = js.len();
        let split = |v: &[Poly<S>]| -> (Vec<Poly<S>>, Vec<Poly<S>>) {
            (
                js.iter().map(|&i| v[i].clone()).collect(),
                ks.iter().map(|&i| v[i].clone()).collect(),
            )
        };

        let mut jt = BilinearTable::zero(n, n, n);
        for (a, &ia) in js.iter().enumerate() {
            for (b, &ib) in js.iter().enumerate() {
                let (jpart, kpart) = split(e.structure(ia, ib));
                if kpart.iter().any(|p| !p.is_zero()) {
                    return Err(Error::NotSubalgebra(ia, ib));
                }
                jt.set(a, b, jpart)?;
            }
        }
        let jnames = js.iter().map(|&i| e.basis_names()[i].clone()).collect();
        let knames: Vec<String> = ks.iter().map(|&i| e.basis_names()[i].clone()).collect();
        let j = ConformalAlgebra::new(jnames, jt)?;
        let mut d = Self::zero(j, knames);
        let reflected = refl::<S>(&[Var::L]);
        for (p, &ip) in ks.iter().enumerate() {
            for (a, &ia) in js.iter().enumerate() {
                let (tj, tk) = split(e.structure(ip, ia));
                let (rj, rk) = split(e.structure(ia, ip));
                let mirrored = tj.iter().chain(&tk).map(|q| q.substitute(&Var::L, &reflected));
                if !mirrored.eq(rj.iter().chain(&rk).cloned()) {
                    return Err(Error::Precondition(format!(
                        "{} λ {} is not the reflection of {} λ {}",
                        e.basis_names()[ia],
                        e.basis_names()[ip],
                        e.basis_names()[ip],
                        e.basis_names()[ia]
                    )));
                }
                d.act_j.set(p, a, tj)?;
                d.act_k.set(p, a, tk)?;
            }
            for (q, &iq) in ks.iter().enumerate() {
                let (om, ci) = split(e.structure(ip, iq));
                d.omega.set(p, q, om)?;
                d.circ.set(p, q, ci)?;
            }
        }
        Ok(d)
    }

    /// A datum whose only map is `⊲`, read as the representation
    /// `π(a)_λ x = x ⊲_{-λ-∂} a` of `J` on `K`. Its unified product is
    /// the semidirect product of that representation.
    pub fn as_rep(&self) -> Result<ConformalRep<S>> {
        if !(self.act_j.is_zero() && self.omega.is_zero() && self.circ.is_zero()) {
            return Err(Error::Precondition("only ⊲ may be nonzero".into()));
        }
        let (n, m) = (self.j_rank(), self.k_rank());
        let reflected = refl::<S>(&[Var::L]);
        let action = (0..n)
            .map(|a| PolyMatrix::from_fn(m, m, |q, p| self.act_k.get(p, a)[q].substitute(&Var::L, &reflected)))
            .collect();
        ConformalRep::new(self.j.clone(), self.k_basis.clone(), action)
    }

    /// The inverse of [`ExtendingDatum::as_rep`].
    pub fn from_rep(rep: &ConformalRep<S>) -> Self {
        let (n, m) = (rep.algebra().rank(), rep.module_rank());
        let reflected = refl::<S>(&[Var::L]);
        let mut d = Self::zero(rep.algebra().clone(), rep.module_basis().to_vec());
        for p in 0..m {
            for a in 0..n {
                let v = (0..m)
                    .map(|q| rep.action(a).get(q, p).substitute(&Var::L, &reflected))
                    .collect();
                d.act_k.set(p, a, v).unwrap();
            }
        }
        d
    }
}
