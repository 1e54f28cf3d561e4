use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{LinearForm, Poly, Var};
use crate::scalar::Scalar;

use super::{BilinearTable, CheckReport, ParamElement};

/// Picks an internal parameter not used by any of `xs`.
pub(crate) fn fresh_for<S: Scalar>(xs: &[&ParamElement<S>]) -> Var {
    (0..)
        .map(Var::fresh)
        .find(|v| xs.iter().all(|x| !x.params().contains(v)))
        .unwrap()
}

/// `x_w y` for a table and an arbitrary attachment polynomial `w`.
pub(crate) fn apply_at<S: Scalar>(
    table: &BilinearTable<S>,
    x: &ParamElement<S>,
    y: &ParamElement<S>,
    w: &Poly<S>,
) -> Result<ParamElement<S>> {
    let t = fresh_for(&[x, y]);
    table.apply(x, y, &t)?.attach(&t, w)
}

pub(crate) fn lin<S: Scalar>(vars: &[Var]) -> Poly<S> {
    LinearForm::<S>::sum(vars).to_poly()
}

/// `-v1 - ... - D`.
pub(crate) fn refl<S: Scalar>(vars: &[Var]) -> Poly<S> {
    LinearForm::<S>::reflected(vars).to_poly()
}

pub(crate) fn default_basis(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn check_basis_names(names: &[String], n: usize) -> Result<()> {
    if names.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: names.len(),
        });
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::Shape(format!("duplicate basis name {a}")));
        }
    }
    Ok(())
}

/// A conformal algebra that is free of finite rank over the ∂-polynomial
/// ring, given by the λ-products of its basis vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct ConformalAlgebra<S: Scalar> {
    basis: Vec<String>,
    table: BilinearTable<S>,
}

impl<S: Scalar> ConformalAlgebra<S> {
    pub fn new(basis: Vec<String>, table: BilinearTable<S>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Shape("rank must be positive".into()));
        }
        check_basis_names(&basis, n)?;
        if table.left_rank() != n || table.right_rank() != n || table.out_rank() != n {
            return Err(Error::Shape(format!(
                "structure table is {}x{}->{} for rank {n}",
                table.left_rank(),
                table.right_rank(),
                table.out_rank()
            )));
        }
        Ok(ConformalAlgebra { basis, table })
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(default_basis("e", rank), BilinearTable::zero(rank, rank, rank))
            .expect("zero algebra of positive rank")
    }

    /// Builds from `(i, j, coordinates of e_i λ e_j)` triples; unlisted
    /// products are zero.
    pub fn from_products(
        basis: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, Vec<Poly<S>>)>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut table = BilinearTable::zero(n, n, n);
        for (i, j, v) in products {
            table.set(i, j, v)?;
        }
        Self::new(basis, table)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        check_basis_names(&names, self.rank())?;
        self.basis = names;
        Ok(self)
    }

    pub fn table(&self) -> &BilinearTable<S> {
        &self.table
    }

    /// Coordinates of `e_i λ e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[Poly<S>] {
        self.table.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    pub fn e(&self, i: usize) -> ParamElement<S> {
        ParamElement::basis(self.rank(), i)
    }

    /// `x_t y` at the fresh parameter `t`.
    pub fn product(&self, x: &ParamElement<S>, y: &ParamElement<S>, t: &Var) -> Result<ParamElement<S>> {
        self.table.apply(x, y, t)
    }

    /// `x_w y` for an attachment polynomial such as `L + M` or `-L - D`.
    pub fn product_at(&self, x: &ParamElement<S>, y: &ParamElement<S>, w: &Poly<S>) -> Result<ParamElement<S>> {
        apply_at(&self.table, x, y, w)
    }

    fn basis_product(&self, x: &ParamElement<S>, y: &ParamElement<S>, t: &Var) -> ParamElement<S> {
        self.product(x, y, t)
            .expect("arguments built internally with matching rank and fresh parameters")
    }

    fn basis_product_at(&self, x: &ParamElement<S>, y: &ParamElement<S>, w: &Poly<S>) -> ParamElement<S> {
        self.product_at(x, y, w)
            .expect("arguments built internally with matching rank and fresh parameters")
    }

    // Individual residuals. Checks are built from these, so any reported
    // counterexample can be regenerated by calling the same function.

    /// `e_i λ e_j - e_j_{-λ-∂} e_i`, over `{L}`.
    pub fn commutativity_residual(&self, i: usize, j: usize) -> ParamElement<S> {
        let lhs = self.basis_product(&self.e(i), &self.e(j), &Var::L);
        let rhs = self.basis_product_at(&self.e(j), &self.e(i), &refl(&[Var::L]));
        (&lhs - &rhs).extend_params([Var::L])
    }

    /// `a_λ(b_μ c)`.
    pub fn left_nested(&self, a: &ParamElement<S>, b: &ParamElement<S>, c: &ParamElement<S>) -> ParamElement<S> {
        let inner = self.basis_product(b, c, &Var::M);
        self.basis_product(a, &inner, &Var::L)
    }

    /// `(a_λ b)_{λ+μ} c`.
    pub fn right_nested(&self, a: &ParamElement<S>, b: &ParamElement<S>, c: &ParamElement<S>) -> ParamElement<S> {
        let ab = self.basis_product(a, b, &Var::L);
        self.basis_product_at(&ab, c, &lin(&[Var::L, Var::M]))
    }

    /// `b_μ(a_λ c)`.
    pub fn swapped_nested(&self, a: &ParamElement<S>, b: &ParamElement<S>, c: &ParamElement<S>) -> ParamElement<S> {
        let ac = self.basis_product(a, c, &Var::L);
        self.basis_product(b, &ac, &Var::M)
    }

    /// `(b_μ a)_{λ+μ} c`.
    fn swapped_right_nested(&self, a: &ParamElement<S>, b: &ParamElement<S>, c: &ParamElement<S>) -> ParamElement<S> {
        let ba = self.basis_product(b, a, &Var::M);
        self.basis_product_at(&ba, c, &lin(&[Var::L, Var::M]))
    }

    /// `e_i λ(e_j μ e_k) + (e_i λ e_j)_{λ+μ} e_k + e_j μ(e_i λ e_k)`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> ParamElement<S> {
        let (a, b, c) = (self.e(i), self.e(j), self.e(k));
        let terms = [
            self.left_nested(&a, &b, &c),
            self.right_nested(&a, &b, &c),
            self.swapped_nested(&a, &b, &c),
        ];
        super::element::sum(self.rank(), terms).extend_params([Var::L, Var::M])
    }

    /// `(e_i λ e_j)_{λ+μ} e_k + e_i λ(e_j μ e_k)`.
    pub fn anti_associativity_residual(&self, i: usize, j: usize, k: usize) -> ParamElement<S> {
        let (a, b, c) = (self.e(i), self.e(j), self.e(k));
        (&self.right_nested(&a, &b, &c) + &self.left_nested(&a, &b, &c)).extend_params([Var::L, Var::M])
    }

    /// The four-term left anti-symmetry sum at `(e_i, e_j, e_k)`.
    pub fn left_anti_symmetry_residual(&self, i: usize, j: usize, k: usize) -> ParamElement<S> {
        let (a, b, c) = (self.e(i), self.e(j), self.e(k));
        let terms = [
            self.right_nested(&a, &b, &c),
            self.left_nested(&a, &b, &c),
            self.swapped_right_nested(&a, &b, &c),
            self.swapped_nested(&a, &b, &c),
        ];
        super::element::sum(self.rank(), terms).extend_params([Var::L, Var::M])
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect()
    }

    fn check_triples(
        &self,
        law: &str,
        f: impl Fn(usize, usize, usize) -> ParamElement<S> + Sync,
    ) -> CheckReport<S> {
        let residuals: Vec<_> = self
            .triples()
            .into_par_iter()
            .map(|(i, j, k)| (vec![i, j, k], f(i, j, k)))
            .collect();
        CheckReport::from_residuals(law, &self.basis, residuals)
    }

    pub fn check_commutative(&self) -> CheckReport<S> {
        let residuals: Vec<_> = self
            .pairs()
            .into_par_iter()
            .map(|(i, j)| (vec![i, j], self.commutativity_residual(i, j)))
            .collect();
        CheckReport::from_residuals("commutativity", &self.basis, residuals)
    }

    pub fn check_jacobi_jordan(&self) -> CheckReport<S> {
        self.check_commutative()
            .merge(self.check_triples("jacobi", |i, j, k| self.jacobi_residual(i, j, k)))
    }

    pub fn check_anti_associative(&self) -> CheckReport<S> {
        self.check_triples("anti-associativity", |i, j, k| {
            self.anti_associativity_residual(i, j, k)
        })
    }

    pub fn check_left_anti_symmetric(&self) -> CheckReport<S> {
        self.check_triples("left-anti-symmetry", |i, j, k| {
            self.left_anti_symmetry_residual(i, j, k)
        })
    }

    /// The symmetrized product `a ∘_λ b = a_λ b + b_{-λ-∂} a`.
    pub fn admissible_algebra(&self) -> Self {
        let reflected = refl::<S>(&[Var::L]);
        let table = self.table.map_entries(|i, j, own| {
            own.iter()
                .zip(self.table.get(j, i))
                .map(|(a, b)| a + &b.substitute(&Var::L, &reflected))
                .collect()
        });
        ConformalAlgebra {
            basis: self.basis.clone(),
            table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    type P = Poly<Rational>;

    fn rank1(entry: P) -> ConformalAlgebra<Rational> {
        ConformalAlgebra::from_products(vec!["e".into()], [(0, 0, vec![entry])]).unwrap()
    }

    #[test]
    fn products_in_current_and_quadratic_examples() {
        let cur2 = fixtures::cur2();
        let e1 = cur2.e(0);
        assert_eq!(cur2.product(&e1, &e1, &Var::L).unwrap().render(cur2.basis_names()), "e2");
        let de1 = e1.mul_poly(&P::var(Var::D));
        assert_eq!(cur2.product(&de1, &e1, &Var::L).unwrap().render(cur2.basis_names()), "-L*e2");

        let q3 = fixtures::q3();
        let r = q3.product(&q3.e(0), &q3.e(1), &Var::L).unwrap();
        assert_eq!(r.render(q3.basis_names()), "(D + 3*L - 1)*e3");
    }

    #[test]
    fn attach_examples() {
        let q3 = fixtures::q3();
        let p = q3.product(&q3.e(0), &q3.e(1), &Var::M).unwrap();
        let r = p.attach(&Var::M, &refl(&[Var::L])).unwrap();
        assert_eq!(r.render(q3.basis_names()), "(-2*D - 3*L - 1)*e3");

        let z = ParamElement::<Rational>::zero(2).extend_params([Var::M]);
        assert!(z.attach(&Var::M, &P::var(Var::L)).unwrap().is_zero());

        let cur2 = fixtures::cur2();
        let t = Var::named("T");
        let p = cur2.product(&cur2.e(0), &cur2.e(0), &t).unwrap();
        let r = p.attach(&t, &lin(&[Var::L, Var::M])).unwrap();
        assert_eq!(r, cur2.e(1).extend_params([Var::L, Var::M]));
    }

    #[test]
    fn attach_rejects_unknown_parameter() {
        let cur2 = fixtures::cur2();
        assert_eq!(
            cur2.e(0).attach(&Var::M, &P::int(1)),
            Err(Error::UnknownParam("M".into()))
        );
    }

    #[test]
    fn product_rejects_collisions_and_mismatch() {
        let cur2 = fixtures::cur2();
        let p = cur2.product(&cur2.e(0), &cur2.e(0), &Var::L).unwrap();
        assert_eq!(
            cur2.product(&p, &cur2.e(0), &Var::L),
            Err(Error::ParamCollision("L".into()))
        );
        assert!(matches!(
            cur2.product(&ParamElement::basis(3, 0), &cur2.e(0), &Var::M),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn commutativity_checks() {
        assert!(fixtures::cur2().check_commutative().passed());
        assert!(fixtures::q3().check_commutative().passed());
        let bad = rank1(P::var(Var::L));
        let rep = bad.check_commutative();
        assert_eq!(rep.counterexamples().len(), 1);
        assert_eq!(rep.counterexamples()[0].indices, vec![0, 0]);
        assert_eq!(rep.counterexamples()[0].render_residual(), "(D + 2*L)*e");
    }

    #[test]
    fn jacobi_jordan_checks() {
        assert!(fixtures::q3().check_jacobi_jordan().passed());
        assert!(fixtures::cur2().check_jacobi_jordan().passed());
        let bad = rank1(P::int(1));
        let rep = bad.check_jacobi_jordan();
        assert_eq!(rep.counterexamples().len(), 1);
        let c = &rep.counterexamples()[0];
        assert_eq!((c.law.as_str(), c.indices.clone()), ("jacobi", vec![0, 0, 0]));
        assert_eq!(c.render_residual(), "3*e");
    }

    #[test]
    fn anti_associative_and_left_anti_symmetric() {
        let cur_aa3 = fixtures::cur_aa3();
        assert!(cur_aa3.check_anti_associative().passed());
        assert!(cur_aa3.check_left_anti_symmetric().passed());
        let zero = ConformalAlgebra::<Rational>::zero(3);
        assert!(zero.check_anti_associative().passed());
        assert!(zero.check_left_anti_symmetric().passed());

        let bad = rank1(P::int(1));
        assert_eq!(bad.check_anti_associative().counterexamples()[0].render_residual(), "2*e");
        assert_eq!(bad.check_left_anti_symmetric().counterexamples()[0].render_residual(), "4*e");
    }

    #[test]
    fn admissible_examples() {
        assert!(fixtures::cur_aa3().admissible_algebra().is_zero());
        assert!(ConformalAlgebra::<Rational>::zero(2).admissible_algebra().is_zero());
        let adm = fixtures::cur2().admissible_algebra();
        assert_eq!(adm.structure(0, 0), &[P::zero(), P::int(2)]);
        assert!(adm.check_jacobi_jordan().passed());
    }

    #[test]
    fn residuals_replay() {
        let bad = rank1(P::int(1));
        let rep = bad.check_jacobi_jordan();
        for c in rep.counterexamples() {
            let (i, j, k) = (c.indices[0], c.indices[1], c.indices[2]);
            assert_eq!(bad.jacobi_residual(i, j, k), c.residual);
        }
    }
}
