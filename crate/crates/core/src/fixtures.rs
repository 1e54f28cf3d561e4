//! The standard small examples used throughout the tests and the CLI.

use crate::polyring::{Poly, Var};
use crate::{ConformalAlgebra, ExtendingDatum, FiniteAlgebra, FiniteLinearMap, MockGD, Rational};

type P = Poly<Rational>;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn e(n: usize, k: usize, c: P) -> Vec<P> {
    let mut v = vec![P::zero(); n];
    v[k] = c;
    v
}

/// Rank 2, `e1 λ e1 = e2`.
pub fn cur2() -> ConformalAlgebra {
    ConformalAlgebra::from_products(names("e", 2), [(0, 0, e(2, 1, P::one()))]).unwrap()
}

/// Rank 3, `e1 λ e2 = (∂ + 3λ - 1) e3`, `e2 λ e1 = -(2∂ + 3λ + 1) e3`.
pub fn q3() -> ConformalAlgebra {
    let d = P::var(Var::D);
    let l = P::var(Var::L);
    let p12 = &(&d + &l.scale(&crate::q(3))) - &P::one();
    let p21 = -&(&(&d.scale(&crate::q(2)) + &l.scale(&crate::q(3))) + &P::one());
    ConformalAlgebra::from_products(names("e", 3), [(0, 1, e(3, 2, p12)), (1, 0, e(3, 2, p21))]).unwrap()
}

/// The current algebra of the anti-commutative anti-associative algebra
/// with `e1 e2 = -e2 e1 = e3`.
pub fn cur_aa3() -> ConformalAlgebra {
    ConformalAlgebra::from_products(
        names("e", 3),
        [(0, 1, e(3, 2, P::one())), (1, 0, e(3, 2, -&P::one()))],
    )
    .unwrap()
}

fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| crate::q(x)).collect()
}

/// Dimension 2, `e1 e1 = e2`.
pub fn b2() -> FiniteAlgebra {
    FiniteAlgebra::from_products(names("e", 2), [(0, 0, qv(&[0, 1]))]).unwrap()
}

/// Dimension 3, `e1 e2 = -e2 e1 = e3`.
pub fn aa3() -> FiniteAlgebra {
    FiniteAlgebra::from_products(names("e", 3), [(0, 1, qv(&[0, 0, 1])), (1, 0, qv(&[0, 0, -1]))]).unwrap()
}

/// `diag(1, 2, 3)`, a derivation of [`aa3`].
pub fn d3() -> FiniteLinearMap {
    FiniteLinearMap::diagonal(qv(&[1, 2, 3]))
}

/// `e1 ∘ e2 = e3`, `e2 ∘ e1 = -2 e3`, `e1 ∗ e2 = e2 ∗ e1 = -e3`.
pub fn mgd3() -> MockGD {
    let circ = FiniteAlgebra::from_products(names("e", 3), [(0, 1, qv(&[0, 0, 1])), (1, 0, qv(&[0, 0, -2]))]).unwrap();
    let star = FiniteAlgebra::from_products(names("e", 3), [(0, 1, qv(&[0, 0, -1])), (1, 0, qv(&[0, 0, -1]))]).unwrap();
    MockGD::new(star, circ).unwrap()
}

/// `J = CUR2`, `K` of rank 1 spanned by `x`, all maps zero except
/// `ω_λ(x, x) = e2`.
pub fn ext1() -> ExtendingDatum {
    let mut d = ExtendingDatum::zero(cur2(), vec!["x".into()]);
    d.set_omega(0, 0, e(2, 1, P::one())).unwrap();
    d
}

fn zero1() -> ConformalAlgebra {
    ConformalAlgebra::zero(1).with_basis_names(vec!["e".into()]).unwrap()
}

/// Data that break exactly one of U1..U7: entry `k - 1` fails only `Uk`.
pub fn extending_mutants() -> Vec<ExtendingDatum> {
    let one = P::one;
    let xs = || names("x", 2);

    let mut u1 = ExtendingDatum::zero(zero1(), vec!["x".into()]);
    u1.set_omega(0, 0, vec![P::var(Var::L)]).unwrap();

    let mut u2 = ExtendingDatum::zero(cur2(), vec!["x".into()]);
    u2.set_act_j(0, 1, e(2, 0, one())).unwrap();

    let mut u3 = ExtendingDatum::zero(cur2(), vec!["x".into()]);
    u3.set_act_k(0, 1, vec![one()]).unwrap();

    let mut u4 = ExtendingDatum::zero(cur2(), vec!["x".into()]);
    u4.set_omega(0, 0, e(2, 0, one())).unwrap();

    let mut u5 = ExtendingDatum::zero(zero1(), xs());
    u5.set_circ(0, 0, e(2, 1, one())).unwrap();
    u5.set_act_k(1, 0, e(2, 0, one())).unwrap();

    let mut u6 = ExtendingDatum::zero(zero1(), xs());
    u6.set_circ(0, 0, e(2, 1, one())).unwrap();
    u6.set_omega(0, 1, vec![one()]).unwrap();
    u6.set_omega(1, 0, vec![one()]).unwrap();

    let mut u7 = ExtendingDatum::zero(zero1(), vec!["x".into()]);
    u7.set_circ(0, 0, vec![one()]).unwrap();

    vec![u1, u2, u3, u4, u5, u6, u7]
}
