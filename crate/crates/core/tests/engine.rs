use jjconf::conformal::apply_composite;
use jjconf::random::{self, rng};
use jjconf::{fixtures, q, ConformalAlgebra, ParamElement, Poly, Var};
use proptest::prelude::*;
use rand::Rng;

fn d() -> Poly {
    Poly::var(Var::D)
}
fn l() -> Poly {
    Poly::var(Var::L)
}
fn m() -> Poly {
    Poly::var(Var::M)
}

/// An element of the free module with coefficients in `D` only.
fn element(r: &mut impl Rng, n: usize) -> ParamElement {
    ParamElement::new((0..n).map(|_| random::poly(r, &[Var::D], 2, 2, 0.5)).collect())
}

fn algebra(seed: u64) -> (ConformalAlgebra, [ParamElement; 3]) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=3);
    let a = random::conformal(&mut r, n, 2, 2, 0.3);
    let xs = [element(&mut r, n), element(&mut r, n), element(&mut r, n)];
    (a, xs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // (a_{-λ-∂} b)_{λ+μ} c = (a_μ b)_{λ+μ} c
    #[test]
    fn substitution_first(seed in any::<u64>()) {
        let (alg, [a, b, c]) = algebra(seed);
        let inner = alg.product_at(&a, &b, &(-&l() - d())).unwrap();
        let lhs = alg.product_at(&inner, &c, &(&l() + &m())).unwrap();
        let rhs = alg.product_at(&alg.product(&a, &b, &Var::M).unwrap(), &c, &(&l() + &m())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // a_μ (b_{-λ-∂} c) with the inner ∂ equals the attachment -λ-μ-∂ taken
    // in the ambient ∂ of the result.
    #[test]
    fn substitution_second(seed in any::<u64>()) {
        let (alg, [a, b, c]) = algebra(seed);
        let t = Var::named("t");
        let lhs = alg.product(&a, &alg.product_at(&b, &c, &(-&l() - d())).unwrap(), &Var::M).unwrap();
        let rhs = alg
            .product(&a, &alg.product(&b, &c, &t).unwrap(), &Var::M)
            .unwrap()
            .attach(&t, &(&(-&l() - m()) - &d()))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // (a_{-μ-∂} b)_{-λ-∂} c with the inner ∂ equals the attachment -λ-μ-∂.
    #[test]
    fn substitution_third(seed in any::<u64>()) {
        let (alg, [a, b, c]) = algebra(seed);
        let (s, t) = (Var::named("s"), Var::named("t"));
        let inner = alg.product_at(&a, &b, &(-&m() - d())).unwrap();
        let lhs = alg.product_at(&inner, &c, &(-&l() - d())).unwrap();
        let rhs = alg
            .product(&alg.product(&a, &b, &t).unwrap(), &c, &s)
            .unwrap()
            .attach(&t, &(&(-&l() - m()) - &d()))
            .unwrap()
            .attach(&s, &(-&l() - d()))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // Composition of conformal endomorphisms, three ways of nesting.
    #[test]
    fn composition_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let f = random::endo(&mut r, n, 2, 2, 0.3);
        let g = random::endo(&mut r, n, 2, 2, 0.3);
        let x = element(&mut r, n);
        let (alpha, nu) = (Var::named("alpha"), Var::named("nu"));
        let h = f.compose(&g, &alpha, &nu).unwrap();
        let comp = |a: Poly, v: Poly| apply_composite(&h, &alpha, &nu, &x, &a, &v).unwrap();

        // f_λ (g_{-μ-∂} m) = (f_λ g)_{-μ-∂} m
        let lhs = f.apply(&g.apply_at(&x, &(-&m() - d())).unwrap(), &Var::L).unwrap();
        prop_assert_eq!(lhs, comp(l(), -&m() - d()));

        // f_{-λ-∂} (g_μ m) = (f_{-μ-∂} g)_{-λ-∂+μ} m, the inner ∂ of the
        // composite being -(−λ-∂+μ)
        let lhs = f.apply_at(&g.apply(&x, &Var::M).unwrap(), &(-&l() - d())).unwrap();
        prop_assert_eq!(lhs, comp(-&l() - d(), &(-&l() - d()) + &m()));

        // f_{-λ-∂} (g_{μ-∂} m) = (f_{-λ-μ-∂} g)_{μ-∂} m
        let lhs = f.apply_at(&g.apply_at(&x, &(&m() - &d())).unwrap(), &(-&l() - d())).unwrap();
        prop_assert_eq!(lhs, comp(-&l() - d(), &m() - &d()));
    }

    #[test]
    fn sesquilinearity_and_bilinearity(seed in any::<u64>()) {
        let (alg, [a, b, c]) = algebra(seed);
        let p = |x: &ParamElement, y: &ParamElement| alg.product(x, y, &Var::L).unwrap();
        prop_assert_eq!(p(&a.mul_poly(&d()), &b), p(&a, &b).mul_poly(&-&l()));
        prop_assert_eq!(p(&a, &b.mul_poly(&d())), p(&a, &b).mul_poly(&(&l() + &d())));
        let k = q(-3);
        prop_assert_eq!(p(&(&a + &c.scale(&k)), &b), &p(&a, &b) + &p(&c, &b).scale(&k));
        prop_assert_eq!(p(&a, &(&b + &c)), &p(&a, &b) + &p(&a, &c));
    }

    #[test]
    fn reports_replay(seed in any::<u64>()) {
        let (alg, _) = algebra(seed);
        let jj = alg.check_jacobi_jordan();
        for cx in jj.counterexamples() {
            let again = match (cx.law.as_str(), cx.indices.as_slice()) {
                ("commutativity", [i, j]) => alg.commutativity_residual(*i, *j),
                ("jacobi", [i, j, k]) => alg.jacobi_residual(*i, *j, *k),
                other => panic!("unexpected law {other:?}"),
            };
            prop_assert_eq!(&again, &cx.residual);
            prop_assert!(!again.is_zero());
        }
    }
}

fn valid_jj_algebras() -> Vec<ConformalAlgebra> {
    let mut out = random::jj_pool();
    out.push(fixtures::q3());
    let mut r = rng(5);
    for _ in 0..20 {
        out.push(random::valid_datum(&mut r).unified_product());
    }
    out
}

#[test]
fn jacobi_jordan_is_admissible() {
    for a in valid_jj_algebras() {
        assert!(a.check_jacobi_jordan().passed());
        assert!(a.admissible_algebra().check_jacobi_jordan().passed());
    }
}

#[test]
fn left_anti_symmetric_is_admissible() {
    let mut found = 0;
    let mut r = rng(3);
    let mut cands = vec![fixtures::cur_aa3(), ConformalAlgebra::zero(2)];
    for _ in 0..400 {
        let n = r.gen_range(1..=2);
        cands.push(random::conformal(&mut r, n, 1, 1, 0.08));
    }
    for a in cands {
        if a.check_left_anti_symmetric().passed() {
            found += 1;
            assert!(a.admissible_algebra().check_jacobi_jordan().passed(), "{a:?}");
        }
    }
    assert!(found > 10, "{found}");
}

#[test]
fn anti_associative_implies_left_anti_symmetric() {
    let mut r = rng(4);
    for _ in 0..300 {
        let a = random::conformal(&mut r, 2, 1, 1, 0.08);
        if a.check_anti_associative().passed() {
            assert!(a.check_left_anti_symmetric().passed());
        }
    }
}
