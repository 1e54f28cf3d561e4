use jjconf::constructions::{current_algebra, semidirect_product, semidirect_unchecked};
use jjconf::operators::{
    check_o_operator, check_rota_baxter, check_symplectic, check_t_homomorphism, induced_las_from_o_operator,
    induced_las_from_symplectic,
};
use jjconf::random::{self, rng};
use jjconf::representations::{check_finite_rep, current_rep};
use jjconf::{fixtures, q, ConformalAlgebra, ConformalBilinearForm, ConformalRep, FiniteLinearMap, ModuleMap};
use rand::Rng;

fn fixture_algebras() -> Vec<ConformalAlgebra> {
    vec![
        fixtures::cur2(),
        fixtures::q3(),
        fixtures::cur_aa3(),
        current_algebra(&fixtures::b2()),
        ConformalAlgebra::zero(2),
    ]
}

#[test]
fn adjoint_is_a_rep_iff_jacobi_jordan() {
    let mut r = rng(41);
    let mut algs = fixture_algebras();
    for _ in 0..150 {
        let n = r.gen_range(1..=2);
        // Symmetrized, so the only obstruction left is the Jacobi sum.
        algs.push(random::conformal(&mut r, n, 1, 1, 0.1).admissible_algebra());
    }
    let mut seen = [0; 2];
    for a in algs.into_iter().filter(|a| a.check_commutative().passed()) {
        let jj = a.check_jacobi_jordan().passed();
        assert_eq!(jj, ConformalRep::adjoint(&a).check().passed(), "{a:?}");
        seen[usize::from(jj)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn dual_preserves_validity() {
    let mut r = rng(43);
    let mut seen = 0;
    for _ in 0..300 {
        let a = random::jj_pool()[r.gen_range(0..3)].clone();
        let m = r.gen_range(1..=2);
        let rep = random::rep(&mut r, &a, m, 1, 1, 0.15);
        if rep.check().passed() {
            seen += 1;
            let dual = rep.dual().unwrap();
            assert!(dual.check().passed(), "{rep:?}");
            assert_eq!(dual.dual().unwrap().actions(), rep.actions());
        } else {
            assert!(rep.dual().is_err());
        }
    }
    assert!(seen > 20, "{seen}");
}

#[test]
fn double_dual_of_constant_adjoints() {
    for a in [fixtures::cur2(), fixtures::cur_aa3(), current_algebra(&fixtures::b2())] {
        let ad = ConformalRep::adjoint(&a);
        if !ad.check().passed() {
            continue;
        }
        assert_eq!(ad.dual().unwrap().dual().unwrap().actions(), ad.actions());
    }
}

#[test]
fn semidirect_iff_rep() {
    let mut r = rng(47);
    let mut seen = [0; 2];
    for _ in 0..200 {
        let a = random::jj_pool()[r.gen_range(0..3)].clone();
        let m = r.gen_range(1..=2);
        let rep = random::rep(&mut r, &a, m, 1, 1, 0.15);
        let ok = rep.check().passed();
        assert_eq!(ok, semidirect_unchecked(&rep).check_jacobi_jordan().passed());
        assert_eq!(ok, semidirect_product(&rep).is_ok());
        seen[usize::from(ok)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn current_rep_of_b2_adjoint() {
    let b2 = fixtures::b2();
    let rho: Vec<_> = (0..2).map(|i| FiniteLinearMap::left_multiplication(&b2, i)).collect();
    assert!(check_finite_rep(&b2, &rho).unwrap().passed());
    let rep = current_rep(&b2, &rho).unwrap();
    assert!(rep.check().passed());
    assert_eq!(rep.actions(), ConformalRep::adjoint(&current_algebra(&b2)).actions());
}

#[test]
fn rota_baxter_examples() {
    let r0 = ModuleMap::new(fixtures::d3().to_poly_matrix()).unwrap();
    assert!(check_rota_baxter(&fixtures::cur2(), &r0, &q(0)).is_err());
    let diag01 = ModuleMap::new(FiniteLinearMap::diagonal(vec![q(0), q(1)]).to_poly_matrix()).unwrap();
    assert!(check_rota_baxter(&fixtures::cur2(), &diag01, &q(0)).unwrap().passed());
    for a in fixture_algebras() {
        let id = ModuleMap::identity(a.rank());
        assert!(check_rota_baxter(&a, &id, &q(-1)).unwrap().passed());
        if !a.is_zero() {
            assert!(!check_rota_baxter(&a, &id, &q(0)).unwrap().passed());
        }
    }
}

#[test]
fn weight_zero_rota_baxter_is_adjoint_o_operator() {
    let mut r = rng(53);
    let mut seen = 0;
    for _ in 0..200 {
        let a = fixture_algebras()[r.gen_range(0..2)].clone();
        let n = a.rank();
        let t = ModuleMap::new(random::d_matrix(&mut r, n, n, 1, 1, 0.25)).unwrap();
        let ad = ConformalRep::adjoint(&a);
        let rb = check_rota_baxter(&a, &t, &q(0)).unwrap().passed();
        assert_eq!(rb, check_o_operator(&t, &ad).unwrap().passed());
        if rb {
            seen += 1;
            let las = induced_las_from_o_operator(&t, &ad).unwrap();
            assert!(las.check_left_anti_symmetric().passed());
            assert!(las.admissible_algebra().check_jacobi_jordan().passed());
            assert!(check_t_homomorphism(&t, &ad, &las).unwrap().passed());
        }
    }
    assert!(seen > 10, "{seen}");
}

#[test]
fn o_operators_on_random_reps() {
    let mut r = rng(59);
    let mut seen = 0;
    for _ in 0..400 {
        let a = random::jj_pool()[r.gen_range(0..3)].clone();
        let m = r.gen_range(1..=2);
        let rep = random::rep(&mut r, &a, m, 1, 1, 0.15);
        if !rep.check().passed() {
            continue;
        }
        let t = ModuleMap::new(random::d_matrix(&mut r, a.rank(), m, 1, 1, 0.4)).unwrap();
        if check_o_operator(&t, &rep).unwrap().passed() {
            seen += 1;
            let las = induced_las_from_o_operator(&t, &rep).unwrap();
            assert!(las.check_left_anti_symmetric().passed());
            assert!(las.admissible_algebra().check_jacobi_jordan().passed());
            assert!(check_t_homomorphism(&t, &rep, &las).unwrap().passed());
        } else {
            assert!(induced_las_from_o_operator(&t, &rep).is_err());
        }
    }
    assert!(seen > 10, "{seen}");
}

#[test]
fn cur2_is_not_symplectic_for_the_standard_form() {
    let omega = ConformalBilinearForm::constant(&[vec![q(0), q(1)], vec![q(-1), q(0)]]).unwrap();
    assert!(omega.check_skew_nondegenerate().passed());
    assert!(!check_symplectic(&fixtures::cur2(), &omega).unwrap().passed());
}

#[test]
fn symplectic_induced_product_on_zero_algebra() {
    let omega = ConformalBilinearForm::constant(&[vec![q(0), q(1)], vec![q(-1), q(0)]]).unwrap();
    let zero = ConformalAlgebra::zero(2);
    let las = induced_las_from_symplectic(&zero, &omega).unwrap();
    assert!(las.check_left_anti_symmetric().passed());
    assert_eq!(las.admissible_algebra(), zero);
    assert!(induced_las_from_symplectic(&fixtures::cur2(), &omega).is_err());
}
