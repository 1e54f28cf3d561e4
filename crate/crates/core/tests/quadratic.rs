use jjconf::constructions::{current_algebra, mock_gd_from_quadratic, quadratic_algebra, quadratic_from_mock_gd};
use jjconf::random::{self, rng};
use jjconf::{fixtures, FiniteLinearMap, MockGD};
use rand::Rng;

/// Random pairs of products, plus dense enough zero patterns that a fair
/// share are mock-GD.
fn samples(seed: u64, count: usize) -> Vec<MockGD> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=3);
            let density = [0.05, 0.1, 0.2, 0.4][i % 4];
            random::mock_gd(&mut r, n, 2, density)
        })
        .collect()
}

#[test]
fn correspondence_both_directions() {
    let mut valid = 0;
    let cases = samples(23, 400);
    for g in &cases {
        let ok = g.check().passed();
        let a = quadratic_algebra(g);
        assert_eq!(ok, a.check_jacobi_jordan().passed(), "{g:?}");
        assert_eq!(ok, quadratic_from_mock_gd(g).is_ok());
        // Reading back recovers both products whether or not they are valid.
        assert_eq!(&mock_gd_from_quadratic(&a).unwrap().to_mock_gd(), g);
        valid += usize::from(ok);
    }
    assert!(valid >= 40 && valid < cases.len() - 40, "{valid} valid of {}", cases.len());
}

#[test]
fn worked_example() {
    let a = quadratic_from_mock_gd(&fixtures::mgd3()).unwrap();
    assert_eq!(a, fixtures::q3());
    assert_eq!(a.structure(0, 1)[2].to_string(), "D + 3*L - 1");
    assert_eq!(a.structure(1, 0)[2].to_string(), "-2*D - 3*L - 1");
    assert!(a.check_jacobi_jordan().passed());
}

#[test]
fn non_quadratic_is_rejected() {
    let mut r = rng(1);
    let a = random::conformal(&mut r, 2, 2, 1, 1.0);
    assert!(mock_gd_from_quadratic(&a).is_err());
}

#[test]
fn derivation_constructions() {
    let (aa3, d3) = (fixtures::aa3(), fixtures::d3());
    assert!(aa3.check_anti_comm_anti_assoc().passed());
    assert!(aa3.check_derivation(&d3).unwrap().passed());
    let an = aa3.anti_novikov_from_derivation(&d3).unwrap();
    assert!(an.check_anti_novikov().passed());
    let g = aa3.mock_gd_from_derivation(&d3).unwrap();
    assert!(g.check().passed());
    assert!(g.star().check_jacobi_jordan().passed());
    assert!(quadratic_from_mock_gd(&g).unwrap().check_jacobi_jordan().passed());
    let h = an.mock_gd_from_anti_novikov().unwrap();
    assert!(h.check().passed());
    assert!(aa3.anti_novikov_from_derivation(&FiniteLinearMap::identity(3)).is_err());
}

#[test]
fn anti_novikov_symmetrizes_to_jacobi_jordan() {
    let mut r = rng(29);
    let mut seen = 0;
    for _ in 0..600 {
        let n = r.gen_range(1..=3);
        let a = random::finite(&mut r, n, 2, 0.1);
        if a.check_anti_novikov().passed() {
            seen += 1;
            let g = a.mock_gd_from_anti_novikov().unwrap();
            assert!(g.star().check_jacobi_jordan().passed());
            assert!(g.check().passed());
        }
    }
    assert!(seen > 20, "{seen}");
}

#[test]
fn current_algebra_preserves_identities() {
    let mut r = rng(31);
    for _ in 0..300 {
        let n = r.gen_range(1..=3);
        let a = random::finite(&mut r, n, 2, 0.15);
        let c = current_algebra(&a);
        assert_eq!(a.check_jacobi_jordan().passed(), c.check_jacobi_jordan().passed());
        if a.check_anti_comm_anti_assoc().passed() {
            assert!(c.check_anti_associative().passed());
        }
    }
}
