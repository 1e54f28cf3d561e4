//! Seeded random structures for property tests: small, sparse, with
//! integer coefficients, so identities are exercised on both valid and
//! invalid inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::{Monomial, Var};
use crate::{
    q, BilinearTable, ConformalAlgebra, ConformalEndo, ConformalRep, ExtendingDatum, FiniteAlgebra, MockGD, Poly,
    PolyMatrix, Rational,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial in `vars` of total degree at most `deg`, each monomial
/// present with probability `density` and a nonzero coefficient in
/// `-c..=c`.
pub fn poly(r: &mut impl Rng, vars: &[Var], deg: u32, c: i64, density: f64) -> Poly {
    let mut monos = vec![Monomial::one()];
    for _ in 0..deg {
        let mut next = monos.clone();
        for m in &monos {
            for v in vars {
                let n = m.mul(&Monomial::var(v.clone()));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        monos = next;
    }
    let mut terms = Vec::new();
    for m in monos {
        if r.gen_bool(density) {
            terms.push((m, nonzero(r, c)));
        }
    }
    Poly::from_terms(terms)
}

fn nonzero(r: &mut impl Rng, c: i64) -> Rational {
    let mut k = 0;
    while k == 0 {
        k = r.gen_range(-c..=c);
    }
    q(k)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn table(r: &mut impl Rng, shape: (usize, usize, usize), deg: u32, c: i64, density: f64) -> BilinearTable {
    BilinearTable::from_fn(shape.0, shape.1, shape.2, |_, _| {
        (0..shape.2)
            .map(|_| poly(r, &[Var::D, Var::L], deg, c, density))
            .collect()
    })
    .unwrap()
}

/// An arbitrary (usually invalid) conformal algebra of rank `n`.
pub fn conformal(r: &mut impl Rng, n: usize, deg: u32, c: i64, density: f64) -> ConformalAlgebra {
    ConformalAlgebra::new(names("e", n), table(r, (n, n, n), deg, c, density)).unwrap()
}

pub fn endo(r: &mut impl Rng, n: usize, deg: u32, c: i64, density: f64) -> ConformalEndo {
    ConformalEndo::new(PolyMatrix::from_fn(n, n, |_, _| poly(r, &[Var::D, Var::L], deg, c, density))).unwrap()
}

/// A matrix with entries in `D` only.
pub fn d_matrix(r: &mut impl Rng, rows: usize, cols: usize, deg: u32, c: i64, density: f64) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols, |_, _| poly(r, &[Var::D], deg, c, density))
}

pub fn rep(r: &mut impl Rng, a: &ConformalAlgebra, m: usize, deg: u32, c: i64, density: f64) -> ConformalRep {
    let action = (0..a.rank())
        .map(|_| PolyMatrix::from_fn(m, m, |_, _| poly(r, &[Var::D, Var::L], deg, c, density)))
        .collect();
    ConformalRep::new(a.clone(), names("m", m), action).unwrap()
}

pub fn finite(r: &mut impl Rng, n: usize, c: i64, density: f64) -> FiniteAlgebra {
    let mut prods = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = (0..n)
                .map(|_| if r.gen_bool(density) { nonzero(r, c) } else { q(0) })
                .collect();
            prods.push((i, j, v));
        }
    }
    FiniteAlgebra::from_products(names("e", n), prods).unwrap()
}

pub fn mock_gd(r: &mut impl Rng, n: usize, c: i64, density: f64) -> MockGD {
    MockGD::new(finite(r, n, c, density), finite(r, n, c, density)).unwrap()
}

/// Small Jacobi-Jordan conformal algebras to extend.
pub fn jj_pool() -> Vec<ConformalAlgebra> {
    vec![
        ConformalAlgebra::zero(1),
        ConformalAlgebra::zero(2),
        crate::fixtures::cur2(),
    ]
}

/// A datum over a random pool algebra with `m ≤ 2`, entries of degree at
/// most one with coefficients in `{-1, 0, 1}`.
pub fn datum(r: &mut impl Rng, density: f64) -> ExtendingDatum {
    let pool = jj_pool();
    let j = pool[r.gen_range(0..pool.len())].clone();
    let (n, m) = (j.rank(), r.gen_range(1..=2));
    let mut pick = |shape| {
        if r.gen_bool(0.5) {
            table(r, shape, 1, 1, density)
        } else {
            BilinearTable::zero(shape.0, shape.1, shape.2)
        }
    };
    let act_j = pick((m, n, n));
    let act_k = pick((m, n, m));
    let omega = pick((m, m, n));
    let circ = pick((m, m, m));
    ExtendingDatum::new(j, names("x", m), act_j, act_k, omega, circ).unwrap()
}

/// A datum passing U1..U7, found by rejection sampling.
pub fn valid_datum(r: &mut impl Rng) -> ExtendingDatum {
    loop {
        let d = datum(r, 0.15);
        if d.check_extending_structure().overall() {
            return d;
        }
    }
}
