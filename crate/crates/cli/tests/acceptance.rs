//! One line per acceptance criterion; exits nonzero if any of them failed.
//!
//! Each criterion runs in isolation; a panic inside one is reported as its
//! FAIL line with the panic message, and the rest still run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use jjconf::conformal::apply_composite;
use jjconf::constructions::{current_algebra, mock_gd_from_quadratic, quadratic_algebra, quadratic_from_mock_gd};
use jjconf::operators::{check_o_operator, check_rota_baxter, check_t_homomorphism, induced_las_from_o_operator};
use jjconf::random::{self, rng};
use jjconf::representations::current_rep;
use jjconf::{
    fixtures, q, ConformalAlgebra, ConformalRep, ExtendingDatum, FiniteLinearMap, ModuleMap, ParamElement, Poly, Var,
};
use jjconf_cli::dsl;
use jjconf_cli::{replay, run, Verdict};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_worked_example() -> Outcome {
    let a = quadratic_from_mock_gd(&fixtures::mgd3()).map_err(|e| e.to_string())?;
    let p12 = a.structure(0, 1)[2].to_string();
    let p21 = a.structure(1, 0)[2].to_string();
    ensure(p12 == "D + 3*L - 1", format!("e1 λ e2 has e3-coefficient {p12}"))?;
    ensure(p21 == "-2*D - 3*L - 1", format!("e2 λ e1 has e3-coefficient {p21}"))?;
    ensure(a.structure(0, 1)[..2].iter().all(Poly::is_zero), "e1 λ e2 leaves e3")?;
    ensure(a.check_jacobi_jordan().passed(), "not Jacobi-Jordan")?;
    Ok(format!("e1 λ e2 = ({p12})·e3, e2 λ e1 = ({p21})·e3, Jacobi-Jordan"))
}

fn c2_quadratic_correspondence() -> Outcome {
    let mut r = rng(2);
    let (mut valid, total) = (0, 240);
    for i in 0..total {
        let n = r.gen_range(1..=3);
        let g = random::mock_gd(&mut r, n, 2, [0.05, 0.1, 0.2, 0.4][i % 4]);
        let ok = g.check().passed();
        let a = quadratic_algebra(&g);
        ensure(ok == a.check_jacobi_jordan().passed(), format!("disagreement on {g:?}"))?;
        if ok {
            valid += 1;
            let back = mock_gd_from_quadratic(&quadratic_from_mock_gd(&g).unwrap()).map_err(|e| e.to_string())?;
            ensure(back.to_mock_gd() == g, format!("round trip changed {g:?}"))?;
        }
    }
    ensure(valid > 0 && valid < total, "sample is one-sided")?;
    Ok(format!("{total} structures, {valid} mock-GD, all agree and round-trip"))
}

fn c3_unified_conditions() -> Outcome {
    let mut r = rng(3);
    let (mut valid, total) = (0, 150);
    for i in 0..total {
        let d = random::datum(&mut r, [0.1, 0.2, 0.35][i % 3]);
        let ok = d.check_extending_structure().overall();
        ensure(ok == d.unified_product().check_jacobi_jordan().passed(), format!("disagreement on {d:?}"))?;
        valid += usize::from(ok);
    }
    ensure(valid > 0 && valid < total, "sample is one-sided")?;
    let mutants = fixtures::extending_mutants();
    for (k, d) in mutants.iter().enumerate() {
        let failed = d.check_extending_structure().failed();
        ensure(failed == [format!("U{}", k + 1)], format!("mutant {} reports {failed:?}", k + 1))?;
        ensure(!d.unified_product().check_jacobi_jordan().passed(), "mutant product is Jacobi-Jordan")?;
    }
    Ok(format!("{total} data ({valid} valid) agree; {} mutants each name their condition", mutants.len()))
}

fn c4_extraction() -> Outcome {
    let round_trip = |d: &ExtendingDatum| -> Result<(), String> {
        let js: Vec<usize> = (0..d.j_rank()).collect();
        let back = ExtendingDatum::extract(&d.unified_product(), &js).map_err(|e| e.to_string())?;
        ensure(&back == d, format!("extraction changed {d:?}"))
    };
    let doc = jjconf_cli::builtin_document();
    let mut fixtures_seen = 0;
    for (_, obj) in doc.iter() {
        if let dsl::Object::Datum { datum, .. } = obj {
            if datum.check_extending_structure().overall() {
                round_trip(datum)?;
                fixtures_seen += 1;
            }
        }
    }
    ensure(fixtures_seen >= 2, "too few valid fixture data")?;
    let mut r = rng(4);
    for _ in 0..100 {
        round_trip(&random::valid_datum(&mut r))?;
    }
    Ok(format!("{fixtures_seen} fixture data and 100 random valid data extract back exactly"))
}

fn c5_representations() -> Outcome {
    let valid = [
        fixtures::cur2(),
        fixtures::q3(),
        current_algebra(&fixtures::b2()),
        ConformalAlgebra::zero(2),
    ];
    for a in &valid {
        ensure(ConformalRep::adjoint(a).check().passed(), "adjoint of a Jacobi-Jordan algebra fails")?;
    }
    let mut r = rng(5);
    let mut duals = 0;
    while duals < 25 {
        let a = random::jj_pool()[r.gen_range(0..3)].clone();
        let m = r.gen_range(1..=2);
        let rep = random::rep(&mut r, &a, m, 1, 1, 0.15);
        if rep.check().passed() {
            duals += 1;
            ensure(rep.dual().unwrap().check().passed(), format!("dual of {rep:?} fails"))?;
        }
    }
    for a in [fixtures::cur2(), current_algebra(&fixtures::b2())] {
        let ad = ConformalRep::adjoint(&a);
        let dd = ad.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
        ensure(dd.actions() == ad.actions(), "double dual differs")?;
    }
    let b2 = fixtures::b2();
    let rho: Vec<_> = (0..2).map(|i| FiniteLinearMap::left_multiplication(&b2, i)).collect();
    let cur = current_rep(&b2, &rho).map_err(|e| e.to_string())?;
    ensure(cur.check().passed(), "current rep of the B2 adjoint fails")?;
    Ok(format!("{} adjoints, {duals} random duals, 2 double duals, current B2 adjoint", valid.len()))
}

fn c6_operators() -> Outcome {
    let cur2 = fixtures::cur2();
    let diag01 = ModuleMap::new(FiniteLinearMap::diagonal(vec![q(0), q(1)]).to_poly_matrix()).unwrap();
    ensure(check_rota_baxter(&cur2, &diag01, &q(0)).unwrap().passed(), "diag(0,1) is not weight 0")?;
    let algs = [
        fixtures::cur2(),
        fixtures::q3(),
        fixtures::cur_aa3(),
        current_algebra(&fixtures::b2()),
        current_algebra(&fixtures::aa3()),
    ];
    for a in &algs {
        let id = ModuleMap::identity(a.rank());
        ensure(check_rota_baxter(a, &id, &q(-1)).unwrap().passed(), "identity is not weight -1")?;
    }
    let mut r = rng(6);
    let mut induced = 0;
    let mut tries = 0;
    while induced < 20 && tries < 5000 {
        tries += 1;
        let (rep, t) = if tries % 2 == 0 {
            let a = [fixtures::cur2(), fixtures::q3()][r.gen_range(0..2)].clone();
            let n = a.rank();
            (ConformalRep::adjoint(&a), random::d_matrix(&mut r, n, n, 1, 1, 0.25))
        } else {
            let a = random::jj_pool()[r.gen_range(0..3)].clone();
            let m = r.gen_range(1..=2);
            let rep = random::rep(&mut r, &a, m, 1, 1, 0.15);
            let t = random::d_matrix(&mut r, a.rank(), m, 1, 1, 0.4);
            (rep, t)
        };
        let t = ModuleMap::new(t).unwrap();
        if !rep.check().passed() || !check_o_operator(&t, &rep).unwrap().passed() {
            continue;
        }
        induced += 1;
        let las = induced_las_from_o_operator(&t, &rep).map_err(|e| e.to_string())?;
        ensure(las.check_left_anti_symmetric().passed(), "induced product is not left anti-symmetric")?;
        ensure(las.admissible_algebra().check_jacobi_jordan().passed(), "admissible is not Jacobi-Jordan")?;
        ensure(check_t_homomorphism(&t, &rep, &las).unwrap().passed(), "T is not a homomorphism")?;
    }
    ensure(induced == 20, format!("only {induced} O-operators found"))?;
    Ok(format!("weight 0 and -1 examples on {} algebras, {induced} induced products", algs.len()))
}

fn element(r: &mut impl Rng, n: usize) -> ParamElement {
    ParamElement::new((0..n).map(|_| random::poly(r, &[Var::D], 2, 2, 0.5)).collect())
}

fn c7_substitution_identities() -> Outcome {
    let (d, l, m) = (Poly::var(Var::D), Poly::var(Var::L), Poly::var(Var::M));
    let mut r = rng(7);
    for case in 0..100 {
        let n = r.gen_range(1..=3);
        let alg = random::conformal(&mut r, n, 2, 2, 0.3);
        let (a, b, c) = (element(&mut r, n), element(&mut r, n), element(&mut r, n));
        let fail = |what: &str| format!("case {case}: {what}");
        let inner = alg.product_at(&a, &b, &(-&l - &d)).unwrap();
        let lhs = alg.product_at(&inner, &c, &(&l + &m)).unwrap();
        let rhs = alg.product_at(&alg.product(&a, &b, &Var::M).unwrap(), &c, &(&l + &m)).unwrap();
        ensure(lhs == rhs, fail("first substitution identity"))?;

        let t = Var::named("t");
        let lhs = alg.product(&a, &alg.product_at(&b, &c, &(-&l - &d)).unwrap(), &Var::M).unwrap();
        let rhs = alg
            .product(&a, &alg.product(&b, &c, &t).unwrap(), &Var::M)
            .unwrap()
            .attach(&t, &(&(-&l - &m) - &d))
            .unwrap();
        ensure(lhs == rhs, fail("second substitution identity"))?;

        let s = Var::named("s");
        let inner = alg.product_at(&a, &b, &(-&m - &d)).unwrap();
        let lhs = alg.product_at(&inner, &c, &(-&l - &d)).unwrap();
        let rhs = alg
            .product(&alg.product(&a, &b, &t).unwrap(), &c, &s)
            .unwrap()
            .attach(&t, &(&(-&l - &m) - &d))
            .unwrap()
            .attach(&s, &(-&l - &d))
            .unwrap();
        ensure(lhs == rhs, fail("third substitution identity"))?;

        let f = random::endo(&mut r, n, 2, 2, 0.3);
        let g = random::endo(&mut r, n, 2, 2, 0.3);
        let (alpha, nu) = (Var::named("alpha"), Var::named("nu"));
        let h = f.compose(&g, &alpha, &nu).unwrap();
        let comp = |at: Poly, nu_at: Poly| apply_composite(&h, &alpha, &nu, &a, &at, &nu_at).unwrap();
        let one = f.apply(&g.apply_at(&a, &(-&m - &d)).unwrap(), &Var::L).unwrap();
        ensure(one == comp(l.clone(), -&m - &d), fail("first composition identity"))?;
        let two = f.apply_at(&g.apply(&a, &Var::M).unwrap(), &(-&l - &d)).unwrap();
        ensure(two == comp(-&l - &d, &(-&l - &d) + &m), fail("second composition identity"))?;
        let three = f.apply_at(&g.apply_at(&a, &(&m - &d)).unwrap(), &(-&l - &d)).unwrap();
        ensure(three == comp(-&l - &d, &m - &d), fail("third composition identity"))?;
    }
    Ok("100 random algebras and endomorphism pairs, 6 identities each".into())
}

fn c8_twisted_witness() -> Outcome {
    let doc = jjconf_cli::builtin_document();
    let (_, d) = doc.datum("EXT1W").map_err(|e| e.to_string())?;
    let tw = d.check_twisted().map_err(|e| e.to_string())?;
    ensure(tw.listed_passed(), "listed twisted conditions fail")?;
    ensure(tw.verdict.failed() == ["U4"], format!("full verdict fails {:?}", tw.verdict.failed()))?;
    ensure(!tw.passed(), "twisted verdict passes")?;
    ensure(!d.unified_product().check_jacobi_jordan().passed(), "unified product is Jacobi-Jordan")?;
    let v = jjconf_cli::check(&doc, "EXT1W", "twisted").map_err(|e| e.to_string())?;
    let cond = |name: &str| v.conditions.iter().find(|c| c.name == name).map(|c| c.passed);
    ensure(!v.passed, "CLI verdict passes")?;
    ensure(cond("U4") == Some(false) && cond("unified-jacobi-jordan") == Some(false), "CLI misses the failure")?;
    ensure(
        v.conditions.iter().filter(|c| c.name.starts_with("listed:")).all(|c| c.passed),
        "CLI listed conditions fail",
    )?;
    Ok("listed conditions pass; U4 and the Jacobi check fail".into())
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn jjc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jjc")).args(args).output().expect("jjc runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c9_cli_contract() -> Outcome {
    let dir = fixture_dir();
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let src = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let doc = dsl::parse(&src).map_err(|e| format!("{}: {e}", path.display()))?;
        let (code, printed) = jjc(&["print", path.to_str().unwrap()]);
        ensure(code == 0, format!("print {} exits {code}", path.display()))?;
        ensure(printed.trim_end() == dsl::print(&doc).trim_end(), "print differs from the printer")?;
        ensure(dsl::parse(&printed).map_err(|e| e.to_string())? == doc, "reparse differs")?;
        files += 1;
    }

    let q3 = dir.join("q3.jjc");
    let bad = dir.join("bad.jjc");
    let (q3, bad) = (q3.to_str().unwrap(), bad.to_str().unwrap());
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let garbage = tmp.path().join("garbage.jjc");
    std::fs::write(&garbage, "conformal A { rank 1; lprod e1 e9 = e1; }").unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["check", q3, "--object", "Q3", "--property", "jacobi-jordan"], 0),
        (&["check", bad, "--object", "E", "--property", "jacobi-jordan"], 1),
        (&["check", q3, "--object", "NOPE", "--property", "jacobi-jordan"], 2),
        (&["check", garbage.to_str().unwrap(), "--object", "A", "--property", "commutative"], 2),
        (&["check", q3, "--object", "Q3", "--property", "no-such-property"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let (code, _) = jjc(args);
        ensure(code == want, format!("jjc {} exits {code}, expected {want}", args.join(" ")))?;
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let argv = std::iter::once("jjc").chain(args.iter().copied());
        ensure(run(argv, &mut o, &mut e) == want, "in-process run disagrees")?;
    }

    let (code, json) = jjc(&["check", bad, "--object", "E", "--property", "jacobi-jordan", "--json"]);
    ensure(code == 1, "JSON check exit")?;
    let v: Verdict = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let doc = dsl::parse(&std::fs::read_to_string(bad).unwrap()).unwrap();
    ensure(!v.counterexamples.is_empty(), "no counterexamples")?;
    for cx in &v.counterexamples {
        let again = replay(&doc, "E", cx).map_err(|e| e.to_string())?;
        ensure(again == cx.residual, format!("replay gives {again}, reported {}", cx.residual))?;
    }
    let ext = jjconf_cli::builtin_document();
    let v = jjconf_cli::check(&ext, "EXT1W", "unified").map_err(|e| e.to_string())?;
    for cx in &v.counterexamples {
        if cx.law.starts_with('U') {
            let again = replay(&ext, "EXT1W", cx).map_err(|e| e.to_string())?;
            ensure(again == cx.residual, format!("{} replay gives {again}", cx.law))?;
        }
    }
    Ok(format!("{files} fixture files round-trip; exit codes 0/1/2; JSON residuals replay"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("worked example reproduction", 1, c1_worked_example),
        ("quadratic correspondence", 30, c2_quadratic_correspondence),
        ("unified-product conditions", 60, c3_unified_conditions),
        ("extraction round trip", 30, c4_extraction),
        ("representation stack", 10, c5_representations),
        ("operator stack", 10, c6_operators),
        ("substitution identities", 30, c7_substitution_identities),
        ("twisted-product witness", 1, c8_twisted_witness),
        ("CLI contract", 5, c9_cli_contract),
    ];
    let mut failures = Vec::new();
    for (k, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took > Duration::from_secs(budget) {
                Err(format!("{msg}; took {took:.2?}, budget {budget} s"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({took:.2?})", k + 1),
            Err(msg) => {
                println!("criterion {}: FAIL {name}: {msg} ({took:.2?})", k + 1);
                failures.push(k + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
