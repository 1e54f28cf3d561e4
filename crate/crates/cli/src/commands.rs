use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use jjconf::constructions::{
    current_algebra, mock_gd_from_quadratic, quadratic_from_mock_gd, semidirect_product, tensor_with_comm_assoc,
};
use jjconf::extending::check_equivalence;
use jjconf::operators::{
    check_o_operator, check_rota_baxter, check_symplectic, induced_las_from_o_operator, induced_las_from_symplectic,
};
use jjconf::{
    CheckReport, ConformalAlgebra, ConformalEndo, EquivalencePair, ExtendingDatum, FiniteLinearMap, ModuleMap,
    Rational, SpecializedVerdict, UnifiedVerdict,
};

use crate::dsl::{self, Document, LookupError, Object, ParseError};
use crate::verdict::{Condition, JsonCounterexample, Verdict};

#[derive(Parser, Debug)]
#[command(name = "jjc", version, about = "Check and build Jacobi-Jordan conformal algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a property of one object.
    Check {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        property: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a new object and write it, with what it refers to, as a file.
    Construct {
        kind: String,
        /// Definitions to read; the built-in fixtures when omitted.
        file: Option<PathBuf>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        name: Option<String>,
        /// One-based basis indices spanning J, for `extract`.
        #[arg(long)]
        j: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Evaluate one λ-product.
    Product {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Where to attach the product; `L` by default.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Print a file in canonical form.
    Print { file: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Parse(Option<PathBuf>, ParseError),
    Lookup(LookupError),
    Lib(jjconf::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Parse(Some(p), e) => write!(f, "{}:{e}", p.display()),
            CliError::Parse(None, e) => write!(f, "{e}"),
            CliError::Lookup(e) => write!(f, "{e}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<LookupError> for CliError {
    fn from(e: LookupError) -> Self {
        CliError::Lookup(e)
    }
}

impl From<jjconf::Error> for CliError {
    fn from(e: jjconf::Error) -> Self {
        CliError::Lib(e)
    }
}

type CResult<T> = Result<T, CliError>;

const FIXTURES: [(&str, &str); 7] = [
    ("q3.jjc", include_str!("../fixtures/q3.jjc")),
    ("mgd3.jjc", include_str!("../fixtures/mgd3.jjc")),
    ("b2.jjc", include_str!("../fixtures/b2.jjc")),
    ("aa3.jjc", include_str!("../fixtures/aa3.jjc")),
    ("cur2.jjc", include_str!("../fixtures/cur2.jjc")),
    ("ext1.jjc", include_str!("../fixtures/ext1.jjc")),
    ("bad.jjc", include_str!("../fixtures/bad.jjc")),
];

/// The shipped fixture files, by file name.
pub fn fixture_sources() -> &'static [(&'static str, &'static str)] {
    &FIXTURES
}

/// All shipped fixtures in one document; an object defined identically in
/// several files appears once.
pub fn builtin_document() -> Document {
    let mut doc = Document::new();
    for (file, src) in FIXTURES {
        let part = dsl::parse(src).unwrap_or_else(|e| panic!("fixture {file}: {e}"));
        for (name, obj) in part.iter() {
            match doc.get(name) {
                Ok(existing) => assert_eq!(existing, obj, "fixture {file} redefines {name}"),
                Err(_) => doc.insert(name, obj.clone()).unwrap(),
            }
        }
    }
    doc
}

pub fn load(path: &Path) -> CResult<Document> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    dsl::parse(&src).map_err(|e| CliError::Parse(Some(path.to_path_buf()), e))
}

fn cond(name: impl Into<String>, passed: bool) -> Condition {
    Condition {
        name: name.into(),
        passed,
    }
}

fn module_map(doc: &Document, name: &str) -> CResult<ModuleMap> {
    let (_, _, m) = doc.map(name)?;
    Ok(ModuleMap::new(m.clone())?)
}

fn unified_conditions(v: &UnifiedVerdict, d: &ExtendingDatum) -> Vec<Condition> {
    let mut out = vec![cond("base", v.base.passed())];
    out.extend(v.conditions.iter().enumerate().map(|(k, c)| cond(format!("U{}", k + 1), c.passed())));
    out.push(cond("unified-jacobi-jordan", d.unified_product().check_jacobi_jordan().passed()));
    out
}

fn specialized(object: &str, property: &str, s: &SpecializedVerdict, d: &ExtendingDatum) -> Verdict {
    let mut v = Verdict::from_report(object, property, &s.verdict.report());
    v.passed = s.passed();
    v.conditions = s
        .listed
        .iter()
        .map(|(name, r)| cond(format!("listed:{name}"), r.passed()))
        .collect();
    v.conditions.extend(unified_conditions(&s.verdict, d));
    v
}

fn parse_alpha(s: &str) -> CResult<Rational> {
    let p = dsl::parse_poly(s, &[]).map_err(|e| CliError::Usage(format!("bad weight {s}: {e}")))?;
    p.as_constant().ok_or_else(|| CliError::Usage(format!("bad weight {s}")))
}

/// Evaluates `property` on `object`.
pub fn check(doc: &Document, object: &str, property: &str) -> CResult<Verdict> {
    let mut parts = property.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let want = |n: usize| -> CResult<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(CliError::Usage(format!("property {head} takes {n} argument(s)")))
        }
    };
    let unsupported = |kind: &str| CliError::Usage(format!("property {property} does not apply to a {kind}"));
    let report = |r: CheckReport| Ok(Verdict::from_report(object, property, &r));

    match doc.get(object)? {
        Object::Algebra(a) => match head {
            "commutative" => report(a.check_commutative()),
            "associative" => report(a.check_associative()),
            "jacobi-jordan" => report(a.check_jacobi_jordan()),
            "anti-associative" => report(a.check_anti_comm_anti_assoc()),
            "anti-novikov" => report(a.check_anti_novikov()),
            "derivation" => {
                want(1)?;
                let (_, _, m) = doc.map(args[0])?;
                let rows = (0..m.rows())
                    .map(|i| {
                        m.row(i)
                            .iter()
                            .map(|p| p.as_constant().ok_or_else(|| CliError::Usage("derivation must be constant".into())))
                            .collect::<CResult<Vec<_>>>()
                    })
                    .collect::<CResult<Vec<_>>>()?;
                report(a.check_derivation(&FiniteLinearMap::new(rows)?)?)
            }
            _ => Err(unsupported("finite algebra")),
        },
        Object::Conformal(a) => match head {
            "commutative" => report(a.check_commutative()),
            "jacobi-jordan" => report(a.check_jacobi_jordan()),
            "anti-associative" => report(a.check_anti_associative()),
            "left-anti-symmetric" => report(a.check_left_anti_symmetric()),
            "admissible" => report(a.admissible_algebra().check_jacobi_jordan()),
            "anti-derivation" => {
                want(1)?;
                let (_, _, m) = doc.map(args[0])?;
                report(a.check_anti_derivation(&ConformalEndo::new(m.clone())?)?)
            }
            "symplectic" => {
                want(1)?;
                let (_, f) = doc.form(args[0])?;
                report(check_symplectic(a, f)?)
            }
            "mock-gd" => {
                let g = mock_gd_from_quadratic(a)?.to_mock_gd();
                report(g.check())
            }
            _ => Err(unsupported("conformal algebra")),
        },
        Object::Rep { rep, .. } => match head {
            "rep" => report(rep.check()),
            _ => Err(unsupported("rep")),
        },
        Object::Map { source, target, .. } => match head {
            "o-operator" => {
                want(1)?;
                let rep = doc.rep(args[0])?;
                report(check_o_operator(&module_map(doc, object)?, rep)?)
            }
            "rota-baxter" => {
                want(1)?;
                if source != target {
                    return Err(CliError::Usage("a Rota-Baxter operator maps an algebra to itself".into()));
                }
                let a = doc.conformal(source)?;
                report(check_rota_baxter(a, &module_map(doc, object)?, &parse_alpha(args[0])?)?)
            }
            _ => Err(unsupported("map")),
        },
        Object::Form { form, .. } => match head {
            "skew" => report(form.check_skew()),
            "nondegenerate" => report(form.check_nondegenerate()),
            "skew-nondegenerate" => report(form.check_skew_nondegenerate()),
            _ => Err(unsupported("form")),
        },
        Object::MockGD(g) => match head {
            "mock-gd" => report(g.check()),
            _ => Err(unsupported("mockgd")),
        },
        Object::Datum { datum, .. } => match head {
            "unified" => {
                let v = datum.check_extending_structure();
                let mut out = Verdict::from_report(object, property, &v.report());
                out.passed = v.overall();
                out.conditions = unified_conditions(&v, datum);
                Ok(out)
            }
            "twisted" => Ok(specialized(object, property, &datum.check_twisted()?, datum)),
            "crossed" => Ok(specialized(object, property, &datum.check_crossed()?, datum)),
            "equivalence" | "cohomologous" => {
                want(3)?;
                let (_, other) = doc.datum(args[0])?;
                let pair = EquivalencePair {
                    r: module_map(doc, args[1])?,
                    s: module_map(doc, args[2])?,
                };
                report(check_equivalence(datum, other, &pair, head == "cohomologous")?)
            }
            _ => Err(unsupported("datum")),
        },
    }
}

/// Recomputes a reported residual from the library, for the laws whose
/// residuals are exposed per basis tuple.
pub fn replay(doc: &Document, object: &str, cx: &JsonCounterexample) -> CResult<String> {
    let idx: Vec<usize> = cx.indices.iter().map(|i| i - 1).collect();
    let arity = |n: usize| -> CResult<()> {
        if idx.len() == n {
            Ok(())
        } else {
            Err(CliError::Usage(format!("law {} takes {n} indices", cx.law)))
        }
    };
    let not_replayable = || CliError::Usage(format!("law {} cannot be replayed", cx.law));
    match doc.get(object)? {
        Object::Conformal(a) => {
            let b = a.basis_names();
            let r = match cx.law.as_str() {
                "commutativity" => {
                    arity(2)?;
                    a.commutativity_residual(idx[0], idx[1])
                }
                "jacobi" => {
                    arity(3)?;
                    a.jacobi_residual(idx[0], idx[1], idx[2])
                }
                "anti-associativity" => {
                    arity(3)?;
                    a.anti_associativity_residual(idx[0], idx[1], idx[2])
                }
                "left-anti-symmetry" => {
                    arity(3)?;
                    a.left_anti_symmetry_residual(idx[0], idx[1], idx[2])
                }
                _ => return Err(not_replayable()),
            };
            Ok(r.render(b))
        }
        Object::Rep { rep, .. } if cx.law == "rep" => {
            arity(3)?;
            Ok(rep.rep_residual(idx[0], idx[1], idx[2]).render(rep.module_basis()))
        }
        Object::Datum { datum: d, .. } => {
            let jb = d.j().basis_names().to_vec();
            let kb = d.k_basis().to_vec();
            let (r, basis) = match cx.law.as_str() {
                "U1" => {
                    arity(2)?;
                    let mut b = jb.clone();
                    b.extend(kb.iter().cloned());
                    (d.u1_residual(idx[0], idx[1]), b)
                }
                law @ ("U2" | "U3" | "U4" | "U5" | "U6" | "U7") => {
                    arity(3)?;
                    let (i, j, k) = (idx[0], idx[1], idx[2]);
                    match law {
                        "U2" => (d.u2_residual(i, j, k), jb),
                        "U3" => (d.u3_residual(i, j, k), kb),
                        "U4" => (d.u4_residual(i, j, k), jb),
                        "U5" => (d.u5_residual(i, j, k), kb),
                        "U6" => (d.u6_residual(i, j, k), jb),
                        _ => (d.u7_residual(i, j, k), kb),
                    }
                }
                _ => return Err(not_replayable()),
            };
            Ok(r.render(&basis))
        }
        _ => Err(not_replayable()),
    }
}

fn default_name(doc: &Document, kind: &str, from: &str) -> String {
    let base = format!("{from}_{}", kind.replace('-', "_"));
    let mut name = base.clone();
    let mut k = 2;
    while doc.contains(&name) {
        name = format!("{base}{k}");
        k += 1;
    }
    name
}

/// Builds `kind` from the named objects and returns a standalone document
/// holding the result (last) and everything it refers to.
pub fn construct(
    doc: &Document,
    kind: &str,
    from: &str,
    with: Option<&str>,
    name: Option<&str>,
    j: Option<&str>,
) -> CResult<(String, Document)> {
    let name = name.map_or_else(|| default_name(doc, kind, from), str::to_string);
    if doc.contains(&name) {
        return Err(LookupError::Duplicate(name).into());
    }
    let need_with = || with.ok_or_else(|| CliError::Usage(format!("construct {kind} needs --with")));
    let standalone = |obj: Object| -> CResult<(String, Document)> {
        let mut out = Document::new();
        out.insert(&name, obj)?;
        Ok((name.clone(), out))
    };
    let with_deps = |dep: &str, obj: Object| -> CResult<(String, Document)> {
        let mut out = doc.closure(dep)?;
        out.insert(&name, obj)?;
        Ok((name.clone(), out))
    };
    let conformal = |a: ConformalAlgebra| standalone(Object::Conformal(a));
    match kind {
        "current" => conformal(current_algebra(doc.algebra(from)?)),
        "tensor" => conformal(tensor_with_comm_assoc(doc.algebra(from)?, doc.conformal(need_with()?)?)?),
        "semidirect" => conformal(semidirect_product(doc.rep(from)?)?),
        "quadratic" => conformal(quadratic_from_mock_gd(doc.mock_gd(from)?)?),
        "admissible" => conformal(doc.conformal(from)?.admissible_algebra()),
        "mockgd-extract" => standalone(Object::MockGD(mock_gd_from_quadratic(doc.conformal(from)?)?.to_mock_gd())),
        "dual-rep" => {
            let algebra = match doc.get(from)? {
                Object::Rep { algebra, .. } => algebra.clone(),
                _ => unreachable!(),
            };
            let dual = doc.rep(from)?.dual()?;
            with_deps(&algebra, Object::Rep { algebra: algebra.clone(), rep: dual })
        }
        "unified" => conformal(doc.datum(from)?.1.unified_product()),
        "induced-las" => match doc.get(from)? {
            Object::Form { algebra, form } => conformal(induced_las_from_symplectic(doc.conformal(algebra)?, form)?),
            Object::Map { .. } => {
                let rep = doc.rep(need_with()?)?;
                conformal(induced_las_from_o_operator(&module_map(doc, from)?, rep)?)
            }
            other => Err(CliError::Usage(format!("induced-las needs a form or a map, {from} is a {}", other.kind()))),
        },
        "extract" => {
            let e = doc.conformal(from)?;
            let list = j.ok_or_else(|| CliError::Usage("construct extract needs --j".into()))?;
            let js = list
                .split(',')
                .map(|s| match s.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(CliError::Usage(format!("bad index {s} in --j"))),
                })
                .collect::<CResult<Vec<_>>>()?;
            let datum = ExtendingDatum::extract(e, &js)?;
            let jname = format!("{name}_J");
            let mut out = Document::new();
            out.insert(&jname, Object::Conformal(datum.j().clone()))?;
            out.insert(&name, Object::Datum { j: jname, datum })?;
            Ok((name.clone(), out))
        }
        _ => Err(CliError::Usage(format!("unknown construction {kind}"))),
    }
}

/// `left_w right` in algebra `algebra`, rendered.
pub fn product(doc: &Document, algebra: &str, left: &str, right: &str, at: Option<&str>) -> CResult<String> {
    let parse_err = |e| CliError::Parse(None, e);
    match doc.get(algebra)? {
        Object::Conformal(a) => {
            let b = a.basis_names();
            let x = dsl::parse_element(left, b, &["D", "M", "N"]).map_err(parse_err)?;
            let y = dsl::parse_element(right, b, &["D", "M", "N"]).map_err(parse_err)?;
            let w = dsl::parse_poly(at.unwrap_or("L"), &["D", "L", "M", "N"]).map_err(parse_err)?;
            Ok(a.product_at(&x, &y, &w)?.render(b))
        }
        Object::Algebra(a) => {
            if at.is_some() {
                return Err(CliError::Usage("--at applies to conformal algebras only".into()));
            }
            let b = a.basis_names();
            let constant = |s: &str| -> CResult<Vec<Rational>> {
                let v = dsl::parse_element(s, b, &[]).map_err(parse_err)?;
                Ok(v.coeffs().iter().map(|p| p.constant_term()).collect())
            };
            let v = a.mul(&constant(left)?, &constant(right)?);
            let polys = v.into_iter().map(jjconf::Poly::constant).collect();
            Ok(jjconf::ParamElement::new(polys).render(b))
        }
        other => Err(CliError::Usage(format!("{algebra} is a {}, not an algebra", other.kind()))),
    }
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> CResult<i32> {
    let io = |p: &Path| {
        let p = p.to_path_buf();
        move |e| CliError::Io(p, e)
    };
    match cmd {
        Cmd::Check {
            file,
            object,
            property,
            json,
        } => {
            let doc = load(&file)?;
            let start = Instant::now();
            let mut v = check(&doc, &object, &property)?;
            v.millis = start.elapsed().as_millis() as u64;
            if json {
                writeln!(out, "{}", serde_json::to_string(&v).unwrap()).map_err(io(&file))?;
            } else {
                write!(out, "{}", v.human()).map_err(io(&file))?;
            }
            Ok(if v.passed { 0 } else { 1 })
        }
        Cmd::Construct {
            kind,
            file,
            from,
            with,
            name,
            j,
            out: target,
        } => {
            let doc = match &file {
                Some(f) => load(f)?,
                None => builtin_document(),
            };
            let (name, built) = construct(&doc, &kind, &from, with.as_deref(), name.as_deref(), j.as_deref())?;
            std::fs::write(&target, dsl::print(&built)).map_err(io(&target))?;
            writeln!(out, "wrote {name} to {}", target.display()).map_err(io(&target))?;
            Ok(0)
        }
        Cmd::Product {
            file,
            algebra,
            left,
            right,
            at,
        } => {
            let doc = load(&file)?;
            let r = product(&doc, &algebra, &left, &right, at.as_deref())?;
            writeln!(out, "{r}").map_err(io(&file))?;
            Ok(0)
        }
        Cmd::Print { file } => {
            let doc = load(&file)?;
            write!(out, "{}", dsl::print(&doc)).map_err(io(&file))?;
            Ok(0)
        }
    }
}

/// Runs one command line; returns 0 (holds / done), 1 (property fails)
/// or 2 (bad input).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
