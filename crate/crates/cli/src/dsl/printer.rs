use std::fmt::Write;

use jjconf::{BilinearTable, FiniteAlgebra, ParamElement, Poly, PolyMatrix, Rational};

use super::{Document, Object};

fn render(v: &[Poly], basis: &[String]) -> String {
    ParamElement::new(v.to_vec()).render(basis)
}

fn constants(v: &[Rational]) -> Vec<Poly> {
    v.iter().cloned().map(Poly::constant).collect()
}

fn matrix(m: &PolyMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(Poly::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn basis_line(out: &mut String, names: &[String]) {
    writeln!(out, "  basis {};", names.join(" ")).unwrap();
}

fn finite_entries(out: &mut String, word: &str, a: &FiniteAlgebra) {
    let b = a.basis_names();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.structure(i, j);
            if v.iter().any(|c| *c != Rational::from_integer(0.into())) {
                writeln!(out, "  {word} {} {} = {};", b[i], b[j], render(&constants(v), b)).unwrap();
            }
        }
    }
}

/// Nonzero entries of `t` as `word x y = value;` lines.
fn table_entries(out: &mut String, word: &str, t: &BilinearTable, left: &[String], right: &[String], value: &[String]) {
    for ((i, j), v) in t.entries() {
        if v.iter().any(|p| !p.is_zero()) {
            writeln!(out, "  {word} {} {} = {};", left[i], right[j], render(v, value)).unwrap();
        }
    }
}

/// Canonical text of one object.
pub fn print_object(name: &str, obj: &Object) -> String {
    let mut out = String::new();
    match obj {
        Object::Algebra(a) => {
            writeln!(out, "algebra {name} {{\n  dim {};", a.dim()).unwrap();
            basis_line(&mut out, a.basis_names());
            finite_entries(&mut out, "prod", a);
        }
        Object::Conformal(a) => {
            writeln!(out, "conformal {name} {{\n  rank {};", a.rank()).unwrap();
            basis_line(&mut out, a.basis_names());
            let b = a.basis_names();
            table_entries(&mut out, "lprod", a.table(), b, b, b);
        }
        Object::Rep { algebra, rep } => {
            writeln!(out, "rep {name} of {algebra} {{\n  rank {};", rep.module_rank()).unwrap();
            basis_line(&mut out, rep.module_basis());
            for (i, a) in rep.actions().iter().enumerate() {
                if !a.is_zero() {
                    writeln!(out, "  act {}: {};", rep.algebra().basis_names()[i], matrix(a)).unwrap();
                }
            }
        }
        Object::Map { source, target, matrix: m } => {
            writeln!(out, "map {name}: {source} -> {target} {{\n  {}", matrix(m)).unwrap();
        }
        Object::Form { algebra, form } => {
            writeln!(out, "form {name} on {algebra} {{\n  {}", matrix(form.matrix())).unwrap();
        }
        Object::MockGD(g) => {
            writeln!(out, "mockgd {name} {{\n  dim {};", g.dim()).unwrap();
            basis_line(&mut out, g.basis_names());
            finite_entries(&mut out, "star", g.star());
            finite_entries(&mut out, "circ", g.circ());
        }
        Object::Datum { j, datum } => {
            writeln!(out, "datum {name} {{\n  J {j};\n  Krank {};", datum.k_rank()).unwrap();
            basis_line(&mut out, datum.k_basis());
            let (jb, kb) = (datum.j().basis_names(), datum.k_basis());
            table_entries(&mut out, "actJ", datum.act_j(), kb, jb, jb);
            table_entries(&mut out, "actK", datum.act_k(), kb, jb, kb);
            table_entries(&mut out, "omega", datum.omega(), kb, kb, jb);
            table_entries(&mut out, "circ", datum.circ(), kb, kb, kb);
        }
    }
    out.push_str("}\n");
    out
}

/// Canonical text of a whole document, objects separated by blank lines.
pub fn print(doc: &Document) -> String {
    doc.iter()
        .map(|(name, obj)| print_object(name, obj))
        .collect::<Vec<_>>()
        .join("\n")
}
