use jjconf::{
    ConformalAlgebra, ConformalBilinearForm, ConformalRep, ExtendingDatum, FiniteAlgebra, MockGD, ParamElement, Poly,
    PolyMatrix, Rational, Var,
};

use super::lexer::{tokenize, Tok, Token};
use super::{Document, Object, ParseError};

const RESERVED: [&str; 4] = ["D", "L", "M", "N"];

/// The value of an expression: a polynomial, or a linear combination of
/// basis vectors with polynomial coefficients.
enum Value {
    Scalar(Poly),
    Vector(Vec<Poly>),
}

/// What an expression may mention.
struct Scope<'a> {
    basis: Option<&'a [String]>,
    vars: &'a [&'a str],
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(t.line, t.col, msg))
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<Token> {
        let t = self.next();
        if t.tok == Tok::Sym(s) {
            Ok(t)
        } else {
            self.err(&t, format!("expected `{s}`, found {}", Self::describe(&t.tok)))
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == w)
    }

    fn ident(&mut self) -> PResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.err(&t, format!("expected a name, found {}", Self::describe(other))),
        }
    }

    fn keyword(&mut self, w: &str) -> PResult<Token> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == w => Ok(t),
            other => self.err(&t, format!("expected `{w}`, found {}", Self::describe(other))),
        }
    }

    fn positive_int(&mut self) -> PResult<usize> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => match s.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => self.err(&t, "expected a positive size"),
            },
            other => self.err(&t, format!("expected an integer, found {}", Self::describe(other))),
        }
    }

    /// `"dim" INT ";"` or similar header line.
    fn size_line(&mut self, word: &str) -> PResult<usize> {
        self.keyword(word)?;
        let n = self.positive_int()?;
        self.expect_sym(";")?;
        Ok(n)
    }

    /// Optional `"basis" NAME+ ";"`, defaulting to `prefix1..prefixN`.
    fn basis_line(&mut self, n: usize, prefix: &str) -> PResult<Vec<String>> {
        if !self.is_word("basis") {
            return Ok((1..=n).map(|i| format!("{prefix}{i}")).collect());
        }
        let kw = self.next();
        let mut names: Vec<String> = Vec::new();
        while !self.is_sym(";") {
            let (name, t) = self.ident()?;
            if RESERVED.contains(&name.as_str()) {
                return self.err(&t, format!("`{name}` is reserved for an indeterminate"));
            }
            if names.contains(&name) {
                return self.err(&t, format!("duplicate basis name `{name}`"));
            }
            names.push(name);
        }
        self.expect_sym(";")?;
        if names.len() != n {
            return self.err(&kw, format!("basis lists {} names for rank {n}", names.len()));
        }
        Ok(names)
    }

    fn basis_index(&mut self, basis: &[String]) -> PResult<usize> {
        let (name, t) = self.ident()?;
        match basis.iter().position(|b| *b == name) {
            Some(i) => Ok(i),
            None => self.err(&t, format!("unknown basis element `{name}`")),
        }
    }

    // Expressions.

    fn expr(&mut self, sc: &Scope) -> PResult<Value> {
        if self.is_sym("+") {
            self.next();
        }
        let mut acc = self.term(sc)?;
        loop {
            let neg = if self.is_sym("+") {
                false
            } else if self.is_sym("-") {
                true
            } else {
                return Ok(acc);
            };
            let op = self.next();
            let rhs = self.term(sc)?;
            let rhs = if neg { negate(rhs) } else { rhs };
            acc = self.add(&op, acc, rhs)?;
        }
    }

    fn add(&self, op: &Token, a: Value, b: Value) -> PResult<Value> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
            (Value::Vector(x), Value::Vector(y)) => {
                Ok(Value::Vector(x.iter().zip(&y).map(|(p, q)| p + q).collect()))
            }
            (Value::Scalar(s), v @ Value::Vector(_)) | (v @ Value::Vector(_), Value::Scalar(s)) if s.is_zero() => Ok(v),
            _ => self.err(op, "cannot add a polynomial to a basis combination"),
        }
    }

    fn term(&mut self, sc: &Scope) -> PResult<Value> {
        let mut acc = self.factor(sc)?;
        loop {
            if self.is_sym("*") {
                let op = self.next();
                let rhs = self.factor(sc)?;
                acc = match (acc, rhs) {
                    (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                    (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                        Value::Vector(v.iter().map(|p| p * &s).collect())
                    }
                    (Value::Vector(_), Value::Vector(_)) => {
                        return self.err(&op, "product of two basis elements is not linear")
                    }
                };
            } else if self.is_sym("/") {
                let op = self.next();
                let rhs = self.factor(sc)?;
                let c = match rhs {
                    Value::Scalar(p) => match p.as_constant() {
                        Some(c) if c != Rational::from_integer(0.into()) => c,
                        _ => return self.err(&op, "division only by a nonzero rational constant"),
                    },
                    Value::Vector(_) => return self.err(&op, "division by a basis element"),
                };
                let inv = Rational::from_integer(1.into()) / c;
                acc = match acc {
                    Value::Scalar(p) => Value::Scalar(p.scale(&inv)),
                    Value::Vector(v) => Value::Vector(v.iter().map(|p| p.scale(&inv)).collect()),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, sc: &Scope) -> PResult<Value> {
        if self.is_sym("-") {
            self.next();
            return Ok(negate(self.factor(sc)?));
        }
        let base = self.atom(sc)?;
        if self.is_sym("^") {
            let op = self.next();
            let t = self.next();
            let e = match &t.tok {
                Tok::Int(s) => match s.parse::<u32>() {
                    Ok(e) => e,
                    Err(_) => return self.err(&t, "exponent too large"),
                },
                other => return self.err(&t, format!("expected an exponent, found {}", Self::describe(other))),
            };
            return match base {
                Value::Scalar(p) => Ok(Value::Scalar(p.pow(e))),
                Value::Vector(_) => self.err(&op, "cannot raise a basis element to a power"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self, sc: &Scope) -> PResult<Value> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => Ok(Value::Scalar(Poly::constant(s.parse::<Rational>().unwrap()))),
            Tok::Sym("(") => {
                let v = self.expr(sc)?;
                self.expect_sym(")")?;
                Ok(v)
            }
            Tok::Ident(name) => {
                if let Some(k) = sc.basis.and_then(|b| b.iter().position(|x| x == name)) {
                    let n = sc.basis.unwrap().len();
                    let mut v = vec![Poly::zero(); n];
                    v[k] = Poly::one();
                    Ok(Value::Vector(v))
                } else if sc.vars.contains(&name.as_str()) {
                    Ok(Value::Scalar(Poly::var(Var::named(name))))
                } else if RESERVED.contains(&name.as_str()) {
                    self.err(&t, format!("indeterminate `{name}` is not allowed here"))
                } else {
                    self.err(&t, format!("unknown name `{name}`"))
                }
            }
            other => self.err(&t, format!("expected an expression, found {}", Self::describe(other))),
        }
    }

    fn vector_expr(&mut self, sc: &Scope) -> PResult<Vec<Poly>> {
        let n = sc.basis.unwrap().len();
        let t = self.peek().clone();
        match self.expr(sc)? {
            Value::Vector(v) => Ok(v),
            Value::Scalar(p) if p.is_zero() => Ok(vec![Poly::zero(); n]),
            Value::Scalar(_) => self.err(&t, "expected a combination of basis elements"),
        }
    }

    fn scalar_expr(&mut self, sc: &Scope) -> PResult<Poly> {
        let t = self.peek().clone();
        match self.expr(sc)? {
            Value::Scalar(p) => Ok(p),
            Value::Vector(_) => self.err(&t, "expected a polynomial"),
        }
    }

    /// `[[a, b], [c, d]]` with the given shape.
    fn matrix(&mut self, rows: usize, cols: usize, vars: &[&str]) -> PResult<PolyMatrix> {
        let open = self.expect_sym("[")?;
        let sc = Scope { basis: None, vars };
        let mut out: Vec<Vec<Poly>> = Vec::new();
        loop {
            let row_tok = self.expect_sym("[")?;
            let mut row = Vec::new();
            loop {
                row.push(self.scalar_expr(&sc)?);
                if self.is_sym(",") {
                    self.next();
                } else {
                    break;
                }
            }
            self.expect_sym("]")?;
            if row.len() != cols {
                return self.err(&row_tok, format!("row has {} entries, expected {cols}", row.len()));
            }
            out.push(row);
            if self.is_sym(",") {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym("]")?;
        if out.len() != rows {
            return self.err(&open, format!("matrix has {} rows, expected {rows}", out.len()));
        }
        Ok(PolyMatrix::from_rows(out).unwrap())
    }

    // Items.

    fn item(&mut self, doc: &mut Document) -> PResult<()> {
        let (kw, kt) = self.ident()?;
        let (name, nt) = self.ident()?;
        if doc.contains(&name) {
            return self.err(&nt, format!("{name} is already defined"));
        }
        let obj = match kw.as_str() {
            "algebra" => self.algebra(&kt)?,
            "conformal" => self.conformal(&kt)?,
            "rep" => self.rep(doc, &kt)?,
            "map" => self.map(doc)?,
            "form" => self.form(doc, &kt)?,
            "mockgd" => self.mockgd(&kt)?,
            "datum" => self.datum(doc)?,
            _ => return self.err(&kt, format!("unknown item kind `{kw}`")),
        };
        doc.insert(&name, obj).map_err(|e| ParseError::new(nt.line, nt.col, e.to_string()))
    }

    fn lib<T>(&self, at: &Token, r: jjconf::Result<T>) -> PResult<T> {
        r.map_err(|e| ParseError::new(at.line, at.col, e.to_string()))
    }

    fn reference<'d>(&mut self, doc: &'d Document) -> PResult<(String, &'d Object)> {
        let (name, t) = self.ident()?;
        match doc.get(&name) {
            Ok(o) => Ok((name, o)),
            Err(e) => self.err(&t, e.to_string()),
        }
    }

    fn conformal_ref(&mut self, doc: &Document) -> PResult<(String, ConformalAlgebra)> {
        let t = self.peek().clone();
        let (name, obj) = self.reference(doc)?;
        match obj {
            Object::Conformal(a) => Ok((name, a.clone())),
            other => self.err(&t, format!("{name} is a {}, expected a conformal algebra", other.kind())),
        }
    }

    /// `WORD x y = expr;` entries until `}`, each recorded once.
    fn entries(
        &mut self,
        words: &[&str],
        mut handle: impl FnMut(&mut Self, usize, &Token) -> PResult<(usize, usize)>,
    ) -> PResult<()> {
        let mut seen: Vec<(usize, usize, usize)> = Vec::new();
        while !self.is_sym("}") {
            let t = self.peek().clone();
            let w = match &t.tok {
                Tok::Ident(s) => words.iter().position(|w| w == s),
                _ => None,
            };
            let Some(w) = w else {
                return self.err(&t, format!("expected one of {}, found {}", words.join(", "), Self::describe(&t.tok)));
            };
            self.next();
            let (i, j) = handle(self, w, &t)?;
            if seen.contains(&(w, i, j)) {
                return self.err(&t, format!("duplicate {} entry", words[w]));
            }
            seen.push((w, i, j));
            self.expect_sym(";")?;
        }
        self.expect_sym("}")?;
        Ok(())
    }

    fn products(&mut self, word: &str, basis: &[String], vars: &[&str]) -> PResult<Vec<(usize, usize, Vec<Poly>)>> {
        let mut out = Vec::new();
        self.entries(&[word], |p, _, _| {
            let i = p.basis_index(basis)?;
            let j = p.basis_index(basis)?;
            p.expect_sym("=")?;
            let v = p.vector_expr(&Scope { basis: Some(basis), vars })?;
            out.push((i, j, v));
            Ok((i, j))
        })?;
        Ok(out)
    }

    fn finite(&mut self, word: &str, basis: &[String], at: &Token) -> PResult<FiniteAlgebra> {
        let prods = self.products(word, basis, &[])?;
        let prods = prods
            .into_iter()
            .map(|(i, j, v)| (i, j, v.iter().map(|p| p.constant_term()).collect()))
            .collect::<Vec<_>>();
        self.lib(at, FiniteAlgebra::from_products(basis.to_vec(), prods))
    }

    fn algebra(&mut self, at: &Token) -> PResult<Object> {
        self.expect_sym("{")?;
        let n = self.size_line("dim")?;
        let basis = self.basis_line(n, "e")?;
        Ok(Object::Algebra(self.finite("prod", &basis, at)?))
    }

    fn conformal(&mut self, at: &Token) -> PResult<Object> {
        self.expect_sym("{")?;
        let n = self.size_line("rank")?;
        let basis = self.basis_line(n, "e")?;
        let prods = self.products("lprod", &basis, &["D", "L"])?;
        Ok(Object::Conformal(self.lib(at, ConformalAlgebra::from_products(basis, prods))?))
    }

    fn rep(&mut self, doc: &Document, at: &Token) -> PResult<Object> {
        self.keyword("of")?;
        let (aname, a) = self.conformal_ref(doc)?;
        self.expect_sym("{")?;
        let m = self.size_line("rank")?;
        let basis = self.basis_line(m, "m")?;
        let mut action = vec![PolyMatrix::zeros(m, m); a.rank()];
        self.entries(&["act"], |p, _, _| {
            let i = p.basis_index(a.basis_names())?;
            p.expect_sym(":")?;
            action[i] = p.matrix(m, m, &["D", "L"])?;
            Ok((i, 0))
        })?;
        let rep = self.lib(at, ConformalRep::new(a, basis, action))?;
        Ok(Object::Rep { algebra: aname, rep })
    }

    fn endpoint(&mut self, doc: &Document) -> PResult<(String, usize)> {
        let t = self.peek().clone();
        let (name, obj) = self.reference(doc)?;
        match obj.module_rank() {
            Some(r) => Ok((name, r)),
            None => self.err(&t, format!("a {} cannot be a map endpoint", obj.kind())),
        }
    }

    fn map(&mut self, doc: &Document) -> PResult<Object> {
        self.expect_sym(":")?;
        let (source, cols) = self.endpoint(doc)?;
        self.expect_sym("->")?;
        let (target, rows) = self.endpoint(doc)?;
        self.expect_sym("{")?;
        let matrix = self.matrix(rows, cols, &["D", "L"])?;
        self.expect_sym("}")?;
        Ok(Object::Map { source, target, matrix })
    }

    fn form(&mut self, doc: &Document, at: &Token) -> PResult<Object> {
        self.keyword("on")?;
        let (algebra, a) = self.conformal_ref(doc)?;
        self.expect_sym("{")?;
        let phi = self.matrix(a.rank(), a.rank(), &["L"])?;
        self.expect_sym("}")?;
        let form = self.lib(at, ConformalBilinearForm::new(phi))?;
        Ok(Object::Form { algebra, form })
    }

    fn mockgd(&mut self, at: &Token) -> PResult<Object> {
        self.expect_sym("{")?;
        let n = self.size_line("dim")?;
        let basis = self.basis_line(n, "e")?;
        let mut star = FiniteAlgebra::zero(n);
        let mut circ = FiniteAlgebra::zero(n);
        let mut failure = None;
        self.entries(&["star", "circ"], |p, w, t| {
            let i = p.basis_index(&basis)?;
            let j = p.basis_index(&basis)?;
            p.expect_sym("=")?;
            let v = p.vector_expr(&Scope { basis: Some(&basis), vars: &[] })?;
            let v: Vec<Rational> = v.iter().map(|q| q.constant_term()).collect();
            let target = if w == 0 { &mut star } else { &mut circ };
            if let Err(e) = target.set(i, j, v) {
                failure.get_or_insert((t.clone(), e));
            }
            Ok((i, j))
        })?;
        if let Some((t, e)) = failure {
            return self.lib(&t, Err(e));
        }
        let star = self.lib(at, star.with_basis_names(basis.clone()))?;
        let circ = self.lib(at, circ.with_basis_names(basis))?;
        Ok(Object::MockGD(self.lib(at, MockGD::new(star, circ))?))
    }

    fn datum(&mut self, doc: &Document) -> PResult<Object> {
        self.expect_sym("{")?;
        self.keyword("J")?;
        let (jname, j) = self.conformal_ref(doc)?;
        self.expect_sym(";")?;
        let m = self.size_line("Krank")?;
        let kb = self.basis_line(m, "x")?;
        let jb = j.basis_names().to_vec();
        let mut d = ExtendingDatum::zero(j, kb.clone());
        self.entries(&["actJ", "actK", "omega", "circ"], |p, w, t| {
            let i = p.basis_index(&kb)?;
            let second = if w < 2 { &jb } else { &kb };
            let k = p.basis_index(second)?;
            p.expect_sym("=")?;
            let out = if w % 2 == 0 { &jb } else { &kb };
            let v = p.vector_expr(&Scope { basis: Some(out), vars: &["D", "L"] })?;
            let r = match w {
                0 => d.set_act_j(i, k, v),
                1 => d.set_act_k(i, k, v),
                2 => d.set_omega(i, k, v),
                _ => d.set_circ(i, k, v),
            };
            p.lib(t, r)?;
            Ok((i, k))
        })?;
        Ok(Object::Datum { j: jname, datum: d })
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-&p),
        Value::Vector(v) => Value::Vector(v.iter().map(|p| -p).collect()),
    }
}

/// Parses a whole document.
pub fn parse(src: &str) -> Result<Document, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let mut doc = Document::new();
    while p.peek().tok != Tok::Eof {
        p.item(&mut doc)?;
    }
    Ok(doc)
}

/// Parses a single element `expr` over `basis`, with coefficients in `vars`.
/// Parameters other than `D` become the element's parameters.
pub fn parse_element(src: &str, basis: &[String], vars: &[&str]) -> Result<ParamElement, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let v = p.vector_expr(&Scope { basis: Some(basis), vars })?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.err(&t, format!("unexpected {}", Parser::describe(&t.tok)));
    }
    Ok(ParamElement::new(v))
}

/// Parses a polynomial over `vars`.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<Poly, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let v = p.scalar_expr(&Scope { basis: None, vars })?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.err(&t, format!("unexpected {}", Parser::describe(&t.tok)));
    }
    Ok(v)
}
