//! The `.jjc` definition language: a line-oriented, single-pass format for
//! finite algebras, conformal algebras, representations, module maps,
//! bilinear forms, mock-GD bialgebras and extending data.
//!
//! Objects may only refer to objects defined above them. [`print`] emits a
//! canonical form that [`parse`] reads back to an equal [`Document`].

mod lexer;
mod parser;
mod printer;

use std::fmt;

use indexmap::IndexMap;
use jjconf::{
    ConformalAlgebra, ConformalBilinearForm, ConformalRep, ExtendingDatum, FiniteAlgebra, MockGD, PolyMatrix,
};

pub use parser::{parse, parse_element, parse_poly};
pub use printer::{print, print_object};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Algebra(FiniteAlgebra),
    Conformal(ConformalAlgebra),
    Rep { algebra: String, rep: ConformalRep },
    /// Rows index the target, columns the source.
    Map { source: String, target: String, matrix: PolyMatrix },
    Form { algebra: String, form: ConformalBilinearForm },
    MockGD(MockGD),
    Datum { j: String, datum: ExtendingDatum },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Conformal(_) => "conformal",
            Object::Rep { .. } => "rep",
            Object::Map { .. } => "map",
            Object::Form { .. } => "form",
            Object::MockGD(_) => "mockgd",
            Object::Datum { .. } => "datum",
        }
    }

    /// Rank of the free module an object contributes as a map endpoint:
    /// the algebra itself, a rep's module, or a datum's complement `K`.
    pub fn module_rank(&self) -> Option<usize> {
        match self {
            Object::Algebra(a) => Some(a.dim()),
            Object::Conformal(a) => Some(a.rank()),
            Object::Rep { rep, .. } => Some(rep.module_rank()),
            Object::MockGD(g) => Some(g.dim()),
            Object::Datum { datum, .. } => Some(datum.k_rank()),
            Object::Map { .. } | Object::Form { .. } => None,
        }
    }

    /// Names of the objects this one refers to.
    pub fn references(&self) -> Vec<&str> {
        match self {
            Object::Rep { algebra, .. } | Object::Form { algebra, .. } => vec![algebra],
            Object::Map { source, target, .. } => vec![source, target],
            Object::Datum { j, .. } => vec![j],
            _ => vec![],
        }
    }
}

/// Named objects in definition order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    objects: IndexMap<String, Object>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LookupError {
    Missing(String),
    WrongKind { name: String, expected: &'static str, found: &'static str },
    Duplicate(String),
    Dangling { name: String, reference: String },
}

impl fmt::Display for LookupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LookupError::Missing(n) => write!(f, "no object named {n}"),
            LookupError::WrongKind { name, expected, found } => {
                write!(f, "{name} is a {found}, expected a {expected}")
            }
            LookupError::Duplicate(n) => write!(f, "{n} is already defined"),
            LookupError::Dangling { name, reference } => write!(f, "{name} refers to undefined {reference}"),
        }
    }
}

impl std::error::Error for LookupError {}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $fn(&self, name: &str) -> Result<&$ty, LookupError> {
            match self.get(name)? {
                Object::$variant(x) => Ok(x),
                other => Err(LookupError::WrongKind {
                    name: name.into(),
                    expected: $kind,
                    found: other.kind(),
                }),
            }
        }
    };
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.objects.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.objects.contains_key(name)
    }

    /// Adds an object after every object it refers to.
    pub fn insert(&mut self, name: &str, obj: Object) -> Result<(), LookupError> {
        if self.contains(name) {
            return Err(LookupError::Duplicate(name.into()));
        }
        if let Some(r) = obj.references().into_iter().find(|r| !self.contains(r)) {
            return Err(LookupError::Dangling {
                name: name.into(),
                reference: r.into(),
            });
        }
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Object, LookupError> {
        self.objects.get(name).ok_or_else(|| LookupError::Missing(name.into()))
    }

    getter!(algebra, Algebra, FiniteAlgebra, "algebra");
    getter!(conformal, Conformal, ConformalAlgebra, "conformal");
    getter!(mock_gd, MockGD, MockGD, "mockgd");

    pub fn rep(&self, name: &str) -> Result<&ConformalRep, LookupError> {
        match self.get(name)? {
            Object::Rep { rep, .. } => Ok(rep),
            other => Err(self.wrong(name, "rep", other)),
        }
    }

    pub fn form(&self, name: &str) -> Result<(&str, &ConformalBilinearForm), LookupError> {
        match self.get(name)? {
            Object::Form { algebra, form } => Ok((algebra, form)),
            other => Err(self.wrong(name, "form", other)),
        }
    }

    pub fn map(&self, name: &str) -> Result<(&str, &str, &PolyMatrix), LookupError> {
        match self.get(name)? {
            Object::Map { source, target, matrix } => Ok((source, target, matrix)),
            other => Err(self.wrong(name, "map", other)),
        }
    }

    pub fn datum(&self, name: &str) -> Result<(&str, &ExtendingDatum), LookupError> {
        match self.get(name)? {
            Object::Datum { j, datum } => Ok((j, datum)),
            other => Err(self.wrong(name, "datum", other)),
        }
    }

    fn wrong(&self, name: &str, expected: &'static str, found: &Object) -> LookupError {
        LookupError::WrongKind {
            name: name.into(),
            expected,
            found: found.kind(),
        }
    }

    /// `name` together with everything it refers to, transitively, as a
    /// standalone document.
    pub fn closure(&self, name: &str) -> Result<Document, LookupError> {
        let mut keep = vec![name.to_string()];
        let mut i = 0;
        while i < keep.len() {
            for r in self.get(&keep[i].clone())?.references() {
                if !keep.iter().any(|k| k == r) {
                    keep.push(r.to_string());
                }
            }
            i += 1;
        }
        let mut out = Document::new();
        for (k, v) in &self.objects {
            if keep.contains(k) {
                out.objects.insert(k.clone(), v.clone());
            }
        }
        Ok(out)
    }
}
