use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// An indeterminate.
///
/// `D` stands for the derivation ∂ of the underlying module, `L`, `M`, `N`
/// for the formal parameters λ, μ, ν. Any other identifier is a named
/// parameter; names starting with `_` are reserved for internal fresh
/// parameters and never appear in results returned to callers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Var {
    D,
    L,
    M,
    N,
    Named(Arc<str>),
}

impl Var {
    pub fn named(name: &str) -> Self {
        match name {
            "D" => Var::D,
            "L" => Var::L,
            "M" => Var::M,
            "N" => Var::N,
            other => Var::Named(Arc::from(other)),
        }
    }

    /// Internal parameter number `i`; cannot collide with parsed names.
    pub fn fresh(i: usize) -> Self {
        Var::Named(Arc::from(format!("_t{i}").as_str()))
    }

    pub fn name(&self) -> &str {
        match self {
            Var::D => "D",
            Var::L => "L",
            Var::M => "M",
            Var::N => "N",
            Var::Named(s) => s,
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Var::Named(s) if s.starts_with('_'))
    }

    fn rank(&self) -> u8 {
        match self {
            Var::D => 0,
            Var::L => 1,
            Var::M => 2,
            Var::N => 3,
            Var::Named(_) => 4,
        }
    }
}

/// `D < L < M < N < named`, named ones alphabetically. Earlier variables
/// are more significant in the monomial order.
impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.name().cmp(other.name()))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
