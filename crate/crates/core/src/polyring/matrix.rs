use std::fmt;

use super::{Poly, Var};
use crate::scalar::Scalar;

/// A dense matrix of polynomials, row major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Poly<S>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Builds from nested rows; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Poly<S>>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<S>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<S> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<S>) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly<S>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly<S>> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&Poly<S>) -> Poly<S>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, x: &Var, e: &Poly<S>) -> Self {
        self.map(|p| p.substitute(x, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                acc += &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|p| p.scale(c))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Determinant by cofactor expansion along the first row. The matrices
    /// here have rank at most a handful, so no pivoting scheme is needed.
    pub fn det(&self) -> Poly<S> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => Poly::one(),
            1 => self.data[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = Poly::zero();
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let term = self.get(0, j) * &self.minor(0, j).det();
                    if j % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        }
    }

    /// The classical adjoint, `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    /// Inverse over the polynomial ring, which exists exactly when the
    /// determinant is a nonzero constant.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let det = self.det().as_constant()?;
        if det.is_zero() {
            return None;
        }
        Some(self.adjugate().scale(&(S::one() / det)))
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .det()
                .as_constant()
                .is_some_and(|c| !c.is_zero())
    }
}

impl<S: Scalar> fmt::Debug for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = PolyMatrix<Rational>;

    fn p(n: i64) -> Poly<Rational> {
        Poly::int(n)
    }

    #[test]
    fn unimodular_inverse() {
        let d = Poly::var(Var::D);
        let t = M::from_rows(vec![vec![p(1), d.clone()], vec![p(0), p(1)]]).unwrap();
        assert!(t.is_unimodular());
        let inv = t.inverse().unwrap();
        assert_eq!(inv.get(0, 1), &-&d);
        assert_eq!(t.mul(&inv), M::identity(2));
    }

    #[test]
    fn singular_and_non_constant() {
        let diag = M::from_rows(vec![vec![p(0), p(0)], vec![p(0), p(1)]]).unwrap();
        assert!(diag.det().is_zero());
        assert!(diag.inverse().is_none());
        let l = Poly::var(Var::L);
        let f = M::from_rows(vec![vec![p(0), l.clone()], vec![l.clone(), p(0)]]).unwrap();
        assert_eq!(f.det(), -&(&l * &l));
        assert!(!f.is_unimodular());
    }

    #[test]
    fn adjugate_identity_3x3() {
        let d = Poly::var(Var::D);
        let a = M::from_rows(vec![
            vec![p(2), d.clone(), p(0)],
            vec![p(1), p(1), p(3)],
            vec![d.clone(), p(0), p(1)],
        ])
        .unwrap();
        let det = a.det();
        let prod = a.adjugate().mul(&a);
        assert_eq!(prod, M::identity(3).map(|e| e * &det));
    }
}
