use crate::error::{Error, Result};
use crate::polyring::{Poly, Var};
use crate::scalar::Scalar;

use super::ParamElement;

/// Structure constants of a conformal bilinear map `U × V → W[λ]` between
/// free modules: entry `(i, j)` is the coordinate vector of
/// `u_i λ v_j` in `W`, written with `D` for the ∂ of `W` and `L` for λ.
#[derive(Clone, PartialEq, Debug)]
pub struct BilinearTable<S: Scalar> {
    left: usize,
    right: usize,
    out: usize,
    entries: Vec<Vec<Poly<S>>>,
}

impl<S: Scalar> BilinearTable<S> {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        BilinearTable {
            left,
            right,
            out,
            entries: vec![vec![Poly::zero(); out]; left * right],
        }
    }

    pub fn from_fn(
        left: usize,
        right: usize,
        out: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Poly<S>>,
    ) -> Result<Self> {
        let mut t = Self::zero(left, right, out);
        for i in 0..left {
            for j in 0..right {
                t.set(i, j, f(i, j))?;
            }
        }
        Ok(t)
    }

    pub fn left_rank(&self) -> usize {
        self.left
    }

    pub fn right_rank(&self) -> usize {
        self.right
    }

    pub fn out_rank(&self) -> usize {
        self.out
    }

    pub fn get(&self, i: usize, j: usize) -> &[Poly<S>] {
        &self.entries[i * self.right + j]
    }

    /// Sets entry `(i, j)`; its polynomials must only involve `D` and `L`.
    pub fn set(&mut self, i: usize, j: usize, v: Vec<Poly<S>>) -> Result<()> {
        if i >= self.left || j >= self.right {
            return Err(Error::Shape(format!(
                "entry ({i}, {j}) outside a {}x{} table",
                self.left, self.right
            )));
        }
        if v.len() != self.out {
            return Err(Error::RankMismatch {
                expected: self.out,
                found: v.len(),
            });
        }
        for p in &v {
            if let Some(bad) = p.vars().into_iter().find(|x| *x != Var::D && *x != Var::L) {
                return Err(Error::ForeignVar(bad.to_string()));
            }
        }
        self.entries[i * self.right + j] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &[Poly<S>])> {
        self.entries
            .iter()
            .enumerate()
            .map(|(idx, v)| ((idx / self.right, idx % self.right), v.as_slice()))
    }

    pub(crate) fn map_entries(&self, f: impl Fn(usize, usize, &[Poly<S>]) -> Vec<Poly<S>>) -> Self {
        let mut out = self.clone();
        for i in 0..self.left {
            for j in 0..self.right {
                out.entries[i * self.right + j] = f(i, j, self.get(i, j));
            }
        }
        out
    }

    /// `x_t y`, the λ-product evaluated at the fresh parameter `t`:
    ///
    /// `result_k = sum_{i,j} x_i[D ↦ -t] * y_j[D ↦ t + D] * C_{ij,k}[L ↦ t]`.
    ///
    /// The left coefficient sees `∂ ↦ -t` and the right one `∂ ↦ t + ∂`, so
    /// both sesquilinearity rules hold for arbitrary arguments.
    pub fn apply(&self, x: &ParamElement<S>, y: &ParamElement<S>, t: &Var) -> Result<ParamElement<S>> {
        if x.rank() != self.left {
            return Err(Error::RankMismatch {
                expected: self.left,
                found: x.rank(),
            });
        }
        if y.rank() != self.right {
            return Err(Error::RankMismatch {
                expected: self.right,
                found: y.rank(),
            });
        }
        if *t == Var::D || x.params().contains(t) || y.params().contains(t) {
            return Err(Error::ParamCollision(t.to_string()));
        }
        let tp = Poly::var(t.clone());
        let minus_t = -&tp;
        let shifted = &tp + &Poly::var(Var::D);

        let xs: Vec<(usize, Poly<S>)> = x
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.substitute(&Var::D, &minus_t)))
            .collect();
        let ys: Vec<(usize, Poly<S>)> = y
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.substitute(&Var::D, &shifted)))
            .collect();

        let mut out = vec![Poly::zero(); self.out];
        for (i, xi) in &xs {
            for (j, yj) in &ys {
                let entry = self.get(*i, *j);
                if entry.iter().all(Poly::is_zero) {
                    continue;
                }
                let factor = xi * yj;
                for (k, c) in entry.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let c = c.substitute(&Var::L, &tp);
                    out[k] += &(&factor * &c);
                }
            }
        }
        let mut params = x.params().clone();
        params.extend(y.params().iter().cloned());
        params.insert(t.clone());
        ParamElement::with_params(out, params)
    }
}
