//! Sparse column-major matrices over a [`Ring`].

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::laurent::{LaurentPoly, Var};
use super::ring::{ExactDivRing, Ring, UnitRing};
use crate::error::{Error, Result};

/// Per-variable exponent intervals containing the support of every entry.
/// A variable that never occurs has interval `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DegBounds {
    pub ranges: [(i32, i32); 4],
}

impl DegBounds {
    pub const POINT: DegBounds = DegBounds { ranges: [(0, 0); 4] };

    pub fn of_poly(p: &LaurentPoly) -> Option<DegBounds> {
        if p.is_zero() {
            return None;
        }
        let mut ranges = [(0, 0); 4];
        for v in Var::ALL {
            ranges[v.index()] = p.degree_range(v).unwrap_or((0, 0));
        }
        Some(DegBounds { ranges })
    }

    pub fn range(&self, v: Var) -> (i32, i32) {
        self.ranges[v.index()]
    }

    pub fn hull(&self, other: &DegBounds) -> DegBounds {
        let mut ranges = self.ranges;
        for (r, o) in ranges.iter_mut().zip(other.ranges) {
            *r = (r.0.min(o.0), r.1.max(o.1));
        }
        DegBounds { ranges }
    }

    pub fn sum(&self, other: &DegBounds) -> DegBounds {
        let mut ranges = self.ranges;
        for (r, o) in ranges.iter_mut().zip(other.ranges) {
            *r = (r.0 + o.0, r.1 + o.1);
        }
        DegBounds { ranges }
    }

    pub fn contains(&self, p: &LaurentPoly) -> bool {
        p.terms().all(|(e, _)| {
            self.ranges
                .iter()
                .zip(e)
                .all(|(&(lo, hi), &k)| lo <= k && k <= hi)
        })
    }
}

#[derive(Clone, Debug)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    columns: Vec<BTreeMap<usize, R>>,
    degbounds: Option<DegBounds>,
}

/// Matrix over `Z[x^±1, d^±1, s^±1, u^±1]` (rational coefficients allowed).
pub type RingMatrix = SparseMatrix<LaurentPoly>;

impl<R: Ring> PartialEq for SparseMatrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.columns == other.columns
    }
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![BTreeMap::new(); cols],
            degbounds: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (k, col) in m.columns.iter_mut().enumerate() {
            col.insert(k, R::one());
        }
        m.degbounds = Some(DegBounds::POINT);
        m
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, R)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn from_dense(dense: &[Vec<R>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].insert(r, v.clone());
                }
            }
        }
        m
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

    pub fn degbounds(&self) -> Option<&DegBounds> {
        self.degbounds.as_ref()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&R> {
        self.columns[c].get(&r)
    }

    pub fn entry(&self, r: usize, c: usize) -> R {
        self.get(r, c).cloned().unwrap_or_else(R::zero)
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, R> {
        &self.columns[c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.degbounds = None;
        if v.is_zero() {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &R) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        self.degbounds = None;
        let col = &mut self.columns[c];
        match col.get_mut(&r) {
            Some(cur) => {
                cur.add_assign_ref(v);
                if cur.is_zero() {
                    col.remove(&r);
                }
            }
            None => {
                col.insert(r, v.clone());
            }
        }
    }

    /// Nonzero entries `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = R::zero();
        for (k, col) in self.columns.iter().enumerate() {
            if let Some(v) = col.get(&k) {
                t.add_assign_ref(v);
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.columns.iter().enumerate().all(|(k, col)| {
                col.len() == 1 && col.get(&k).is_some_and(|v| v.is_one())
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.columns[r].insert(c, v.clone());
        }
        t.degbounds = self.degbounds;
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut dense = vec![vec![R::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            dense[r][c] = v.clone();
        }
        dense
    }

    pub fn map<S: Ring, F>(&self, f: F) -> SparseMatrix<S>
    where
        F: Fn(&R) -> S + Sync,
        R: Sync,
    {
        let columns = self
            .columns
            .par_iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(&r, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((r, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
            degbounds: None,
        }
    }

    /// Rows and columns picked by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_pos: BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for (r, v) in &self.columns[c] {
                if let Some(&rk) = row_pos.get(r) {
                    out.columns[k].insert(rk, v.clone());
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        out.degbounds = None;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = other.map(R::neg_ref);
        self.add(&neg)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    /// `self · other`, columns computed in parallel.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let columns: Vec<BTreeMap<usize, R>> = other
            .columns
            .par_iter()
            .map(|bcol| {
                let mut out: BTreeMap<usize, R> = BTreeMap::new();
                for (k, b) in bcol {
                    for (r, a) in &self.columns[*k] {
                        let prod = a.mul_ref(b);
                        match out.get_mut(r) {
                            Some(cur) => cur.add_assign_ref(&prod),
                            None => {
                                out.insert(*r, prod);
                            }
                        }
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect();
        let degbounds = match (&self.degbounds, &other.degbounds) {
            (Some(a), Some(b)) => Some(a.sum(b)),
            _ => None,
        };
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
            degbounds,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<R>
    where
        R: ExactDivRing,
    {
        if !self.is_square() {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        det_bareiss(self.to_dense())
    }

    /// Exact inverse by Gauss–Jordan elimination using only unit pivots.
    pub fn inverse_unit_pivot(&self) -> Result<Self>
    where
        R: UnitRing,
    {
        if !self.is_square() {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut inv: Vec<Vec<R>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { R::one() } else { R::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .filter_map(|r| a[r][col].unit_inverse().map(|inv| (r, inv)))
                .min_by_key(|(r, _)| a[*r].iter().filter(|v| !v.is_zero()).count());
            let Some((p, pinv)) = pivot_row else {
                return Err(Error::NotInvertible(format!("no unit pivot in column {col}")));
            };
            a.swap(col, p);
            inv.swap(col, p);
            for v in a[col].iter_mut() {
                *v = v.mul_ref(&pinv);
            }
            for v in inv[col].iter_mut() {
                *v = v.mul_ref(&pinv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let t = factor.mul_ref(&a[col][c]);
                        a[r][c] = a[r][c].sub_ref(&t);
                    }
                    if !inv[col][c].is_zero() {
                        let t = factor.mul_ref(&inv[col][c]);
                        inv[r][c] = inv[r][c].sub_ref(&t);
                    }
                }
            }
        }
        Ok(Self::from_dense(&inv))
    }

    pub fn diagonal(values: Vec<R>) -> Self {
        let n = values.len();
        Self::from_entries(n, n, values.into_iter().enumerate().map(|(k, v)| (k, k, v)))
    }

    /// Kronecker product; the row index of `self` is the more significant.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.mul_ref(b));
            }
        }
        out
    }

    /// Inverse of `D (I + N)` with `D` a diagonal of units and `N`
    /// nilpotent, as `(Σ_k (-N)^k) D^{-1}`.
    pub fn inverse_unit_diagonal(&self) -> Result<Self>
    where
        R: UnitRing,
    {
        if !self.is_square() {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let diag_inv: Vec<R> = (0..n)
            .map(|k| {
                self.get(k, k)
                    .and_then(R::unit_inverse)
                    .ok_or_else(|| Error::NotInvertible(format!("diagonal entry {k} is not a unit")))
            })
            .collect::<Result<_>>()?;
        let dinv = Self::from_entries(n, n, diag_inv.into_iter().enumerate().map(|(k, v)| (k, k, v)));
        let minus_nil = Self::identity(n).sub(&dinv.mul(self));
        let mut sum = Self::identity(n);
        let mut power = Self::identity(n);
        for _ in 0..n {
            power = power.mul(&minus_nil);
            if power.nnz() == 0 {
                return Ok(sum.mul(&dinv));
            }
            sum = sum.add(&power);
        }
        Err(Error::NotInvertible("off-diagonal part is not nilpotent".into()))
    }
}

impl RingMatrix {
    /// Recomputes exact degree intervals from the entries.
    pub fn with_degbounds(mut self) -> Self {
        self.degbounds = self
            .entries()
            .filter_map(|(_, _, v)| DegBounds::of_poly(v))
            .reduce(|a, b| a.hull(&b))
            .or(Some(DegBounds::POINT));
        self
    }

    /// `true` when every entry lies within the stored intervals.
    pub fn degbounds_sound(&self) -> bool {
        match &self.degbounds {
            None => true,
            Some(b) => self.entries().all(|(_, _, v)| b.contains(v)),
        }
    }
}

pub fn det_bareiss<R: ExactDivRing>(mut a: Vec<Vec<R>>) -> Result<R> {
    let n = a.len();
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].mul_ref(&a[k][k]);
                let rhs = a[i][k].mul_ref(&a[k][j]);
                a[i][j] = lhs.sub_ref(&rhs).exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg_ref() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> RingMatrix {
        let dense: Vec<Vec<LaurentPoly>> =
            rows.iter().map(|r| r.iter().map(|t| p(t)).collect()).collect();
        RingMatrix::from_dense(&dense)
    }

    #[test]
    fn determinants() {
        assert!(RingMatrix::identity(3).det().unwrap().is_one());
        assert_eq!(m(&[&["1 + x^3"]]).det().unwrap(), p("1 + x^3"));
        assert_eq!(m(&[&["x", "0"], &["0", "d"]]).det().unwrap(), p("x*d"));
        assert_eq!(m(&[&["0", "1"], &["1", "0"]]).det().unwrap(), p("-1"));
        let a = m(&[&["x", "1", "d"], &["1", "x^-1", "0"], &["d", "2", "x + d"]]);
        // cofactor expansion along the first row
        let expect = p("x") * (p("x^-1") * p("x + d"))
            - p("1") * p("x + d")
            + p("d") * (p("2") - p("x^-1*d"));
        assert_eq!(a.det().unwrap(), expect);
    }

    #[test]
    fn unit_pivot_inverse() {
        let a = m(&[&["-x", "1"], &["0", "1"]]);
        let inv = a.inverse_unit_pivot().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(inv, m(&[&["-x^-1", "x^-1"], &["0", "1"]]));
        assert!(m(&[&["1 + x"]]).inverse_unit_pivot().is_err());
    }

    #[test]
    fn degbounds_propagate_through_products() {
        let a = m(&[&["x^2", "d^-1"], &["1", "x*d"]]).with_degbounds();
        let b = m(&[&["x^-3", "0"], &["d^2", "1"]]).with_degbounds();
        let prod = a.mul(&b);
        assert!(prod.degbounds().is_some());
        assert!(prod.degbounds_sound());
        assert_eq!(prod.degbounds().unwrap().range(Var::X), (-3, 2));
    }

    #[test]
    fn trace_and_transpose() {
        let a = m(&[&["x", "1"], &["d", "2"]]);
        assert_eq!(a.trace(), p("x + 2"));
        assert_eq!(a.transpose().entry(0, 1), p("d"));
        assert_eq!(a.select(&[1], &[0, 1]), m(&[&["d", "2"]]));
    }
}
