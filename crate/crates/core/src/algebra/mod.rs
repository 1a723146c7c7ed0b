//! Exact rings, truncated series, and matrices.

pub mod eigen;
pub mod laurent;
pub mod matrix;
pub mod qnum;
pub mod ring;
pub mod series;
pub mod tail;

use std::collections::BTreeMap;

pub use laurent::{rat, rat_frac, Exponents, LaurentPoly, Rational, Var};
pub use matrix::{DegBounds, RingMatrix, SparseMatrix};
pub use ring::{ExactDivRing, Ring, UnitRing};
pub use series::{series_exp_substitute, Binding, HbarPoly, HbarSeries};
pub use tail::LaurentTail;

/// All compositions of `total` into `parts` nonnegative parts, in
/// decreasing lexicographic order, so that for `total = 1` the list is the
/// standard basis `δ_1, δ_2, …`.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, left: usize, parts: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == parts {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            extend(prefix, left - k, parts, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    match parts {
        0 => {
            if total == 0 {
                out.push(Vec::new());
            }
        }
        _ => extend(&mut Vec::with_capacity(parts), total, parts, &mut out),
    }
    out
}

/// The `m`-th symmetric power of a square matrix on the monomial basis of
/// degree-`m` monomials, ordered as by [`compositions`]. Column
/// `y^e` is the expansion of `Π_j (A y_j)^{e_j}`.
pub fn symmetric_power<R: Ring>(a: &SparseMatrix<R>, m: usize) -> SparseMatrix<R> {
    assert!(a.is_square(), "symmetric power of a non-square matrix");
    let dim = a.rows();
    let basis = compositions(m, dim);
    let index: BTreeMap<&[usize], usize> =
        basis.iter().enumerate().map(|(k, e)| (e.as_slice(), k)).collect();
    let mut out = SparseMatrix::zeros(basis.len(), basis.len());
    for (col, e) in basis.iter().enumerate() {
        let mut poly: BTreeMap<Vec<usize>, R> = BTreeMap::new();
        poly.insert(vec![0; dim], R::one());
        for (j, &power) in e.iter().enumerate() {
            for _ in 0..power {
                let mut next: BTreeMap<Vec<usize>, R> = BTreeMap::new();
                for (mono, c) in &poly {
                    for (&row, entry) in a.column(j) {
                        let mut m2 = mono.clone();
                        m2[row] += 1;
                        let t = c.mul_ref(entry);
                        next.entry(m2)
                            .and_modify(|v| v.add_assign_ref(&t))
                            .or_insert(t);
                    }
                }
                next.retain(|_, v| !v.is_zero());
                poly = next;
            }
        }
        for (mono, c) in poly {
            out.add_to(index[mono.as_slice()], col, &c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    #[test]
    fn composition_counts_and_order() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        for parts in 1..5 {
            for total in 0..6 {
                assert_eq!(compositions(total, parts).len(), binomial(total + parts - 1, total));
            }
        }
    }

    #[test]
    fn symmetric_square_of_diagonal() {
        let a = RingMatrix::from_dense(&[
            vec![LaurentPoly::var(Var::X), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::var(Var::D)],
        ]);
        let s2 = symmetric_power(&a, 2);
        assert_eq!(s2.trace(), "x^2 + x*d + d^2".parse().unwrap());
        assert!(symmetric_power(&a, 0).is_identity());
        assert_eq!(symmetric_power(&a, 1), a);
    }

    #[test]
    fn symmetric_power_is_multiplicative() {
        let p = |t: &str| -> LaurentPoly { t.parse().unwrap() };
        let a = RingMatrix::from_dense(&[vec![p("x"), p("1")], vec![p("2"), p("-x^-1")]]);
        let b = RingMatrix::from_dense(&[vec![p("1"), p("d")], vec![p("0"), p("x")]]);
        for m in 0..4 {
            assert_eq!(symmetric_power(&a.mul(&b), m), symmetric_power(&a, m).mul(&symmetric_power(&b, m)));
        }
    }
}
