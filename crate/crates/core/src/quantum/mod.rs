//! Quantum `sl_2` side: Verma module braidings, their null spaces, and the
//! finite-dimensional representations behind the colored Jones polynomial.
//!
//! Conventions: `s = q^{1/2}`, `u = z^{1/2}` with `z = q^{λ+1}`, so
//! `q^{λ/2} = u s^{-1}`. The braiding is normalized by `e^{-ħλ²/4}` and
//! composed with the flip, so all hat-flavor coefficients are Laurent
//! polynomials in `s, u`.

pub mod checks;
pub mod finite;
pub mod null;
pub mod verma;

pub use checks::{normalization_check, splitting_check, symmetry_check, yang_baxter_check};
pub use finite::{colored_jones, finite_rep, standard_rep, ColoredJones};

use std::collections::HashMap;

use num_integer::binomial;

use crate::algebra::RingMatrix;
use crate::braid::BraidWord;
use crate::error::{Error, Result};



pub use null::{null_space, selected_coproduct, Coproduct, NullSpaceRep};
pub use verma::{braiding_block, verma_action, ActionCoeff, Flavor, Generator, RMatrixBlock};

/// Index tuples `(i_1, …, i_n)` of a tensor basis, in lexicographic order,
/// optionally with every index below a cap.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    n: usize,
    m: usize,
    cap: Option<usize>,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WeightBasis {
    /// All tuples with `Σ i_j = m`.
    pub fn new(n: usize, m: usize) -> Self {
        Self::build(n, m, None)
    }

    /// Tuples with `Σ i_j = m` and every `i_j < cap`.
    pub fn bounded(n: usize, m: usize, cap: usize) -> Self {
        Self::build(n, m, Some(cap))
    }

    fn build(n: usize, m: usize, cap: Option<usize>) -> Self {
        fn extend(prefix: &mut Vec<usize>, left: usize, n: usize, cap: Option<usize>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() + 1 == n {
                if cap.is_none_or(|c| left < c) {
                    prefix.push(left);
                    out.push(prefix.clone());
                    prefix.pop();
                }
                return;
            }
            let top = cap.map_or(left, |c| left.min(c.saturating_sub(1)));
            for k in 0..=top {
                prefix.push(k);
                extend(prefix, left - k, n, cap, out);
                prefix.pop();
            }
        }
        let mut tuples = Vec::new();
        if n == 0 {
            if m == 0 {
                tuples.push(Vec::new());
            }
        } else {
            extend(&mut Vec::with_capacity(n), m, n, cap, &mut tuples);
        }
        let index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        Self { n, m, cap, tuples, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    pub fn lookup(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Unbounded size `C(m+n-1, n-1)`.
    pub fn generic_size(n: usize, m: usize) -> usize {
        if n == 0 {
            usize::from(m == 0)
        } else {
            binomial(m + n - 1, n - 1)
        }
    }
}

/// `M(g_k) ⋯ M(g_1)` from per-letter matrices.
pub(crate) fn word_matrix<F>(dim: usize, beta: &BraidWord, mut letter: F) -> Result<RingMatrix>
where
    F: FnMut(i32) -> Result<RingMatrix>,
{
    let mut acc = RingMatrix::identity(dim);
    let mut seen: HashMap<i32, RingMatrix> = HashMap::new();
    for &g in beta.letters() {
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(g) {
            slot.insert(letter(g)?);
        }
        acc = seen[&g].mul(&acc);
    }
    Ok(acc)
}

pub(crate) fn check_strands(beta: &BraidWord, n: usize) -> Result<()> {
    if beta.strands() != n {
        return Err(Error::InvalidArgument(format!(
            "braid on {} strands applied to a {n}-fold tensor power",
            beta.strands()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_basis_sizes() {
        for n in 1..5 {
            for m in 0..5 {
                let b = WeightBasis::new(n, m);
                assert_eq!(b.len(), WeightBasis::generic_size(n, m));
                assert!(b.tuples().windows(2).all(|w| w[0] < w[1]));
                assert!(b.tuples().iter().all(|t| t.iter().sum::<usize>() == m));
            }
        }
        assert_eq!(WeightBasis::new(2, 2).tuples(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn bounded_basis_matches_filter() {
        for (n, m, cap) in [(2, 2, 2), (3, 3, 2), (3, 4, 3), (2, 5, 3)] {
            let all = WeightBasis::new(n, m);
            let expected: Vec<_> =
                all.tuples().iter().filter(|t| t.iter().all(|&i| i < cap)).cloned().collect();
            assert_eq!(WeightBasis::bounded(n, m, cap).tuples(), expected.as_slice());
        }
    }
}
