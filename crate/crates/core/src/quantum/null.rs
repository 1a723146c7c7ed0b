//! Null vectors `Ŵ_{n,m} = ker E ∩ V̂_{n,m}` and the braid action on them.
//!
//! The kernel is parametrized by the coordinates of tuples with first index
//! zero: the equation of `E` at target `f` involves `f + e_1` with a unit
//! coefficient, so the remaining coordinates are solved for exactly, by
//! increasing first index, without leaving the Laurent ring.

use std::sync::OnceLock;

use num_integer::binomial;

use crate::algebra::{rat, LaurentPoly, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::verma::{braiding_on, inverse_braiding_on, Flavor};
use super::{check_strands, word_matrix, WeightBasis};

/// Candidate coproducts of `E`, with `K = q^{H/2}` acting on `v̂_i` by
/// `u s^{-1-2i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coproduct {
    /// `Δ(E) = E ⊗ K + 1 ⊗ E`
    KRight,
    /// `Δ(E) = E ⊗ 1 + K^{-1} ⊗ E`
    KInverseLeft,
}

impl Coproduct {
    pub const CANDIDATES: [Coproduct; 2] = [Coproduct::KRight, Coproduct::KInverseLeft];

    /// Scalar picked up by factor `r` when `E` acts at position `p`.
    fn spectator(self, r: usize, p: usize, index: usize) -> LaurentPoly {
        let k = |power: i32| LaurentPoly::monomial(rat(1), [0, 0, power * (-1 - 2 * index as i32), power]);
        match self {
            Coproduct::KRight if r > p => k(1),
            Coproduct::KInverseLeft if r < p => k(-1),
            _ => LaurentPoly::one(),
        }
    }
}

/// Matrix of the iterated coproduct of `E` from weight `m` to `m - 1`.
pub fn e_action(n: usize, m: usize, coproduct: Coproduct) -> RingMatrix {
    let source = WeightBasis::new(n, m);
    if m == 0 {
        return RingMatrix::zeros(0, source.len());
    }
    let target = WeightBasis::new(n, m - 1);
    let mut mat = RingMatrix::zeros(target.len(), source.len());
    for (col, t) in source.tuples().iter().enumerate() {
        for p in (0..n).filter(|&p| t[p] > 0) {
            let coeff: LaurentPoly = (0..n)
                .filter(|&r| r != p)
                .map(|r| coproduct.spectator(r, p, t[r]))
                .product();
            let mut f = t.clone();
            f[p] -= 1;
            let row = target.lookup(&f).expect("lowered tuple lies in the target basis");
            mat.add_to(row, col, &coeff);
        }
    }
    mat
}

/// Kernel of [`e_action`] as columns in `WeightBasis(n, m)` coordinates,
/// one column per tuple with first index zero (listed in `free`).
pub fn kernel_basis(n: usize, m: usize, coproduct: Coproduct) -> Result<(Vec<usize>, RingMatrix)> {
    let basis = WeightBasis::new(n, m);
    let free: Vec<usize> = (0..basis.len()).filter(|&k| basis.tuple(k)[0] == 0).collect();
    let mut kernel = RingMatrix::zeros(basis.len(), free.len());
    for (col, &f0) in free.iter().enumerate() {
        let mut v = vec![LaurentPoly::zero(); basis.len()];
        v[f0] = LaurentPoly::one();
        // lexicographic order visits first indices in increasing order
        for (k, t) in basis.tuples().iter().enumerate().filter(|(_, t)| t[0] > 0) {
            let mut target = t.clone();
            target[0] -= 1;
            let coeff_at = |p: usize| -> LaurentPoly {
                let mut src = target.clone();
                src[p] += 1;
                (0..n).filter(|&r| r != p).map(|r| coproduct.spectator(r, p, src[r])).product()
            };
            let mut rest = LaurentPoly::zero();
            for p in 1..n {
                let mut src = target.clone();
                src[p] += 1;
                let idx = basis.lookup(&src).expect("raised tuple lies in the basis");
                if !v[idx].is_zero() {
                    rest += &(&coeff_at(p) * &v[idx]);
                }
            }
            let lead_inv = coeff_at(0)
                .unit_inverse()
                .ok_or_else(|| Error::Consistency("first-factor coefficient of E is not a unit".into()))?;
            v[k] = -(&rest * &lead_inv);
        }
        for (row, value) in v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            kernel.set(row, col, value);
        }
    }
    if m > 0 && e_action(n, m, coproduct).mul(&kernel).nnz() != 0 {
        return Err(Error::Consistency(format!("kernel construction failed for (n, m) = ({n}, {m})")));
    }
    Ok((free, kernel))
}

/// Whether the kernel is preserved by every braiding and inverse braiding.
pub fn coproduct_is_invariant(coproduct: Coproduct, n: usize, m: usize) -> Result<bool> {
    let basis = WeightBasis::new(n, m);
    let (_, kernel) = kernel_basis(n, m, coproduct)?;
    if m == 0 {
        return Ok(true);
    }
    let e = e_action(n, m, coproduct);
    for position in 1..n {
        let r = braiding_on(&basis, position, Flavor::Hat)?;
        let rinv = inverse_braiding_on(&basis, position, &r)?;
        for g in [&r, &rinv] {
            if e.mul(&g.mul(&kernel)).nnz() != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Weight blocks on which the coproduct convention is decided.
pub const SELECTION_BLOCKS: [(usize, usize); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

/// The unique candidate whose kernel has the expected rank and is braid
/// invariant on [`SELECTION_BLOCKS`]; decided once per process.
pub fn selected_coproduct() -> Result<Coproduct> {
    static SELECTED: OnceLock<std::result::Result<Coproduct, String>> = OnceLock::new();
    SELECTED
        .get_or_init(|| {
            let mut passing = Vec::new();
            for c in Coproduct::CANDIDATES {
                let mut ok = true;
                for (n, m) in SELECTION_BLOCKS {
                    let rank = kernel_basis(n, m, c).map_err(|e| e.to_string())?.1.cols();
                    if rank != binomial(m + n - 2, m)
                        || !coproduct_is_invariant(c, n, m).map_err(|e| e.to_string())?
                    {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    passing.push(c);
                }
            }
            match passing.as_slice() {
                [c] => Ok(*c),
                other => Err(format!("expected exactly one invariant coproduct, found {other:?}")),
            }
        })
        .clone()
        .map_err(Error::Consistency)
}

/// The braid action on null vectors in the coordinates of the free tuples.
#[derive(Clone, Debug)]
pub struct NullSpaceRep {
    n: usize,
    m: usize,
    coproduct: Coproduct,
    kernel: RingMatrix,
    gens: Vec<RingMatrix>,
    invs: Vec<RingMatrix>,
}

impl NullSpaceRep {
    pub fn new(n: usize, m: usize, coproduct: Coproduct) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("null spaces need at least two strands".into()));
        }
        let basis = WeightBasis::new(n, m);
        let (free, kernel) = kernel_basis(n, m, coproduct)?;
        let expected = binomial(m + n - 2, m);
        if kernel.cols() != expected {
            return Err(Error::Consistency(format!(
                "null space of ({n}, {m}) has rank {} instead of {expected}; wrong coproduct convention",
                kernel.cols()
            )));
        }
        let e = e_action(n, m, coproduct);
        let all: Vec<usize> = (0..kernel.cols()).collect();
        let restrict = |g: &RingMatrix| -> Result<RingMatrix> {
            let image = g.mul(&kernel);
            if m > 0 && e.mul(&image).nnz() != 0 {
                return Err(Error::Consistency(format!(
                    "braiding does not preserve the null space of ({n}, {m})"
                )));
            }
            Ok(image.select(&free, &all).with_degbounds())
        };
        let mut gens = Vec::with_capacity(n - 1);
        let mut invs = Vec::with_capacity(n - 1);
        for position in 1..n {
            let r = braiding_on(&basis, position, Flavor::Hat)?;
            let rinv = inverse_braiding_on(&basis, position, &r)?;
            gens.push(restrict(&r)?);
            invs.push(restrict(&rinv)?);
        }
        Ok(Self { n, m, coproduct, kernel, gens, invs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coproduct(&self) -> Coproduct {
        self.coproduct
    }

    pub fn rank(&self) -> usize {
        self.kernel.cols()
    }

    /// Kernel basis in `WeightBasis(n, m)` coordinates.
    pub fn kernel(&self) -> &RingMatrix {
        &self.kernel
    }

    pub fn letter(&self, g: i32) -> Result<&RingMatrix> {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= self.n {
            return Err(Error::InvalidBraid(format!("letter {g} on {} strands", self.n)));
        }
        Ok(if g > 0 { &self.gens[i - 1] } else { &self.invs[i - 1] })
    }

    pub fn word(&self, beta: &BraidWord) -> Result<RingMatrix> {
        check_strands(beta, self.n)?;
        word_matrix(self.rank(), beta, |g| self.letter(g).cloned())
    }

    pub fn trace(&self, beta: &BraidWord) -> Result<LaurentPoly> {
        Ok(self.word(beta)?.trace())
    }
}

/// `Ŵ_{n,m}` with the selected coproduct.
pub fn null_space(n: usize, m: usize) -> Result<NullSpaceRep> {
    NullSpaceRep::new(n, m, selected_coproduct()?)
}

/// Lawrence variables in quantum terms: `x = q z^{-1} = s^2 u^{-2}`,
/// `d = -q = -s^2`.
pub fn lawrence_to_quantum(p: &LaurentPoly) -> LaurentPoly {
    p.substitute_monomials(&[
        Some((rat(1), [0, 0, 2, -2])),
        Some((rat(-1), [0, 0, 2, 0])),
        None,
        None,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_one_coproduct_is_invariant() {
        assert_eq!(selected_coproduct().unwrap(), Coproduct::KRight);
        assert!(!coproduct_is_invariant(Coproduct::KInverseLeft, 3, 2).unwrap());
    }

    #[test]
    fn ranks() {
        for (n, m, rank) in [(2, 0, 1), (2, 1, 1), (3, 2, 3), (3, 3, 4), (4, 2, 6)] {
            assert_eq!(null_space(n, m).unwrap().rank(), rank);
        }
    }

    #[test]
    fn highest_weight_line_is_fixed() {
        let w = null_space(3, 0).unwrap();
        let beta = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        assert!(w.word(&beta).unwrap().is_identity());
    }

    #[test]
    fn two_strand_null_vector() {
        // (n, m) = (2, 1): v̂_0 ⊗ v̂_1 - s u^-1 v̂_1 ⊗ v̂_0 spans ker E
        let (_, k) = kernel_basis(2, 1, Coproduct::KRight).unwrap();
        assert_eq!(k.entry(0, 0), LaurentPoly::one());
        assert_eq!(k.entry(1, 0), "-s*u^-1".parse().unwrap());
    }

    #[test]
    fn inverse_letters_invert() {
        let w = null_space(3, 2).unwrap();
        for g in [1, 2] {
            assert!(w.letter(g).unwrap().mul(w.letter(-g).unwrap()).is_identity());
        }
    }
}
