//! Generic Verma module actions and the braiding on tensor powers.

use crate::algebra::qnum::{q_binomial, q_lambda_shift, q_number, QFraction};
use crate::algebra::{rat, LaurentPoly, RingMatrix};
use crate::error::{Error, Result};

use super::WeightBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    H,
    E,
    F,
}

/// `Hat` is the basis with `E v̂_i = v̂_{i-1}`; `Plain` the one with
/// `F v_i = [i+1] v_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Hat,
    Plain,
}

/// Coefficient of a Verma action on a basis vector. `H` acts by the
/// scalar `λ - offset`, which lies outside the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionCoeff {
    Zero,
    Weight { offset: u32 },
    Ring(QFraction),
}

/// Action of `gen` on the `i`-th basis vector: `H` keeps the index, `E`
/// lowers it by one and `F` raises it by one.
pub fn verma_action(gen: Generator, i: u32, flavor: Flavor) -> ActionCoeff {
    match (gen, flavor) {
        (Generator::H, _) => ActionCoeff::Weight { offset: 2 * i },
        (Generator::E, _) if i == 0 => ActionCoeff::Zero,
        (Generator::E, Flavor::Hat) => ActionCoeff::Ring(QFraction::polynomial(LaurentPoly::one())),
        (Generator::E, Flavor::Plain) => ActionCoeff::Ring(q_lambda_shift(i - 1)),
        (Generator::F, Flavor::Hat) => {
            ActionCoeff::Ring(QFraction::polynomial(q_number(i + 1)).mul(&q_lambda_shift(i)))
        }
        (Generator::F, Flavor::Plain) => ActionCoeff::Ring(QFraction::polynomial(q_number(i + 1))),
    }
}

fn su(coeff: i64, s: i32, u: i32) -> LaurentPoly {
    LaurentPoly::monomial(rat(coeff), [0, 0, s, u])
}

/// Coefficient of `v_{j+k} ⊗ v_{i-k}` in the braiding of `v_i ⊗ v_j`:
///
/// ```text
/// u^{-(i+j)} s^{i+j} s^{2(i-k)(j+k)} s^{k(k-1)/2} [k+j]!/([k]![j]!) Π_{l<k} f_l
/// ```
///
/// with `f_l = u s^{-1-j-l} - u^{-1} s^{1+j+l}` (hat) or
/// `f_l = u s^{l-i} - u^{-1} s^{i-l}` (plain).
pub fn r_coefficient(i: usize, j: usize, k: usize, flavor: Flavor) -> Result<LaurentPoly> {
    assert!(k <= i, "transfer exceeds the first index");
    let (ii, jj, kk) = (i as i32, j as i32, k as i32);
    let s_power = ii + jj + 2 * (ii - kk) * (jj + kk) + kk * (kk - 1) / 2;
    let mut c = su(1, s_power, -(ii + jj)) * q_binomial((k + j) as u32, k as u32)?;
    for l in 0..kk {
        let factor = match flavor {
            Flavor::Hat => su(1, -1 - jj - l, 1) - su(1, 1 + jj + l, -1),
            Flavor::Plain => su(1, l - ii, 1) - su(1, ii - l, -1),
        };
        c = c * factor;
    }
    Ok(c)
}

/// The braiding at tensor positions `(position, position + 1)` (1-based) on
/// the span of `basis`. Images leaving a bounded basis are dropped, which
/// is the action on the quotient by the higher vectors.
pub fn braiding_on(basis: &WeightBasis, position: usize, flavor: Flavor) -> Result<RingMatrix> {
    check_position(basis.n(), position)?;
    let p = position - 1;
    let mut mat = RingMatrix::zeros(basis.len(), basis.len());
    for (col, t) in basis.tuples().iter().enumerate() {
        let (i, j) = (t[p], t[p + 1]);
        for k in 0..=i {
            let mut f = t.clone();
            f[p] = j + k;
            f[p + 1] = i - k;
            if let Some(row) = basis.lookup(&f) {
                mat.add_to(row, col, &r_coefficient(i, j, k, flavor)?);
            }
        }
    }
    Ok(mat.with_degbounds())
}

/// Inverse of a braiding matrix on `basis`. After undoing the flip the
/// matrix is a diagonal of monomials times a unipotent part, since the
/// transfer only lowers the index at `position`.
pub fn inverse_braiding_on(basis: &WeightBasis, position: usize, mat: &RingMatrix) -> Result<RingMatrix> {
    let flip = flip_on(basis, position)?;
    Ok(flip.mul(mat).inverse_unit_diagonal()?.mul(&flip).with_degbounds())
}

/// Permutation matrix swapping tensor factors `position` and `position + 1`.
pub fn flip_on(basis: &WeightBasis, position: usize) -> Result<RingMatrix> {
    check_position(basis.n(), position)?;
    let p = position - 1;
    let mut flip = RingMatrix::zeros(basis.len(), basis.len());
    for (col, t) in basis.tuples().iter().enumerate() {
        let mut f = t.clone();
        f.swap(p, p + 1);
        let row = basis
            .lookup(&f)
            .ok_or_else(|| Error::InvalidArgument("basis is not closed under the flip".into()))?;
        flip.set(row, col, LaurentPoly::one());
    }
    Ok(flip)
}

fn check_position(n: usize, position: usize) -> Result<()> {
    if position == 0 || position >= n {
        return Err(Error::InvalidArgument(format!(
            "braiding position {position} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// The braiding restricted to one weight block of the generic Verma
/// module's tensor power.
#[derive(Clone, Debug)]
pub struct RMatrixBlock {
    pub n: usize,
    pub m: usize,
    pub position: usize,
    pub flavor: Flavor,
    pub basis: WeightBasis,
    pub matrix: RingMatrix,
}

impl RMatrixBlock {
    pub fn inverse(&self) -> Result<RingMatrix> {
        inverse_braiding_on(&self.basis, self.position, &self.matrix)
    }
}

pub fn braiding_block(n: usize, m: usize, position: usize, flavor: Flavor) -> Result<RMatrixBlock> {
    let basis = WeightBasis::new(n, m);
    let matrix = braiding_on(&basis, position, flavor)?;
    Ok(RMatrixBlock { n, m, position, flavor, basis, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        assert_eq!(verma_action(Generator::E, 0, Flavor::Hat), ActionCoeff::Zero);
        let ActionCoeff::Ring(f0) = verma_action(Generator::F, 0, Flavor::Plain) else { panic!() };
        assert!(f0.to_polynomial().unwrap().is_one());
        let ActionCoeff::Ring(fhat) = verma_action(Generator::F, 0, Flavor::Hat) else { panic!() };
        assert_eq!(fhat.power, 1);
        assert_eq!(fhat.numerator, p("s^-1*u - s*u^-1"));
        assert_eq!(verma_action(Generator::H, 3, Flavor::Hat), ActionCoeff::Weight { offset: 6 });
    }

    #[test]
    fn smallest_blocks() {
        let b = braiding_block(2, 0, 1, Flavor::Hat).unwrap();
        assert!(b.matrix.is_identity());
        // basis (0,1), (1,0); v̂_1 ⊗ v̂_0 ↦ s u^-1 v̂_0 ⊗ v̂_1 + s u^-1 (u s^-1 - u^-1 s) v̂_1 ⊗ v̂_0
        let b = braiding_block(2, 1, 1, Flavor::Hat).unwrap();
        assert_eq!(b.matrix.entry(0, 1), p("s*u^-1"));
        assert_eq!(b.matrix.entry(1, 1), p("1 - s^2*u^-2"));
        assert_eq!(b.matrix.entry(1, 0), p("s*u^-1"));
        assert!(b.matrix.get(0, 0).is_none());
    }

    #[test]
    fn inverses_are_exact() {
        for flavor in [Flavor::Hat, Flavor::Plain] {
            for (n, m) in [(2, 2), (3, 2), (3, 3)] {
                for position in 1..n {
                    let b = braiding_block(n, m, position, flavor).unwrap();
                    assert!(b.matrix.mul(&b.inverse().unwrap()).is_identity());
                }
            }
        }
        let basis = WeightBasis::bounded(3, 3, 2);
        let r = braiding_on(&basis, 2, Flavor::Plain).unwrap();
        assert!(inverse_braiding_on(&basis, 2, &r).unwrap().mul(&r).is_identity());
    }

    #[test]
    fn blocks_preserve_weight_and_are_integral() {
        for flavor in [Flavor::Hat, Flavor::Plain] {
            let b = braiding_block(3, 3, 1, flavor).unwrap();
            assert_eq!(b.matrix.rows(), WeightBasis::generic_size(3, 3));
            assert!(b.matrix.entries().all(|(_, _, v)| v.is_integral()));
        }
    }

    #[test]
    fn bad_positions_are_rejected() {
        assert!(braiding_block(3, 1, 0, Flavor::Hat).is_err());
        assert!(braiding_block(3, 1, 3, Flavor::Hat).is_err());
    }
}
