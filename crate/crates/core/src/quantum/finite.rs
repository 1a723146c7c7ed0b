//! The `α`-dimensional irreducible representation `V_α` and colored Jones
//! polynomials.
//!
//! Two constructions are kept apart on purpose. [`finite_rep`] specializes
//! the generic plain-flavor braiding at `λ = α - 1` (`u = s^α`) and passes
//! to the quotient by the vectors `v_i`, `i ≥ α`. [`standard_rep`] builds
//! the braiding of `V_α ⊗ V_α` directly from `E`, `F` and `K` matrices as
//! `flip ∘ s^{-λ²/2} q^{H⊗H/4} ∘ Σ_k c_k E^k ⊗ F^k` with
//! `c_k = s^{k(k-1)/2} (s - s^-1)^k / [k]!`.

use std::collections::BTreeMap;

use crate::algebra::qnum::{q_difference, q_factorial, q_number};
use crate::algebra::{
    rat, rat_frac, series_exp_substitute, Binding, HbarSeries, LaurentPoly, Rational, Ring,
    RingMatrix, SparseMatrix, Var,
};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::verma::{braiding_on, inverse_braiding_on, Flavor};
use super::{check_strands, word_matrix, WeightBasis};

/// Largest tensor power dimension `α^n` materialized densely.
pub const MAX_TENSOR_DIM: usize = 4096;

fn s_pow(k: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::S, k)
}

/// `u ↦ s^α`, i.e. `λ = α - 1`.
pub fn at_color(p: &LaurentPoly, alpha: usize) -> LaurentPoly {
    p.substitute_monomials(&[None, None, None, Some((rat(1), [0, 0, alpha as i32, 0]))])
}

fn tensor_dim(alpha: usize, n: usize) -> Result<usize> {
    if alpha < 2 {
        return Err(Error::InvalidArgument(format!("color {alpha} must be at least 2")));
    }
    match alpha.checked_pow(n as u32) {
        Some(dim) if dim <= MAX_TENSOR_DIM => Ok(dim),
        _ => Err(Error::InvalidArgument(format!(
            "V_{alpha}^(x{n}) exceeds the dense limit of {MAX_TENSOR_DIM}"
        ))),
    }
}

fn tuple_index(t: &[usize], alpha: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * alpha + i)
}

/// Weight block `m` of `V_α^{⊗n}` from the generic plain-flavor braiding:
/// generator and inverse at `position`, over `Z[s^±1]`.
pub fn finite_block(alpha: usize, n: usize, m: usize, position: usize) -> Result<(WeightBasis, RingMatrix, RingMatrix)> {
    let basis = WeightBasis::bounded(n, m, alpha);
    let generic = braiding_on(&basis, position, Flavor::Plain)?;
    let inverse = inverse_braiding_on(&basis, position, &generic)?;
    let gen = generic.map(|p| at_color(p, alpha));
    let inv = inverse.map(|p| at_color(p, alpha));
    Ok((basis, gen, inv))
}

/// `φ_L(β)|_{λ=α-1}` on `V_α^{⊗n}` in the lexicographic tensor basis. This
/// is the braiding normalized by `e^{-ħλ²/4}` per crossing; the standard
/// one is `e^{ħ(α-1)² e(β)/4}` times it.
pub fn finite_rep(alpha: usize, n: usize, beta: &BraidWord) -> Result<RingMatrix> {
    check_strands(beta, n)?;
    let dim = tensor_dim(alpha, n)?;
    let mut letters: BTreeMap<i32, RingMatrix> = BTreeMap::new();
    for g in beta.letters().iter().copied() {
        if letters.contains_key(&g) {
            continue;
        }
        let position = g.unsigned_abs() as usize;
        let mut full = RingMatrix::zeros(dim, dim);
        for m in 0..=n * (alpha - 1) {
            let (basis, gen, inv) = finite_block(alpha, n, m, position)?;
            let block = if g > 0 { gen } else { inv };
            for (r, c, v) in block.entries() {
                full.set(tuple_index(basis.tuple(r), alpha), tuple_index(basis.tuple(c), alpha), v.clone());
            }
        }
        letters.insert(g, full);
    }
    word_matrix(dim, beta, |g| Ok(letters[&g].clone()))
}

/// `E v_i = [α - i] v_{i-1}`.
pub fn e_matrix(alpha: usize) -> RingMatrix {
    RingMatrix::from_entries(alpha, alpha, (1..alpha).map(|i| (i - 1, i, q_number((alpha - i) as u32))))
}

/// `F v_i = [i + 1] v_{i+1}`.
pub fn f_matrix(alpha: usize) -> RingMatrix {
    RingMatrix::from_entries(alpha, alpha, (0..alpha - 1).map(|i| (i + 1, i, q_number(i as u32 + 1))))
}

/// `Σ_k c_k E^k ⊗ F^k` on `V_α ⊗ V_α`; unipotent.
pub fn transfer_part(alpha: usize) -> Result<RingMatrix> {
    let (e, f) = (e_matrix(alpha), f_matrix(alpha));
    let mut total = RingMatrix::identity(alpha * alpha);
    let (mut ek, mut fk) = (RingMatrix::identity(alpha), RingMatrix::identity(alpha));
    for k in 1..alpha {
        ek = e.mul(&ek);
        fk = f.mul(&fk);
        let k32 = k as i32;
        let scale = s_pow(k32 * (k32 - 1) / 2) * q_difference().pow(k as u32);
        let denom = q_factorial(k as u32);
        let mut term = RingMatrix::zeros(alpha * alpha, alpha * alpha);
        for (r, c, v) in ek.kron(&fk).entries() {
            term.set(r, c, (v * &scale).exact_div(&denom)?);
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Flip on `V_α ⊗ V_α`.
pub fn flip_matrix<R: Ring>(alpha: usize) -> SparseMatrix<R> {
    SparseMatrix::from_entries(
        alpha * alpha,
        alpha * alpha,
        (0..alpha).flat_map(|a| (0..alpha).map(move |b| (b * alpha + a, a * alpha + b, R::one()))),
    )
}

/// Normalized braiding of `V_α ⊗ V_α` and its inverse.
pub fn standard_braiding(alpha: usize) -> Result<(RingMatrix, RingMatrix)> {
    let lambda = alpha as i32 - 1;
    let unipotent = transfer_part(alpha)?;
    // s^{-λ²/2} q^{(λ-2a)(λ-2b)/4} = s^{-λ(a+b) + 2ab}
    let weights: Vec<i32> = (0..alpha as i32)
        .flat_map(|a| (0..alpha as i32).map(move |b| -lambda * (a + b) + 2 * a * b))
        .collect();
    let diag = RingMatrix::diagonal(weights.iter().map(|&w| s_pow(w)).collect());
    let diag_inv = RingMatrix::diagonal(weights.iter().map(|&w| s_pow(-w)).collect());
    let flip = flip_matrix(alpha);
    let gen = flip.mul(&diag).mul(&unipotent);
    let inv = unipotent.inverse_unit_diagonal()?.mul(&diag_inv).mul(&flip);
    Ok((gen, inv))
}

/// Embeds a two-factor operator at positions `(position, position + 1)`.
fn embed<R: Ring>(op: &SparseMatrix<R>, alpha: usize, n: usize, position: usize) -> SparseMatrix<R> {
    let left = SparseMatrix::identity(alpha.pow(position as u32 - 1));
    let right = SparseMatrix::identity(alpha.pow((n - position - 1) as u32));
    left.kron(op).kron(&right)
}

/// `φ_L(β)|_{λ=α-1}` assembled from [`standard_braiding`].
pub fn standard_rep(alpha: usize, n: usize, beta: &BraidWord) -> Result<RingMatrix> {
    check_strands(beta, n)?;
    let dim = tensor_dim(alpha, n)?;
    let (gen, inv) = standard_braiding(alpha)?;
    word_matrix(dim, beta, |g| {
        let op = if g > 0 { &gen } else { &inv };
        Ok(embed(op, alpha, n, g.unsigned_abs() as usize))
    })
}

/// `Σ_r e^{rħ} p_r(s)`: enough to hold the unnormalized braiding, whose
/// diagonal `q^{H⊗H/4}` has fractional exponents in `s`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExpLaurent(BTreeMap<Rational, LaurentPoly>);

impl ExpLaurent {
    pub fn exp(rate: Rational) -> Self {
        Self(BTreeMap::from([(rate, LaurentPoly::one())]))
    }

    pub fn from_poly(p: &LaurentPoly) -> Self {
        if p.is_zero() {
            Self::default()
        } else {
            Self(BTreeMap::from([(rat(0), p.clone())]))
        }
    }

    /// Series in `ħ` with `s = e^{ħ/2}`.
    pub fn series(&self, order: usize) -> HbarSeries {
        let binding = Binding::loop_variables();
        self.0.iter().fold(HbarSeries::zero(order), |acc, (rate, p)| {
            acc.add(&HbarSeries::exp_linear(rate, order).mul(&series_exp_substitute(p, &binding, order)))
        })
    }

    fn insert(&mut self, rate: Rational, p: LaurentPoly) {
        let slot = self.0.entry(rate.clone()).or_insert_with(LaurentPoly::zero);
        *slot += &p;
        if slot.is_zero() {
            self.0.remove(&rate);
        }
    }
}

impl Ring for ExpLaurent {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_poly(&LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, p) in &other.0 {
            out.insert(r.clone(), p.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ra, pa) in &self.0 {
            for (rb, pb) in &other.0 {
                out.insert(ra + rb, pa * pb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Self(self.0.iter().map(|(r, p)| (r.clone(), -p)).collect())
    }
}

/// The unnormalized braiding `flip ∘ q^{H⊗H/4} ∘ Σ_k c_k E^k ⊗ F^k` of
/// `V_α ⊗ V_α`, with `q^{H/2}` acting on `v_a` by `q^{(λ-2a)/2}`, and its
/// inverse.
pub fn unnormalized_braiding(alpha: usize) -> Result<(SparseMatrix<ExpLaurent>, SparseMatrix<ExpLaurent>)> {
    let lambda = alpha as i64 - 1;
    let unipotent = transfer_part(alpha)?;
    let unipotent_inv = unipotent.inverse_unit_diagonal()?;
    let lift = |m: &RingMatrix| m.map(ExpLaurent::from_poly);
    let rates: Vec<Rational> = (0..alpha as i64)
        .flat_map(|a| (0..alpha as i64).map(move |b| rat_frac((lambda - 2 * a) * (lambda - 2 * b), 4)))
        .collect();
    let diag = SparseMatrix::diagonal(rates.iter().cloned().map(ExpLaurent::exp).collect());
    let diag_inv = SparseMatrix::diagonal(rates.iter().map(|r| ExpLaurent::exp(-r)).collect());
    let flip = flip_matrix::<ExpLaurent>(alpha);
    let gen = flip.mul(&diag).mul(&lift(&unipotent));
    let inv = lift(&unipotent_inv).mul(&diag_inv).mul(&flip);
    Ok((gen, inv))
}

/// `φ_α(β)` with the unnormalized braiding.
pub fn unnormalized_rep(alpha: usize, n: usize, beta: &BraidWord) -> Result<SparseMatrix<ExpLaurent>> {
    check_strands(beta, n)?;
    let dim = tensor_dim(alpha, n)?;
    let (gen, inv) = unnormalized_braiding(alpha)?;
    let mut acc = SparseMatrix::identity(dim);
    for &g in beta.letters() {
        let op = if g > 0 { &gen } else { &inv };
        acc = embed(op, alpha, n, g.unsigned_abs() as usize).mul(&acc);
    }
    Ok(acc)
}

/// A colored Jones polynomial `J_{K,α}(q)`, as a Laurent polynomial in
/// `s = q^{1/2}` and as a series in `ħ = log q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredJones {
    pub alpha: usize,
    pub polynomial: LaurentPoly,
    pub series: HbarSeries,
}

/// `J = s^{-λ e(β)} tr(K^{⊗n} φ_L(β)) / [α]` with `K v_a = s^{λ-2a}`, from
/// the [`standard_rep`] route.
pub fn colored_jones(beta: &BraidWord, alpha: usize, order: usize) -> Result<ColoredJones> {
    beta.require_knot()?;
    let n = beta.strands();
    let lambda = alpha as i32 - 1;
    let rep = standard_rep(alpha, n, beta)?;
    let mut quantum_trace = LaurentPoly::zero();
    for k in 0..rep.rows() {
        if let Some(v) = rep.get(k, k) {
            let mut rest = k;
            let mut weight = 0;
            for _ in 0..n {
                weight += lambda - 2 * (rest % alpha) as i32;
                rest /= alpha;
            }
            quantum_trace += &(v * &s_pow(weight));
        }
    }
    let framing = s_pow(-lambda * beta.exponent_sum() as i32);
    let polynomial = (&framing * &quantum_trace).exact_div(&q_number(alpha as u32))?;
    let series = series_exp_substitute(&polynomial, &Binding::loop_variables(), order);
    Ok(ColoredJones { alpha, polynomial, series })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn dimension_counts() {
        let m = finite_rep(2, 2, &word(2, &[1])).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        let sizes: Vec<usize> = (0..=2).map(|m| WeightBasis::bounded(2, m, 2).len()).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
        assert!(finite_rep(3, 2, &BraidWord::identity(2).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn two_routes_agree() {
        for alpha in [2, 3, 4] {
            for beta in [word(2, &[1]), word(2, &[-1])] {
                assert_eq!(finite_rep(alpha, 2, &beta).unwrap(), standard_rep(alpha, 2, &beta).unwrap());
            }
        }
        let beta = word(3, &[1, -2, 1, 2]);
        assert_eq!(finite_rep(2, 3, &beta).unwrap(), standard_rep(2, 3, &beta).unwrap());
        assert_eq!(finite_rep(3, 3, &beta).unwrap(), standard_rep(3, 3, &beta).unwrap());
    }

    #[test]
    fn unknot_and_trefoil() {
        for alpha in 2..5 {
            let j = colored_jones(&word(2, &[1]), alpha, 3).unwrap();
            assert!(j.polynomial.is_one());
            let j = colored_jones(&word(2, &[-1]), alpha, 3).unwrap();
            assert!(j.polynomial.is_one());
        }
        // Jones polynomial of a trefoil: q + q^3 - q^4 (mirror q^-1 + q^-3 - q^-4)
        let j = colored_jones(&word(2, &[1, 1, 1]), 2, 4).unwrap();
        let mirror = colored_jones(&word(2, &[-1, -1, -1]), 2, 4).unwrap();
        let a = p("s^2 + s^6 - s^8");
        let b = p("s^-2 + s^-6 - s^-8");
        assert!(j.polynomial == a && mirror.polynomial == b || j.polynomial == b && mirror.polynomial == a);
        assert!(j.series.coeff(0).is_one());
    }

    #[test]
    fn colored_jones_needs_a_knot() {
        assert!(colored_jones(&word(2, &[1, 1]), 2, 2).is_err());
    }

    #[test]
    fn braid_relation_in_tensor_cube() {
        let lhs = standard_rep(3, 3, &word(3, &[1, 2, 1])).unwrap();
        let rhs = standard_rep(3, 3, &word(3, &[2, 1, 2])).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unnormalized_differs_by_framing() {
        let beta = word(2, &[1, 1, -1, 1]);
        let order = 4;
        let direct = unnormalized_rep(3, 2, &beta).unwrap();
        let normalized = standard_rep(3, 2, &beta).unwrap();
        let framing = HbarSeries::exp_linear(&rat_frac(4 * beta.exponent_sum(), 4), order);
        for r in 0..4 {
            for c in 0..4 {
                let lhs = direct.entry(r, c).series(order);
                let rhs = series_exp_substitute(&normalized.entry(r, c), &Binding::loop_variables(), order)
                    .mul(&framing);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
