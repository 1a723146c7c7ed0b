//! Consistency statements between the quantum constructions and the
//! Lawrence representations.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::eigen::evaluate;
use crate::algebra::{rat_frac, series_exp_substitute, Binding, HbarSeries, LaurentPoly, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::lawrence::{lawrence_word, LawrenceRep};

use super::finite::{finite_block, finite_rep, unnormalized_rep};
use super::null::{lawrence_to_quantum, null_space, NullSpaceRep};
use super::verma::{braiding_on, inverse_braiding_on, Flavor};
use super::{check_strands, WeightBasis};

/// Generators, their inverses, and `random` seeded random words of length
/// `len`.
pub fn test_words(n: usize, random: usize, len: usize, seed: u64) -> Result<Vec<BraidWord>> {
    let mut words = Vec::new();
    for i in 1..n as i32 {
        words.push(BraidWord::generator(n, i)?);
        words.push(BraidWord::generator(n, -i)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        words.push(BraidWord::random(n, len, &mut rng)?);
    }
    Ok(words)
}

/// `(R ⊗ 1)(1 ⊗ R)(R ⊗ 1) = (1 ⊗ R)(R ⊗ 1)(1 ⊗ R)` on weight `m` of the
/// three-fold tensor power.
pub fn yang_baxter_check(m: usize, flavor: Flavor) -> Result<bool> {
    let basis = WeightBasis::new(3, m);
    let a = braiding_on(&basis, 1, flavor)?;
    let b = braiding_on(&basis, 2, flavor)?;
    Ok(a.mul(&b).mul(&a) == b.mul(&a).mul(&b))
}

/// `tr Ŵ_{n,m}(β) = tr L_{n,m}(β)` under `x = s^2 u^{-2}`, `d = -s^2`,
/// returning both sides.
pub fn homological_traces(
    null: &NullSpaceRep,
    lawrence: &LawrenceRep,
    beta: &BraidWord,
) -> Result<(LaurentPoly, LaurentPoly)> {
    let quantum = null.trace(beta)?;
    let homological = lawrence_to_quantum(&lawrence_word(lawrence, beta)?.trace());
    Ok((quantum, homological))
}

/// Entrywise `e^{ħ(α-1)² e(β)/4} φ_L(β)|_{λ=α-1} = φ_α(β)` to order `ħ^order`,
/// the right side from the unnormalized braiding.
pub fn normalization_check(alpha: usize, n: usize, beta: &BraidWord, order: usize) -> Result<bool> {
    let normalized = finite_rep(alpha, n, beta)?;
    let standard = unnormalized_rep(alpha, n, beta)?;
    let lambda = alpha as i64 - 1;
    let framing = HbarSeries::exp_linear(&rat_frac(lambda * lambda * beta.exponent_sum(), 4), order);
    let binding = Binding::loop_variables();
    for r in 0..normalized.rows() {
        for c in 0..normalized.cols() {
            let lhs = series_exp_substitute(&normalized.entry(r, c), &binding, order).mul(&framing);
            if lhs != standard.entry(r, c).series(order) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Trace of `β` on weight block `m` of `V_α^{⊗n}`.
pub fn finite_block_trace(alpha: usize, n: usize, m: usize, beta: &BraidWord) -> Result<LaurentPoly> {
    check_strands(beta, n)?;
    let dim = WeightBasis::bounded(n, m, alpha).len();
    let mut letters = std::collections::HashMap::new();
    for position in 1..n {
        let (_, gen, inv) = finite_block(alpha, n, m, position)?;
        letters.insert(position as i32, gen);
        letters.insert(-(position as i32), inv);
    }
    let mut acc = RingMatrix::identity(dim);
    for g in beta.letters() {
        acc = letters[g].mul(&acc);
    }
    Ok(acc.trace())
}

/// Weight blocks `m` and `n(α-1) - m` of `V_α^{⊗n}` have equal traces on
/// every word in `words`.
pub fn symmetry_check(n: usize, m: usize, alpha: usize, words: &[BraidWord]) -> Result<bool> {
    let top = n * (alpha - 1);
    if m > top {
        return Err(Error::InvalidArgument(format!("weight {m} exceeds {top}")));
    }
    for beta in words {
        if finite_block_trace(alpha, n, m, beta)? != finite_block_trace(alpha, n, top - m, beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a numerical splitting comparison.
#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub full_trace: Complex64,
    pub null_trace_sum: Complex64,
    pub relative_error: f64,
}

/// Unit-modulus `(s, u)` with arguments kept away from roots of unity of
/// small order.
pub fn random_unit_point(seed: u64) -> [Complex64; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angle = || loop {
        let t: f64 = rng.gen_range(0.2..std::f64::consts::PI - 0.2);
        if (2..=12).all(|k| {
            let x = t * k as f64 / std::f64::consts::PI;
            (x - x.round()).abs() > 0.02
        }) {
            return t;
        }
    };
    let (s, u) = (Complex64::from_polar(1.0, angle()), Complex64::from_polar(1.0, angle()));
    [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), s, u]
}

fn numeric_word(dim: usize, beta: &BraidWord, point: &[Complex64; 4], letter: impl Fn(i32) -> Result<RingMatrix>) -> Result<DMatrix<Complex64>> {
    let mut acc = DMatrix::<Complex64>::identity(dim, dim);
    for &g in beta.letters() {
        acc = evaluate(&letter(g)?, point) * acc;
    }
    Ok(acc)
}

/// `tr V̂_{n,m}(β) = Σ_{k ≤ m} tr Ŵ_{n,k}(β)` at a numerical point.
pub fn splitting_check(n: usize, m: usize, beta: &BraidWord, point: &[Complex64; 4]) -> Result<SplittingReport> {
    check_strands(beta, n)?;
    let basis = WeightBasis::new(n, m);
    let full = numeric_word(basis.len(), beta, point, |g| {
        let position = g.unsigned_abs() as usize;
        let r = braiding_on(&basis, position, Flavor::Hat)?;
        if g > 0 {
            Ok(r)
        } else {
            inverse_braiding_on(&basis, position, &r)
        }
    })?
    .trace();
    let mut null_trace_sum = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let w = null_space(n, k)?;
        null_trace_sum += numeric_word(w.rank(), beta, point, |g| w.letter(g).cloned())?.trace();
    }
    let relative_error = (full - null_trace_sum).norm() / full.norm().max(1.0);
    Ok(SplittingReport { full_trace: full, null_trace_sum, relative_error })
}
