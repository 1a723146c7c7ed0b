//! Lawrence representations `L_{n,m}` of the braid group on the module of
//! standard multiforks over `Z[x^±1, d^±1]`.
//!
//! The multifork with `e_j` points on the `j`-th arc is the basis vector
//! `F_e`. The generator `σ_i` acts by
//!
//! ```text
//! σ_i F_e = Σ_{k ≤ e_{i-1}} Σ_{l ≤ e_{i+1}} (-1)^{e_i} (-d)^{C(e_i,2)} x^{e_i+k}
//!           [e_{i-1}; k]_{-d} [e_{i+1}; l]_{-d}
//!           F_{…, e_{i-1}-k, e_i+k+e_{i+1}-l, l, …}
//! ```
//!
//! with Gaussian binomials in `-d`; the sums collapse at the ends (`i = 1`
//! has no `k`-sum, `i = n-1` no `l`-sum). At `d = -1` this is the `m`-th
//! symmetric power of the reduced Burau representation.

pub mod cache;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::OnceLock;

use num_integer::binomial;

use crate::algebra::qnum::gaussian_binomials;
use crate::algebra::{
    compositions, rat, series_exp_substitute, symmetric_power, Binding, HbarPoly, HbarSeries,
    LaurentPoly, Rational, Ring, RingMatrix, SparseMatrix, Var,
};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

pub use cache::{CacheOutcome, MatrixCache};

/// Compositions `e = (e_1, …, e_{n-1})` of `m`, indexing the basis.
#[derive(Clone, Debug)]
pub struct ForkBasis {
    n: usize,
    m: usize,
    elems: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ForkBasis {
    pub fn new(n: usize, m: usize) -> Self {
        let elems = compositions(m, n.saturating_sub(1));
        let index = elems.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        Self { n, m, elems, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, k: usize) -> &[usize] {
        &self.elems[k]
    }

    pub fn lookup(&self, e: &[usize]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elems
    }
}

/// Rank of `L_{n,m}`, `C(m + n - 2, m)`.
pub fn rank(n: usize, m: usize) -> usize {
    if n < 2 {
        usize::from(m == 0)
    } else {
        binomial(m + n - 2, m)
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!(
            "generator index {i} out of range for {n} strands"
        )));
    }
    Ok(())
}

/// Matrix of `L_{n,m}(σ_i)`; column `c` holds the image of basis vector `c`.
pub fn lawrence_generator(n: usize, m: usize, i: usize) -> Result<RingMatrix> {
    check_generator(n, i)?;
    let basis = ForkBasis::new(n, m);
    let minus_d = -LaurentPoly::var(Var::D);
    // with two strands the neighbouring entries are always zero
    let widest = if n > 2 { m } else { 0 };
    let gauss = gaussian_binomials(widest as u32, &minus_d);
    let mut out = RingMatrix::zeros(basis.len(), basis.len());
    for (col, e) in basis.elements().iter().enumerate() {
        // positions are 1-based in the formula; e[j-1] holds e_j
        let at = |j: usize| if j >= 1 && j < n { e[j - 1] } else { 0 };
        let (prev, cur, next) = (at(i - 1), at(i), at(i + 1));
        let sign = if cur % 2 == 1 { -1 } else { 1 };
        let twist = binomial(cur, 2);
        let d_part = if twist % 2 == 1 { -1 } else { 1 };
        for k in 0..=prev {
            let mut lead = [0; 4];
            lead[Var::X.index()] = (cur + k) as i32;
            lead[Var::D.index()] = twist as i32;
            let head = LaurentPoly::monomial(rat(sign * d_part), lead);
            let head = &head * &gauss[prev][k];
            for (l, binom) in gauss[next].iter().enumerate().take(next + 1) {
                let coeff = &head * binom;
                let mut target = e.clone();
                if i > 1 {
                    target[i - 2] = prev - k;
                }
                target[i - 1] = cur + k + next - l;
                if i + 1 < n {
                    target[i] = l;
                }
                let row = basis
                    .lookup(&target)
                    .expect("generator maps compositions to compositions");
                out.add_to(row, col, &coeff);
            }
        }
    }
    Ok(out.with_degbounds())
}

/// Exact inverse of `L_{n,m}(σ_i)`, checked against the identity.
pub fn lawrence_inverse(n: usize, m: usize, i: usize) -> Result<RingMatrix> {
    let gen = lawrence_generator(n, m, i)?;
    invert_checked(&gen)
}

fn invert_checked(gen: &RingMatrix) -> Result<RingMatrix> {
    let inv = gen.inverse_unit_pivot()?;
    if !gen.mul(&inv).is_identity() {
        return Err(Error::Consistency("generator times inverse is not the identity".into()));
    }
    Ok(inv.with_degbounds())
}

/// Generator matrices of `L_{n,m}` and lazily computed inverses.
#[derive(Debug)]
pub struct LawrenceRep {
    basis: ForkBasis,
    gens: Vec<RingMatrix>,
    invs: Vec<OnceLock<RingMatrix>>,
    cache: Option<MatrixCache>,
}

impl LawrenceRep {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::build(n, m, None)
    }

    /// Like [`LawrenceRep::new`], reading and filling an on-disk cache.
    pub fn with_cache(n: usize, m: usize, cache: MatrixCache) -> Result<Self> {
        Self::build(n, m, Some(cache))
    }

    fn build(n: usize, m: usize, cache: Option<MatrixCache>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
        }
        let basis = ForkBasis::new(n, m);
        let gens = (1..n)
            .map(|i| match &cache {
                Some(c) => c
                    .get_or_build(n, m, i, false, || lawrence_generator(n, m, i))
                    .map(|(mat, _)| mat),
                None => lawrence_generator(n, m, i),
            })
            .collect::<Result<Vec<_>>>()?;
        let invs = (1..n).map(|_| OnceLock::new()).collect();
        Ok(Self { basis, gens, invs, cache })
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn m(&self) -> usize {
        self.basis.m
    }

    pub fn basis(&self) -> &ForkBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of the letter `g`, i.e. `σ_|g|^{sign g}`.
    pub fn letter(&self, g: i32) -> Result<&RingMatrix> {
        let i = g.unsigned_abs() as usize;
        check_generator(self.n(), i)?;
        if g > 0 {
            return Ok(&self.gens[i - 1]);
        }
        if let Some(inv) = self.invs[i - 1].get() {
            return Ok(inv);
        }
        let (n, m) = (self.n(), self.m());
        let inv = match &self.cache {
            Some(c) => c.get_or_build(n, m, i, true, || invert_checked(&self.gens[i - 1]))?.0,
            None => invert_checked(&self.gens[i - 1])?,
        };
        Ok(self.invs[i - 1].get_or_init(|| inv))
    }

    fn check_word(&self, beta: &BraidWord) -> Result<()> {
        if beta.strands() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "braid on {} strands used with L_{{{},{}}}",
                beta.strands(),
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }
}

/// `L_{n,m}(β) = M(g_k) ⋯ M(g_1)` with degree intervals propagated.
pub fn lawrence_word(rep: &LawrenceRep, beta: &BraidWord) -> Result<RingMatrix> {
    rep.check_word(beta)?;
    let mut acc = RingMatrix::identity(rep.dim());
    for &g in beta.letters() {
        acc = rep.letter(g)?.mul(&acc);
    }
    Ok(acc)
}

/// `tr L_{n,m}(β)` under `x = e^ħ u^{-2}`, `d = -e^ħ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedTrace {
    pub series: HbarSeries,
    /// `u`-degree interval implied by the propagated degree bounds.
    pub u_range: Option<(i32, i32)>,
}

pub fn trace_specialized(rep: &LawrenceRep, beta: &BraidWord, order: usize) -> Result<SpecializedTrace> {
    let word = lawrence_word(rep, beta)?;
    let series = series_exp_substitute(&word.trace(), &Binding::loop_variables(), order);
    let u_range = word.degbounds().map(|b| {
        let (lo, hi) = b.range(Var::X);
        (-2 * hi, -2 * lo)
    });
    Ok(SpecializedTrace { series, u_range })
}

/// Generator matrices specialized to `x = e^ħ u^{-2}`, `d = -e^ħ` before
/// any multiplication.
pub fn specialized_letter(rep: &LawrenceRep, g: i32, order: usize) -> Result<SparseMatrix<HbarPoly>> {
    Ok(rep.letter(g)?.map(|p| HbarPoly::from_xd_poly(p, order)))
}

/// Trace of `L_{n,m}(β)` evaluated in the specialized ring, keeping only
/// `u`-degrees `>= lowest_u` (exactly: products never raise a discarded
/// term above `lowest_u` because the headroom of the remaining letters is
/// accounted for).
pub fn specialized_trace(
    rep: &LawrenceRep,
    beta: &BraidWord,
    order: usize,
    lowest_u: Option<i32>,
) -> Result<HbarPoly> {
    rep.check_word(beta)?;
    let mut letters: HashMap<i32, SparseMatrix<HbarPoly>> = HashMap::new();
    for &g in beta.letters() {
        if let Entry::Vacant(slot) = letters.entry(g) {
            slot.insert(specialized_letter(rep, g, order)?);
        }
    }
    // largest u-degree a letter can add: 2·max(0, -min x-degree)
    let raise = |g: i32| -> i32 {
        letters[&g]
            .entries()
            .filter_map(|(_, _, v)| v.max_degree())
            .max()
            .unwrap_or(0)
            .max(0)
    };
    let raises: Vec<i32> = beta.letters().iter().map(|&g| raise(g)).collect();
    let mut headroom: i32 = raises.iter().sum();
    let mut acc: SparseMatrix<HbarPoly> = SparseMatrix::identity(rep.dim());
    for (k, &g) in beta.letters().iter().enumerate() {
        acc = letters[&g].mul(&acc);
        headroom -= raises[k];
        if let Some(lowest) = lowest_u {
            let keep = lowest - headroom;
            acc = acc.map(|v| {
                let mut w = v.clone();
                w.truncate_below(keep);
                w
            });
        }
    }
    let mut trace = HbarPoly::zero_with_order(order);
    for k in 0..rep.dim() {
        if let Some(v) = acc.get(k, k) {
            trace.add_assign_ref(v);
        }
    }
    if let Some(lowest) = lowest_u {
        trace.truncate_below(lowest);
    }
    Ok(trace)
}

/// Exact `tr L_{n,m}(β)` at a rational point `(x, d)`.
pub fn trace_at(rep: &LawrenceRep, beta: &BraidWord, x: &Rational, d: &Rational) -> Result<Rational> {
    rep.check_word(beta)?;
    let point = [x.clone(), d.clone(), rat(1), rat(1)];
    let mut acc: SparseMatrix<Rational> = SparseMatrix::identity(rep.dim());
    for &g in beta.letters() {
        acc = rep.letter(g)?.map(|p| p.eval_rational(&point)).mul(&acc);
    }
    Ok(acc.trace())
}

/// Prime modulus for [`trace_residue`].
pub const PROBE_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(PROBE_PRIME)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn residue(c: &Rational) -> u64 {
    let p = num_bigint::BigInt::from(PROBE_PRIME);
    let reduce = |v: &num_bigint::BigInt| -> u64 { num_integer::Integer::mod_floor(v, &p).try_into().unwrap_or(0) };
    if c.is_integer() {
        return reduce(c.numer());
    }
    // inverse by Fermat; p does not divide any denominator that occurs
    mul_mod(reduce(c.numer()), pow_mod(reduce(c.denom()), PROBE_PRIME - 2))
}

/// `tr L_{n,m}(β)` at `(x, d)` reduced modulo [`PROBE_PRIME`]. A nonzero
/// residue proves the trace is nonzero there; zero proves nothing.
pub fn trace_residue(rep: &LawrenceRep, beta: &BraidWord, x: &Rational, d: &Rational) -> Result<u64> {
    rep.check_word(beta)?;
    let (xr, dr) = (residue(x), residue(d));
    if xr == 0 || dr == 0 {
        return Err(Error::InvalidArgument("probe point vanishes modulo the probe prime".into()));
    }
    let (xi, di) = (pow_mod(xr, PROBE_PRIME - 2), pow_mod(dr, PROBE_PRIME - 2));
    let power = |base: u64, inv: u64, k: i32| pow_mod(if k >= 0 { base } else { inv }, u64::from(k.unsigned_abs()));
    let dim = rep.dim();
    let mut letters: HashMap<i32, Vec<Vec<u64>>> = HashMap::new();
    for &g in beta.letters() {
        let Entry::Vacant(slot) = letters.entry(g) else { continue };
        let mut dense = vec![vec![0u64; dim]; dim];
        for (r, c, p) in rep.letter(g)?.entries() {
            dense[r][c] = p.terms().fold(0, |acc, (e, coeff)| {
                let term = mul_mod(
                    residue(coeff),
                    mul_mod(power(xr, xi, e[Var::X.index()]), power(dr, di, e[Var::D.index()])),
                );
                (acc + term) % PROBE_PRIME
            });
        }
        slot.insert(dense);
    }
    let mut acc: Vec<Vec<u64>> = (0..dim).map(|r| (0..dim).map(|c| u64::from(r == c)).collect()).collect();
    for g in beta.letters() {
        let left = &letters[g];
        acc = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| (0..dim).fold(0, |s, k| (s + mul_mod(left[r][k], acc[k][c])) % PROBE_PRIME))
                    .collect()
            })
            .collect();
    }
    Ok((0..dim).fold(0, |s, k| (s + acc[k][k]) % PROBE_PRIME))
}

/// `Sym^m L_{n,1}(β)` on the monomial basis.
pub fn symmetric_burau(n: usize, m: usize, beta: &BraidWord) -> Result<RingMatrix> {
    let burau = LawrenceRep::new(n, 1)?;
    Ok(symmetric_power(&lawrence_word(&burau, beta)?, m))
}

/// Far commutation and the braid relation for all generators of
/// `L_{n,m}`, plus `σ_i σ_i^{-1} = 1`.
pub fn braid_relations_hold(n: usize, m: usize) -> Result<bool> {
    let rep = LawrenceRep::new(n, m)?;
    for i in 1..n as i32 {
        let g = rep.letter(i)?;
        if !g.mul(rep.letter(-i)?).is_identity() {
            return Ok(false);
        }
        for j in i + 1..n as i32 {
            let h = rep.letter(j)?;
            let holds = if j == i + 1 { g.mul(h).mul(g) == h.mul(g).mul(h) } else { g.mul(h) == h.mul(g) };
            if !holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Entrywise substitution `d = -1`.
pub fn at_d_minus_one(m: &RingMatrix) -> RingMatrix {
    let images = [None, Some((rat(-1), [0; 4])), None, None];
    m.map(|p| p.substitute_monomials(&images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    fn braid(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn basis_sizes_and_lookup() {
        for n in 2..6 {
            for m in 0..5 {
                let b = ForkBasis::new(n, m);
                assert_eq!(b.len(), rank(n, m));
                for k in 0..b.len() {
                    assert_eq!(b.lookup(b.element(k)), Some(k));
                }
            }
        }
    }

    #[test]
    fn two_strand_generator() {
        for m in 0..6usize {
            let g = lawrence_generator(2, m, 1).unwrap();
            let sign = if m % 2 == 1 { "-" } else { "" };
            let twist = binomial(m, 2);
            let expected = p(&format!("{sign}x^{m}")) * p("-d").pow(twist as u32);
            assert_eq!(g.entry(0, 0), expected);
        }
    }

    #[test]
    fn reduced_burau_block() {
        let g1 = lawrence_generator(3, 1, 1).unwrap();
        assert_eq!(g1.entry(0, 0), p("-x"));
        assert_eq!(g1.entry(0, 1), p("1"));
        assert_eq!(g1.entry(1, 1), p("1"));
        assert!(g1.entry(1, 0).is_zero());
        let g2 = lawrence_generator(3, 1, 2).unwrap();
        assert_eq!(g2.entry(1, 0), p("x"));
        assert_eq!(g2.entry(1, 1), p("-x"));
        assert!(lawrence_generator(3, 0, 1).unwrap().is_identity());
    }

    #[test]
    fn inverses() {
        assert_eq!(lawrence_inverse(2, 1, 1).unwrap().entry(0, 0), p("-x^-1"));
        let inv = lawrence_inverse(3, 1, 1).unwrap();
        assert!(inv.entries().all(|(_, _, v)| !v.involves(Var::D)));
        let g = lawrence_generator(3, 2, 2).unwrap();
        assert!(lawrence_inverse(3, 2, 2).unwrap().mul(&g).is_identity());
    }

    #[test]
    fn braid_relations_all_generators() {
        for (n, m) in [(2, 3), (3, 2), (4, 2), (5, 1)] {
            assert!(braid_relations_hold(n, m).unwrap());
        }
    }

    #[test]
    fn braid_relations_small() {
        for m in 0..=3 {
            let rep = LawrenceRep::new(3, m).unwrap();
            assert_eq!(
                lawrence_word(&rep, &braid("1 2 1", 3)).unwrap(),
                lawrence_word(&rep, &braid("2 1 2", 3)).unwrap()
            );
        }
    }

    #[test]
    fn word_examples() {
        let rep = LawrenceRep::new(2, 3).unwrap();
        let w = lawrence_word(&rep, &braid("1 1", 2)).unwrap();
        assert_eq!(w.trace(), p("x^6*d^6"));
        assert!(lawrence_word(&rep, &braid("", 2)).unwrap().is_identity());
    }

    #[test]
    fn specialized_trace_examples() {
        let rep = LawrenceRep::new(2, 1).unwrap();
        let t = trace_specialized(&rep, &braid("1", 2), 0).unwrap();
        assert_eq!(t.series.coeff(0), &p("-u^-2"));
        let rep = LawrenceRep::new(2, 2).unwrap();
        let t = trace_specialized(&rep, &braid("1 1 1", 2), 0).unwrap();
        assert_eq!(t.series.coeff(0), &p("u^-12"));
        let rep = LawrenceRep::new(3, 2).unwrap();
        let t = trace_specialized(&rep, &braid("", 3), 2).unwrap();
        assert_eq!(t.series.coeff(0), &p("3"));
        assert!(t.series.coeff(1).is_zero());
    }

    #[test]
    fn fast_trace_matches_exact_substitution() {
        let rep = LawrenceRep::new(3, 2).unwrap();
        for word in ["1 2 1 2", "1 -2 1 -2", "2 2 -1", ""] {
            let b = braid(word, 3);
            let exact = trace_specialized(&rep, &b, 3).unwrap().series;
            let fast = specialized_trace(&rep, &b, 3, None).unwrap().to_hbar_series();
            assert_eq!(exact, fast, "word {word:?}");
        }
    }

    #[test]
    fn truncated_fast_trace_keeps_high_degrees() {
        let rep = LawrenceRep::new(3, 3).unwrap();
        let b = braid("1 -2 1 1 -2 2", 3);
        let full = specialized_trace(&rep, &b, 2, None).unwrap();
        let cut = specialized_trace(&rep, &b, 2, Some(-6)).unwrap();
        let mut expect = full.clone();
        expect.truncate_below(-6);
        assert_eq!(cut, expect);
    }

    #[test]
    fn d_minus_one_is_symmetric_power() {
        let b = braid("1 -2 2 1", 3);
        for m in 0..=3 {
            let rep = LawrenceRep::new(3, m).unwrap();
            let lhs = at_d_minus_one(&lawrence_word(&rep, &b).unwrap());
            assert_eq!(lhs, symmetric_burau(3, m, &b).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn residue_matches_exact_trace() {
        for (word, m) in [("1 2 1 2", 2), ("1 -2 1 -2", 3), ("1 1 2", 1), ("1 2 1 2", 5)] {
            let rep = LawrenceRep::new(3, m).unwrap();
            let b = braid(word, 3);
            let (x, d) = (rat(2), rat(-1));
            let exact = trace_at(&rep, &b, &x, &d).unwrap();
            assert_eq!(trace_residue(&rep, &b, &x, &d).unwrap(), residue(&exact), "{word}, m = {m}");
        }
        let b = braid("1 2 1 2", 3);
        // this trace vanishes identically for m = 2 mod 3
        assert_eq!(trace_residue(&LawrenceRep::new(3, 5).unwrap(), &b, &rat(2), &rat(-1)).unwrap(), 0);
    }
}
