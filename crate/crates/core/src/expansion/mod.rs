//! Loop expansion of the colored Jones function from Lawrence traces.
//!
//! With `z = u^2` and `q = e^ħ`,
//!
//! ```text
//! CJ(z, ħ) = u^{-e} e^{ħe/2} / (u - u^{-1})
//!            · Σ_m (u^n e^{ħ(1-n-2m)/2} - u^{-n} e^{ħ(n-1+2m)/2}) tr L_{n,m}(β)|_{x=e^ħ u^{-2}, d=-e^ħ}
//! ```
//!
//! read as a series in `u^{-1}` whose `ħ^i` coefficient is `V^{(i)}`.
//!
//! Certification: if `a_m` is the lowest `x`-degree of `tr L_{n,m}(β)`,
//! term `m` only reaches `u`-degrees `≤ n - e - 1 - 2 a_m`. The sequence
//! `a_m` over the nonvanishing traces is checked to be nondecreasing on the
//! computed range and assumed to stay so beyond it, so everything above
//! `n - e - 1 - 2 a_M` is exact.

pub mod alexander;
pub mod macmahon;
pub mod rational;

use rayon::prelude::*;

use serde::Serialize;

use crate::algebra::{rat, HbarPoly, LaurentTail, Ring};
use crate::braid::BraidWord;
use crate::error::Result;
use crate::lawrence::{specialized_trace, trace_residue, LawrenceRep, MatrixCache};

pub use alexander::alexander;
pub use macmahon::{macmahon_check, MacMahonReport};
pub use rational::{dual_path_check, mmr_check, reconstruct_rational, DualPathReport, MmrReport, RationalForm};

pub const DEFAULT_ORDER: usize = 3;
pub const DEFAULT_CUTOFF: usize = 24;
pub const DEFAULT_FLOOR: i32 = -80;

/// Terms computed before monotonicity is first checked.
const FIRST_STAGE: usize = 7;

/// Cutoffs for [`loop_expansion`].
#[derive(Clone, Debug)]
pub struct LoopOptions {
    /// Highest power of `ħ` kept.
    pub order: usize,
    /// Terms `m = 0..=cutoff` are summed unless the lowest degrees stop
    /// being nondecreasing earlier, which ends the computation.
    pub cutoff: usize,
    /// Further terms are added, up to this cutoff, while the certified
    /// window does not yet reach `floor`.
    pub max_cutoff: usize,
    /// Lowest `u`-degree computed.
    pub floor: i32,
    pub cache: Option<MatrixCache>,
}

impl Default for LoopOptions {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            cutoff: DEFAULT_CUTOFF,
            max_cutoff: 4 * DEFAULT_CUTOFF,
            floor: DEFAULT_FLOOR,
            cache: None,
        }
    }
}

/// `V^{(0)}, …, V^{(L)}` as tails in `u^{-1}` with a shared exactness mark.
#[derive(Clone, Debug)]
pub struct LoopExpansion {
    pub braid: BraidWord,
    pub order: usize,
    /// Largest `m` summed.
    pub cutoff: usize,
    pub floor: i32,
    pub series: Vec<LaurentTail>,
    /// Coefficients at `u`-degrees strictly above this are certified.
    pub exact_above: i32,
    /// What is known about the lowest `x`-degree of each computed trace.
    pub supports: Vec<TraceSupport>,
    /// Set when the certified window stops above `floor` or when the
    /// lowest degrees were not observed to be nondecreasing.
    pub partial: bool,
    pub diagnostics: Vec<String>,
}

impl LoopExpansion {
    pub fn v(&self, i: usize) -> &LaurentTail {
        &self.series[i]
    }
}

/// Lowest `x`-degree of one trace, as far as the computed window shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceSupport {
    /// Lowest `x`-degree among the terms inside the window.
    Lowest(i32),
    /// No terms inside the window, but the trace is nonzero: every term
    /// lies below it.
    BelowWindow,
    /// Zero at the probe point `(x, d) = (2, -1)` modulo a large prime;
    /// carries no degree information and is skipped.
    Vanishing,
}

/// Lowest `u`-degree a trace must be exact at for the sum to be exact at
/// `floor`.
fn trace_floor(floor: i32, n: i32, e: i32) -> i32 {
    floor + e - n
}

fn traces(beta: &BraidWord, ms: std::ops::RangeInclusive<usize>, opts: &LoopOptions) -> Result<Vec<(HbarPoly, TraceSupport)>> {
    let n = beta.strands();
    let lowest = trace_floor(opts.floor, n as i32, beta.exponent_sum() as i32);
    ms.into_par_iter()
        .map(|m| {
            let rep = match &opts.cache {
                Some(c) => LawrenceRep::with_cache(n, m, c.clone())?,
                None => LawrenceRep::new(n, m)?,
            };
            let trace = specialized_trace(&rep, beta, opts.order, Some(lowest))?;
            let support = match trace.max_degree() {
                Some(d) => TraceSupport::Lowest(-d / 2),
                None if trace_residue(&rep, beta, &rat(2), &rat(-1))? != 0 => TraceSupport::BelowWindow,
                None => TraceSupport::Vanishing,
            };
            Ok((trace, support))
        })
        .collect()
}

/// Lowest degrees nondecreasing over the informative traces. A trace below
/// the window has a larger lowest degree than any trace inside it.
fn nondecreasing(supports: &[TraceSupport]) -> bool {
    let informative: Vec<_> = supports.iter().filter(|s| **s != TraceSupport::Vanishing).collect();
    informative.windows(2).all(|w| match (w[0], w[1]) {
        (TraceSupport::Lowest(a), TraceSupport::Lowest(b)) => a <= b,
        (TraceSupport::BelowWindow, TraceSupport::Lowest(_)) => false,
        _ => true,
    })
}

/// Coefficients above the returned degree are exact, from the last
/// informative trace; `None` when no trace is informative.
fn exact_above(n: i32, e: i32, supports: &[TraceSupport], floor: i32) -> Option<i32> {
    supports.iter().rev().find_map(|s| match s {
        TraceSupport::Lowest(a) => Some(n - e - 1 - 2 * a),
        TraceSupport::BelowWindow => Some(floor - 1),
        TraceSupport::Vanishing => None,
    })
}

pub fn loop_expansion(beta: &BraidWord, opts: &LoopOptions) -> Result<LoopExpansion> {
    beta.require_knot()?;
    let n = beta.strands() as i32;
    let e = beta.exponent_sum() as i32;
    let max_cutoff = opts.max_cutoff.max(opts.cutoff);

    let mut computed = traces(beta, 0..=opts.cutoff.min(FIRST_STAGE), opts)?;
    loop {
        let supports: Vec<TraceSupport> = computed.iter().map(|(_, s)| *s).collect();
        let m = computed.len() - 1;
        let reached = exact_above(n, e, &supports, opts.floor).is_some_and(|top| top < opts.floor);
        if !nondecreasing(&supports) || (m >= opts.cutoff && (reached || m >= max_cutoff)) {
            break;
        }
        let target = if m < opts.cutoff { opts.cutoff } else { max_cutoff };
        let next = (m + 1 + m / 2).min(target);
        computed.extend(traces(beta, m + 1..=next, opts)?);
    }
    let cutoff = computed.len() - 1;
    let supports: Vec<TraceSupport> = computed.iter().map(|(_, s)| *s).collect();

    let mut diagnostics = Vec::new();
    let monotone = nondecreasing(&supports);
    if !monotone {
        diagnostics.push(format!(
            "lowest x-degrees of the traces are not nondecreasing in m ({supports:?}); no coefficient is certified"
        ));
    }
    let exact_top = match exact_above(n, e, &supports, opts.floor) {
        Some(top) if monotone => Some(top),
        Some(_) => None,
        None => {
            diagnostics.push("every computed trace vanishes at the probe point; no coefficient is certified".into());
            None
        }
    };
    if let Some(top) = exact_top.filter(|&top| top >= opts.floor) {
        diagnostics.push(format!(
            "certified window ends at u^{} above the floor u^{} after m = {cutoff}",
            top + 1,
            opts.floor
        ));
    }
    let partial = exact_top.is_none_or(|top| top >= opts.floor);
    if partial && !beta.is_positive() {
        diagnostics.push("certification is only reliable for positive words; supply a positive presentation".into());
    }

    // ordered reduction over m keeps the result reproducible
    let mut sum = HbarPoly::zero_with_order(opts.order);
    for (m, (t, _)) in computed.iter().enumerate() {
        let m = m as i64;
        let n64 = n as i64;
        sum.add_assign_ref(&t.shift_exp(n, 1 - n64 - 2 * m));
        sum.add_assign_ref(&t.shift_exp(-n, n64 - 1 + 2 * m).neg_ref());
    }
    let numerator = sum.shift_exp(-e, e as i64).to_hbar_series();
    let series = numerator
        .coeffs()
        .iter()
        .map(|p| {
            let tail = LaurentTail::from_poly(p, opts.floor, opts.floor)?;
            // the numerator is exact one degree above the quotient
            let stable = exact_top.map_or(tail.topdeg(), |top| top + 1);
            Ok(LaurentTail::from_poly(p, opts.floor, stable)?.div_u_minus_inverse())
        })
        .collect::<Result<Vec<_>>>()?;
    let exact_above = series.first().map_or(opts.floor - 1, LaurentTail::stable_above);

    Ok(LoopExpansion {
        braid: beta.clone(),
        order: opts.order,
        cutoff,
        floor: opts.floor,
        series,
        exact_above,
        supports,
        partial,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, LaurentPoly};

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    fn opts(order: usize, cutoff: usize, floor: i32) -> LoopOptions {
        LoopOptions { order, cutoff, max_cutoff: 4 * cutoff, floor, cache: None }
    }

    #[test]
    fn unknot_is_one() {
        let exp = loop_expansion(&word(2, &[1]), &opts(3, 24, -80)).unwrap();
        assert!(!exp.partial, "{:?}", exp.diagnostics);
        assert_eq!(exp.v(0).exact_poly(), LaurentPoly::one());
        for i in 1..=3 {
            assert!(exp.v(i).exact_poly().is_zero());
        }
    }

    #[test]
    fn trefoil_leading_order() {
        let exp = loop_expansion(&word(2, &[1, 1, 1]), &opts(1, 12, -40)).unwrap();
        assert!(!exp.partial);
        // (u + u^-1)/(u^3 + u^-3) = u^-2 + u^-4 - u^-8 - u^-10 + u^-14 + …
        let v0 = exp.v(0);
        assert_eq!(v0.coeff(-2), Some(rat(1)));
        assert_eq!(v0.coeff(-4), Some(rat(1)));
        assert_eq!(v0.coeff(-6), Some(rat(0)));
        assert_eq!(v0.coeff(-8), Some(rat(-1)));
        assert_eq!(v0.coeff(0), Some(rat(0)));
    }

    #[test]
    fn certified_coefficients_do_not_move() {
        let beta = word(3, &[1, 2, 1, 2]);
        let shallow = loop_expansion(&beta, &LoopOptions { max_cutoff: 6, ..opts(1, 6, -30) }).unwrap();
        let deep = loop_expansion(&beta, &opts(1, 16, -30)).unwrap();
        for i in 0..=1 {
            for (deg, c) in shallow.v(i).exact_terms() {
                assert_eq!(deep.v(i).coeff(deg), Some(c));
            }
        }
        assert!(deep.exact_above <= shallow.exact_above);
    }

    #[test]
    fn negative_words_are_flagged() {
        let exp = loop_expansion(&word(3, &[1, -2, 1, -2]), &LoopOptions { max_cutoff: 4, ..opts(0, 4, -20) }).unwrap();
        assert!(exp.partial);
        assert!(exp.diagnostics.iter().any(|d| d.contains("positive presentation")));
    }

    #[test]
    fn links_are_rejected() {
        assert!(loop_expansion(&word(2, &[1, 1]), &LoopOptions::default()).is_err());
    }
}
