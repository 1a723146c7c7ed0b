//! Rational forms `V^{(i)} = P_i / Δ^{2i+1}` and the checks built on them.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{rat, Binding, HbarSeries, LaurentPoly, LaurentTail, Var};
use crate::algebra::series_exp_substitute;
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::quantum::colored_jones;

use super::LoopExpansion;

/// Exact coefficients required below the numerator's support.
pub const DEFAULT_GUARD: i32 = 10;

/// `numerator / Δ^{power}` in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalForm {
    pub order: usize,
    pub numerator: LaurentPoly,
    pub power: u32,
}

impl RationalForm {
    pub fn denominator_label(&self) -> String {
        format!("Delta^{}", self.power)
    }
}

/// Multiplies the tail of `V^{(i)}` by `Δ^{2i+1}` and accepts the product
/// as a numerator when every certified coefficient in a window of `guard`
/// degrees below its mirrored support vanishes.
pub fn reconstruct_rational(exp: &LoopExpansion, i: usize, delta: &LaurentPoly, guard: i32) -> Result<RationalForm> {
    let tail = exp
        .series
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("order {i} was not computed")))?;
    let power = 2 * i as u32 + 1;
    let den = delta.pow(power);
    let (_, reach) = den
        .degree_range(Var::U)
        .ok_or_else(|| Error::InvalidArgument("zero denominator".into()))?;
    let product = tail.mul_poly(&den)?;
    let top = tail
        .exact_terms()
        .first()
        .map_or(0, |(deg, _)| deg + reach)
        .max(0);
    let lowest_needed = -top - guard;
    if product.stable_above() >= lowest_needed || product.floor() > lowest_needed {
        return Err(Error::Unverified(format!(
            "V^({i}) certified only above u^{}; reconstruction needs u^{lowest_needed}",
            product.stable_above().max(product.floor() - 1)
        )));
    }
    for deg in lowest_needed..-top {
        if let Some(c) = product.coeff(deg).filter(|c| !c.is_zero()) {
            return Err(Error::Unverified(format!(
                "V^({i}) * Delta^{power} has coefficient {c} at u^{deg} below its support"
            )));
        }
    }
    let numerator = LaurentPoly::univariate(
        Var::U,
        (-top..=top).filter_map(|deg| product.coeff(deg).map(|c| (deg, c))),
    );
    Ok(RationalForm { order: i, numerator, power })
}

/// `V^{(0)} · Δ = 1` on every certified coefficient of the product.
#[derive(Clone, Debug, Serialize)]
pub struct MmrReport {
    pub certified_degrees: usize,
    pub lowest_certified: i32,
    pub holds: bool,
}

pub fn mmr_check(exp: &LoopExpansion, delta: &LaurentPoly) -> Result<MmrReport> {
    let product: LaurentTail = exp.v(0).mul_poly(delta)?;
    let lowest = product.stable_above().max(product.floor() - 1) + 1;
    let mut holds = true;
    let mut count = 0;
    for deg in lowest..=product.topdeg() {
        let expected = if deg == 0 { rat(1) } else { rat(0) };
        count += 1;
        if product.coeff(deg) != Some(expected) {
            holds = false;
        }
    }
    // a zero-length window proves nothing
    Ok(MmrReport { certified_degrees: count, lowest_certified: lowest, holds: holds && count > 0 && lowest <= 0 })
}

/// Colored Jones series against `Σ_i V^{(i)}(e^{ħα}) ħ^i`.
#[derive(Clone, Debug, Serialize)]
pub struct DualPathReport {
    pub alpha: usize,
    pub order: usize,
    pub from_loop: Vec<String>,
    pub from_jones: Vec<String>,
    pub equal: bool,
}

/// Re-expands the rational forms at `z = e^{ħα}` and compares with
/// [`colored_jones`] coefficientwise up to `ħ^order`.
pub fn dual_path_check(
    beta: &BraidWord,
    forms: &[RationalForm],
    delta: &LaurentPoly,
    alpha: usize,
    order: usize,
) -> Result<DualPathReport> {
    if forms.len() <= order {
        return Err(Error::InvalidArgument(format!(
            "{} rational forms cannot reach order {order}",
            forms.len()
        )));
    }
    let binding = Binding::color(alpha as i64);
    let delta_inv = series_exp_substitute(delta, &binding, order).inverse()?;
    let mut total = HbarSeries::zero(order);
    for form in forms.iter().take(order + 1) {
        let value = series_exp_substitute(&form.numerator, &binding, order).mul(&delta_inv.pow(form.power));
        let mut shifted = vec![LaurentPoly::zero(); form.order];
        shifted.extend(value.coeffs().iter().cloned());
        total = total.add(&HbarSeries::from_coeffs(shifted, order));
    }
    let jones = colored_jones(beta, alpha, order)?.series;
    let show = |s: &HbarSeries| s.coeffs().iter().map(ToString::to_string).collect();
    Ok(DualPathReport {
        alpha,
        order,
        from_loop: show(&total),
        from_jones: show(&jones),
        equal: total == jones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{alexander, loop_expansion, LoopOptions};

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn trefoil_rational_forms() {
        let beta = word(2, &[1, 1, 1]);
        let exp = loop_expansion(&beta, &LoopOptions { order: 1, ..LoopOptions::default() }).unwrap();
        let delta = alexander(&beta).unwrap();
        assert!(reconstruct_rational(&exp, 0, &delta, DEFAULT_GUARD).unwrap().numerator.is_one());
        // the m-sum gives (z^2 - 2z + 2 - 2z^-1 + z^-2) / Δ^3
        let v1 = reconstruct_rational(&exp, 1, &delta, DEFAULT_GUARD).unwrap();
        assert_eq!(v1.numerator, p("u^4 - 2*u^2 + 2 - 2*u^-2 + u^-4"));
        assert_eq!(v1.denominator_label(), "Delta^3");
        let mmr = mmr_check(&exp, &delta).unwrap();
        assert!(mmr.holds && mmr.lowest_certified < -60);
    }

    #[test]
    fn shallow_expansion_is_refused() {
        let beta = word(2, &[1, 1, 1]);
        let opts = LoopOptions { order: 1, cutoff: 1, max_cutoff: 1, floor: -12, cache: None };
        let exp = loop_expansion(&beta, &opts).unwrap();
        let delta = alexander(&beta).unwrap();
        assert!(matches!(reconstruct_rational(&exp, 1, &delta, DEFAULT_GUARD), Err(Error::Unverified(_))));
    }

    #[test]
    fn trefoil_dual_path() {
        let beta = word(2, &[1, 1, 1]);
        let exp = loop_expansion(&beta, &LoopOptions { order: 3, ..LoopOptions::default() }).unwrap();
        let delta = alexander(&beta).unwrap();
        let forms: Vec<_> =
            (0..=3).map(|i| reconstruct_rational(&exp, i, &delta, DEFAULT_GUARD).unwrap()).collect();
        for alpha in [2, 3] {
            let report = dual_path_check(&beta, &forms, &delta, alpha, 3).unwrap();
            assert!(report.equal, "{report:?}");
        }
    }
}
