//! Power series in `ħ` truncated at a fixed order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::{rat, LaurentPoly, Rational, Var, ZERO_EXPONENTS};

/// `Σ_{k ≤ order} coeffs[k] ħ^k` with Laurent polynomial coefficients
/// (in practice polynomials in `u` only).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HbarSeries {
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl HbarSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn constant(p: LaurentPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(LaurentPoly::one(), order)
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        Self { order, coeffs }
    }

    /// `e^{rate · ħ}`.
    pub fn exp_linear(rate: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            if k > 0 {
                term = term * rate / rat(k as i64);
            }
            coeffs.push(LaurentPoly::constant(term.clone()));
        }
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Self { order, coeffs }
    }

    pub fn sub(&self, other: &HbarSeries) -> HbarSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Self { order, coeffs }
    }

    pub fn mul(&self, other: &HbarSeries) -> HbarSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &other.coeffs[k - j]).sum())
            .collect();
        Self { order, coeffs }
    }

    pub fn scale(&self, p: &LaurentPoly) -> HbarSeries {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> crate::Result<HbarSeries> {
        let c0inv = self.coeffs[0].unit_inverse().ok_or_else(|| {
            crate::Error::InexactDivision(format!("constant term {} is not a unit", self.coeffs[0]))
        })?;
        let mut out = vec![c0inv.clone()];
        for k in 1..=self.order {
            let acc: LaurentPoly = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-(&acc * &c0inv));
        }
        Ok(Self { order: self.order, coeffs: out })
    }

    pub fn pow(&self, k: u32) -> HbarSeries {
        (0..k).fold(HbarSeries::one(self.order), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(h^{})", self.order + 1)
    }
}

/// Image of one variable: `coeff · u^{u_power} · e^{rate·ħ}`. Keeping `u`
/// symbolic is the image `u^1` with rate zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpMonomial {
    pub coeff: Rational,
    pub u_power: i32,
    pub rate: Rational,
}

impl ExpMonomial {
    pub fn new(coeff: i64, u_power: i32, rate: Rational) -> Self {
        Self { coeff: rat(coeff), u_power, rate }
    }
}

/// Substitution rule for `series_exp_substitute`, one entry per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub images: [ExpMonomial; 4],
}

impl Binding {
    /// `x ↦ e^ħ u^{-2}`, `d ↦ -e^ħ`, `s ↦ e^{ħ/2}`, `u` symbolic.
    pub fn loop_variables() -> Self {
        Self {
            images: [
                ExpMonomial::new(1, -2, rat(1)),
                ExpMonomial::new(-1, 0, rat(1)),
                ExpMonomial::new(1, 0, super::laurent::rat_frac(1, 2)),
                ExpMonomial::new(1, 1, rat(0)),
            ],
        }
    }

    /// `u ↦ e^{αħ/2}` in addition to `s ↦ e^{ħ/2}`, i.e. `z = e^{αħ}`.
    pub fn color(alpha: i64) -> Self {
        let mut b = Self::loop_variables();
        b.images[Var::U.index()] = ExpMonomial::new(1, 0, super::laurent::rat_frac(alpha, 2));
        b
    }
}

fn rational_pow(c: &Rational, k: i32) -> Rational {
    super::laurent::rational_powi(c, k)
}

/// Expands `p` under `binding` as a series in `ħ` truncated at `order`.
pub fn series_exp_substitute(p: &LaurentPoly, binding: &Binding, order: usize) -> HbarSeries {
    // group terms by (u-power, rate): Σ c u^U e^{rate ħ}
    let mut grouped: BTreeMap<(i32, Rational), Rational> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut coeff = c.clone();
        let mut u_power = 0;
        let mut rate = Rational::zero();
        for v in Var::ALL {
            let k = e[v.index()];
            if k == 0 {
                continue;
            }
            let img = &binding.images[v.index()];
            coeff *= rational_pow(&img.coeff, k);
            u_power += img.u_power * k;
            rate += &img.rate * rat(k as i64);
        }
        *grouped.entry((u_power, rate)).or_insert_with(Rational::zero) += coeff;
    }
    let mut out = HbarSeries::zero(order);
    for ((u_power, rate), c) in grouped {
        if c.is_zero() {
            continue;
        }
        let mut term = c;
        for k in 0..=order {
            if k > 0 {
                term = term * &rate / rat(k as i64);
            }
            let mut exps = ZERO_EXPONENTS;
            exps[Var::U.index()] = u_power;
            out.coeffs[k].add_term(exps, term.clone());
        }
    }
    out
}

/// Truncated series stored by divided-power moments: the value is
/// `Σ_k m_k (ħ/2)^k / k!`, so `e^{r ħ/2}` has moments `r^k` and products
/// are binomial convolutions over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DividedSeries {
    moments: Vec<BigInt>,
}

impl DividedSeries {
    pub fn zero() -> Self {
        Self { moments: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut s = Self { moments: vec![c] };
        s.trim();
        s
    }

    /// `c · e^{rate · ħ/2}` truncated at `order`.
    pub fn exp_half(c: &BigInt, rate: i64, order: usize) -> Self {
        let r = BigInt::from(rate);
        let mut moments = Vec::with_capacity(order + 1);
        let mut power = c.clone();
        for k in 0..=order {
            if k > 0 {
                power *= &r;
            }
            moments.push(power.clone());
        }
        let mut s = Self { moments };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.moments.last().is_some_and(Zero::is_zero) {
            self.moments.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn moments(&self) -> &[BigInt] {
        &self.moments
    }

    /// The coefficient of `ħ^k`.
    pub fn hbar_coeff(&self, k: usize) -> Rational {
        match self.moments.get(k) {
            None => Rational::zero(),
            Some(m) => {
                let denom = num_traits::pow(BigInt::from(2), k) * factorial(k);
                Rational::new(m.clone(), denom)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.moments.len().max(other.moments.len());
        let moments = (0..n)
            .map(|k| match (self.moments.get(k), other.moments.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut s = Self { moments };
        s.trim();
        s
    }

    pub fn neg(&self) -> Self {
        Self { moments: self.moments.iter().map(|m| -m).collect() }
    }

    /// Product truncated at `order`.
    pub fn mul(&self, other: &Self, order: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = (self.moments.len() + other.moments.len() - 1).min(order + 1);
        let mut moments = vec![BigInt::zero(); n];
        for (k, slot) in moments.iter_mut().enumerate() {
            let binoms = binomial_row(k);
            for (j, binom) in binoms.iter().enumerate().take(k + 1) {
                if let (Some(a), Some(b)) = (self.moments.get(j), other.moments.get(k - j)) {
                    if !a.is_zero() && !b.is_zero() {
                        *slot += binom * a * b;
                    }
                }
            }
        }
        let mut s = Self { moments };
        s.trim();
        s
    }

    /// Product with `e^{rate ħ/2}` truncated at `order`.
    pub fn mul_exp(&self, rate: i64, order: usize) -> Self {
        self.mul(&Self::exp_half(&BigInt::one(), rate, order), order)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 1..=k {
        let next = &row[j - 1] * BigInt::from(k + 1 - j) / BigInt::from(j);
        row.push(next);
    }
    row
}

/// Laurent polynomial in `u` whose coefficients are [`DividedSeries`]
/// truncated at a fixed `order`. This is the ring in which specialized
/// Lawrence matrices are multiplied.
#[derive(Clone, Debug, Default)]
pub struct HbarPoly {
    terms: BTreeMap<i32, DividedSeries>,
    order: usize,
}

impl PartialEq for HbarPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl HbarPoly {
    pub fn zero_with_order(order: usize) -> Self {
        Self { terms: BTreeMap::new(), order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i32, DividedSeries> {
        &self.terms
    }

    pub fn monomial(u_power: i32, series: DividedSeries, order: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !series.is_zero() {
            terms.insert(u_power, series);
        }
        Self { terms, order }
    }

    /// Lowest `u`-degree present.
    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Drops every `u`-degree below `lowest`.
    pub fn truncate_below(&mut self, lowest: i32) {
        self.terms = self.terms.split_off(&lowest);
    }

    /// Drops every `u`-degree above `highest`.
    pub fn truncate_above(&mut self, highest: i32) {
        let _ = self.terms.split_off(&(highest + 1));
    }

    pub fn add_term(&mut self, u_power: i32, series: &DividedSeries) {
        let sum = match self.terms.get(&u_power) {
            Some(cur) => cur.add(series),
            None => series.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&u_power);
        } else {
            self.terms.insert(u_power, sum);
        }
    }

    /// `self · u^{shift} · e^{rate ħ/2}`.
    pub fn shift_exp(&self, shift: i32, rate: i64) -> Self {
        let e = DividedSeries::exp_half(&BigInt::one(), rate, self.order);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k + shift, v.mul(&e, self.order)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            order: self.order,
        }
    }

    /// Converts to an [`HbarSeries`] with coefficients polynomial in `u`.
    pub fn to_hbar_series(&self) -> HbarSeries {
        let mut out = HbarSeries::zero(self.order);
        for (k, slot) in out.coeffs.iter_mut().enumerate() {
            *slot = LaurentPoly::univariate(
                Var::U,
                self.terms.iter().map(|(deg, s)| (*deg, s.hbar_coeff(k))),
            );
        }
        out
    }

    /// Specializes `p ∈ Z[x^±1, d^±1]` under `x ↦ e^ħ u^{-2}`,
    /// `d ↦ -e^ħ`. Coefficients of `p` must be integers.
    pub fn from_xd_poly(p: &LaurentPoly, order: usize) -> Self {
        let mut out = Self::zero_with_order(order);
        let mut grouped: BTreeMap<(i32, i64), BigInt> = BTreeMap::new();
        for (e, c) in p.terms() {
            assert!(c.is_integer(), "specialization needs integer coefficients");
            let (a, b) = (e[Var::X.index()], e[Var::D.index()]);
            let sign = if b.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() };
            *grouped.entry((-2 * a, 2 * i64::from(a + b))).or_default() += sign * c.numer();
        }
        for ((u_power, rate), c) in grouped {
            if !c.is_zero() {
                out.add_term(u_power, &DividedSeries::exp_half(&c, rate, order));
            }
        }
        out
    }
}

impl super::ring::Ring for HbarPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::monomial(0, DividedSeries::constant(BigInt::one()), 0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let order = self.order.max(other.order);
        let mut out = Self::zero_with_order(order);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka + kb, &va.mul(vb, order));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
            order: self.order,
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.order = self.order.max(other.order);
        for (k, v) in &other.terms {
            self.add_term(*k, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::rat_frac;
    use crate::algebra::ring::Ring;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn substitution_examples() {
        let b = Binding::loop_variables();
        let s = series_exp_substitute(&p("s"), &b, 2);
        assert_eq!(s.coeffs(), &[p("1"), p("1/2"), p("1/8")]);
        let x = series_exp_substitute(&p("x"), &b, 1);
        assert_eq!(x.coeffs(), &[p("u^-2"), p("u^-2")]);
        let d = series_exp_substitute(&p("-d"), &b, 3);
        assert_eq!(d.coeffs(), &[p("1"), p("1"), p("1/2"), p("1/6")]);
    }

    #[test]
    fn exp_linear_matches_substitution() {
        let e = HbarSeries::exp_linear(&rat_frac(3, 2), 4);
        let b = Binding::loop_variables();
        assert_eq!(e, series_exp_substitute(&p("s^3"), &b, 4));
    }

    #[test]
    fn inverse_of_series() {
        let b = Binding::color(2);
        let den = series_exp_substitute(&p("u^2 - 1 + u^-2"), &b, 5);
        let inv = den.inverse().unwrap();
        assert!(den.mul(&inv).sub(&HbarSeries::one(5)).is_zero());
    }

    #[test]
    fn divided_series_products() {
        let a = DividedSeries::exp_half(&BigInt::from(3), 2, 4);
        let b = DividedSeries::exp_half(&BigInt::from(-1), -5, 4);
        let prod = a.mul(&b, 4);
        assert_eq!(prod, DividedSeries::exp_half(&BigInt::from(-3), -3, 4));
        assert_eq!(a.hbar_coeff(2), rat(3) * rat(1) / rat(2) * rat(1));
    }

    #[test]
    fn specialized_polys_agree_with_exact_substitution() {
        let poly = p("x^3*d^-2 - 2*x*d + 5 + x^2*d^3");
        let fast = HbarPoly::from_xd_poly(&poly, 3).to_hbar_series();
        let exact = series_exp_substitute(&poly, &Binding::loop_variables(), 3);
        assert_eq!(fast, exact);
        let sq = HbarPoly::from_xd_poly(&poly, 3);
        let sq = sq.mul_ref(&sq).to_hbar_series();
        assert_eq!(sq, series_exp_substitute(&(&poly * &poly), &Binding::loop_variables(), 3));
    }
}
