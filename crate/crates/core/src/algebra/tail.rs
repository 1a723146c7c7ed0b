//! Truncated formal Laurent series in `u^{-1}`.

use num_traits::Zero;

use super::laurent::{LaurentPoly, Rational, Var};
use crate::error::Result;

/// Coefficients of `u^{topdeg}, u^{topdeg-1}, …, u^{floor}`. Degrees strictly
/// above `stable_above` are proven exact; the rest are known only up to
/// contributions that were not computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    topdeg: i32,
    floor: i32,
    coeffs: Vec<Rational>,
    stable_above: i32,
}

impl LaurentTail {
    pub fn zero(floor: i32) -> Self {
        Self { topdeg: floor, floor, coeffs: vec![Rational::zero()], stable_above: floor - 1 }
    }

    /// The part of a polynomial in `u` at or above `floor`, with
    /// `stable_above` supplied by the caller.
    pub fn from_poly(p: &LaurentPoly, floor: i32, stable_above: i32) -> Result<Self> {
        let coeffs = p.univariate_coeffs(Var::U)?;
        let topdeg = coeffs.keys().next_back().copied().unwrap_or(floor).max(floor);
        let mut tail = Self {
            topdeg,
            floor,
            coeffs: vec![Rational::zero(); (topdeg - floor + 1) as usize],
            stable_above: stable_above.max(floor - 1),
        };
        for (deg, c) in coeffs.into_iter().filter(|(d, _)| *d >= floor) {
            tail.coeffs[(topdeg - deg) as usize] = c;
        }
        Ok(tail)
    }

    pub fn topdeg(&self) -> i32 {
        self.topdeg
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn stable_above(&self) -> i32 {
        self.stable_above
    }

    pub fn set_stable_above(&mut self, deg: i32) {
        self.stable_above = deg.max(self.floor - 1);
    }

    /// Coefficient of `u^deg`; zero above the top, `None` below the floor.
    pub fn coeff(&self, deg: i32) -> Option<Rational> {
        if deg > self.topdeg {
            Some(Rational::zero())
        } else if deg < self.floor {
            None
        } else {
            Some(self.coeffs[(self.topdeg - deg) as usize].clone())
        }
    }

    pub fn is_exact(&self, deg: i32) -> bool {
        deg > self.stable_above
    }

    /// Whether every stored coefficient is exact.
    pub fn fully_exact(&self) -> bool {
        self.stable_above < self.floor
    }

    /// Nonzero `(degree, coefficient)` pairs, top down.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.topdeg - k as i32, c))
            .filter(|(_, c)| !c.is_zero())
    }

    /// The stored coefficients as a polynomial in `u`.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::univariate(Var::U, self.nonzero_terms().map(|(d, c)| (d, c.clone())))
    }

    /// Only the certified coefficients, as a polynomial in `u`.
    pub fn exact_poly(&self) -> LaurentPoly {
        LaurentPoly::univariate(
            Var::U,
            self.nonzero_terms()
                .filter(|(d, _)| *d > self.stable_above)
                .map(|(d, c)| (d, c.clone())),
        )
    }

    /// Product with a polynomial in `u`. Coefficients whose inputs reach
    /// below the floor are dropped by raising the floor.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self> {
        let coeffs = p.univariate_coeffs(Var::U)?;
        let Some(&hi) = coeffs.keys().next_back() else {
            return Ok(Self::zero(self.floor));
        };
        let topdeg = self.topdeg + hi;
        let floor = self.floor + hi;
        let mut out = vec![Rational::zero(); (topdeg - floor + 1) as usize];
        for (k, slot) in out.iter_mut().enumerate() {
            let deg = topdeg - k as i32;
            for (m, c) in &coeffs {
                if let Some(a) = self.coeff(deg - m) {
                    if !a.is_zero() {
                        *slot += a * c;
                    }
                }
            }
        }
        Ok(Self {
            topdeg,
            floor,
            coeffs: out,
            stable_above: self.stable_above.saturating_add(hi).max(floor - 1),
        })
    }

    /// Division by `u - u^{-1}` as a series in `u^{-1}`:
    /// `f / (u - u^{-1}) = Σ_j f · u^{-1-2j}`.
    pub fn div_u_minus_inverse(&self) -> Self {
        let topdeg = self.topdeg - 1;
        let floor = self.floor;
        let mut out = vec![Rational::zero(); (topdeg - floor + 1).max(1) as usize];
        let mut parity_acc = [Rational::zero(), Rational::zero()];
        for (k, slot) in out.iter_mut().enumerate() {
            let deg = topdeg - k as i32;
            let src = self.coeff(deg + 1).unwrap_or_else(Rational::zero);
            let acc = &mut parity_acc[(deg.rem_euclid(2)) as usize];
            *acc += src;
            *slot = acc.clone();
        }
        Self {
            topdeg: topdeg.max(floor),
            floor,
            coeffs: out,
            stable_above: (self.stable_above - 1).max(floor - 1),
        }
    }

    /// `(degree, coefficient)` pairs of the certified, nonzero part.
    pub fn exact_terms(&self) -> Vec<(i32, Rational)> {
        self.nonzero_terms()
            .filter(|(d, _)| *d > self.stable_above)
            .map(|(d, c)| (d, c.clone()))
            .collect()
    }
}

/// Expands a rational function `num / den` in `u` as a series in `u^{-1}`
/// down to `floor`. The leading coefficient of `den` must be nonzero.
pub fn expand_rational(num: &LaurentPoly, den: &LaurentPoly, floor: i32) -> Result<LaurentTail> {
    let n = num.univariate_coeffs(Var::U)?;
    let d = den.univariate_coeffs(Var::U)?;
    let (&dtop, dlead) = d.iter().next_back().ok_or_else(|| {
        crate::Error::InvalidArgument("expansion with a zero denominator".into())
    })?;
    let Some(&ntop) = n.keys().next_back() else {
        return Ok(LaurentTail::zero(floor));
    };
    let topdeg = (ntop - dtop).max(floor);
    let mut out = vec![Rational::zero(); (topdeg - floor + 1) as usize];
    // q_k solves num = den · q from the top down
    let mut rem = n.clone();
    for (k, slot) in out.iter_mut().enumerate() {
        let deg = topdeg - k as i32;
        let c = rem.get(&(deg + dtop)).cloned().unwrap_or_else(Rational::zero) / dlead;
        if !c.is_zero() {
            for (m, dc) in &d {
                let e = rem.entry(deg + m).or_insert_with(Rational::zero);
                *e -= &c * dc;
            }
        }
        *slot = c;
    }
    Ok(LaurentTail { topdeg, floor, coeffs: out, stable_above: floor - 1 })
}
