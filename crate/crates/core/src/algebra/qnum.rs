//! Quantum integers in `s = q^{1/2}` and Gaussian binomials.

use super::laurent::{LaurentPoly, Var};
use crate::error::Result;

/// `[n]_q = (s^n - s^-n) / (s - s^-1)`.
pub fn q_number(n: u32) -> LaurentPoly {
    let n = n as i32;
    LaurentPoly::univariate(
        Var::S,
        (0..n).map(|k| (n - 1 - 2 * k, super::laurent::rat(1))),
    )
}

pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n).map(q_number).product()
}

/// `[n]! / ([j]! [n-j]!)`, computed by exact division.
pub fn q_binomial(n: u32, j: u32) -> Result<LaurentPoly> {
    assert!(j <= n, "q_binomial needs j <= n");
    q_factorial(n).exact_div(&(q_factorial(j) * q_factorial(n - j)))
}

/// `s - s^-1`.
pub fn q_difference() -> LaurentPoly {
    LaurentPoly::var(Var::S) - LaurentPoly::var_pow(Var::S, -1)
}

/// Table of Gaussian binomials `[a; k]_t` for `0 <= k <= a <= max`, built by
/// the Pascal rule `[a; k] = [a-1; k-1] + t^k [a-1; k]`.
pub fn gaussian_binomials(max: u32, t: &LaurentPoly) -> Vec<Vec<LaurentPoly>> {
    let mut powers = vec![LaurentPoly::one()];
    for k in 1..=max as usize {
        let next = &powers[k - 1] * t;
        powers.push(next);
    }
    let mut table: Vec<Vec<LaurentPoly>> = Vec::with_capacity(max as usize + 1);
    for a in 0..=max as usize {
        let row = (0..=a)
            .map(|k| {
                if k == 0 || k == a {
                    LaurentPoly::one()
                } else {
                    &table[a - 1][k - 1] + &(&powers[k] * &table[a - 1][k])
                }
            })
            .collect();
        table.push(row);
    }
    table
}

/// A quotient `numerator / (s - s^-1)^power`; the shape of every
/// non-polynomial coefficient in the Verma module actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFraction {
    pub numerator: LaurentPoly,
    pub power: u32,
}

impl QFraction {
    pub fn polynomial(p: LaurentPoly) -> Self {
        Self { numerator: p, power: 0 }
    }

    pub fn mul(&self, other: &QFraction) -> QFraction {
        QFraction {
            numerator: &self.numerator * &other.numerator,
            power: self.power + other.power,
        }
    }

    /// Clears the denominator when it divides the numerator.
    pub fn to_polynomial(&self) -> Result<LaurentPoly> {
        self.numerator.exact_div(&q_difference().pow(self.power))
    }
}

/// `[λ - i]_q` with `z = q^{λ+1}`, i.e. `q^{λ/2} = u s^{-1}`:
/// `(u s^{-1-i} - u^{-1} s^{1+i}) / (s - s^-1)`.
pub fn q_lambda_shift(i: u32) -> QFraction {
    let i = i as i32;
    let numerator = LaurentPoly::monomial(super::laurent::rat(1), [0, 0, -1 - i, 1])
        - LaurentPoly::monomial(super::laurent::rat(1), [0, 0, 1 + i, -1]);
    QFraction { numerator, power: 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert!(q_number(1).is_one());
        assert_eq!(q_number(2), p("s + s^-1"));
        assert_eq!(q_number(4), p("s^3 + s + s^-1 + s^-3"));
        assert!(q_number(0).is_zero());
        for n in 0..8 {
            let lhs = &q_number(n) * &q_difference();
            assert_eq!(lhs, LaurentPoly::var_pow(Var::S, n as i32) - LaurentPoly::var_pow(Var::S, -(n as i32)));
        }
    }

    #[test]
    fn factorials_and_binomials() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_binomial(4, 2).unwrap(), p("s^4 + s^2 + 2 + s^-2 + s^-4"));
        for n in 0..9u32 {
            assert!(q_binomial(n, 0).unwrap().is_one());
            for j in 0..=n {
                let b = q_binomial(n, j).unwrap();
                assert_eq!(b, q_binomial(n, n - j).unwrap());
                let at_one = b.terms().map(|(_, c)| c.clone()).sum::<super::super::laurent::Rational>();
                assert_eq!(at_one, super::super::laurent::rat(binomial(n as i64, j as i64)));
            }
        }
    }

    #[test]
    fn symmetric_pascal_rule() {
        // [n; j] = s^j [n-1; j] + s^{-(n-j)} [n-1; j-1]
        for n in 1..8u32 {
            for j in 1..n {
                let lhs = q_binomial(n, j).unwrap();
                let rhs = LaurentPoly::var_pow(Var::S, j as i32) * q_binomial(n - 1, j).unwrap()
                    + LaurentPoly::var_pow(Var::S, -((n - j) as i32)) * q_binomial(n - 1, j - 1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gaussian_binomials_match_product_formula() {
        let t = p("-d");
        let table = gaussian_binomials(6, &t);
        for a in 0..=6u32 {
            for k in 0..=a {
                let mut num = LaurentPoly::one();
                let mut den = LaurentPoly::one();
                for j in 0..k {
                    num = num * (LaurentPoly::one() - t.pow(a - j));
                    den = den * (LaurentPoly::one() - t.pow(j + 1));
                }
                assert_eq!(table[a as usize][k as usize], num.exact_div(&den).unwrap());
            }
        }
    }

    #[test]
    fn lambda_shift_at_zero() {
        let l0 = q_lambda_shift(0);
        assert_eq!(l0.numerator, p("s^-1*u - s*u^-1"));
        assert_eq!(l0.power, 1);
        assert!(l0.to_polynomial().is_err());
    }
}
