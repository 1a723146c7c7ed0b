//! Alexander polynomial from the reduced Burau representation.

use crate::algebra::{rat, LaurentPoly, RingMatrix, Var};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::lawrence::{lawrence_word, LawrenceRep};

fn u_pow(k: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::U, k)
}

/// Reduced Burau matrix of `β` at `x = z^{-1} = u^{-2}`.
pub fn burau_at_u(beta: &BraidWord) -> Result<RingMatrix> {
    let burau = lawrence_word(&LawrenceRep::new(beta.strands(), 1)?, beta)?;
    Ok(burau.map(|p| p.substitute_monomials(&[Some((rat(1), [0, 0, 0, -2])), None, None, None])))
}

/// `Δ_K` as a Laurent polynomial in `u = z^{1/2}`, from
/// `u^{e} (u - u^{-1}) / (u^n - u^{-n}) · det(I - B(u^{-2}))`, shifted to be
/// symmetric and signed so that `Δ(1) = 1`.
pub fn alexander(beta: &BraidWord) -> Result<LaurentPoly> {
    beta.require_knot()?;
    let n = beta.strands() as i32;
    let b = burau_at_u(beta)?;
    let det = RingMatrix::identity(b.rows()).sub(&b).det()?;
    let numer = &(&u_pow(beta.exponent_sum() as i32) * &(u_pow(1) - u_pow(-1))) * &det;
    let raw = numer.exact_div(&(u_pow(n) - u_pow(-n)))?;
    normalize_symmetric(&raw)
}

/// Multiplies by `±u^k` so the result is symmetric under `u ↦ u^{-1}` with
/// value 1 at `u = 1`.
pub fn normalize_symmetric(p: &LaurentPoly) -> Result<LaurentPoly> {
    let (lo, hi) = p
        .degree_range(Var::U)
        .ok_or_else(|| Error::Consistency("Alexander polynomial vanished".into()))?;
    if (lo + hi) % 2 != 0 {
        return Err(Error::Consistency(format!("{p} cannot be made symmetric")));
    }
    let shifted = p * &u_pow(-(lo + hi) / 2);
    let at_one: num_rational::BigRational = shifted.terms().map(|(_, c)| c.clone()).sum();
    let normalized = if at_one == rat(1) {
        shifted
    } else if at_one == rat(-1) {
        -shifted
    } else {
        return Err(Error::Consistency(format!("{p} has value {at_one} at u = 1")));
    };
    let mirrored = normalized.substitute_monomials(&[None, None, None, Some((rat(1), [0, 0, 0, -1]))]);
    if mirrored != normalized {
        return Err(Error::Consistency(format!("{normalized} is not symmetric")));
    }
    Ok(normalized)
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
    fn examples() {
        assert!(alexander(&word(2, &[1])).unwrap().is_one());
        assert_eq!(alexander(&word(2, &[1, 1, 1])).unwrap(), p("u^2 - 1 + u^-2"));
        assert_eq!(alexander(&word(3, &[1, -2, 1, -2])).unwrap(), p("-u^2 + 3 - u^-2"));
        assert_eq!(alexander(&word(2, &[1, 1, 1, 1, 1])).unwrap(), p("u^4 - u^2 + 1 - u^-2 + u^-4"));
        // the trefoil as a closed 3-braid
        assert_eq!(alexander(&word(3, &[1, 2, 1, 2])).unwrap(), p("u^2 - 1 + u^-2"));
    }

    #[test]
    fn links_are_rejected() {
        assert!(matches!(alexander(&word(2, &[1, 1])), Err(Error::NotAKnot(2))));
    }
}
