//! Braid words on `n` strands.
//!
//! A letter `g` stands for `σ_|g|` raised to `sign(g)`. Words act from the
//! left: the word `g_1 g_2 … g_k` is evaluated on a representation as the
//! matrix product `M(g_k) · … · M(g_1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Deserialize)]
struct RawBraid {
    strands: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 {
                return Err(Error::InvalidBraid("letter 0 is not a generator".into()));
            }
            if g.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {g} needs at least {} strands, braid has {strands}",
                    g.unsigned_abs() + 1
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace- or comma-separated signed integers. Without an
    /// explicit strand count the braid gets `1 + max|g|` strands.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::InvalidBraid(format!("malformed token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let strands = match strands {
            Some(n) => n,
            None => 1 + letters.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0),
        };
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&g| g > 0)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&g| i64::from(g.signum())).sum()
    }

    /// The permutation of strand positions, `perm[start] = end`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut position: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            for p in position.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        position
    }

    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
        cycles
    }

    pub fn closure_is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// Fails with [`Error::NotAKnot`] unless the closure has one component.
    pub fn require_knot(&self) -> Result<()> {
        match self.closure_components() {
            1 => Ok(()),
            c => Err(Error::NotAKnot(c)),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::InvalidBraid(format!(
                "cannot concatenate braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `γ β γ⁻¹`, written with `γ` acting first.
    pub fn conjugate_by(&self, gamma: &BraidWord) -> Result<Self> {
        gamma.concat(self)?.concat(&gamma.inverse())
    }

    /// Markov stabilization `β ↦ β σ_n` on `n + 1` strands.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        Self { strands: self.strands + 1, letters }
    }

    /// `σ_i^{±1}` as a one-letter word.
    pub fn generator(strands: usize, letter: i32) -> Result<Self> {
        Self::new(strands, vec![letter])
    }

    /// Uniformly random letters from `±1, …, ±(strands-1)`.
    pub fn random<R: rand::Rng + ?Sized>(strands: usize, len: usize, rng: &mut R) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidBraid("random words need at least two strands".into()));
        }
        let top = strands as i32 - 1;
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..=top);
                if rng.gen_bool(0.5) { g } else { -g }
            })
            .collect();
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for g in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    BraidWord::parse(text, strands)
}

pub fn format_braid(beta: &BraidWord) -> String {
    beta.to_string()
}

pub fn exponent_sum(beta: &BraidWord) -> i64 {
    beta.exponent_sum()
}

pub fn closure_is_knot(beta: &BraidWord) -> bool {
    beta.closure_is_knot()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil_with_explicit_strands() {
        let b = parse_braid("1 1 1", Some(2)).unwrap();
        assert_eq!(b.strands(), 2);
        assert_eq!(b.letters(), &[1, 1, 1]);
    }

    #[test]
    fn empty_word_is_identity() {
        let b = parse_braid("", Some(3)).unwrap();
        assert!(b.is_empty());
        assert_eq!(b.strands(), 3);
        assert_eq!(parse_braid("  ", None).unwrap().strands(), 1);
    }

    #[test]
    fn infers_strands_from_letters() {
        let b = parse_braid("1,-2,1,-2", None).unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(parse_braid("1 0 1", None).is_err());
        assert!(parse_braid("1 x", None).is_err());
        assert!(parse_braid("2", Some(2)).is_err());
        assert!(parse_braid("1", Some(0)).is_err());
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(parse_braid("1 1 1", None).unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::identity(2).unwrap().exponent_sum(), 0);
        assert_eq!(parse_braid("1 -2 1 -2", None).unwrap().exponent_sum(), 0);
    }

    #[test]
    fn knot_detection() {
        assert!(parse_braid("1 1 1", Some(2)).unwrap().closure_is_knot());
        let hopf = parse_braid("1 1", Some(2)).unwrap();
        assert!(!hopf.closure_is_knot());
        assert!(matches!(hopf.require_knot(), Err(Error::NotAKnot(2))));
        assert!(parse_braid("1 -2 1 -2", None).unwrap().closure_is_knot());
        assert!(BraidWord::identity(1).unwrap().closure_is_knot());
    }

    #[test]
    fn json_echo_validates() {
        let b = parse_braid("1 -2", None).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(text, r#"{"strands":3,"letters":[1,-2]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&text).unwrap(), b);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"letters":[3]}"#).is_err());
    }

    #[test]
    fn stabilization_keeps_knottedness() {
        let t = parse_braid("1 1 1", None).unwrap();
        let st = t.stabilize(true);
        assert_eq!(st.strands(), 3);
        assert!(st.closure_is_knot());
    }
}
