//! Exact Laurent polynomials in the variables `x, d, s, u` with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent vector indexed by [`Var::index`].
pub type Exponents = [i32; 4];

pub const ZERO_EXPONENTS: Exponents = [0; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    D,
    S,
    U,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::D, Var::S, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::D => "d",
            Var::S => "s",
            Var::U => "u",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn unit_exponents(self) -> Exponents {
        let mut e = ZERO_EXPONENTS;
        e[self.index()] = 1;
        e
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn sub_exps(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

/// A finite sum of monomials `c · x^a d^b s^c u^e` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, ZERO_EXPONENTS)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: Rational, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        let mut e = ZERO_EXPONENTS;
        e[v.index()] = k;
        Self::monomial(Rational::one(), e)
    }

    /// Builds `Σ c_k v^k` from `(k, c_k)` pairs.
    pub fn univariate<I>(v: Var, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut p = Self::zero();
        for (k, c) in coeffs {
            let mut e = ZERO_EXPONENTS;
            e[v.index()] = k;
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&ZERO_EXPONENTS).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &Exponents) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ZERO_EXPONENTS)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn as_monomial(&self) -> Option<(&Exponents, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of a monomial; every unit of the Laurent ring is a monomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), [-e[0], -e[1], -e[2], -e[3]]))
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &Exponents, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (add_exps(e, exps), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents need a unit.
    pub fn powi(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = self
            .unit_inverse()
            .ok_or_else(|| Error::InexactDivision(format!("{self} is not a unit")))?;
        Ok(inv.pow(k.unsigned_abs()))
    }

    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let i = v.index();
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|e| e[v.index()] != 0))
            .collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] != 0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Replaces `v` by an arbitrary Laurent polynomial. Negative powers of
    /// `v` require the image to be a unit.
    pub fn substitute(&self, v: Var, image: &LaurentPoly) -> Result<Self> {
        let i = v.index();
        let mut powers: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[i];
            if let std::collections::btree_map::Entry::Vacant(slot) = powers.entry(k) {
                slot.insert(image.powi(k)?);
            }
            let mut rest = *e;
            rest[i] = 0;
            out += &powers[&k].mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Substitutes every variable by a monomial image `coeff · var^exps`
    /// (`None` keeps the variable). Much cheaper than [`Self::substitute`].
    pub fn substitute_monomials(&self, images: &[Option<(Rational, Exponents)>; 4]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = ZERO_EXPONENTS;
            for v in 0..4 {
                match &images[v] {
                    None => exps[v] += e[v],
                    Some((ic, ie)) => {
                        if e[v] != 0 {
                            coeff *= rational_powi(ic, e[v]);
                            for w in 0..4 {
                                exps[w] += ie[w] * e[v];
                            }
                        }
                    }
                }
            }
            out.add_term(exps, coeff);
        }
        out
    }

    pub fn eval_complex(&self, point: &[Complex64; 4]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut z = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for v in 0..4 {
                    if e[v] != 0 {
                        z *= point[v].powi(e[v]);
                    }
                }
                z
            })
            .sum()
    }

    /// Exact value at a rational point `(x, d, s, u)`; variables that do not
    /// occur may be given any value.
    pub fn eval_rational(&self, point: &[Rational; 4]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                (0..4)
                    .filter(|&v| e[v] != 0)
                    .fold(c.clone(), |acc, v| acc * rational_powi(&point[v], e[v]))
            })
            .sum()
    }

    /// Exact quotient `self / divisor`, or an error when the division leaves
    /// a remainder in the Laurent ring.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Ok(self * &inv);
        }
        // Any exact quotient has, in every variable separately, its degree
        // range fixed by the extreme degrees of dividend and divisor.
        let mut bounds = [(0i32, 0i32); 4];
        for v in Var::ALL {
            let (alo, ahi) = self.degree_range(v).unwrap_or((0, 0));
            let (blo, bhi) = divisor.degree_range(v).unwrap_or((0, 0));
            bounds[v.index()] = (alo - blo, ahi - bhi);
        }
        let inexact = || Error::InexactDivision(format!("({self}) / ({divisor})"));
        let (lead_e, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let t = sub_exps(re, lead_e);
            if (0..4).any(|v| t[v] < bounds[v].0 || t[v] > bounds[v].1) {
                return Err(inexact());
            }
            let c = rc / lead_c;
            rem -= &divisor.mul_monomial(&t, &c);
            quotient.add_term(t, c);
        }
        Ok(quotient)
    }

    /// Coefficients of a polynomial in the single variable `v`; fails if any
    /// other variable occurs.
    pub fn univariate_coeffs(&self, v: Var) -> Result<BTreeMap<i32, Rational>> {
        let i = v.index();
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if (0..4).any(|w| w != i && e[w] != 0) {
                return Err(Error::InvalidArgument(format!(
                    "{self} is not a polynomial in {} alone",
                    v.name()
                )));
            }
            out.insert(e[i], c.clone());
        }
        Ok(out)
    }

    /// Collects coefficients of powers of `v`, each a polynomial in the
    /// remaining variables.
    pub fn collect(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let i = v.index();
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[i] = 0;
            out.entry(e[i]).or_default().add_term(rest, c.clone());
        }
        out
    }

    fn add_scaled(&mut self, other: &LaurentPoly, sign: bool) {
        for (e, c) in &other.terms {
            let c = if sign { c.clone() } else { -c.clone() };
            self.add_term(*e, c);
        }
    }

    fn mul_impl(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if let Some((e, c)) = small.as_monomial() {
            return large.mul_monomial(e, c);
        }
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                let prod = ca * cb;
                acc.entry(add_exps(ea, eb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

pub fn rational_powi(c: &Rational, k: i32) -> Rational {
    if k >= 0 {
        num_traits::pow(c.clone(), k as usize)
    } else {
        num_traits::pow(c.recip(), k.unsigned_abs() as usize)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, true);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, false);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }

        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form: terms in descending lexicographic order of the
/// exponent vector `(x, d, s, u)`, e.g. `x^6*d^6 - 2*x^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = Var::ALL
                .into_iter()
                .filter(|v| e[v.index()] != 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    p => format!("{}^{}", v.name(), p),
                })
                .collect();
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        self.text[start..self.pos].parse().map_err(|_| self.error("bad integer"))
    }

    fn exponent(&mut self) -> Result<i32> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k: i32 = self
            .digits()?
            .to_i32()
            .ok_or_else(|| self.error("exponent out of range"))?;
        Ok(if negative { -k } else { k })
    }

    fn factor(&mut self, coeff: &mut Rational, exps: &mut Exponents) -> Result<()> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let numer = self.digits()?;
                let mut c = Rational::from_integer(numer);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom = self.digits()?;
                    if denom.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    c /= Rational::from_integer(denom);
                }
                *coeff *= c;
                Ok(())
            }
            Some(b) => {
                let v = Var::from_name(&(b as char).to_string())
                    .ok_or_else(|| self.error("unknown variable"))?;
                self.pos += 1;
                let k = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                exps[v.index()] += k;
                Ok(())
            }
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<(Exponents, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = ZERO_EXPONENTS;
        self.factor(&mut coeff, &mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok((exps, coeff))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, if sign < 0 { -c } else { c });
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parser = Parser { bytes: text.as_bytes(), pos: 0, text };
        if parser.peek().is_none() {
            return Err(parser.error("empty polynomial"));
        }
        parser.poly()
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_text() {
        let poly = &(&LaurentPoly::var_pow(Var::X, 6) * &LaurentPoly::var_pow(Var::D, 6))
            - &LaurentPoly::var_pow(Var::X, 3).scale(&rat(2));
        assert_eq!(poly.to_string(), "x^6*d^6 - 2*x^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-u^-2 + 1/2").to_string(), "1/2 - u^-2");
        assert_eq!(p("3*s*u^-1 - s^-1").to_string(), "3*s*u^-1 - s^-1");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["x^6*d^6 - 2*x^3", "s - 7/3*x^-2*u", "1", "-1", "x*d*s*u"] {
            assert_eq!(p(text).to_string(), text);
        }
        assert_eq!(p("2*x*3"), p("6*x"));
        assert!("x +".parse::<LaurentPoly>().is_err());
        assert!("y".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = p("x + 1");
        let b = p("x - 1");
        assert_eq!(&a * &b, p("x^2 - 1"));
        assert_eq!(&a + &b, p("2*x"));
        assert!((&a - &a).is_zero());
        assert_eq!(p("x^-1*d").powi(-2).unwrap(), p("x^2*d^-2"));
        assert!(a.powi(-1).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("x^3 + 1");
        let b = p("x + 1");
        assert_eq!(a.exact_div(&b).unwrap(), p("x^2 - x + 1"));
        assert!(a.exact_div(&p("x - 1")).is_err());
        let num = p("s^4 - s^-4");
        assert_eq!(num.exact_div(&p("s - s^-1")).unwrap(), p("s^3 + s + s^-1 + s^-3"));
        let two = p("u*s - u^-1*s^-1") * p("x + d^2");
        assert_eq!(two.exact_div(&p("x + d^2")).unwrap(), p("u*s - u^-1*s^-1"));
    }

    #[test]
    fn substitution() {
        let poly = p("x^2 + d");
        let img = poly.substitute(Var::X, &p("s + 1")).unwrap();
        assert_eq!(img, p("s^2 + 2*s + 1 + d"));
        let mono = p("x^-1*d^3").substitute_monomials(&[
            Some((rat(1), [0, 0, 2, -2])),
            Some((rat(-1), [0, 0, 2, 0])),
            None,
            None,
        ]);
        assert_eq!(mono, p("-s^4*u^2"));
    }

    #[test]
    fn complex_evaluation() {
        let poly = p("x^2 - 3*x^-1");
        let z = poly.eval_complex(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!((z.re - 2.5).abs() < 1e-12 && z.im.abs() < 1e-12);
    }
}
