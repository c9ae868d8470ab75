//! The coefficient ring Z[v, v^-1] with exact arbitrary-precision arithmetic,
//! plus the fraction field used internally when inverting bar matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A Laurent polynomial in `v` with integer coefficients.
///
/// Stored sparsely as exponent -> coefficient; zero coefficients are never
/// stored, so the zero polynomial has an empty term map and structural
/// equality is canonical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The monomial `coeff * v^exp`; collapses to zero when `coeff` is zero.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (exp, coeff) in iter {
            out.add_term(exp, coeff.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `v^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluation at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / d`, or [`Error::NotDivisible`] when `d` does not
    /// divide `self` in Z[v, v^-1] (including `d = 0` with `self` nonzero).
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if d.is_zero() {
            return Err(Error::NotDivisible);
        }
        let shift = self.min_exp().unwrap() - d.min_exp().unwrap();
        let mut rem = self.shifted(-self.min_exp().unwrap());
        let div = d.shifted(-d.min_exp().unwrap());
        let (div_deg, div_lead) = {
            let e = div.max_exp().unwrap();
            (e, div.coeff(e))
        };
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rem_deg = rem.max_exp().unwrap();
            if rem_deg < div_deg {
                return Err(Error::NotDivisible);
            }
            let rem_lead = rem.coeff(rem_deg);
            let (q, r) = rem_lead.div_rem(&div_lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let term = Self::monomial(rem_deg - div_deg, q);
            rem -= &(&term * &div);
            quot += &term;
        }
        Ok(quot.shifted(shift))
    }

    /// The Gaussian integer `[a] = v^(a-1) + v^(a-3) + ... + v^(1-a)`; `[0] = 0`.
    pub fn gaussian_integer(a: u32) -> Self {
        let a = i64::from(a);
        Self::from_terms((0..a).map(|j| (a - 1 - 2 * j, 1)))
    }

    /// The Gaussian factorial `[a]! = [a][a-1]...[1]`; `[0]! = 1`.
    pub fn gaussian_factorial(a: u32) -> Self {
        let mut out = Self::one();
        for i in 1..=a {
            out = &out * &Self::gaussian_integer(i);
        }
        out
    }

    /// The unique bar-symmetric `g` with `self - g` in vZ[v]: keep the
    /// constant term and reflect every negative-exponent term.
    pub fn bar_symmetric_part(&self) -> Self {
        let mut out = Self::monomial(0, self.coeff(0));
        for (e, c) in self.terms.range(..0) {
            out.add_term(*e, c.clone());
            out.add_term(-e, c.clone());
        }
        out
    }

    /// Whether every term has exponent at least one (vacuously true for zero).
    pub fn in_v_zv(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: ascending exponents, no spaces, e.g. `v^-2+2+v^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if *e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical display form; also tolerates whitespace and a
    /// `*` between coefficient and `v`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("invalid polynomial {s:?}"));
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut out = Self::zero();
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad());
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > digits_start {
                BigInt::parse_bytes(&bytes[digits_start..pos], 10).ok_or_else(bad)?
            } else {
                BigInt::one()
            };
            if sign < 0 {
                coeff = -coeff;
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b'v' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let exp_start = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = compact[exp_start..pos].parse().map_err(|_| bad())?;
                }
            } else if pos == digits_start {
                // Neither digits nor a v: the term is empty.
                return Err(bad());
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl serde::Serialize for LaurentPoly {
    /// JSON form: list of `[exponent, coefficient]` pairs, ascending exponent.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let c = i64::try_from(c).map_err(|_| {
                serde::ser::Error::custom(format!("coefficient {c} exceeds the JSON integer range"))
            })?;
            seq.serialize_element(&(*e, c))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(d)?;
        Ok(Self::from_terms(pairs))
    }
}

/// A quotient of Laurent polynomials, reduced after every operation.
///
/// Invariants: `den` is nonzero with minimum exponent zero and positive
/// leading coefficient, `gcd(num, den) = 1` in Z[v] up to a power of `v`.
/// Only used while solving the bar fixed-point equations; quotients that
/// reach the final basis are certified integral via [`LaurentPoly::exact_div`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    pub(crate) fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub(crate) fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub(crate) fn from_poly(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "fraction denominator is zero");
        if num.is_zero() {
            return Self::zero();
        }
        // Pull the powers of v out of the denominator, then cancel the
        // integer content and the polynomial gcd.
        let num_min = num.min_exp().unwrap();
        let den_min = den.min_exp().unwrap();
        let num_shift = num_min - den_min;
        let mut num = num.shifted(-num_min);
        let mut den = den.shifted(-den_min);

        let content = num_content(&num).gcd(&num_content(&den));
        if !content.is_one() {
            let c = LaurentPoly::monomial(0, content);
            num = num.exact_div(&c).expect("content divides");
            den = den.exact_div(&c).expect("content divides");
        }
        let g = poly_gcd(&num, &den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides");
            den = den.exact_div(&g).expect("gcd divides");
        }
        if den.coeff(den.max_exp().unwrap()).is_negative() {
            num = -num;
            den = -den;
        }
        Self {
            num: num.shifted(num_shift),
            den,
        }
    }

    pub(crate) fn add(&self, rhs: &Self) -> Self {
        Self::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub(crate) fn sub(&self, rhs: &Self) -> Self {
        Self::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Panics when `rhs` is zero; callers pick nonzero pivots.
    pub(crate) fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero fraction");
        Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub(crate) fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub(crate) fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }

    /// Certifies the fraction is a Laurent polynomial and returns it.
    pub(crate) fn into_laurent(self) -> Result<LaurentPoly> {
        self.num.exact_div(&self.den)
    }
}

/// Positive gcd of all coefficients; zero polynomial yields zero.
fn num_content(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
}

/// Primitive gcd in Z[v] of two nonzero polynomials with min exponent zero,
/// normalized to a positive leading coefficient. Primitive pseudo-remainder
/// sequence; degrees here are small so no subresultant bookkeeping is needed.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let primitive = |p: &LaurentPoly| -> LaurentPoly {
        let c = num_content(p);
        let mut pp = p
            .exact_div(&LaurentPoly::monomial(0, c))
            .expect("content divides");
        if pp.coeff(pp.max_exp().unwrap()).is_negative() {
            pp = -pp;
        }
        pp
    };
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.max_exp() < b.max_exp() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = primitive(&r);
    }
}

/// Pseudo-remainder of `lc(b)^(deg a - deg b + 1) * a` modulo `b`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let deg_b = b.max_exp().unwrap();
    let lead_b = b.coeff(deg_b);
    let mut rem = a.clone();
    while let Some(deg_r) = rem.max_exp() {
        if deg_r < deg_b {
            break;
        }
        let lead_r = rem.coeff(deg_r);
        rem = &(&rem * &LaurentPoly::monomial(0, lead_b.clone()))
            - &(b * &LaurentPoly::monomial(deg_r - deg_b, lead_r));
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().expect("test polynomial parses")
    }

    #[test]
    fn display_canonical() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::monomial(1, 1).to_string(), "v");
        assert_eq!(LaurentPoly::monomial(-2, 1).to_string(), "v^-2");
        assert_eq!(LaurentPoly::monomial(3, -2).to_string(), "-2v^3");
        let f = LaurentPoly::from_terms([(-2, 1), (0, 2), (3, 1)]);
        assert_eq!(f.to_string(), "v^-2+2+v^3");
        let g = LaurentPoly::from_terms([(-1, -1), (1, 1)]);
        assert_eq!(g.to_string(), "-v^-1+v");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "1", "-1", "v", "-v", "v^-2+2+v^3", "-v^-1+v", "5v^2", "v^-10"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p(" v ^ 2 + 3 * v "), p("3v+v^2"));
        assert_eq!(p("2+v-1"), p("1+v"));
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("w".parse::<LaurentPoly>().is_err());
        assert!("1++2".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let f = p("v+v^-1");
        let g = p("v-v^-1");
        assert_eq!(&f + &g, p("2v"));
        assert_eq!(&f - &g, p("2v^-1"));
        assert_eq!(&f * &g, p("v^2-v^-2"));
        assert_eq!(-&f, p("-v-v^-1"));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn bar_and_eval() {
        let f = p("v^-2+2+v^3");
        assert_eq!(f.bar(), p("v^-3+2+v^2"));
        assert_eq!(f.bar().bar(), f);
        assert_eq!(f.eval_one(), BigInt::from(4));
    }

    #[test]
    fn gaussian_values() {
        assert!(LaurentPoly::gaussian_integer(0).is_zero());
        assert_eq!(LaurentPoly::gaussian_integer(1), p("1"));
        assert_eq!(LaurentPoly::gaussian_integer(2), p("v+v^-1"));
        assert_eq!(LaurentPoly::gaussian_integer(3), p("v^2+1+v^-2"));
        assert_eq!(LaurentPoly::gaussian_factorial(0), p("1"));
        assert_eq!(LaurentPoly::gaussian_factorial(2), p("v+v^-1"));
        assert_eq!(
            LaurentPoly::gaussian_factorial(3),
            p("v^3+2v+2v^-1+v^-3")
        );
    }

    #[test]
    fn exact_division() {
        let f = p("v^3+2v+2v^-1+v^-3");
        let d = p("v+v^-1");
        assert_eq!(f.exact_div(&d).unwrap(), p("v^2+1+v^-2"));
        assert!(matches!(
            p("v+1").exact_div(&d),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            p("v").exact_div(&LaurentPoly::zero()),
            Err(Error::NotDivisible)
        ));
        assert_eq!(
            LaurentPoly::zero().exact_div(&d).unwrap(),
            LaurentPoly::zero()
        );
        assert!(matches!(
            p("v+v^-1").exact_div(&p("2")),
            Err(Error::NotDivisible)
        ));
        // Quotients may still have negative coefficients and v-shifts.
        let prod = &p("v^-3-v") * &p("2v^2-v^-5");
        assert_eq!(prod.exact_div(&p("v^-3-v")).unwrap(), p("2v^2-v^-5"));
    }

    #[test]
    fn symmetric_part_and_vzv() {
        assert_eq!(p("v^-2+3+v").bar_symmetric_part(), p("v^-2+3+v^2"));
        assert_eq!(p("v+v^2").bar_symmetric_part(), LaurentPoly::zero());
        assert_eq!(
            p("-2v^-1+1+5v^3").bar_symmetric_part(),
            p("-2v^-1+1-2v")
        );
        assert!(LaurentPoly::zero().in_v_zv());
        assert!(p("v+3v^7").in_v_zv());
        assert!(!p("1+v").in_v_zv());
        assert!(!p("v^-1").in_v_zv());
    }

    #[test]
    fn serde_pair_form() {
        let f = p("v^-2+2-v^3");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[[-2,1],[0,2],[3,-1]]");
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "[]");
    }

    #[test]
    fn fraction_reduction() {
        let half = LaurentFraction::normalized(p("v^2-v^-2"), p("v-v^-1"));
        assert_eq!(half, LaurentFraction::from_poly(p("v+v^-1")));
        let f = LaurentFraction::normalized(p("2v"), p("4v^3-4v"));
        assert_eq!(f, LaurentFraction::normalized(p("1"), p("2v^2-2")));
        assert_eq!(
            LaurentFraction::normalized(p("v"), p("-v^2+1")),
            LaurentFraction::normalized(p("-v"), p("v^2-1"))
        );
    }

    #[test]
    fn fraction_field_ops() {
        let a = LaurentFraction::normalized(p("1"), p("v+v^-1"));
        let b = LaurentFraction::from_poly(p("v+v^-1"));
        assert_eq!(a.mul(&b), LaurentFraction::one());
        assert_eq!(b.div(&b), LaurentFraction::one());
        assert!(a.sub(&a).is_zero());
        let s = a.add(&a);
        assert_eq!(s, LaurentFraction::normalized(p("2"), p("v+v^-1")));
        assert_eq!(
            a.add(&b),
            LaurentFraction::normalized(p("v^2+3+v^-2"), p("v+v^-1"))
        );
        assert_eq!(a.bar(), a);
        let c = LaurentFraction::normalized(p("v"), p("v^2+1"));
        assert_eq!(c.bar(), c, "1/(v+v^-1) written with polynomial denominator");
        assert_eq!(b.clone().into_laurent().unwrap(), p("v+v^-1"));
        assert!(matches!(a.into_laurent(), Err(Error::NotDivisible)));
    }

    #[test]
    fn gcd_primitive_prs() {
        let g = poly_gcd(&p("v^2-1"), &p("v^2+2v+1"));
        assert_eq!(g, p("v+1"));
        let g = poly_gcd(&p("2v^2-2"), &p("4v-4"));
        assert_eq!(g, p("v-1"));
        let g = poly_gcd(&p("v^3+1"), &p("v^2+2"));
        assert_eq!(g, p("1"));
    }
}
