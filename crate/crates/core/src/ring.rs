//! Exact coefficient arithmetic.
//!
//! Everything in this crate lives in the ring `Q[x, (1-x^2)^(±1/2)]`. An
//! element is stored as a single term `(1-x^2)^(k/2) · p(x)` with `p` a dense
//! rational polynomial. The canonical form pulls every `(1-x^2)` factor out of
//! `p` and into `k`, so two elements are equal exactly when their fields are.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn fraction_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Dense univariate polynomial over the rationals, coefficients ascending.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        // integer convolution over the common denominators, one reduction per
        // output coefficient
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                prod[i + j] += ai * bj;
            }
        }
        let den = da * db;
        UniPoly::from_coeffs(
            prod.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn nth_derivative(&self, order: usize) -> UniPoly {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `(1 - x^2)^e`.
    pub fn one_minus_x2_pow(e: u32) -> UniPoly {
        UniPoly::from_i64s(&[1, 0, -1]).pow(e)
    }

    /// `(x^2 - 1)^e`.
    pub fn x2_minus_1_pow(e: u32) -> UniPoly {
        UniPoly::from_i64s(&[-1, 0, 1]).pow(e)
    }

    /// Exact quotient by `(1 - x^2)`, or `None` if it does not divide.
    pub fn div_one_minus_x2(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let d = self.coeffs.len() - 1;
        if d < 2 {
            return None;
        }
        // p = q - x^2 q, so p_i = q_i - q_{i-2}.
        let mut q = vec![Rational::zero(); d - 1];
        for i in (2..=d).rev() {
            let qi = q.get(i).cloned().unwrap_or_else(Rational::zero);
            q[i - 2] = qi - &self.coeffs[i];
        }
        if q[0] != self.coeffs[0]
            || q.get(1).cloned().unwrap_or_else(Rational::zero) != self.coeffs[1]
        {
            return None;
        }
        Some(UniPoly::from_coeffs(q))
    }

    /// Integer coefficients over a common positive denominator.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (nums, den)
    }
}

/// `(1 - x^2)^(k/2) · p(x)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HalfPowerJson", into = "HalfPowerJson")]
pub struct HalfPower {
    k: i64,
    p: UniPoly,
}

impl Default for HalfPower {
    fn default() -> Self {
        Self::zero()
    }
}

impl HalfPower {
    /// Builds `(1-x^2)^(k/2) · p` and canonicalizes it.
    pub fn new(k: i64, p: UniPoly) -> Self {
        HalfPower { k, p }.canonicalize()
    }

    pub fn zero() -> Self {
        HalfPower {
            k: 0,
            p: UniPoly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::poly(UniPoly::one())
    }

    pub fn x() -> Self {
        Self::poly(UniPoly::x())
    }

    pub fn poly(p: UniPoly) -> Self {
        Self::new(0, p)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::poly(UniPoly::constant(c))
    }

    pub fn integer(c: i64) -> Self {
        Self::scalar(int(c))
    }

    /// The weight `(1 - x^2)^(k/2)`.
    pub fn weight(k: i64) -> Self {
        HalfPower {
            k,
            p: UniPoly::one(),
        }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn poly_part(&self) -> &UniPoly {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Some(c) when the element is the constant `c` (including zero).
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.k == 0 && self.p.degree() == Some(0)).then(|| self.p.coeffs[0].clone())
    }

    pub fn canonicalize(self) -> Self {
        if self.p.is_zero() {
            return Self::zero();
        }
        let HalfPower { mut k, mut p } = self;
        while let Some(q) = p.div_one_minus_x2() {
            p = q;
            k += 2;
        }
        HalfPower { k, p }
    }

    pub fn checked_add(&self, other: &HalfPower) -> Result<HalfPower> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.k - other.k).rem_euclid(2) != 0 {
            return Err(Error::ParityMismatch(self.k, other.k));
        }
        let k = self.k.min(other.k);
        let lift = |e: &HalfPower| e.p.mul(&UniPoly::one_minus_x2_pow(((e.k - k) / 2) as u32));
        Ok(HalfPower::new(k, lift(self).add(&lift(other))))
    }

    pub fn checked_sub(&self, other: &HalfPower) -> Result<HalfPower> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> HalfPower {
        if c.is_zero() {
            return Self::zero();
        }
        HalfPower {
            k: self.k,
            p: self.p.scale(c),
        }
    }

    /// d/dx[(1-x^2)^(k/2) p] = (1-x^2)^(k/2 - 1) [(1-x^2) p' - k x p].
    pub fn derivative(&self) -> HalfPower {
        if self.is_zero() {
            return Self::zero();
        }
        let one_minus_x2 = UniPoly::from_i64s(&[1, 0, -1]);
        let term = one_minus_x2
            .mul(&self.p.derivative())
            .sub(&UniPoly::x().mul(&self.p).scale(&int(self.k)));
        HalfPower::new(self.k - 2, term)
    }

    pub fn nth_derivative(&self, order: usize) -> HalfPower {
        (0..order).fold(self.clone(), |e, _| e.derivative())
    }

    /// Exact value of the integral over `[-1, 1]`.
    pub fn integrate(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if self.k.rem_euclid(2) != 0 {
            return Err(Error::OddHalfPower(self.k));
        }
        if self.k < 0 {
            return Err(Error::NegativePower(self.k));
        }
        let expanded = self.p.mul(&UniPoly::one_minus_x2_pow((self.k / 2) as u32));
        Ok(expanded
            .coeffs()
            .iter()
            .enumerate()
            .step_by(2)
            .map(|(i, c)| c * rat(2, i as i64 + 1))
            .sum())
    }

    /// Floating-point value at `x`.
    ///
    /// The polynomial part and `1 - x^2` are computed exactly from the binary
    /// value of `x`; only the final product and square root are rounded.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x.abs() > 1.0 || (x.abs() == 1.0 && self.k < 0) {
            return Err(Error::DomainError { x, k: self.k });
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        let xr = Rational::from_float(x).expect("finite float");
        let pv = self.p.eval(&xr).to_f64().unwrap_or(f64::NAN);
        if self.k == 0 {
            return Ok(pv);
        }
        let w = (Rational::one() - &xr * &xr).to_f64().unwrap_or(f64::NAN);
        let half = self.k.div_euclid(2);
        let mut weight = w.powi(half as i32);
        if self.k.rem_euclid(2) == 1 {
            weight *= w.sqrt();
        }
        Ok(pv * weight)
    }

    /// Plain-text rendering, e.g. `(3x^2 - 1)/2` or `3x (1 - x^2)^(1/2)`.
    pub fn to_text(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

impl Neg for HalfPower {
    type Output = HalfPower;
    fn neg(self) -> HalfPower {
        HalfPower {
            k: self.k,
            p: self.p.neg(),
        }
    }
}

impl Neg for &HalfPower {
    type Output = HalfPower;
    fn neg(self) -> HalfPower {
        -(self.clone())
    }
}

impl Mul for &HalfPower {
    type Output = HalfPower;
    fn mul(self, rhs: &HalfPower) -> HalfPower {
        if self.is_zero() || rhs.is_zero() {
            return HalfPower::zero();
        }
        HalfPower::new(self.k + rhs.k, self.p.mul(&rhs.p))
    }
}

impl Mul for HalfPower {
    type Output = HalfPower;
    fn mul(self, rhs: HalfPower) -> HalfPower {
        &self * &rhs
    }
}

impl fmt::Display for HalfPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct HalfPowerJson {
    k: i64,
    coeffs: Vec<(String, String)>,
}

impl From<HalfPower> for HalfPowerJson {
    fn from(e: HalfPower) -> Self {
        HalfPowerJson {
            k: e.k,
            coeffs: e
                .p
                .coeffs
                .iter()
                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }
}

impl TryFrom<HalfPowerJson> for HalfPower {
    type Error = Error;
    fn try_from(j: HalfPowerJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|(n, d)| parse_fraction(&format!("{n}/{d}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(HalfPower::new(j.k, UniPoly::from_coeffs(coeffs)))
    }
}

fn render(e: &HalfPower, latex: bool) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let (nums, den) = e.p.integer_form();
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (power, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match power {
            0 => String::new(),
            1 => "x".to_string(),
            _ if latex => format!("x^{{{power}}}"),
            _ => format!("x^{power}"),
        };
        let body = if mag.is_one() && power > 0 {
            var
        } else {
            format!("{mag}{var}")
        };
        terms.push((c.is_negative(), body));
    }
    let mut numer = String::new();
    for (i, (negative, body)) in terms.iter().enumerate() {
        match (i, negative) {
            (0, true) => numer.push('-'),
            (0, false) => {}
            (_, true) => numer.push_str(" - "),
            (_, false) => numer.push_str(" + "),
        }
        numer.push_str(body);
    }

    let mut out = if den.is_one() {
        numer
    } else if latex {
        format!("\\frac{{{numer}}}{{{den}}}")
    } else if terms.len() > 1 {
        format!("({numer})/{den}")
    } else {
        format!("{numer}/{den}")
    };

    if e.k != 0 {
        let exponent = if e.k % 2 == 0 {
            (e.k / 2).to_string()
        } else if latex {
            format!("\\frac{{{}}}{{2}}", e.k)
        } else {
            format!("{}/2", e.k)
        };
        let weight = if latex {
            format!("(1 - x^{{2}})^{{{exponent}}}")
        } else if e.k == 2 {
            "(1 - x^2)".to_string()
        } else {
            format!("(1 - x^2)^({exponent})")
        };
        if out == "1" {
            out = weight;
        } else if out == "-1" {
            out = format!("-{weight}");
        } else {
            let needs_parens = !latex && den.is_one() && terms.len() > 1;
            if needs_parens {
                out = format!("({out})");
            }
            out = format!("{out} {weight}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(k: i64, c: &[i64]) -> HalfPower {
        HalfPower::new(k, UniPoly::from_i64s(c))
    }

    #[test]
    fn add_examples() {
        assert!(hp(0, &[1]).checked_add(&hp(0, &[-1])).unwrap().is_zero());
        assert_eq!(
            hp(2, &[1]).checked_add(&hp(0, &[0, 0, 1])).unwrap(),
            hp(0, &[1])
        );
        assert_eq!(
            hp(1, &[1]).checked_add(&hp(0, &[1])),
            Err(Error::ParityMismatch(1, 0))
        );
        // zero is parity-neutral
        assert_eq!(
            hp(1, &[1]).checked_add(&HalfPower::zero()).unwrap(),
            hp(1, &[1])
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&hp(1, &[1]) * &hp(1, &[1]), hp(2, &[1]));
        assert_eq!(&hp(-2, &[1]) * &hp(2, &[1]), hp(0, &[1]));
        assert_eq!(&hp(0, &[0, 1]) * &hp(0, &[0, 1]), hp(0, &[0, 0, 1]));
    }

    #[test]
    fn diff_examples() {
        assert_eq!(hp(0, &[0, 0, 1]).derivative(), hp(0, &[0, 2]));
        assert_eq!(hp(1, &[1]).derivative(), hp(-1, &[0, -1]));
        assert_eq!(hp(2, &[1]).derivative(), hp(0, &[0, -2]));
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(hp(0, &[1]).integrate().unwrap(), int(2));
        assert_eq!(hp(0, &[0, 1]).integrate().unwrap(), int(0));
        assert_eq!(hp(2, &[1]).integrate().unwrap(), rat(4, 3));
        assert_eq!(hp(1, &[1]).integrate(), Err(Error::OddHalfPower(1)));
        assert_eq!(hp(-2, &[1]).integrate(), Err(Error::NegativePower(-2)));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hp(0, &[0, 1]).eval_f64(0.5).unwrap(), 0.5);
        assert_eq!(hp(1, &[1]).eval_f64(0.0).unwrap(), 1.0);
        assert_eq!(hp(2, &[1]).eval_f64(1.0).unwrap(), 0.0);
        assert!(matches!(
            hp(0, &[1]).eval_f64(1.5),
            Err(Error::DomainError { .. })
        ));
        assert!(matches!(
            hp(-1, &[1]).eval_f64(-1.0),
            Err(Error::DomainError { .. })
        ));
        assert!((hp(-2, &[1]).eval_f64(0.5).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_form_absorbs_weights() {
        // (x^2 - 1)^3 = -(1 - x^2)^3
        let e = HalfPower::poly(UniPoly::x2_minus_1_pow(3));
        assert_eq!(e, hp(6, &[-1]));
        // (1 - x)(1 + x) x
        assert_eq!(hp(-3, &[0, 1, 0, -1]), hp(-1, &[0, 1]));
        assert!(UniPoly::from_i64s(&[1, 0, 1]).div_one_minus_x2().is_none());
        assert!(UniPoly::from_i64s(&[0, 1, 0, -1])
            .div_one_minus_x2()
            .is_some());
    }

    #[test]
    fn json_shape() {
        let e = hp(1, &[0, 3]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"k":1,"coeffs":[["0","1"],["3","1"]]}"#);
        let back: HalfPower = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        // non-canonical input is canonicalized on the way in
        let raw: HalfPower =
            serde_json::from_str(r#"{"k":0,"coeffs":[["1","1"],["0","1"],["-1","1"]]}"#).unwrap();
        assert_eq!(raw, HalfPower::weight(2));
    }

    #[test]
    fn text_rendering() {
        let p2 = HalfPower::poly(UniPoly::from_coeffs(vec![rat(-1, 2), int(0), rat(3, 2)]));
        assert_eq!(p2.to_text(), "(3x^2 - 1)/2");
        assert_eq!(hp(1, &[0, 3]).to_text(), "3x (1 - x^2)^(1/2)");
        assert_eq!(hp(0, &[0, 1]).to_text(), "x");
        assert_eq!(HalfPower::weight(-1).to_text(), "(1 - x^2)^(-1/2)");
        assert_eq!(p2.to_latex(), "\\frac{3x^{2} - 1}{2}");
    }

    #[test]
    fn fractions_round_trip() {
        for s in ["3/2", "-7", "0", "12/5"] {
            assert_eq!(fraction_string(&parse_fraction(s).unwrap()), s);
        }
        assert!(parse_fraction("1/0").is_err());
    }
}
