//! Legendre and associated Legendre polynomials.
//!
//! `P_n` is built three ways: by iterating the raising operator from
//! `P_0 = 1`, from Rodrigues' formula, and from the nested operator string
//! `(1/n!) (x^2-1)^(1-n/2) D ((x^2-1)^(3/2) D)^(n-1) (x^2-1)^(1/2)`.
//! `P_{n,m}` for `m >= 0` comes from the chain `A_{m-1}† ... A_0† P_n` or the
//! derivative formula `(1-x^2)^(m/2) D^m P_n`; negative orders use
//! `P_{n,-m} = (-1)^m (n-m)!/(n+m)! P_{n,m}`. No normalization beyond these
//! is applied.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::diffop::{compose_all, DiffOperator};
use crate::error::{Error, Result};
use crate::ladder::{assoc_raising, legendre_lowering, legendre_raising};
use crate::ring::{int, HalfPower, Rational, UniPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LegendreMethod {
    #[default]
    Ladder,
    Rodrigues,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AssocMethod {
    #[default]
    Ladder,
    Derivative,
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `a! / b!` as an exact rational.
pub fn factorial_ratio(a: i64, b: i64) -> Rational {
    Rational::new(factorial(a as u32), factorial(b as u32))
}

/// `1 / (2^n n!)`.
pub fn rodrigues_norm(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2).pow(n) * factorial(n))
}

/// `(-1)^m` as a rational.
fn sign(m: i64) -> Rational {
    if m.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

pub fn legendre(n: u32, method: LegendreMethod) -> HalfPower {
    match method {
        LegendreMethod::Ladder => legendre_ladder_sequence(n).pop().expect("nonempty"),
        LegendreMethod::Rodrigues => legendre_rodrigues(n),
    }
}

/// `P_0 ..= P_n` by `P_j = a_j† P_{j-1} / j`.
fn legendre_ladder_sequence(n: u32) -> Vec<HalfPower> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(HalfPower::one());
    for j in 1..=n {
        let prev = out.last().expect("nonempty");
        let next = legendre_raising(j)
            .apply(prev)
            .expect("raising operator keeps even parity")
            .scale(&Rational::new(BigInt::one(), BigInt::from(j)));
        out.push(next);
    }
    out
}

fn legendre_rodrigues(n: u32) -> HalfPower {
    let d = UniPoly::x2_minus_1_pow(n).nth_derivative(n as usize);
    HalfPower::poly(d.scale(&rodrigues_norm(n)))
}

/// The operator `(x^2-1)^(1-n/2) D ((x^2-1)^(3/2) D)^(n-1)` with the phase
/// `(-1)^n` of the whole string (its `(x^2-1)` exponents, including the
/// trailing `(x^2-1)^(1/2)` state, sum to `n`) and the `1/n!` folded in.
pub fn closed_form_operator(n: u32) -> DiffOperator {
    assert!(n >= 1, "closed form needs n >= 1");
    let step = DiffOperator::weight(3)
        .compose(&DiffOperator::d())
        .expect("step operator");
    let mut inner = DiffOperator::identity();
    for _ in 1..n {
        inner = step.compose(&inner).expect("nested step");
    }
    compose_all(&[DiffOperator::weight(2 - n as i64), DiffOperator::d(), inner])
        .expect("closed form operator")
        .scale_rational(&closed_form_scale(n))
}

fn closed_form_scale(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n)) * sign(n as i64)
}

/// `P_n` from the nested operator string, applied factor by factor from the
/// right to the state `(x^2-1)^(1/2)`; `n >= 1`.
///
/// Equal to `closed_form_operator(n)` applied to `(1-x^2)^(1/2)`.
pub fn legendre_closed_form(n: u32) -> HalfPower {
    assert!(n >= 1, "closed form needs n >= 1");
    let mut state = HalfPower::weight(1);
    for _ in 1..n {
        state = &HalfPower::weight(3) * &state.derivative();
    }
    (&HalfPower::weight(2 - n as i64) * &state.derivative()).scale(&closed_form_scale(n))
}

/// `P_{n-1} = a_{n+2} P_n / n`.
pub fn legendre_lower(p: &HalfPower, n: u32) -> Result<HalfPower> {
    let degree = p.poly_part().degree();
    if n == 0 || p.k() != 0 || degree != Some(n as usize) {
        let found = match (p.k(), degree) {
            (0, Some(d)) => d.to_string(),
            (0, None) => "zero".to_string(),
            (k, d) => format!("{d:?} with half-power {k}"),
        };
        return Err(Error::DegreeMismatch {
            expected: n as usize,
            found,
        });
    }
    Ok(legendre_lowering(n + 2)
        .apply(p)?
        .scale(&Rational::new(BigInt::one(), BigInt::from(n))))
}

/// `P_{n,m}` for `|m| <= n`.
///
/// With `condon_shortley` the raising operators change sign, which multiplies
/// every odd order (positive or negative) by `-1`.
pub fn assoc_legendre(
    n: u32,
    m: i64,
    method: AssocMethod,
    condon_shortley: bool,
) -> Result<HalfPower> {
    if m.unsigned_abs() > n as u64 {
        return Err(Error::RangeError { n, m });
    }
    if m < 0 {
        let mp = -m;
        let positive = assoc_legendre(n, mp, method, condon_shortley)?;
        let factor = sign(mp) * factorial_ratio(n as i64 - mp, n as i64 + mp);
        return Ok(positive.scale(&factor));
    }
    let base = legendre(n, LegendreMethod::Ladder);
    let value = match method {
        AssocMethod::Ladder => {
            let mut state = base;
            for j in 0..m as u32 {
                let mut raise = assoc_raising(j);
                if condon_shortley {
                    raise = raise.neg();
                }
                state = raise.apply(&state)?;
            }
            state
        }
        AssocMethod::Derivative => {
            let d = HalfPower::new(m, base.poly_part().nth_derivative(m as usize));
            if condon_shortley {
                d.scale(&sign(m))
            } else {
                d
            }
        }
    };
    Ok(value)
}

/// Exact `∫_{-1}^{1} P_{n,m} P_{n2,m} dx`.
pub fn orthogonality(n: u32, n2: u32, m: i64) -> Result<Rational> {
    let a = assoc_legendre(n, m, AssocMethod::Derivative, false)?;
    let b = assoc_legendre(n2, m, AssocMethod::Derivative, false)?;
    (&a * &b).integrate()
}

/// `P_0 ..= P_max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreTable {
    entries: Vec<HalfPower>,
}

impl LegendreTable {
    pub fn build(max_n: u32, method: LegendreMethod) -> Self {
        let entries = match method {
            LegendreMethod::Ladder => legendre_ladder_sequence(max_n),
            LegendreMethod::Rodrigues => (0..=max_n).map(legendre_rodrigues).collect(),
        };
        LegendreTable { entries }
    }

    pub fn max_n(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    pub fn get(&self, n: u32) -> Option<&HalfPower> {
        self.entries.get(n as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &HalfPower)> {
        self.entries.iter().enumerate().map(|(n, p)| (n as u32, p))
    }
}

/// `P_{n,m}` for `0 <= n <= max_n`, `-n <= m <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocLegendreTable {
    entries: BTreeMap<(u32, i64), HalfPower>,
    condon_shortley: bool,
}

impl AssocLegendreTable {
    pub fn build(max_n: u32, method: AssocMethod, condon_shortley: bool) -> Self {
        let legendre = LegendreTable::build(max_n, LegendreMethod::Ladder);
        let mut entries = BTreeMap::new();
        for (n, p) in legendre.iter() {
            let mut state = p.clone();
            entries.insert((n, 0), state.clone());
            for m in 1..=n as i64 {
                state = match method {
                    AssocMethod::Ladder => {
                        let raise = assoc_raising(m as u32 - 1);
                        let raise = if condon_shortley { raise.neg() } else { raise };
                        raise.apply(&state).expect("assoc raising")
                    }
                    AssocMethod::Derivative => {
                        let d = HalfPower::new(m, p.poly_part().nth_derivative(m as usize));
                        if condon_shortley {
                            d.scale(&sign(m))
                        } else {
                            d
                        }
                    }
                };
                let factor = sign(m) * factorial_ratio(n as i64 - m, n as i64 + m);
                entries.insert((n, -m), state.scale(&factor));
                entries.insert((n, m), state.clone());
            }
        }
        AssocLegendreTable {
            entries,
            condon_shortley,
        }
    }

    pub fn condon_shortley(&self) -> bool {
        self.condon_shortley
    }

    pub fn get(&self, n: u32, m: i64) -> Option<&HalfPower> {
        self.entries.get(&(n, m))
    }

    /// Entries in ascending `(n, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, i64), &HalfPower)> {
        self.entries.iter().map(|(&key, e)| (key, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn p2() -> HalfPower {
        HalfPower::poly(UniPoly::from_coeffs(vec![rat(-1, 2), int(0), rat(3, 2)]))
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0, LegendreMethod::Ladder), HalfPower::one());
        assert_eq!(legendre(0, LegendreMethod::Rodrigues), HalfPower::one());
        assert_eq!(legendre(2, LegendreMethod::Ladder), p2());
        assert_eq!(
            legendre(5, LegendreMethod::Rodrigues),
            legendre(5, LegendreMethod::Ladder)
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(legendre_closed_form(1), HalfPower::x());
        assert_eq!(legendre_closed_form(2), p2());
        assert_eq!(
            legendre_closed_form(4),
            legendre(4, LegendreMethod::Rodrigues)
        );
        for n in 1..=8 {
            let composed = closed_form_operator(n)
                .apply(&HalfPower::weight(1))
                .unwrap();
            assert_eq!(composed, legendre_closed_form(n), "n = {n}");
        }
    }

    #[test]
    fn lowering_examples() {
        assert_eq!(
            legendre_lower(&HalfPower::x(), 1).unwrap(),
            HalfPower::one()
        );
        assert_eq!(
            legendre_lower(&legendre(7, LegendreMethod::Ladder), 7).unwrap(),
            legendre(6, LegendreMethod::Ladder)
        );
        let x2 = HalfPower::poly(UniPoly::from_i64s(&[0, 0, 1]));
        assert!(matches!(
            legendre_lower(&x2, 1),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn assoc_examples() {
        let p21 = HalfPower::new(1, UniPoly::from_i64s(&[0, 3]));
        for method in [AssocMethod::Ladder, AssocMethod::Derivative] {
            assert_eq!(assoc_legendre(2, 1, method, false).unwrap(), p21);
            assert_eq!(assoc_legendre(2, 1, method, true).unwrap(), -&p21);
            assert_eq!(
                assoc_legendre(2, -1, method, false).unwrap(),
                p21.scale(&rat(-1, 6))
            );
        }
        for n in 0..=20 {
            assert_eq!(
                assoc_legendre(n, 0, AssocMethod::Ladder, false).unwrap(),
                legendre(n, LegendreMethod::Ladder)
            );
        }
        assert_eq!(
            assoc_legendre(2, 5, AssocMethod::Ladder, false),
            Err(Error::RangeError { n: 2, m: 5 })
        );
        assert!(assoc_legendre(2, -3, AssocMethod::Derivative, false).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(orthogonality(1, 2, 0).unwrap(), int(0));
        assert_eq!(orthogonality(3, 3, 0).unwrap(), rat(2, 7));
        assert_eq!(orthogonality(2, 2, 1).unwrap(), rat(12, 5));
    }

    #[test]
    fn tables_match_direct_construction() {
        let t = AssocLegendreTable::build(6, AssocMethod::Ladder, true);
        assert!(t.condon_shortley());
        for n in 0..=6u32 {
            for m in -(n as i64)..=n as i64 {
                assert_eq!(
                    t.get(n, m).unwrap(),
                    &assoc_legendre(n, m, AssocMethod::Derivative, true).unwrap(),
                    "({n}, {m})"
                );
            }
        }
        assert!(t.get(3, 4).is_none());
        let l = LegendreTable::build(8, LegendreMethod::Rodrigues);
        assert_eq!(l.max_n(), 8);
        assert_eq!(l, LegendreTable::build(8, LegendreMethod::Ladder));
    }
}
