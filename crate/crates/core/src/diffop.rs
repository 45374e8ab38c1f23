//! Linear differential operators `Σ_j c_j(x) D^j` with half-power coefficients.
//!
//! Operators are kept in normal form: every derivative sits to the right of
//! its coefficient. Composition moves `D^i` past a coefficient with the
//! generalized Leibniz rule, so products written in mixed order like
//! `-D (x^2-1) + n x` are expanded once at construction time.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{int, HalfPower, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiffOperatorJson", into = "DiffOperatorJson")]
pub struct DiffOperator {
    terms: BTreeMap<usize, HalfPower>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(HalfPower::one())
    }

    /// `d/dx`.
    pub fn d() -> Self {
        Self::term(1, HalfPower::one())
    }

    /// Multiplication by `c`.
    pub fn multiplication(c: HalfPower) -> Self {
        Self::term(0, c)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::multiplication(HalfPower::scalar(c))
    }

    /// Multiplication by `(1 - x^2)^(k/2)`.
    pub fn weight(k: i64) -> Self {
        Self::multiplication(HalfPower::weight(k))
    }

    /// The single term `c · D^order`.
    pub fn term(order: usize, c: HalfPower) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(order, c);
        }
        DiffOperator { terms }
    }

    /// Builds an operator from `(order, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, HalfPower)>,
    {
        let mut acc = BTreeMap::new();
        for (order, c) in terms {
            accumulate(&mut acc, order, c)?;
        }
        Ok(DiffOperator { terms: acc })
    }

    pub fn terms(&self) -> &BTreeMap<usize, HalfPower> {
        &self.terms
    }

    pub fn coeff(&self, order: usize) -> HalfPower {
        self.terms.get(&order).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// The multiplication operator's coefficient when the operator has no
    /// derivative terms.
    pub fn as_multiplication(&self) -> Option<HalfPower> {
        match self.order() {
            None => Some(HalfPower::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    /// Some(c) when the operator is `c · identity` for a rational constant.
    pub fn as_scalar(&self) -> Option<Rational> {
        self.as_multiplication().and_then(|c| c.as_scalar())
    }

    pub fn apply(&self, f: &HalfPower) -> Result<HalfPower> {
        let mut acc = HalfPower::zero();
        let mut deriv = f.clone();
        let mut current = 0;
        for (&order, c) in &self.terms {
            while current < order {
                deriv = deriv.derivative();
                current += 1;
            }
            acc = acc.checked_add(&(c * &deriv))?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator> {
        let mut terms = self.terms.clone();
        for (&order, c) in &other.terms {
            accumulate(&mut terms, order, c.clone())?;
        }
        Ok(DiffOperator { terms })
    }

    pub fn sub(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffOperator {
        self.map_coeffs(|c| -c)
    }

    /// Left multiplication `c · L`.
    pub fn scale(&self, c: &HalfPower) -> DiffOperator {
        self.map_coeffs(|a| c * a)
    }

    pub fn scale_rational(&self, c: &Rational) -> DiffOperator {
        self.map_coeffs(|a| a.scale(c))
    }

    /// `L + c · identity`.
    pub fn shift(&self, c: &Rational) -> Result<DiffOperator> {
        self.add(&DiffOperator::scalar(c.clone()))
    }

    /// `self ∘ other`.
    ///
    /// `c D^i ∘ d D^j = Σ_l C(i, l) c d^(l) D^(i - l + j)`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        let mut terms = BTreeMap::new();
        for (&j, d) in &other.terms {
            let max_i = self.order().unwrap_or(0);
            let derivs: Vec<HalfPower> =
                std::iter::successors(Some(d.clone()), |e| Some(e.derivative()))
                    .take(max_i + 1)
                    .collect();
            for (&i, c) in &self.terms {
                let mut binom = Rational::one();
                for (l, dl) in derivs.iter().enumerate().take(i + 1) {
                    if l > 0 {
                        binom = binom * int((i - l + 1) as i64) / int(l as i64);
                    }
                    if dl.is_zero() {
                        continue;
                    }
                    let coeff = (c * dl).scale(&binom);
                    accumulate(&mut terms, i - l + j, coeff)?;
                }
            }
        }
        Ok(DiffOperator { terms })
    }

    /// `[L, M] = L∘M - M∘L`.
    pub fn commutator(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Exact check of `∫ (L f) g dx == ∫ f (L_adj g) dx` over `[-1, 1]`.
    ///
    /// Uses the flat pairing; boundary terms vanish when the operator
    /// coefficients carry `(1 - x^2)` factors.
    pub fn adjoint_check(
        &self,
        adjoint: &DiffOperator,
        f: &HalfPower,
        g: &HalfPower,
    ) -> Result<bool> {
        let left = (&self.apply(f)? * g).integrate()?;
        let right = (f * &adjoint.apply(g)?).integrate()?;
        Ok(left == right)
    }

    fn map_coeffs(&self, mut op: impl FnMut(&HalfPower) -> HalfPower) -> DiffOperator {
        let terms = self
            .terms
            .iter()
            .map(|(&o, c)| (o, op(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        DiffOperator { terms }
    }
}

fn accumulate(terms: &mut BTreeMap<usize, HalfPower>, order: usize, c: HalfPower) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    let sum = match terms.get(&order) {
        Some(prev) => prev.checked_add(&c)?,
        None => c,
    };
    if sum.is_zero() {
        terms.remove(&order);
    } else {
        terms.insert(order, sum);
    }
    Ok(())
}

/// Composes a list of operators left to right: `ops[0] ∘ ops[1] ∘ ...`.
pub fn compose_all(ops: &[DiffOperator]) -> Result<DiffOperator> {
    let mut acc = match ops.last() {
        Some(last) => last.clone(),
        None => return Ok(DiffOperator::identity()),
    };
    for op in ops.iter().rev().skip(1) {
        acc = op.compose(&acc)?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct DiffOperatorJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    order: usize,
    coeff: HalfPower,
}

impl From<DiffOperator> for DiffOperatorJson {
    fn from(op: DiffOperator) -> Self {
        DiffOperatorJson {
            terms: op
                .terms
                .into_iter()
                .map(|(order, coeff)| TermJson { order, coeff })
                .collect(),
        }
    }
}

impl TryFrom<DiffOperatorJson> for DiffOperator {
    type Error = Error;
    fn try_from(j: DiffOperatorJson) -> Result<Self> {
        DiffOperator::from_terms(j.terms.into_iter().map(|t| (t.order, t.coeff)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::UniPoly;

    fn hp(k: i64, c: &[i64]) -> HalfPower {
        HalfPower::new(k, UniPoly::from_i64s(c))
    }

    fn x_op() -> DiffOperator {
        DiffOperator::multiplication(HalfPower::x())
    }

    #[test]
    fn apply_multiplication() {
        assert_eq!(x_op().apply(&HalfPower::one()).unwrap(), HalfPower::x());
    }

    #[test]
    fn compose_d_past_x() {
        let got = DiffOperator::d().compose(&x_op()).unwrap();
        let want = DiffOperator::from_terms([(1, HalfPower::x()), (0, HalfPower::one())]).unwrap();
        assert_eq!(got, want);
        assert!(DiffOperator::d()
            .compose(&DiffOperator::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn linear_structure() {
        let l = DiffOperator::term(1, hp(2, &[1]));
        assert!(l.add(&l.scale_rational(&int(-1))).unwrap().is_zero());
        assert_eq!(l.scale(&HalfPower::weight(-2)), DiffOperator::d());
        assert_eq!(
            DiffOperator::d().add(&DiffOperator::d()).unwrap(),
            DiffOperator::term(1, HalfPower::integer(2))
        );
    }

    #[test]
    fn parity_mismatch_is_reported() {
        let a = DiffOperator::weight(1);
        assert!(matches!(
            a.add(&DiffOperator::identity()),
            Err(Error::ParityMismatch(..))
        ));
    }

    #[test]
    fn self_commutator_vanishes() {
        let l = DiffOperator::from_terms([(2, hp(1, &[0, 1])), (0, hp(-1, &[3]))]).unwrap();
        assert!(l.commutator(&l).unwrap().is_zero());
    }

    #[test]
    fn d_is_not_self_adjoint() {
        let x = HalfPower::x();
        // both sides are ∫x dx = 0, so f = g = x cannot tell D from -D
        assert!(DiffOperator::d()
            .adjoint_check(&DiffOperator::d(), &x, &x)
            .unwrap());
        assert!(!DiffOperator::d()
            .adjoint_check(&DiffOperator::d(), &HalfPower::one(), &x)
            .unwrap());
        assert!(DiffOperator::d()
            .adjoint_check(&DiffOperator::d().neg(), &x, &hp(2, &[1]))
            .unwrap());
    }

    #[test]
    fn json_shape() {
        let op = DiffOperator::from_terms([(1, HalfPower::x()), (0, HalfPower::one())]).unwrap();
        let s = serde_json::to_string(&op).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"order":0,"coeff":{"k":0,"coeffs":[["1","1"]]}},{"order":1,"coeff":{"k":0,"coeffs":[["0","1"],["1","1"]]}}]}"#
        );
        assert_eq!(serde_json::from_str::<DiffOperator>(&s).unwrap(), op);
    }

    #[test]
    fn compose_all_orders_left_to_right() {
        let got = compose_all(&[DiffOperator::d(), x_op()]).unwrap();
        assert_eq!(got, DiffOperator::d().compose(&x_op()).unwrap());
        assert_eq!(compose_all(&[]).unwrap(), DiffOperator::identity());
    }
}
