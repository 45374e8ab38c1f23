//! Shape invariance and the spectra it fixes.
//!
//! A family of superpotentials `W(x; a)` gives partner potentials
//! `V∓ = W^2 ∓ W'`. It is shape invariant when
//! `V+(x, a) = V-(x, f(a)) + R(f(a))` for a constant shift `R`, and then the
//! levels of `H-(a_0)` are `E_n = Σ_{k=1..n} R(a_k)` with `a_k = f(a_{k-1})`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{chain_hamiltonian, IdentityId, IdentityReport, Residual};
use crate::ring::{fraction_string, int, HalfPower, Rational, UniPoly};

/// Parameter map or shift. Must be a pure function of its argument.
pub type ParamFn = Arc<dyn Fn(&Rational) -> Rational + Send + Sync>;
/// Superpotential at a given parameter. Must be pure.
pub type SuperpotentialFn = Arc<dyn Fn(&Rational) -> HalfPower + Send + Sync>;

#[derive(Clone)]
pub struct SuperpotentialFamily {
    name: String,
    initial: Rational,
    param_map: ParamFn,
    shift: ParamFn,
    superpotential: SuperpotentialFn,
}

impl fmt::Debug for SuperpotentialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperpotentialFamily")
            .field("name", &self.name)
            .field("initial", &fraction_string(&self.initial))
            .finish_non_exhaustive()
    }
}

impl SuperpotentialFamily {
    pub fn new(
        name: impl Into<String>,
        initial: Rational,
        param_map: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
        shift: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
        superpotential: impl Fn(&Rational) -> HalfPower + Send + Sync + 'static,
    ) -> Self {
        SuperpotentialFamily {
            name: name.into(),
            initial,
            param_map: Arc::new(param_map),
            shift: Arc::new(shift),
            superpotential: Arc::new(superpotential),
        }
    }

    /// Harmonic oscillator: `W = ω x / 2`, `f(a) = a`, `R(a) = a`.
    pub fn oscillator(omega: Rational) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::NonPositiveFrequency(fraction_string(&omega)));
        }
        Ok(SuperpotentialFamily::new(
            "oscillator",
            omega,
            |a| a.clone(),
            |a| a.clone(),
            |a| HalfPower::poly(UniPoly::monomial(a / int(2), 1)),
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn initial(&self) -> &Rational {
        &self.initial
    }

    pub fn next_param(&self, a: &Rational) -> Rational {
        (self.param_map)(a)
    }

    pub fn shift(&self, a: &Rational) -> Rational {
        (self.shift)(a)
    }

    pub fn superpotential(&self, a: &Rational) -> HalfPower {
        (self.superpotential)(a)
    }
}

/// `(V-, V+) = (W^2 - W', W^2 + W')`.
pub fn partner_potentials(w: &HalfPower) -> Result<(HalfPower, HalfPower)> {
    let square = w * w;
    let dw = w.derivative();
    Ok((square.checked_sub(&dw)?, square.checked_add(&dw)?))
}

/// Residual `V+(·, a) - V-(·, f(a)) - R(f(a))`.
pub fn check_shape_invariance(fam: &SuperpotentialFamily, a: &Rational) -> Result<IdentityReport> {
    let next = fam.next_param(a);
    let (_, v_plus) = partner_potentials(&fam.superpotential(a))?;
    let (v_minus_next, _) = partner_potentials(&fam.superpotential(&next))?;
    let residual = v_plus
        .checked_sub(&v_minus_next)?
        .checked_sub(&HalfPower::scalar(fam.shift(&next)))?;
    Ok(IdentityReport::new(
        IdentityId::Eq3Generic,
        vec![a.clone()],
        Residual::Element(residual),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// `a_0 ..= a_N`.
    #[serde(with = "crate::serde_fraction::strings")]
    pub params: Vec<Rational>,
    /// `R(a_1) ..= R(a_N)`.
    #[serde(with = "crate::serde_fraction::strings")]
    pub shifts: Vec<Rational>,
    /// `E_0 ..= E_N`, with `E_0 = 0`.
    #[serde(with = "crate::serde_fraction::strings")]
    pub levels: Vec<Rational>,
}

impl SpectrumResult {
    fn accumulate(
        initial: Rational,
        levels: usize,
        mut step: impl FnMut(&Rational) -> (Rational, Rational),
    ) -> Self {
        let mut params = vec![initial];
        let mut shifts = Vec::with_capacity(levels);
        let mut energies = vec![Rational::zero()];
        for _ in 0..levels {
            let (next, shift) = step(params.last().expect("nonempty"));
            let e = energies.last().expect("nonempty") + &shift;
            params.push(next);
            shifts.push(shift);
            energies.push(e);
        }
        SpectrumResult {
            params,
            shifts,
            levels: energies,
        }
    }

    /// `E_n - E_{n-1} == R(a_n)` for every level.
    pub fn telescopes(&self) -> bool {
        self.levels.first().is_some_and(Zero::is_zero)
            && self.levels.len() == self.shifts.len() + 1
            && self
                .levels
                .windows(2)
                .zip(&self.shifts)
                .all(|(w, r)| &w[1] - &w[0] == *r)
    }
}

/// Levels `E_0 ..= E_N` of `H-(a_0)`; refuses unless shape invariance holds
/// at `a_0 .. a_{N-1}`.
pub fn spectrum(fam: &SuperpotentialFamily, levels: usize) -> Result<SpectrumResult> {
    let mut a = fam.initial().clone();
    for _ in 0..levels {
        let report = check_shape_invariance(fam, &a)?;
        if !report.holds {
            let residual = match &report.residual {
                Residual::Element(e) => e.to_text(),
                Residual::Operator(op) => format!("{op:?}"),
            };
            return Err(Error::NotShapeInvariant {
                param: fraction_string(&a),
                residual,
            });
        }
        a = fam.next_param(&a);
    }
    Ok(SpectrumResult::accumulate(
        fam.initial().clone(),
        levels,
        |a| {
            let next = fam.next_param(a);
            let shift = fam.shift(&next);
            (next, shift)
        },
    ))
}

/// The shifted Legendre chain `H^(k) = H - k(k+1)`, parameter `a_k = k`.
///
/// The shift at step `k` is read off the operator difference
/// `H^(k-1) - H^(k)`, which is the constant `2k`.
pub fn legendre_chain(levels: usize) -> SpectrumResult {
    SpectrumResult::accumulate(Rational::zero(), levels, |a| {
        let k = a.to_integer().try_into().expect("small chain index");
        let next: u32 = k + 1;
        let shift = chain_hamiltonian(k)
            .sub(&chain_hamiltonian(next))
            .expect("same-shape operators")
            .as_scalar()
            .expect("chain difference is a constant");
        (int(next as i64), shift)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn poly(c: &[i64]) -> HalfPower {
        HalfPower::poly(UniPoly::from_i64s(c))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&i| int(i)).collect()
    }

    #[test]
    fn partner_examples() {
        assert_eq!(
            partner_potentials(&HalfPower::x()).unwrap(),
            (poly(&[-1, 0, 1]), poly(&[1, 0, 1]))
        );
        assert_eq!(
            partner_potentials(&HalfPower::zero()).unwrap(),
            (HalfPower::zero(), HalfPower::zero())
        );
        let w = SuperpotentialFamily::oscillator(int(2))
            .unwrap()
            .superpotential(&int(2));
        assert_eq!(
            partner_potentials(&w).unwrap(),
            (poly(&[-1, 0, 1]), poly(&[1, 0, 1]))
        );
        let w = SuperpotentialFamily::oscillator(int(1))
            .unwrap()
            .superpotential(&int(1));
        let (vm, vp) = partner_potentials(&w).unwrap();
        let quarter = |c0| HalfPower::poly(UniPoly::from_coeffs(vec![c0, int(0), rat(1, 4)]));
        assert_eq!(vm, quarter(rat(-1, 2)));
        assert_eq!(vp, quarter(rat(1, 2)));
    }

    #[test]
    fn partner_parity_mismatch() {
        assert!(matches!(
            partner_potentials(&HalfPower::weight(1)),
            Err(Error::ParityMismatch(..))
        ));
    }

    #[test]
    fn shape_invariance_examples() {
        let osc = SuperpotentialFamily::oscillator(int(3)).unwrap();
        assert!(check_shape_invariance(&osc, &int(3)).unwrap().holds);

        let no_shift = SuperpotentialFamily::new(
            "linear",
            int(5),
            |a| a.clone(),
            |_| int(0),
            |a| HalfPower::poly(UniPoly::monomial(a.clone(), 1)),
        );
        let r = check_shape_invariance(&no_shift, &int(5)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.residual, Residual::Element(HalfPower::integer(10)));
        assert!(matches!(
            spectrum(&no_shift, 2),
            Err(Error::NotShapeInvariant { .. })
        ));

        let free = SuperpotentialFamily::new(
            "free",
            int(0),
            |a| a.clone(),
            |_| int(0),
            |_| HalfPower::zero(),
        );
        assert!(check_shape_invariance(&free, &int(0)).unwrap().holds);
        assert_eq!(spectrum(&free, 3).unwrap().levels, ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn spectrum_examples() {
        let osc = SuperpotentialFamily::oscillator(int(1)).unwrap();
        let s = spectrum(&osc, 5).unwrap();
        assert_eq!(s.levels, ints(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(s.shifts, ints(&[1; 5]));
        assert_eq!(
            spectrum(&SuperpotentialFamily::oscillator(int(2)).unwrap(), 3)
                .unwrap()
                .levels,
            ints(&[0, 2, 4, 6])
        );
        assert_eq!(legendre_chain(4).levels, ints(&[0, 2, 6, 12, 20]));
        assert_eq!(legendre_chain(1).levels[1], int(2));
        assert_eq!(legendre_chain(10).levels[10], int(110));
        assert_eq!(legendre_chain(3).shifts, ints(&[2, 4, 6]));
        assert_eq!(legendre_chain(0).levels, ints(&[0]));
        assert!(legendre_chain(12).telescopes());
    }

    #[test]
    fn oscillator_rejects_bad_frequency() {
        assert!(matches!(
            SuperpotentialFamily::oscillator(int(0)),
            Err(Error::NonPositiveFrequency(_))
        ));
        assert!(matches!(
            SuperpotentialFamily::oscillator(rat(-1, 2)),
            Err(Error::NonPositiveFrequency(_))
        ));
    }

    #[test]
    fn spectrum_json_shape() {
        let s = spectrum(&SuperpotentialFamily::oscillator(rat(3, 2)).unwrap(), 2).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"params": ["3/2", "3/2", "3/2"], "shifts": ["3/2", "3/2"], "levels": ["0", "3/2", "3"]})
        );
        assert_eq!(serde_json::from_value::<SpectrumResult>(v).unwrap(), s);
    }
}
