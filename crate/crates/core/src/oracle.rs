//! A concrete exterior algebra used as an independent check on the symbolic
//! engine.
//!
//! Factor 1 gets basis vectors e₀..e_{2m₁} and factor 2 gets f₀..f_{2m₂}.
//! The generators are realized as
//!
//! ```text
//! η₁ = e₀    Φ₁ = Σⱼ e_{2j−1} ∧ e_{2j}
//! η₂ = f₀    Φ₂ = Σⱼ f_{2j−1} ∧ f_{2j}
//! ```
//!
//! so Φ₁^{m₁+1} = 0 and η₁ ∧ Φ₁^{m₁} is a top form of the first factor
//! without any rule being imposed. Blades are bitmasks; the sign of a product
//! is computed by counting inversions, sharing nothing with the canonical
//! monomial rules in [`crate::algebra`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Form, ProductGeometry};

/// Largest half-dimension per factor the oracle accepts.
pub const MAX_ORACLE_HALF_DIM: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("oracle supports m1, m2 <= {MAX_ORACLE_HALF_DIM} (got m1={m1}, m2={m2})")]
pub struct OracleTooLarge {
    pub m1: u32,
    pub m2: u32,
}

/// Element of the exterior algebra on `2m₁ + 2m₂ + 2` basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multivector {
    blades: BTreeMap<u32, BigRational>,
}

impl Multivector {
    pub fn zero() -> Multivector {
        Multivector::default()
    }

    pub fn scalar(c: BigRational) -> Multivector {
        Multivector::blade(0, c)
    }

    pub fn blade(mask: u32, c: BigRational) -> Multivector {
        let mut blades = BTreeMap::new();
        if !c.is_zero() {
            blades.insert(mask, c);
        }
        Multivector { blades }
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn get(&self, mask: u32) -> BigRational {
        self.blades
            .get(&mask)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn accumulate(&mut self, mask: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.blades.entry(mask).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.blades.remove(&mask);
        }
    }

    pub fn add(&self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &rhs.blades {
            out.accumulate(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Multivector {
        let mut out = Multivector::zero();
        for (m, v) in &self.blades {
            out.accumulate(*m, v * c);
        }
        out
    }

    pub fn wedge(&self, rhs: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (a, ca) in &self.blades {
            for (b, cb) in &rhs.blades {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.accumulate(a | b, if reorder_is_odd(*a, *b) { -c } else { c });
            }
        }
        out
    }
}

/// Parity of the permutation sorting the concatenation of blade `a` then
/// blade `b`: the number of pairs (i in a, j in b) with i > j.
fn reorder_is_odd(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> (j + 1)).count_ones();
    }
    swaps % 2 == 1
}

/// The generator images for one geometry.
#[derive(Clone, Debug)]
pub struct GrassmannModel {
    m1: u32,
    m2: u32,
    eta1: Multivector,
    eta2: Multivector,
    phi1: Multivector,
    phi2: Multivector,
}

impl GrassmannModel {
    pub fn new(m1: u32, m2: u32) -> Result<GrassmannModel, OracleTooLarge> {
        if m1 > MAX_ORACLE_HALF_DIM || m2 > MAX_ORACLE_HALF_DIM || m1 == 0 || m2 == 0 {
            return Err(OracleTooLarge { m1, m2 });
        }
        let one = BigRational::one;
        let base2 = 2 * m1 + 1;
        let sum_of_planes = |offset: u32, m: u32| {
            (1..=m).fold(Multivector::zero(), |acc, j| {
                let plane = Multivector::blade(1 << (offset + 2 * j - 1), one())
                    .wedge(&Multivector::blade(1 << (offset + 2 * j), one()));
                acc.add(&plane)
            })
        };
        Ok(GrassmannModel {
            m1,
            m2,
            eta1: Multivector::blade(1, one()),
            eta2: Multivector::blade(1 << base2, one()),
            phi1: sum_of_planes(0, m1),
            phi2: sum_of_planes(base2, m2),
        })
    }

    pub fn for_geometry(geom: &ProductGeometry) -> Result<GrassmannModel, OracleTooLarge> {
        GrassmannModel::new(geom.m1(), geom.m2())
    }

    pub fn generator_count(&self) -> u32 {
        2 * self.m1 + 2 * self.m2 + 2
    }

    pub fn eta1(&self) -> &Multivector {
        &self.eta1
    }

    pub fn eta2(&self) -> &Multivector {
        &self.eta2
    }

    pub fn phi1(&self) -> &Multivector {
        &self.phi1
    }

    pub fn phi2(&self) -> &Multivector {
        &self.phi2
    }

    pub fn power(&self, base: &Multivector, k: u32) -> Multivector {
        (0..k).fold(Multivector::scalar(BigRational::one()), |acc, _| {
            acc.wedge(base)
        })
    }

    /// Evaluates a form with parameters (α₁, β₁, α₂, β₂) = `params`.
    pub fn evaluate(&self, f: &Form, params: &[BigRational; 4]) -> Multivector {
        let mut out = Multivector::zero();
        for (mono, s) in f.terms() {
            let c = s.evaluate(params);
            if c.is_zero() {
                continue;
            }
            let mut word = Multivector::scalar(c);
            if mono.eta1 {
                word = word.wedge(&self.eta1);
            }
            if mono.eta2 {
                word = word.wedge(&self.eta2);
            }
            word = word.wedge(&self.power(&self.phi1, mono.phi1));
            word = word.wedge(&self.power(&self.phi2, mono.phi2));
            out = out.add(&word);
        }
        out
    }
}

/// Realizes `f` in the explicit exterior algebra for `geom` with the given
/// parameter values.
pub fn grassmann_oracle(
    f: &Form,
    geom: &ProductGeometry,
    params: &[BigRational; 4],
) -> Result<Multivector, OracleTooLarge> {
    Ok(GrassmannModel::for_geometry(geom)?.evaluate(f, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    fn zeros() -> [BigRational; 4] {
        std::array::from_fn(|_| BigRational::zero())
    }

    #[test]
    fn eta_squares_vanish() {
        let g = ProductGeometry::new(1, 1).unwrap();
        let f = Form::eta1().wedge(&Form::eta1(), &ProductGeometry::untruncated(1, 1).unwrap());
        assert!(grassmann_oracle(&f, &g, &zeros()).unwrap().is_zero());
        let model = GrassmannModel::new(1, 1).unwrap();
        assert!(model.eta1().wedge(model.eta1()).is_zero());
    }

    #[test]
    fn phi_power_above_half_dimension_vanishes() {
        for m in 1..=3 {
            let model = GrassmannModel::new(m, 1).unwrap();
            assert!(!model.power(model.phi1(), m).is_zero());
            assert!(model.power(model.phi1(), m + 1).is_zero());
            let f = Form::monomial(Monomial::new(false, false, m + 1, 0));
            assert!(model.evaluate(&f, &zeros()).is_zero());
        }
    }

    #[test]
    fn phi_power_is_factorial_times_volume() {
        // Φ^m = m! e₁∧…∧e_{2m}
        let model = GrassmannModel::new(3, 1).unwrap();
        let top = model.power(model.phi1(), 3);
        assert_eq!(top.len(), 1);
        assert_eq!(top.get(0b111_1110), BigRational::from_integer(6.into()));
    }

    #[test]
    fn reorder_sign() {
        // e₁ ∧ e₀ = −e₀∧e₁
        assert!(reorder_is_odd(0b10, 0b01));
        assert!(!reorder_is_odd(0b01, 0b10));
        // e₂ ∧ (e₀∧e₁) = +e₀∧e₁∧e₂
        assert!(!reorder_is_odd(0b100, 0b011));
    }

    #[test]
    fn rejects_large_geometry() {
        assert!(GrassmannModel::new(4, 1).is_err());
        assert_eq!(GrassmannModel::new(3, 3).unwrap().generator_count(), 14);
    }
}
