//! Seeded generation of random canonical forms for invariant checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Form, Monomial};
use crate::scalar::{ParamExps, Scalar};

/// Size limits for generated forms.
#[derive(Clone, Copy, Debug)]
pub struct FormShape {
    pub max_terms: usize,
    pub max_phi: u32,
    pub max_scalar_terms: usize,
    pub max_param_degree: u32,
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for FormShape {
    fn default() -> Self {
        FormShape {
            max_terms: 4,
            max_phi: 3,
            max_scalar_terms: 2,
            max_param_degree: 2,
            max_numerator: 9,
            max_denominator: 4,
        }
    }
}

/// Deterministic source of random forms.
pub struct FormGenerator {
    rng: ChaCha8Rng,
    shape: FormShape,
}

impl FormGenerator {
    pub fn new(seed: u64, shape: FormShape) -> FormGenerator {
        FormGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            shape,
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let n = loop {
            let n = self
                .rng
                .gen_range(-self.shape.max_numerator..=self.shape.max_numerator);
            if n != 0 {
                break n;
            }
        };
        let d = self.rng.gen_range(1..=self.shape.max_denominator);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn scalar(&mut self) -> Scalar {
        let k = self.rng.gen_range(1..=self.shape.max_scalar_terms);
        let terms: Vec<(ParamExps, BigRational)> = (0..k)
            .map(|_| {
                let mut e = [0u32; 4];
                for _ in 0..self.rng.gen_range(0..=self.shape.max_param_degree) {
                    e[self.rng.gen_range(0..4)] += 1;
                }
                (ParamExps(e), self.rational())
            })
            .collect();
        Scalar::from_terms(terms)
    }

    pub fn monomial(&mut self) -> Monomial {
        Monomial::new(
            self.rng.gen_bool(0.5),
            self.rng.gen_bool(0.5),
            self.rng.gen_range(0..=self.shape.max_phi),
            self.rng.gen_range(0..=self.shape.max_phi),
        )
    }

    /// A form with up to `max_terms` terms of mixed degree.
    pub fn form(&mut self) -> Form {
        let k = self.rng.gen_range(0..=self.shape.max_terms);
        Form::from_terms(
            (0..k)
                .map(|_| (self.monomial(), self.scalar()))
                .collect::<Vec<_>>(),
        )
    }

    /// Nonzero rational values for (α₁, β₁, α₂, β₂).
    pub fn parameters(&mut self) -> [BigRational; 4] {
        std::array::from_fn(|_| self.rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_forms() {
        let mut a = FormGenerator::new(7, FormShape::default());
        let mut b = FormGenerator::new(7, FormShape::default());
        for _ in 0..20 {
            assert_eq!(a.form(), b.form());
        }
    }
}
