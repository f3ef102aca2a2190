//! The graded-commutative algebra generated by η₁, η₂ (odd) and Φ₁, Φ₂
//! (even) over the parameter ring, with truncation by factor dimension.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Param, Scalar, Substitution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("factor half-dimensions must be at least 1 (got m1={m1}, m2={m2})")]
    Degenerate { m1: u32, m2: u32 },
}

/// A canonical wedge word η₁^a ∧ η₂^b ∧ Φ₁^p ∧ Φ₂^q.
///
/// Ordering is by total degree, then words containing η₁ first, then η₂,
/// then higher Φ₁ power; it is also the print order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub eta1: bool,
    pub eta2: bool,
    pub phi1: u32,
    pub phi2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        eta1: false,
        eta2: false,
        phi1: 0,
        phi2: 0,
    };
    pub const ETA1: Monomial = Monomial {
        eta1: true,
        ..Monomial::ONE
    };
    pub const ETA2: Monomial = Monomial {
        eta2: true,
        ..Monomial::ONE
    };
    pub const PHI1: Monomial = Monomial {
        phi1: 1,
        ..Monomial::ONE
    };
    pub const PHI2: Monomial = Monomial {
        phi2: 1,
        ..Monomial::ONE
    };

    pub fn new(eta1: bool, eta2: bool, phi1: u32, phi2: u32) -> Monomial {
        Monomial {
            eta1,
            eta2,
            phi1,
            phi2,
        }
    }

    pub fn degree(&self) -> u32 {
        self.eta1 as u32 + self.eta2 as u32 + 2 * (self.phi1 + self.phi2)
    }

    /// Degree of the factor living on the first manifold.
    pub fn factor1_degree(&self) -> u32 {
        self.eta1 as u32 + 2 * self.phi1
    }

    pub fn factor2_degree(&self) -> u32 {
        self.eta2 as u32 + 2 * self.phi2
    }

    pub fn is_odd(&self) -> bool {
        self.eta1 != self.eta2
    }

    /// Product of two canonical words: `None` when a repeated odd generator
    /// kills it, otherwise the word and the reordering sign.
    pub fn wedge(&self, rhs: &Monomial) -> Option<(Monomial, bool)> {
        if (self.eta1 && rhs.eta1) || (self.eta2 && rhs.eta2) {
            return None;
        }
        // Only rhs's η₁ has to travel past lhs's η₂.
        let negative = self.eta2 && rhs.eta1;
        Some((
            Monomial {
                eta1: self.eta1 || rhs.eta1,
                eta2: self.eta2 || rhs.eta2,
                phi1: self.phi1 + rhs.phi1,
                phi2: self.phi2 + rhs.phi2,
            },
            negative,
        ))
    }

    fn order_key(&self) -> (u32, bool, bool, u32, u32) {
        (
            self.degree(),
            !self.eta1,
            !self.eta2,
            u32::MAX - self.phi1,
            self.phi2,
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimensions of the two factors plus the normalization switches applied by
/// every geometry-aware operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductGeometry {
    m1: u32,
    m2: u32,
    /// Drop monomials with Φ₁ power above m₁ or Φ₂ power above m₂.
    pub truncate: bool,
    /// Work modulo α₁β₁ = α₂β₂ = 0.
    pub reduce_ring: bool,
}

impl ProductGeometry {
    /// Truncating, ring-reducing geometry for factors of real dimension
    /// 2m₁+1 and 2m₂+1.
    pub fn new(m1: u32, m2: u32) -> Result<ProductGeometry, GeometryError> {
        if m1 == 0 || m2 == 0 {
            return Err(GeometryError::Degenerate { m1, m2 });
        }
        Ok(ProductGeometry {
            m1,
            m2,
            truncate: true,
            reduce_ring: true,
        })
    }

    pub fn untruncated(m1: u32, m2: u32) -> Result<ProductGeometry, GeometryError> {
        Ok(ProductGeometry::new(m1, m2)?.with_truncation(false))
    }

    pub fn with_truncation(mut self, on: bool) -> ProductGeometry {
        self.truncate = on;
        self
    }

    pub fn with_ring_reduction(mut self, on: bool) -> ProductGeometry {
        self.reduce_ring = on;
        self
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    /// Complex dimension of the product.
    pub fn m(&self) -> u32 {
        self.m1 + self.m2 + 1
    }

    pub fn real_dims(&self) -> (u32, u32) {
        (2 * self.m1 + 1, 2 * self.m2 + 1)
    }

    pub fn keeps(&self, mono: &Monomial) -> bool {
        !self.truncate || (mono.phi1 <= self.m1 && mono.phi2 <= self.m2)
    }

    /// Applies truncation and ring reduction as configured.
    pub fn normalize(&self, f: &Form) -> Form {
        if !self.truncate && !self.reduce_ring {
            return f.clone();
        }
        let mut out = Form::zero();
        for (mono, s) in f.terms() {
            if !self.keeps(mono) {
                continue;
            }
            let s = if self.reduce_ring {
                s.reduce_ring()
            } else {
                s.clone()
            };
            out.add_term(*mono, s);
        }
        out
    }
}

impl fmt::Display for ProductGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d1, d2) = self.real_dims();
        write!(
            f,
            "m1={} m2={} (dim M1={}, dim M2={}, complex dim m={})",
            self.m1,
            self.m2,
            d1,
            d2,
            self.m()
        )
    }
}

/// A finite scalar-weighted sum of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Form {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero() -> Form {
        Form::default()
    }

    pub fn one() -> Form {
        Form::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Form {
        Form::term(Monomial::ONE, s)
    }

    pub fn term(mono: Monomial, s: Scalar) -> Form {
        let mut f = Form::zero();
        f.add_term(mono, s);
        f
    }

    pub fn monomial(mono: Monomial) -> Form {
        Form::term(mono, Scalar::one())
    }

    pub fn eta1() -> Form {
        Form::monomial(Monomial::ETA1)
    }

    pub fn eta2() -> Form {
        Form::monomial(Monomial::ETA2)
    }

    pub fn phi1() -> Form {
        Form::monomial(Monomial::PHI1)
    }

    pub fn phi2() -> Form {
        Form::monomial(Monomial::PHI2)
    }

    pub fn param(p: Param) -> Form {
        Form::scalar(Scalar::param(p))
    }

    /// Collects `(monomial, scalar)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Form {
        let mut f = Form::zero();
        for (m, s) in iter {
            f.add_term(m, s);
        }
        f
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (print) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&Scalar> {
        self.terms.get(mono)
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Parameters that occur in any coefficient.
    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.values().any(|s| s.params().any(|q| q == *p)))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        Form::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    pub fn scale_int(&self, c: i64) -> Form {
        self.scale(&Scalar::int(c))
    }

    /// Graded-commutative product, normalized under `geom`.
    pub fn wedge(&self, rhs: &Form, geom: &ProductGeometry) -> Form {
        geom.normalize(&self.wedge_raw(rhs, Some(geom)))
    }

    fn wedge_raw(&self, rhs: &Form, geom: Option<&ProductGeometry>) -> Form {
        let mut out = Form::zero();
        for (m1, s1) in &self.terms {
            for (m2, s2) in &rhs.terms {
                let Some((mono, negative)) = m1.wedge(m2) else {
                    continue;
                };
                if geom.is_some_and(|g| !g.keeps(&mono)) {
                    continue;
                }
                let c = s1 * s2;
                out.add_term(mono, if negative { -&c } else { c });
            }
        }
        out
    }

    /// k-fold wedge power; `power(0)` is the unit.
    pub fn power(&self, k: u32, geom: &ProductGeometry) -> Form {
        let mut acc = geom.normalize(&Form::one());
        let base = geom.normalize(self);
        for _ in 0..k {
            acc = acc.wedge(&base, geom);
        }
        acc
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn substitute(&self, sub: &Substitution) -> Form {
        Form::from_terms(self.terms.iter().map(|(m, s)| (*m, s.substitute(sub))))
    }

    pub fn reduce_ring(&self) -> Form {
        Form::from_terms(self.terms.iter().map(|(m, s)| (*m, s.reduce_ring())))
    }

    /// Maps each monomial through `f`, which returns the image monomial and
    /// whether the sign flips.
    pub(crate) fn map_monomials(&self, f: impl Fn(&Monomial) -> (Monomial, bool)) -> Form {
        Form::from_terms(self.terms.iter().map(|(m, s)| {
            let (img, negative) = f(m);
            (img, if negative { -s } else { s.clone() })
        }))
    }

    /// Restricts to monomials of the given degree.
    pub fn degree_part(&self, degree: u32) -> Form {
        Form::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, s)| (*m, s.clone())),
        )
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        for (m, s) in &rhs.terms {
            out.add_term(*m, s.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            terms: self.terms.iter().map(|(m, s)| (*m, -s)).collect(),
        }
    }
}

impl From<Scalar> for Form {
    fn from(s: Scalar) -> Form {
        Form::scalar(s)
    }
}

pub fn add(lhs: &Form, rhs: &Form) -> Form {
    lhs + rhs
}

pub fn negate(f: &Form) -> Form {
    -f
}

pub fn scale(s: &Scalar, f: &Form) -> Form {
    f.scale(s)
}

pub fn wedge(lhs: &Form, rhs: &Form, geom: &ProductGeometry) -> Form {
    lhs.wedge(rhs, geom)
}

pub fn power(f: &Form, k: u32, geom: &ProductGeometry) -> Form {
    f.power(k, geom)
}

pub fn is_zero(f: &Form) -> bool {
    f.is_zero()
}

pub fn equal(lhs: &Form, rhs: &Form) -> bool {
    lhs == rhs
}

/// Product with no truncation and no ring reduction.
pub fn wedge_free(lhs: &Form, rhs: &Form) -> Form {
    lhs.wedge_raw(rhs, None)
}

/// m!/(m₁! m₂!)·(−2), the coefficient of the volume monomial in Ω^m.
pub fn volume_coefficient(geom: &ProductGeometry) -> BigRational {
    let fact = |n: u32| (1..=n as i64).fold(num_bigint::BigInt::one(), |acc, k| acc * k);
    BigRational::new(fact(geom.m()) * -2, fact(geom.m1()) * fact(geom.m2()))
}
