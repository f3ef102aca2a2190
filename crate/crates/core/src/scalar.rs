//! Exact-rational polynomials in the structure parameters α₁, β₁, α₂, β₂.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// One of the four structure parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A1,
    B1,
    A2,
    B2,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A1, Param::B1, Param::A2, Param::B2];

    pub fn index(self) -> usize {
        match self {
            Param::A1 => 0,
            Param::B1 => 1,
            Param::A2 => 2,
            Param::B2 => 3,
        }
    }

    /// ASCII name used by the text grammar and records.
    pub fn name(self) -> &'static str {
        match self {
            Param::A1 => "a1",
            Param::B1 => "b1",
            Param::A2 => "a2",
            Param::B2 => "b2",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Param::A1 => "\\alpha_1",
            Param::B1 => "\\beta_1",
            Param::A2 => "\\alpha_2",
            Param::B2 => "\\beta_2",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Factor (1 or 2) the parameter belongs to.
    pub fn factor(self) -> u8 {
        match self {
            Param::A1 | Param::B1 => 1,
            Param::A2 | Param::B2 => 2,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over (α₁, β₁, α₂, β₂).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamExps(pub [u32; 4]);

impl ParamExps {
    pub const ONE: ParamExps = ParamExps([0; 4]);

    pub fn of(param: Param) -> ParamExps {
        let mut e = [0; 4];
        e[param.index()] = 1;
        ParamExps(e)
    }

    pub fn get(&self, param: Param) -> u32 {
        self.0[param.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(self, other: ParamExps) -> ParamExps {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        ParamExps(e)
    }

    pub fn divides(&self, other: &ParamExps) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// True when the exponent lies in the ideal (α₁β₁, α₂β₂).
    pub fn in_structure_ideal(&self) -> bool {
        let [a1, b1, a2, b2] = self.0;
        (a1 > 0 && b1 > 0) || (a2 > 0 && b2 > 0)
    }

    /// Display order: higher total degree first, then lexicographically larger.
    fn display_cmp(&self, other: &ParamExps) -> std::cmp::Ordering {
        other
            .total()
            .cmp(&self.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// A polynomial in the four structure parameters with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<ParamExps, BigRational>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Scalar {
        Scalar::monomial(ParamExps::ONE, c)
    }

    pub fn int(c: i64) -> Scalar {
        Scalar::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn param(p: Param) -> Scalar {
        Scalar::monomial(ParamExps::of(p), BigRational::one())
    }

    pub fn monomial(exps: ParamExps, c: BigRational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Scalar { terms }
    }

    /// Builds a scalar from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (ParamExps, BigRational)>>(iter: I) -> Scalar {
        let mut s = Scalar::zero();
        for (e, c) in iter {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, exps: ParamExps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the scalar is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&ParamExps::ONE).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&ParamExps, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in display order (graded, lexicographically descending).
    pub fn display_terms(&self) -> Vec<(&ParamExps, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.keys().any(|e| e.get(*p) > 0))
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Removes every term in the ideal generated by α₁β₁ and α₂β₂.
    pub fn reduce_ring(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !e.in_structure_ideal())
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Removes every term divisible by one of the monomial generators.
    pub fn reduce_modulo(&self, generators: &[ParamExps]) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !generators.iter().any(|g| g.divides(e)))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn is_ring_reduced(&self) -> bool {
        self.terms.keys().all(|e| !e.in_structure_ideal())
    }

    /// Evaluates at concrete parameter values ordered (α₁, β₁, α₂, β₂).
    pub fn evaluate(&self, values: &[BigRational; 4]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for p in Param::ALL {
                for _ in 0..e.get(p) {
                    t *= &values[p.index()];
                }
            }
            total += t;
        }
        total
    }

    /// Applies a linear substitution of the parameters.
    pub fn substitute(&self, sub: &Substitution) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = ParamExps::ONE;
            for p in Param::ALL {
                let n = e.get(p);
                if n == 0 {
                    continue;
                }
                let image = sub.image(p);
                if image.coeff.is_zero() {
                    coeff = BigRational::zero();
                    break;
                }
                coeff *= pow(&image.coeff, n);
                if let Some(v) = image.var {
                    let mut add = [0; 4];
                    add[v.index()] = n;
                    exps = exps.mul(ParamExps(add));
                }
            }
            out.add_term(exps, coeff);
        }
        out
    }
}

fn pow(base: &BigRational, n: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..n {
        r *= base;
    }
    r
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(*e2), c1 * c2);
            }
        }
        out
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Scalar {
        Scalar::int(c)
    }
}

impl From<Param> for Scalar {
    fn from(p: Param) -> Scalar {
        Scalar::param(p)
    }
}

/// Image of a single parameter under a [`Substitution`]: `coeff · var`, or
/// the constant `coeff` when `var` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearImage {
    pub coeff: BigRational,
    pub var: Option<Param>,
}

impl LinearImage {
    pub fn var(p: Param) -> LinearImage {
        LinearImage {
            coeff: BigRational::one(),
            var: Some(p),
        }
    }

    pub fn constant(c: BigRational) -> LinearImage {
        LinearImage {
            coeff: c,
            var: None,
        }
    }

    pub fn zero() -> LinearImage {
        LinearImage::constant(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// A map sending each parameter to a constant or a rational multiple of a
/// parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: [LinearImage; 4],
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution::identity()
    }
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution {
            images: Param::ALL.map(LinearImage::var),
        }
    }

    pub fn image(&self, p: Param) -> &LinearImage {
        &self.images[p.index()]
    }

    pub fn set(&mut self, p: Param, image: LinearImage) {
        self.images[p.index()] = image;
    }

    pub fn with(mut self, p: Param, image: LinearImage) -> Substitution {
        self.set(p, image);
        self
    }

    /// Replaces every occurrence of `var` in the images by `image`.
    pub fn compose_var(&mut self, var: Param, image: &LinearImage) {
        for slot in self.images.iter_mut() {
            if slot.var == Some(var) {
                *slot = LinearImage {
                    coeff: &slot.coeff * &image.coeff,
                    var: image.var,
                };
                if slot.coeff.is_zero() {
                    slot.var = None;
                }
            }
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn reduce_ring_kills_generators_of_the_ideal() {
        let a1b1 = &Scalar::param(Param::A1) * &Scalar::param(Param::B1);
        assert!(a1b1.reduce_ring().is_zero());
        let a1b2 = &Scalar::param(Param::A1) * &Scalar::param(Param::B2);
        assert_eq!(a1b2.reduce_ring(), a1b2);
    }

    #[test]
    fn reduce_ring_filters_terms() {
        let a1 = Scalar::param(Param::A1);
        let s = &(&(&a1 * &a1) * &Scalar::int(3))
            + &(&(&Scalar::param(Param::A2) * &Scalar::param(Param::B2))
                * &Scalar::param(Param::B1));
        assert_eq!(s.reduce_ring(), &(&a1 * &a1) * &Scalar::int(3));
    }

    #[test]
    fn like_terms_cancel() {
        let s = Scalar::param(Param::B1);
        assert!((&s - &s).is_zero());
        assert!(Scalar::int(0).is_zero());
    }

    #[test]
    fn evaluate_and_substitute_agree() {
        let s = &(&Scalar::param(Param::A1) * &Scalar::param(Param::B2)) + &Scalar::int(2);
        let vals = [q(3), q(5), q(7), q(-2)];
        assert_eq!(s.evaluate(&vals), q(3 * -2 + 2));
        let sub = Substitution::identity()
            .with(Param::A1, LinearImage::constant(q(3)))
            .with(Param::B2, LinearImage::constant(q(-2)));
        assert_eq!(s.substitute(&sub).as_constant(), Some(q(-4)));
    }

    #[test]
    fn substitute_renames_with_sign() {
        // β₁² − β₂² under β₂ ↦ −β₁ vanishes.
        let b1 = Scalar::param(Param::B1);
        let b2 = Scalar::param(Param::B2);
        let s = &(&b1 * &b1) - &(&b2 * &b2);
        let sub = Substitution::identity().with(
            Param::B2,
            LinearImage {
                coeff: q(-1),
                var: Some(Param::B1),
            },
        );
        assert!(s.substitute(&sub).is_zero());
    }
}
