use std::fmt;

use num_traits::Zero;

use crate::algebra::Form;
use crate::scalar::{LinearImage, Param, ParamExps, Substitution};

use super::spec::StructureSpec;

/// A candidate linear relation among the structure parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Vanishes(Param),
    Equal(Param, Param),
    Opposite(Param, Param),
}

impl Relation {
    /// The fixed list of relations tried on a nonzero residual.
    pub const CANDIDATES: [Relation; 8] = [
        Relation::Vanishes(Param::A1),
        Relation::Vanishes(Param::B1),
        Relation::Vanishes(Param::A2),
        Relation::Vanishes(Param::B2),
        Relation::Equal(Param::B1, Param::B2),
        Relation::Opposite(Param::B1, Param::B2),
        Relation::Equal(Param::A1, Param::A2),
        Relation::Opposite(Param::A1, Param::A2),
    ];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Vanishes(p) => write!(f, "{p} = 0"),
            Relation::Equal(x, y) => write!(f, "{x} = {y}"),
            Relation::Opposite(x, y) => write!(f, "{x} = -{y}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Admissible and the residual vanishes.
    Annihilates,
    /// Admissible but the residual survives.
    Survives,
    /// Already forced by the structure types.
    AlreadyImplied,
    /// Forces a coefficient the structure type requires nonzero to vanish.
    Inadmissible,
    /// Contradicts a fixed coefficient or the relations α_iβ_i = 0.
    Inconsistent,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Annihilates => "annihilates",
            Outcome::Survives => "survives",
            Outcome::AlreadyImplied => "already-implied",
            Outcome::Inadmissible => "inadmissible",
            Outcome::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub relations: Vec<Relation>,
    pub outcome: Outcome,
}

impl ConditionOutcome {
    pub fn label(&self) -> String {
        self.relations
            .iter()
            .map(Relation::to_string)
            .collect::<Vec<_>>()
            .join(" and ")
    }
}

/// Imposes `lhs = rhs` on the substitution. Returns whether anything
/// changed, or `Err` on a contradiction between constants.
fn impose(sub: &mut Substitution, lhs: LinearImage, rhs: LinearImage) -> Result<bool, ()> {
    if lhs.var == rhs.var {
        if lhs.coeff == rhs.coeff {
            return Ok(false);
        }
        return match lhs.var {
            None => Err(()),
            Some(v) => {
                sub.compose_var(v, &LinearImage::zero());
                Ok(true)
            }
        };
    }
    let (solved, image) = match (lhs.var, rhs.var) {
        (Some(v), _) => (
            v,
            LinearImage {
                coeff: &rhs.coeff / &lhs.coeff,
                var: rhs.var,
            },
        ),
        (None, Some(w)) => (w, LinearImage::constant(&lhs.coeff / &rhs.coeff)),
        (None, None) => unreachable!("equal vars handled above"),
    };
    let image = if image.coeff.is_zero() {
        LinearImage::zero()
    } else {
        image
    };
    sub.compose_var(solved, &image);
    Ok(true)
}

fn apply_relation(sub: &mut Substitution, rel: Relation) -> Result<bool, ()> {
    let (x, rhs) = match rel {
        Relation::Vanishes(x) => (x, LinearImage::zero()),
        Relation::Equal(x, y) => (x, sub.image(y).clone()),
        Relation::Opposite(x, y) => {
            let img = sub.image(y);
            (
                x,
                LinearImage {
                    coeff: -&img.coeff,
                    var: img.var,
                },
            )
        }
    };
    let lhs = sub.image(x).clone();
    impose(sub, lhs, rhs)
}

/// Images of α_iβ_i under `sub`, as monomial generators. `None` when one of
/// them becomes a nonzero constant, which collapses the ring.
fn structure_ideal(sub: &Substitution) -> Option<Vec<ParamExps>> {
    let mut gens = Vec::new();
    for (a, b) in [(Param::A1, Param::B1), (Param::A2, Param::B2)] {
        let (ia, ib) = (sub.image(a), sub.image(b));
        if ia.is_zero() || ib.is_zero() {
            continue;
        }
        let mut e = [0u32; 4];
        for v in [ia.var, ib.var].into_iter().flatten() {
            e[v.index()] += 1;
        }
        if e == [0; 4] {
            return None;
        }
        gens.push(ParamExps(e));
    }
    Some(gens)
}

fn evaluate(
    residual: &Form,
    spec: &StructureSpec,
    reduce_ring: bool,
    relations: &[Relation],
) -> Outcome {
    let mut sub = spec.base_substitution();
    let mut changed = false;
    for rel in relations {
        match apply_relation(&mut sub, *rel) {
            Ok(c) => changed |= c,
            Err(()) => return Outcome::Inconsistent,
        }
    }
    if !changed {
        return Outcome::AlreadyImplied;
    }
    if spec
        .required_nonzero()
        .iter()
        .any(|p| sub.image(*p).is_zero())
    {
        return Outcome::Inadmissible;
    }
    let gens = if reduce_ring {
        match structure_ideal(&sub) {
            Some(g) => g,
            None => return Outcome::Inconsistent,
        }
    } else {
        Vec::new()
    };
    let image = Form::from_terms(
        residual
            .terms()
            .map(|(m, s)| (*m, s.substitute(&sub).reduce_modulo(&gens))),
    );
    if image.is_zero() {
        Outcome::Annihilates
    } else {
        Outcome::Survives
    }
}

/// Tries each candidate relation on `residual` (already specialized to
/// `spec`), then every pair of candidates that annihilates where neither
/// member does alone. Only annihilating pairs are listed.
pub fn conditional_analysis(
    residual: &Form,
    spec: &StructureSpec,
    reduce_ring: bool,
) -> Vec<ConditionOutcome> {
    if residual.is_zero() {
        return Vec::new();
    }
    let singles: Vec<ConditionOutcome> = Relation::CANDIDATES
        .iter()
        .map(|r| ConditionOutcome {
            relations: vec![*r],
            outcome: evaluate(residual, spec, reduce_ring, &[*r]),
        })
        .collect();
    let mut out = singles.clone();
    let n = Relation::CANDIDATES.len();
    for i in 0..n {
        for j in i + 1..n {
            if singles[i].outcome == Outcome::Annihilates
                || singles[j].outcome == Outcome::Annihilates
            {
                continue;
            }
            let pair = [Relation::CANDIDATES[i], Relation::CANDIDATES[j]];
            if evaluate(residual, spec, reduce_ring, &pair) == Outcome::Annihilates {
                out.push(ConditionOutcome {
                    relations: pair.to_vec(),
                    outcome: Outcome::Annihilates,
                });
            }
        }
    }
    out
}

/// Relation sets with outcome [`Outcome::Annihilates`].
pub fn annihilating(conditions: &[ConditionOutcome]) -> Vec<&ConditionOutcome> {
    conditions
        .iter()
        .filter(|c| c.outcome == Outcome::Annihilates)
        .collect()
}
