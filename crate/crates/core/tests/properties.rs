use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use astheno::algebra::{Form, Monomial, ProductGeometry};
use astheno::calculus::{condition_tensor, exterior_d, j_action, ConditionKind, LeibnizConvention};
use astheno::classify::{classify, substitute, Coefficient, FactorKind, FactorType, StructureSpec};
use astheno::expr_io::{from_record, parse, print_text, to_record};
use astheno::oracle::GrassmannModel;
use astheno::scalar::{LinearImage, Param, ParamExps, Scalar, Substitution};

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((prop::array::uniform4(0u32..=2), rational()), 1..=3)
        .prop_map(|terms| Scalar::from_terms(terms.into_iter().map(|(e, c)| (ParamExps(e), c))))
}

fn monomial(max_phi: u32) -> impl Strategy<Value = Monomial> {
    (any::<bool>(), any::<bool>(), 0..=max_phi, 0..=max_phi)
        .prop_map(|(a, b, p, q)| Monomial::new(a, b, p, q))
}

fn form() -> impl Strategy<Value = Form> {
    prop::collection::vec((monomial(3), scalar()), 0..=4).prop_map(Form::from_terms)
}

/// Homogeneous form of the given degree.
fn homogeneous(degree: u32) -> impl Strategy<Value = Form> {
    let monos: Vec<Monomial> = (0..=degree / 2)
        .flat_map(|p| (0..=degree / 2).map(move |q| (p, q)))
        .flat_map(|(p, q)| {
            [(false, false), (true, false), (false, true), (true, true)]
                .into_iter()
                .map(move |(a, b)| Monomial::new(a, b, p, q))
        })
        .filter(|m| m.degree() == degree)
        .collect();
    prop::collection::vec((prop::sample::select(monos), scalar()), 0..=3).prop_map(Form::from_terms)
}

fn graded_pair() -> impl Strategy<Value = (u32, u32, Form, Form)> {
    (0u32..=5, 0u32..=5).prop_flat_map(|(a, b)| (Just(a), Just(b), homogeneous(a), homogeneous(b)))
}

fn geometry() -> impl Strategy<Value = ProductGeometry> {
    (1u32..=3, 1u32..=3, any::<bool>(), any::<bool>()).prop_map(|(a, b, t, r)| {
        ProductGeometry::new(a, b)
            .unwrap()
            .with_truncation(t)
            .with_ring_reduction(r)
    })
}

fn convention() -> impl Strategy<Value = LeibnizConvention> {
    prop_oneof![
        Just(LeibnizConvention::Graded),
        Just(LeibnizConvention::Ungraded)
    ]
}

fn params() -> impl Strategy<Value = [BigRational; 4]> {
    prop::array::uniform4(rational())
}

fn kind() -> impl Strategy<Value = FactorKind> {
    prop::sample::select(FactorKind::PURE.to_vec())
}

fn constant_factor(k: FactorKind, c: BigRational) -> FactorType {
    match k {
        FactorKind::AlphaSasakian | FactorKind::BetaKenmotsu => {
            FactorType::with_value(k, Coefficient::Value(c))
        }
        _ => FactorType::symbolic(k),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_associative(x in form(), y in form(), z in form(), g in geometry()) {
        prop_assert_eq!(x.wedge(&y, &g).wedge(&z, &g), x.wedge(&y.wedge(&z, &g), &g));
    }

    #[test]
    fn wedge_is_graded_commutative((dx, dy, x, y) in graded_pair(), g in geometry()) {
        let xy = x.wedge(&y, &g);
        let yx = y.wedge(&x, &g);
        if (dx * dy) % 2 == 0 {
            prop_assert_eq!(xy, yx);
        } else {
            prop_assert_eq!(xy, -&yx);
        }
    }

    #[test]
    fn wedge_distributes(x in form(), y in form(), z in form(), g in geometry()) {
        prop_assert_eq!(x.wedge(&(&y + &z), &g), &x.wedge(&y, &g) + &x.wedge(&z, &g));
    }

    #[test]
    fn oracle_agrees_with_symbolic_products(
        x in form(),
        y in form(),
        p in params(),
        (m1, m2) in (1u32..=3, 1u32..=3),
        k in 0u32..=3,
    ) {
        let g = ProductGeometry::new(m1, m2).unwrap().with_ring_reduction(false);
        let model = GrassmannModel::new(m1, m2).unwrap();
        let (ox, oy) = (model.evaluate(&x, &p), model.evaluate(&y, &p));
        prop_assert_eq!(model.evaluate(&x.wedge(&y, &g), &p), ox.wedge(&oy));
        prop_assert_eq!(model.evaluate(&(&x + &y), &p), ox.add(&oy));
        prop_assert_eq!(model.evaluate(&x.power(k, &g), &p), model.power(&ox, k));
    }

    #[test]
    fn d_squared_vanishes_with_ring_reduction(x in form(), g in geometry()) {
        let g = g.with_ring_reduction(true);
        let conv = LeibnizConvention::Graded;
        prop_assert!(exterior_d(&exterior_d(&x, conv, &g), conv, &g).is_zero());
    }

    #[test]
    fn d_obeys_graded_leibniz(x in homogeneous(3), y in form(), g in geometry()) {
        let g = g.with_truncation(false);
        let conv = LeibnizConvention::Graded;
        let lhs = exterior_d(&x.wedge(&y, &g), conv, &g);
        let rhs = &exterior_d(&x, conv, &g).wedge(&y, &g) - &x.wedge(&exterior_d(&y, conv, &g), &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_raises_degree_by_one((d, _, x, _) in graded_pair(), conv in convention()) {
        let g = ProductGeometry::untruncated(3, 3).unwrap();
        let dx = exterior_d(&x, conv, &g);
        if !dx.is_zero() {
            prop_assert_eq!(dx.homogeneous_degree(), Some(d + 1));
        }
    }

    #[test]
    fn j_is_an_automorphism(x in form(), y in form(), g in geometry()) {
        prop_assert_eq!(j_action(&x.wedge(&y, &g)), j_action(&x).wedge(&j_action(&y), &g));
        prop_assert_eq!(j_action(&(&x + &y)), &j_action(&x) + &j_action(&y));
        let jjjj = j_action(&j_action(&j_action(&j_action(&x))));
        prop_assert_eq!(jjjj, x);
    }

    #[test]
    fn text_round_trip(x in form()) {
        prop_assert_eq!(parse(&print_text(&x)).unwrap(), x);
    }

    #[test]
    fn record_round_trip(x in form()) {
        let text = serde_json::to_string(&to_record(&x)).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(from_record(&back).unwrap(), x);
    }

    #[test]
    fn substitution_commutes_with_wedge_and_d(
        x in form(),
        y in form(),
        values in params(),
        g in geometry(),
        conv in convention(),
    ) {
        let mut sub = Substitution::identity();
        for (p, v) in Param::ALL.into_iter().zip(values) {
            sub.set(p, LinearImage::constant(v));
        }
        let g = g.with_ring_reduction(false);
        prop_assert_eq!(
            x.wedge(&y, &g).substitute(&sub),
            x.substitute(&sub).wedge(&y.substitute(&sub), &g)
        );
        prop_assert_eq!(
            exterior_d(&x, conv, &g).substitute(&sub),
            exterior_d(&x.substitute(&sub), conv, &g).substitute(&sub)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_stable_under_parameter_scaling(
        k1 in kind(),
        k2 in kind(),
        c1 in rational(),
        c2 in rational(),
        (m1, m2) in (1u32..=2, 1u32..=2),
        cond in prop::sample::select(vec![ConditionKind::Astheno, ConditionKind::Skt, ConditionKind::Gauduchon]),
        conv in convention(),
    ) {
        let g = ProductGeometry::new(m1, m2).unwrap();
        let zero_at = |lambda: i64| {
            let l = BigRational::from_integer(BigInt::from(lambda));
            let spec = StructureSpec::new(
                constant_factor(k1, &c1 * &l),
                constant_factor(k2, &c2 * &l),
            ).unwrap();
            classify(cond, &g, &spec, conv).unwrap().verdict.is_zero()
        };
        let base = zero_at(1);
        prop_assert_eq!(zero_at(2), base);
        prop_assert_eq!(zero_at(-3), base);

        // Symbolic form of the same statement: scale every parameter.
        let tensor = condition_tensor(cond, &g, conv).unwrap();
        let residual = g.normalize(&substitute(&tensor, &StructureSpec::symbolic(k1, k2)).unwrap());
        for lambda in [1i64, 2, -3] {
            let mut sub = Substitution::identity();
            for p in Param::ALL {
                sub.set(p, LinearImage {
                    coeff: BigRational::from_integer(BigInt::from(lambda)),
                    var: Some(p),
                });
            }
            prop_assert_eq!(g.normalize(&residual.substitute(&sub)).is_zero(), residual.is_zero());
        }
    }
}
