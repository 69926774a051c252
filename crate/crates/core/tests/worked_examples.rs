use sugeno_core::chebyshev::{
    check_integral_inequality, check_one_variable_condition, check_point, check_scalar_condition,
    check_survival_inequality, check_with_hypotheses, indicator_probe, q_condition,
    search_commutativity_gap, sugeno_chebyshev, CdDomain, InequalityConfig, ShapeFlags,
    ShapeFunction, Shapes, StageStatus,
};
use sugeno_core::dependence::{is_m_positively_dependent, DependenceQuery};
use sugeno_core::exprlang::{parse, parse_with_vars, Interval};
use sugeno_core::integral::{integrate_simple, SimpleFunction};
use sugeno_core::measure::{AtomSet, FiniteSpace, MonotoneMeasure, Segment, SurvivalScenario};
use sugeno_core::{Flags, FusionOp, NonNegExt, Verdict};

fn two_atoms(table: [f64; 4]) -> MonotoneMeasure {
    MonotoneMeasure::from_table(FiniteSpace::with_atoms(2).unwrap(), table.to_vec()).unwrap()
}

fn unit(v: &[f64]) -> SimpleFunction {
    SimpleFunction::unit(v.to_vec()).unwrap()
}

fn uniform_shapes(phi: ShapeFunction, psi: ShapeFunction) -> Shapes {
    Shapes {
        phi: [phi.clone(), phi.clone(), phi],
        psi: [psi.clone(), psi.clone(), psi],
    }
}

fn seg(interval: Interval, expr: &str) -> Segment {
    Segment {
        interval,
        expr: parse(expr).unwrap(),
    }
}

#[test]
fn squared_lukasiewicz_pair_breaks_inequality() {
    let w = FusionOp::lukasiewicz();
    let mut cfg = InequalityConfig::uniform(w.clone(), w.clone(), w, CdDomain::Interval);
    cfg.shapes = uniform_shapes(
        ShapeFunction::power(2.0, 1.0),
        ShapeFunction::power(0.5, 1.0),
    );
    let m = two_atoms([0.0, 0.9, 0.0, 1.0]);
    let a = AtomSet::singleton(0);
    let out =
        check_integral_inequality(&cfg, &m, &unit(&[0.5, 0.0]), &unit(&[0.8, 0.0]), a, a).unwrap();
    assert_eq!(out.lhs, 0.0);
    let expected = 0.15f64.sqrt() + 0.54f64.sqrt() - 1.0;
    assert!((out.rhs - expected).abs() < 1e-12);
    assert!((out.rhs - 0.1221452).abs() < 1e-6);
    assert!(!out.holds);

    // the functions are comonotone and still the scalar condition fails
    let report = check_with_hypotheses(
        &cfg,
        &m,
        &unit(&[0.5, 0.0]),
        &unit(&[0.8, 0.0]),
        a,
        a,
        0.01,
        true,
    );
    assert!(!report.contradiction);
}

#[test]
fn minitive_capacity_on_unit_interval() {
    let fg = SurvivalScenario::new(
        1.0,
        vec![
            seg(Interval::closed(0.0, 0.25), "1 - t"),
            seg(Interval::left_open(0.25, 0.5), "1 - 2*t"),
            seg(Interval::left_open(0.5, 1.0), "0"),
        ],
    )
    .unwrap();
    let f2 = SurvivalScenario::new(
        1.0,
        vec![
            seg(Interval::closed(0.0, 0.25), "1"),
            seg(Interval::left_open(0.25, 1.0), "0"),
        ],
    )
    .unwrap();
    let g2 =
        SurvivalScenario::new(1.0, vec![seg(Interval::closed(0.0, 1.0), "1 - sqrt(t)")]).unwrap();
    let prod = FusionOp::prod();
    let mut cfg =
        InequalityConfig::uniform(prod.clone(), prod, FusionOp::min(), CdDomain::Interval);
    let rt = ShapeFunction::power(0.5, 1.0);
    let sq = ShapeFunction::power(2.0, 1.0);
    cfg.shapes = Shapes {
        phi: [ShapeFunction::identity(1.0), sq.clone(), sq],
        psi: [rt.clone(), rt.clone(), rt],
    };
    let out = check_survival_inequality(&cfg, [&fg, &f2, &g2], 0.01).unwrap();
    let values: Vec<f64> = out.integrals.iter().map(|r| r.get()).collect();
    assert!((values[0] - 1.0 / 3.0).abs() < 1e-8, "{values:?}");
    assert!((values[1] - 0.25).abs() < 1e-8);
    assert!((values[2] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-8);
    assert!(out.holds);
}

#[test]
fn lebesgue_pair_reaches_equality() {
    let f = SurvivalScenario::new(
        1.0,
        vec![
            seg(Interval::closed(0.0, 0.5), "1"),
            seg(Interval::left_open(0.5, 1.0), "1 - 2*sqrt(0.5*(t - 0.5))"),
        ],
    )
    .unwrap();
    let g = SurvivalScenario::new(
        1.0,
        vec![
            seg(Interval::closed(0.0, 0.5), "2*sqrt(0.5*(0.5 - t))"),
            seg(Interval::left_open(0.5, 1.0), "0"),
        ],
    )
    .unwrap();
    let fg = SurvivalScenario::new(
        1.0,
        vec![
            seg(Interval::closed(0.0, 0.0), "1"),
            seg(Interval::left_open(0.0, 1.0), "0"),
        ],
    )
    .unwrap();
    let w = FusionOp::lukasiewicz();
    let mut cfg =
        InequalityConfig::uniform(w.clone(), w.clone(), FusionOp::min(), CdDomain::Interval);
    cfg.triangle = w;
    let sq = ShapeFunction::power(2.0, 1.0);
    cfg.shapes = Shapes {
        phi: [
            ShapeFunction::identity(1.0),
            ShapeFunction::identity(1.0),
            ShapeFunction::identity(1.0),
        ],
        psi: [ShapeFunction::power(0.5, 1.0), sq.clone(), sq],
    };
    let out = check_survival_inequality(&cfg, [&fg, &f, &g], 0.01).unwrap();
    assert_eq!(out.integrals[0].get(), 0.0);
    assert!((out.integrals[1].get() - (2.0 - 2f64.sqrt())).abs() < 1e-8);
    assert!((out.integrals[2].get() - (2f64.sqrt() - 1.0)).abs() < 1e-8);
    assert!((out.lhs - out.rhs).abs() < 1e-9);
    assert!(out.holds);
}

#[test]
fn lukasiewicz_condition_depends_on_measure_range() {
    let prod = FusionOp::prod();
    let cfg = InequalityConfig::uniform(
        prod.clone(),
        prod,
        FusionOp::lukasiewicz(),
        CdDomain::Finite {
            values: vec![0.0, 1.0],
        },
    );
    assert!(check_scalar_condition(&cfg, 0.01).holds());
    let cfg = cfg.with_cd(CdDomain::Interval);
    assert!(check_scalar_condition(&cfg, 0.01).is_violated());
    match check_point(&cfg, 0.5, 0.5, 0.75, 0.75) {
        Verdict::Violated { lhs, rhs, .. } => {
            assert_eq!(lhs, 0.0);
            assert!((rhs - 0.0625).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn lukasiewicz_witness_becomes_integral_counterexample() {
    let prod = FusionOp::prod();
    let cfg = InequalityConfig::uniform(
        prod.clone(),
        prod,
        FusionOp::lukasiewicz(),
        CdDomain::Interval,
    );
    let v = check_one_variable_condition(&cfg, 0.01);
    let w = v.witness().expect("violated");
    let probe = indicator_probe(&cfg, w[0], w[1], w[2]).unwrap();
    assert!(!probe.outcome.holds);
    assert!(probe.outcome.lhs < probe.outcome.rhs - 1e-9);
}

#[test]
fn godel_conjunctions_fail_the_q_condition() {
    let id = ShapeFunction::identity(1.0);
    let phi = [id.clone(), id.clone(), id];
    for conj in [FusionOp::godel(), FusionOp::godel_contra()] {
        let v = q_condition(
            &conj,
            &phi,
            &FusionOp::prod(),
            0.01,
            [None, Some(1.0), None],
        );
        let w = v.witness().expect("violated").to_vec();
        assert_eq!(w[1], 1.0);
        assert!(w[0] > 0.0 && w[2] > 0.0 && w[0] + w[2] <= 1.0, "{w:?}");
        assert!(q_condition(&conj, &phi, &FusionOp::prod(), 0.01, [None; 3]).is_violated());
    }
}

#[test]
fn affine_shape_has_undefined_inverse_value() {
    let phi =
        ShapeFunction::parse("0.5 * (x + 1)", 0.0, 1.0, ShapeFlags::CONTINUOUS_INCREASING).unwrap();
    let psi = ShapeFunction::inverse_of(&phi, None).unwrap();
    let m = two_atoms([0.0, 0.4, 0.0, 1.0]);
    let f = unit(&[0.5, 0.5]);
    let r = sugeno_chebyshev(
        &m,
        &f,
        &f,
        AtomSet::singleton(0),
        [phi.clone(), phi.clone(), phi],
        [psi.clone(), psi.clone(), psi],
        &FusionOp::prod(),
        0.01,
    );
    match r.verdict {
        Verdict::HypothesisFailed {
            value: Some(v),
            detail,
        } => {
            assert!((v - 0.4).abs() < 1e-12, "{detail}");
        }
        other => panic!("{other:?}"),
    }
    let last = r.stages.last().unwrap();
    assert_eq!(last.status, StageStatus::Undecided);
}

#[test]
fn constant_pairs_give_equality_for_powers() {
    let prod = FusionOp::prod();
    for circ in [FusionOp::min(), FusionOp::prod(), FusionOp::lukasiewicz()] {
        let mut cfg =
            InequalityConfig::uniform(prod.clone(), prod.clone(), circ, CdDomain::Interval);
        cfg.shapes = uniform_shapes(
            ShapeFunction::power(2.5, 1.0),
            ShapeFunction::power(0.7, 1.0),
        );
        let m = two_atoms([0.0, 0.3, 0.2, 1.0]);
        let x = AtomSet::full(2);
        let out = check_integral_inequality(&cfg, &m, &unit(&[0.6, 0.6]), &unit(&[0.9, 0.9]), x, x)
            .unwrap();
        assert!((out.lhs - out.rhs).abs() < 1e-12, "{out:?}");
    }
}

#[test]
fn indicator_pairs_below_measure_give_equality() {
    // f = a𝟙_D, g = b𝟙_D with every power of a, b, ab below m(D)
    let prod = FusionOp::prod();
    let mut cfg =
        InequalityConfig::uniform(prod.clone(), prod, FusionOp::min(), CdDomain::Interval);
    let p = [2.0, 3.0, 1.5];
    cfg.shapes = Shapes {
        phi: p.map(|p| ShapeFunction::power(p, 1.0)),
        psi: p.map(|p| ShapeFunction::power(1.0 / p, 1.0)),
    };
    let m = two_atoms([0.0, 0.7, 0.1, 1.0]);
    let d = AtomSet::singleton(0);
    let out =
        check_integral_inequality(&cfg, &m, &unit(&[0.8, 0.0]), &unit(&[0.6, 0.0]), d, d).unwrap();
    assert!((out.lhs - out.rhs).abs() < 1e-12, "{out:?}");
}

#[test]
fn two_point_space_is_dependent_below_product() {
    let p = 0.35;
    let m = two_atoms([0.0, 0.2, p, 1.0]);
    let f = unit(&[0.0, 1.0]);
    let x = AtomSet::full(2);
    for triangle in [FusionOp::prod(), FusionOp::lukasiewicz()] {
        let q = DependenceQuery {
            m: &m,
            f: &f,
            g: &f,
            a: x,
            b: x,
            triangle: &triangle,
            k: 1.0,
            allow_range_escape: true,
        };
        assert!(
            is_m_positively_dependent(&q).unwrap().holds,
            "{}",
            triangle.name()
        );
    }
}

#[test]
fn non_commutative_operation_separates_argument_orders() {
    let s = FusionOp::custom(
        "ab2",
        parse_with_vars("a * b^2", &["a", "b"]).unwrap(),
        NonNegExt::ONE,
        Flags {
            non_decreasing: true,
            ..Flags::default()
        },
    );
    let gap = search_commutativity_gap(&s, &FusionOp::prod(), 0.01)
        .unwrap()
        .expect("gap");
    assert_eq!((gap.a, gap.b, gap.c), (0.01, 0.01, 0.01));
}

#[test]
fn sugeno_integral_of_simple_function() {
    let m = two_atoms([0.0, 0.3, 0.6, 1.0]);
    let f = unit(&[0.7, 0.2]);
    let r = integrate_simple(&FusionOp::min(), &m, AtomSet::full(2), &f).unwrap();
    assert_eq!(r.get(), 0.3);
}
