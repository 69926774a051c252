//! The integral side: both sides of the inequality for concrete measures and
//! functions, hypothesis pipelines around it, and the indicator-pair probe
//! that turns a scalar witness into an integral counterexample.

use serde::Serialize;

use super::scalar::{check_scalar_condition, one_variable_sides};
use super::{CdDomain, ChebyshevError, InequalityConfig, ShapeFunction, Shapes};
use crate::dependence::{
    comonotone_report, is_m_positively_dependent, measure_supports_all_pairs, DependenceQuery,
    DependenceReport,
};
use crate::fusion::{leq_min, FusionOp};
use crate::grid::{self, GridSpec};
use crate::integral::{integrate_simple, integrate_survival, IntegralResult, SimpleFunction};
use crate::measure::{AtomSet, FiniteSpace, MonotoneMeasure, SurvivalScenario};
use crate::random;
use crate::value::NonNegExt;
use crate::verdict::{Evidence, Verdict, DEFAULT_TOLERANCE};

/// Both sides of `ψ₁(I₁) ≥ ψ₂(I₂) ⋆ ψ₃(I₃)` and the three integrals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub integrals: [IntegralResult; 3],
}

impl InequalityOutcome {
    fn new(
        cfg: &InequalityConfig,
        integrals: [IntegralResult; 3],
    ) -> Result<InequalityOutcome, ChebyshevError> {
        let [psi1, psi2, psi3] = &cfg.shapes.psi;
        let lhs = psi1.eval(integrals[0].get())?;
        let rhs = cfg.outer.apply(
            psi2.eval(integrals[1].get())?,
            psi3.eval(integrals[2].get())?,
        )?;
        Ok(InequalityOutcome {
            lhs,
            rhs,
            holds: lhs >= rhs - cfg.tolerance,
            integrals,
        })
    }

    /// The outcome as a verdict; an integral comparison has no scan witness.
    pub fn verdict(&self, evidence: Evidence) -> Verdict {
        if self.holds {
            Verdict::HoldsOnGrid { evidence }
        } else {
            Verdict::Violated {
                witness: vec![],
                lhs: self.lhs,
                rhs: self.rhs,
                evidence,
            }
        }
    }
}

fn mapped(f: &SimpleFunction, shape: &ShapeFunction) -> Result<SimpleFunction, ChebyshevError> {
    let values = f
        .values()
        .iter()
        .map(|&v| shape.eval(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimpleFunction::new(values, NonNegExt::INFINITY)?)
}

/// Integrates `φ₁(f ∗ g)` over `A ∩ B`, `φ₂(f)` over `A` and `φ₃(g)` over `B`.
pub fn check_integral_inequality(
    cfg: &InequalityConfig,
    m: &MonotoneMeasure,
    f: &SimpleFunction,
    g: &SimpleFunction,
    a: AtomSet,
    b: AtomSet,
) -> Result<InequalityOutcome, ChebyshevError> {
    for h in [f, g] {
        if let Some(v) = h.values().iter().find(|v| **v > cfg.k) {
            return Err(ChebyshevError::Config(format!(
                "function value {v} exceeds k = {}",
                cfg.k
            )));
        }
    }
    let [phi1, phi2, phi3] = &cfg.shapes.phi;
    let fg = f.combine(g, NonNegExt::INFINITY, &cfg.inner)?;
    let integrals = [
        integrate_simple(&cfg.circ[0], m, a.intersect(b), &mapped(&fg, phi1)?)?,
        integrate_simple(&cfg.circ[1], m, a, &mapped(f, phi2)?)?,
        integrate_simple(&cfg.circ[2], m, b, &mapped(g, phi3)?)?,
    ];
    InequalityOutcome::new(cfg, integrals)
}

/// Same comparison with each integral given by its survival function
/// `t ↦ m(D ∩ {h ≥ t})`.
pub fn check_survival_inequality(
    cfg: &InequalityConfig,
    scenarios: [&SurvivalScenario; 3],
    grid_step: f64,
) -> Result<InequalityOutcome, ChebyshevError> {
    let integrals = [
        integrate_survival(&cfg.circ[0], scenarios[0], grid_step)?,
        integrate_survival(&cfg.circ[1], scenarios[1], grid_step)?,
        integrate_survival(&cfg.circ[2], scenarios[2], grid_step)?,
    ];
    InequalityOutcome::new(cfg, integrals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Passed,
    Failed,
    /// The stage could not be evaluated on these inputs.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub status: StageStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl Stage {
    fn from_verdict(name: &'static str, verdict: Verdict) -> Stage {
        let status = match verdict {
            Verdict::HoldsOnGrid { .. } => StageStatus::Passed,
            Verdict::Violated { .. } => StageStatus::Failed,
            Verdict::HypothesisFailed { .. } => StageStatus::Undecided,
        };
        Stage {
            name,
            status,
            detail: None,
            verdict: Some(verdict),
        }
    }

    fn from_dependence(
        name: &'static str,
        report: Result<DependenceReport, impl ToString>,
    ) -> Stage {
        match report {
            Ok(r) => {
                let mut detail = r.witness.as_ref().map(|w| format!("{w:?}"));
                if !r.warnings.is_empty() {
                    let w = r.warnings.join("; ");
                    detail = Some(detail.map_or(w.clone(), |d| format!("{d}; {w}")));
                }
                let status = if r.holds {
                    StageStatus::Passed
                } else {
                    StageStatus::Failed
                };
                Stage {
                    name,
                    status,
                    detail,
                    verdict: None,
                }
            }
            Err(e) => Stage {
                name,
                status: StageStatus::Undecided,
                detail: Some(e.to_string()),
                verdict: None,
            },
        }
    }

    fn check(name: &'static str, failure: Option<String>) -> Stage {
        let status = if failure.is_some() {
            StageStatus::Failed
        } else {
            StageStatus::Passed
        };
        Stage {
            name,
            status,
            detail: failure,
            verdict: None,
        }
    }

    fn passed(&self) -> bool {
        self.status == StageStatus::Passed
    }
}

/// Stage-by-stage account of a hypothesis pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub stages: Vec<Stage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<InequalityOutcome>,
    /// Overall result: a failed hypothesis check, or the inequality itself.
    pub verdict: Verdict,
    /// Every hypothesis passed but the inequality failed.
    pub contradiction: bool,
}

impl PipelineReport {
    /// The last stage is the inequality; the ones before it are hypotheses.
    fn finish(
        stages: Vec<Stage>,
        outcome: Result<InequalityOutcome, ChebyshevError>,
        hypotheses_gate: bool,
    ) -> Self {
        let mut stages = stages;
        let hypotheses_hold = stages.iter().all(Stage::passed);
        let (outcome, stage, verdict) = match outcome {
            Ok(o) => {
                let v = o.verdict(Evidence::Exact);
                (Some(o), Stage::from_verdict("inequality", v.clone()), v)
            }
            Err(e) => {
                let v = e.into_verdict();
                (None, Stage::from_verdict("inequality", v.clone()), v)
            }
        };
        let contradiction = hypotheses_hold && stage.status == StageStatus::Failed;
        stages.push(stage);
        let blocking = stages[..stages.len() - 1].iter().find(|s| match s.status {
            StageStatus::Passed => false,
            StageStatus::Failed => hypotheses_gate,
            StageStatus::Undecided => true,
        });
        let verdict = match blocking {
            Some(s) if !matches!(verdict, Verdict::HypothesisFailed { .. }) => match &s.verdict {
                Some(v @ Verdict::HypothesisFailed { .. }) => v.clone(),
                _ => Verdict::HypothesisFailed {
                    detail: match &s.detail {
                        Some(d) => format!("stage `{}` failed: {d}", s.name),
                        None => format!("stage `{}` failed", s.name),
                    },
                    value: None,
                },
            },
            _ => verdict,
        };
        PipelineReport {
            stages,
            outcome,
            verdict,
            contradiction,
        }
    }
}

fn config_stage(cfg: &InequalityConfig) -> Stage {
    match cfg.check_hypotheses() {
        None => Stage::check("hypotheses", None),
        Some(v) => Stage::from_verdict("hypotheses", v),
    }
}

/// Checks the hypotheses of the dependence-based inequality one by one and
/// then the inequality itself. The scalar condition is scanned with `c, d`
/// over the range of `m`.
#[allow(clippy::too_many_arguments)]
pub fn check_with_hypotheses(
    cfg: &InequalityConfig,
    m: &MonotoneMeasure,
    f: &SimpleFunction,
    g: &SimpleFunction,
    a: AtomSet,
    b: AtomSet,
    grid_step: f64,
    allow_range_escape: bool,
) -> PipelineReport {
    let cfg = cfg.clone().with_cd(CdDomain::Finite { values: m.range() });
    let mut stages = vec![config_stage(&cfg)];
    let query = DependenceQuery {
        m,
        f,
        g,
        a,
        b,
        triangle: &cfg.triangle,
        k: cfg.k,
        allow_range_escape,
    };
    stages.push(Stage::from_dependence(
        "dependence",
        is_m_positively_dependent(&query),
    ));
    stages.push(Stage::from_verdict(
        "scalar_condition",
        check_scalar_condition(&cfg, grid_step),
    ));
    let outcome = check_integral_inequality(&cfg, m, f, g, a, b);
    PipelineReport::finish(stages, outcome, false)
}

fn grid_failure(
    step: f64,
    what: &str,
    mut bad: impl FnMut(f64) -> Result<Option<String>, ChebyshevError>,
) -> Option<String> {
    for x in grid::uniform(0.0, 1.0, step) {
        match bad(x) {
            Ok(None) => {}
            Ok(Some(detail)) => return Some(format!("{what}: {detail}")),
            Err(e) => return Some(format!("{what}: {e}")),
        }
    }
    None
}

/// Sugeno-integral inequality for comonotone `f, g` on `A` with `∘ᵢ = ▵ = min`
/// and `⋆ = ∗`, after checking `∗ ≤ ∧`, `φ₁(1) = φⱼ(1)`, `ψ₁ ≥ ψⱼ` and
/// `ψⱼ(φⱼ(x)) ≤ x ≤ ψ₁(φ₁(x))` on the grid.
#[allow(clippy::too_many_arguments)]
pub fn sugeno_chebyshev(
    m: &MonotoneMeasure,
    f: &SimpleFunction,
    g: &SimpleFunction,
    a: AtomSet,
    phi: [ShapeFunction; 3],
    psi: [ShapeFunction; 3],
    star: &FusionOp,
    grid_step: f64,
) -> PipelineReport {
    let spec = GridSpec::with_step(grid_step);
    let mut stages = vec![match leq_min(star, &spec) {
        Ok(v) => Stage::from_verdict("star_below_min", v),
        Err(e) => Stage::from_verdict("star_below_min", ChebyshevError::from(e).into_verdict()),
    }];

    let top = |s: &ShapeFunction| s.eval(1.0).map_err(ChebyshevError::from);
    let tops = phi.iter().map(top).collect::<Result<Vec<_>, _>>();
    stages.push(Stage::check(
        "phi_tops_equal",
        match &tops {
            Ok(t)
                if (t[0] - t[1]).abs() > DEFAULT_TOLERANCE
                    || (t[0] - t[2]).abs() > DEFAULT_TOLERANCE =>
            {
                Some(format!("φ(1) values {t:?} differ"))
            }
            Ok(_) => None,
            Err(e) => Some(e.to_string()),
        },
    ));

    let order = grid_failure(grid_step, "ψ₁ ≥ ψⱼ", |x| {
        for j in 1..3 {
            let (lo1, hi1) = psi[0].domain();
            let (loj, hij) = psi[j].domain();
            if x < lo1.max(loj) || x > hi1.min(hij) {
                continue;
            }
            let (p1, pj) = (psi[0].eval(x)?, psi[j].eval(x)?);
            if p1 < pj - DEFAULT_TOLERANCE {
                return Ok(Some(format!("ψ₁({x}) = {p1} < ψ{}({x}) = {pj}", j + 1)));
            }
        }
        Ok(None)
    });
    stages.push(Stage::check("psi_order", order));

    let sandwich = grid_failure(
        grid_step,
        "ψⱼ(φⱼ(x)) ≤ x ≤ ψ₁(φ₁(x))",
        |x| {
            let upper = psi[0].eval(phi[0].eval(x)?)?;
            if upper < x - DEFAULT_TOLERANCE {
                return Ok(Some(format!("ψ₁(φ₁({x})) = {upper}")));
            }
            for j in 1..3 {
                let lower = psi[j].eval(phi[j].eval(x)?)?;
                if lower > x + DEFAULT_TOLERANCE {
                    return Ok(Some(format!("ψ{0}(φ{0}({x})) = {lower}", j + 1)));
                }
            }
            Ok(None)
        },
    );
    stages.push(Stage::check("sandwich", sandwich));
    stages.push(Stage::from_dependence(
        "comonotone",
        Ok::<_, String>(comonotone_report(m, f, g, a)),
    ));

    let min = FusionOp::min();
    let cfg = InequalityConfig {
        inner: star.clone(),
        outer: star.clone(),
        circ: [min.clone(), min.clone(), min.clone()],
        triangle: min,
        shapes: Shapes { phi, psi },
        k: 1.0,
        ybar: 1.0,
        cd: CdDomain::Interval,
        tolerance: DEFAULT_TOLERANCE,
    };
    let outcome = check_integral_inequality(&cfg, m, f, g, a, a);
    PipelineReport::finish(stages, outcome, true)
}

/// `ψ₁(I(φ₁(f))) ≥ ψ₂(I(φ₂(f)))` for Sugeno integrals, run as the `∗ = ∧`,
/// `g = f` case of [`sugeno_chebyshev`].
pub fn liapunov_check(
    m: &MonotoneMeasure,
    f: &SimpleFunction,
    a: AtomSet,
    phi: [ShapeFunction; 2],
    psi: [ShapeFunction; 2],
    grid_step: f64,
) -> PipelineReport {
    let [phi1, phi2] = phi;
    let [psi1, psi2] = psi;
    sugeno_chebyshev(
        m,
        f,
        f,
        a,
        [phi1, phi2.clone(), phi2],
        [psi1, psi2.clone(), psi2],
        &FusionOp::min(),
        grid_step,
    )
}

/// Inequality for arbitrary (not necessarily dependent) pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnyFunctionsReport {
    pub stages: Vec<Stage>,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<TrialFailure>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Checks `m(C∩D) ≥ m(C) ▵ m(D)` for all sets and the scalar condition over
/// the range of `m`, then evaluates the inequality on `trials` random pairs on
/// the whole space. Requires `⋆ = ∗`.
pub fn any_functions_check(
    cfg: &InequalityConfig,
    m: &MonotoneMeasure,
    trials: usize,
    seed: u64,
    grid_step: f64,
    allow_range_escape: bool,
) -> AnyFunctionsReport {
    let mut report = AnyFunctionsReport {
        stages: Vec::new(),
        trials,
        seed,
        failures: 0,
        first_failure: None,
        verdict: Verdict::HoldsOnGrid {
            evidence: Evidence::RandomTrials { trials, seed },
        },
    };
    if cfg.outer != cfg.inner {
        report.verdict = Verdict::HypothesisFailed {
            detail: format!(
                "⋆ = `{}` must equal ∗ = `{}`",
                cfg.outer.name(),
                cfg.inner.name()
            ),
            value: None,
        };
        return report;
    }
    let cfg = cfg.clone().with_cd(CdDomain::Finite { values: m.range() });
    report.stages.push(Stage::from_dependence(
        "measure_supports_pairs",
        measure_supports_all_pairs(m, &cfg.triangle, allow_range_escape),
    ));
    report.stages.push(Stage::from_verdict(
        "scalar_condition",
        check_scalar_condition(&cfg, grid_step),
    ));

    let n = m.space().len();
    let universe = m.space().universe();
    let mut rng = random::rng(seed);
    let k = if cfg.k.is_finite() { cfg.k } else { 1.0 };
    for trial in 0..trials {
        let f = random::function(&mut rng, n, k);
        let g = random::function(&mut rng, n, k);
        match check_integral_inequality(&cfg, m, &f, &g, universe, universe) {
            Ok(o) if o.holds => {}
            Ok(o) => {
                report.failures += 1;
                report.first_failure.get_or_insert(TrialFailure {
                    trial,
                    f: f.values().to_vec(),
                    g: g.values().to_vec(),
                    lhs: o.lhs,
                    rhs: o.rhs,
                });
            }
            Err(e) => {
                report.verdict = e.into_verdict();
                return report;
            }
        }
    }
    if let Some(fail) = &report.first_failure {
        report.verdict = Verdict::Violated {
            witness: vec![],
            lhs: fail.lhs,
            rhs: fail.rhs,
            evidence: Evidence::RandomTrials { trials, seed },
        };
    }
    report
}

/// Integral instance built from a one-variable scalar witness `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeOutcome {
    /// `m({x1}), m({x2}), m(X)`.
    pub measure: [f64; 3],
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub outcome: InequalityOutcome,
}

/// Builds a two-atom measure with `m({x1}) = c`, `m({x2}) = 0`, `m(X) = d̄`
/// and evaluates the inequality on `A = B = X` for `f = a𝟙_{x1}, g = b𝟙_X`,
/// or for `f = a𝟙_X, g = b𝟙_{x1}` when the witness violates the one-variable
/// form only through its second branch.
pub fn indicator_probe(
    cfg: &InequalityConfig,
    a: f64,
    b: f64,
    c: f64,
) -> Result<ProbeOutcome, ChebyshevError> {
    let d_bar = cfg.d_bar();
    if !(c <= d_bar && d_bar > 0.0) {
        return Err(ChebyshevError::Config(format!(
            "need 0 ≤ c = {c} ≤ d̄ = {d_bar} and d̄ > 0"
        )));
    }
    let [_, phi2, phi3] = &cfg.shapes.phi;
    let [_, psi2, psi3] = &cfg.shapes.psi;
    let (lhs, _) = one_variable_sides(cfg, a, b, c)?;
    let first = cfg.outer.apply(
        psi2.eval(cfg.circ[1].apply(phi2.eval(a)?, c)?)?,
        psi3.eval(cfg.circ[2].apply(phi3.eval(b)?, d_bar)?)?,
    )?;
    let on_f = lhs < first - cfg.tolerance;

    let space = FiniteSpace::with_atoms(2).expect("two atoms");
    let measure = [c, 0.0, d_bar];
    let m = MonotoneMeasure::from_table(space, vec![0.0, c, 0.0, d_bar])
        .map_err(|e| ChebyshevError::Config(e.to_string()))?;
    let bound = NonNegExt::new(cfg.k).unwrap_or(NonNegExt::INFINITY);
    let (fv, gv) = if on_f {
        (vec![a, 0.0], vec![b, b])
    } else {
        (vec![a, a], vec![b, 0.0])
    };
    let f = SimpleFunction::new(fv, bound)?;
    let g = SimpleFunction::new(gv, bound)?;
    let x = AtomSet::full(2);
    let outcome = check_integral_inequality(cfg, &m, &f, &g, x, x)?;
    Ok(ProbeOutcome {
        measure,
        f: f.values().to_vec(),
        g: g.values().to_vec(),
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::scalar::check_one_variable_condition;
    use crate::chebyshev::ShapeFlags;
    use crate::exprlang::parse;
    use crate::exprlang::Interval;
    use crate::measure::Segment;

    fn two_atoms(table: [f64; 4]) -> MonotoneMeasure {
        MonotoneMeasure::from_table(FiniteSpace::with_atoms(2).unwrap(), table.to_vec()).unwrap()
    }

    fn unit(v: Vec<f64>) -> SimpleFunction {
        SimpleFunction::unit(v).unwrap()
    }

    fn squares_config() -> InequalityConfig {
        let w = FusionOp::lukasiewicz();
        let mut cfg = InequalityConfig::uniform(w.clone(), w.clone(), w, CdDomain::Interval);
        let sq = ShapeFunction::power(2.0, 1.0);
        let rt = ShapeFunction::power(0.5, 1.0);
        cfg.shapes = Shapes {
            phi: [sq.clone(), sq.clone(), sq],
            psi: [rt.clone(), rt.clone(), rt],
        };
        cfg
    }

    #[test]
    fn squared_lukasiewicz_counterexample() {
        let cfg = squares_config();
        let m = two_atoms([0.0, 0.9, 0.0, 1.0]);
        let o = check_integral_inequality(
            &cfg,
            &m,
            &unit(vec![0.5, 0.0]),
            &unit(vec![0.8, 0.0]),
            AtomSet::full(2),
            AtomSet::full(2),
        )
        .unwrap();
        assert_eq!(o.lhs, 0.0);
        let expected = 0.15f64.sqrt() + 0.54f64.sqrt() - 1.0;
        assert!((o.rhs - expected).abs() < 1e-12);
        assert!((o.rhs - 0.1221452).abs() < 1e-6);
        assert!(!o.holds);
    }

    #[test]
    fn pipeline_blames_scalar_stage() {
        let cfg = squares_config();
        let m = two_atoms([0.0, 0.9, 0.0, 1.0]);
        let x = AtomSet::full(2);
        let r = check_with_hypotheses(
            &cfg,
            &m,
            &unit(vec![0.5, 0.0]),
            &unit(vec![0.8, 0.0]),
            x,
            x,
            0.01,
            true,
        );
        let scalar = r
            .stages
            .iter()
            .find(|s| s.name == "scalar_condition")
            .unwrap();
        assert_eq!(scalar.status, StageStatus::Failed);
        assert!(!r.contradiction);
        assert!(r.verdict.is_violated());
    }

    #[test]
    fn affine_shape_leaves_inverse_domain() {
        let phi =
            ShapeFunction::parse("0.5 * (x + 1)", 0.0, 1.0, ShapeFlags::CONTINUOUS_INCREASING)
                .unwrap();
        let psi = ShapeFunction::inverse_of(&phi, None).unwrap();
        let m = two_atoms([0.0, 0.4, 0.0, 1.0]);
        let f = unit(vec![0.5, 0.5]);
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
        match &r.verdict {
            Verdict::HypothesisFailed { value: Some(v), .. } => assert!((v - 0.4).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(
            r.stages[..5]
                .iter()
                .all(|s| s.status == StageStatus::Passed),
            "{:?}",
            r.stages
        );
    }

    #[test]
    fn liapunov_identity_vs_square() {
        let m = two_atoms([0.0, 0.3, 0.6, 1.0]);
        let r = liapunov_check(
            &m,
            &unit(vec![0.7, 0.2]),
            AtomSet::full(2),
            [ShapeFunction::identity(1.0), ShapeFunction::power(2.0, 1.0)],
            [ShapeFunction::identity(1.0), ShapeFunction::identity(1.0)],
            0.01,
        );
        assert!(r.verdict.holds(), "{r:?}");
    }

    #[test]
    fn power_shapes_give_equality_on_constants() {
        let prod = FusionOp::prod();
        let mut cfg = InequalityConfig::uniform(
            prod.clone(),
            prod.clone(),
            FusionOp::min(),
            CdDomain::Interval,
        );
        let (p, q) = (3.0, 1.0 / 3.0);
        let phi = ShapeFunction::power(p, 1.0);
        let psi = ShapeFunction::power(q, 1.0);
        cfg.shapes = Shapes {
            phi: [phi.clone(), phi.clone(), phi],
            psi: [psi.clone(), psi.clone(), psi],
        };
        let m = two_atoms([0.0, 0.2, 0.5, 1.0]);
        let x = AtomSet::full(2);
        let o =
            check_integral_inequality(&cfg, &m, &unit(vec![0.6, 0.6]), &unit(vec![0.7, 0.7]), x, x)
                .unwrap();
        assert!((o.lhs - o.rhs).abs() < 1e-12, "{o:?}");
    }

    #[test]
    fn minitive_survival_values() {
        let seg = |lo: f64, hi: f64, lo_open: bool, e: &str| Segment {
            interval: if lo_open {
                Interval::left_open(lo, hi)
            } else {
                Interval::closed(lo, hi)
            },
            expr: parse(e).unwrap(),
        };
        let fg = SurvivalScenario::new(
            1.0,
            vec![
                seg(0.0, 0.25, false, "1 - t"),
                seg(0.25, 0.5, true, "1 - 2*t"),
                seg(0.5, 1.0, true, "0"),
            ],
        )
        .unwrap();
        let f2 = SurvivalScenario::new(
            1.0,
            vec![seg(0.0, 0.25, false, "1"), seg(0.25, 1.0, true, "0")],
        )
        .unwrap();
        let g2 = SurvivalScenario::new(1.0, vec![seg(0.0, 1.0, false, "1 - sqrt(t)")]).unwrap();
        let prod = FusionOp::prod();
        let mut cfg =
            InequalityConfig::uniform(prod.clone(), prod, FusionOp::min(), CdDomain::Interval);
        let rt = ShapeFunction::power(0.5, 1.0);
        let id = ShapeFunction::identity(1.0);
        let sq = ShapeFunction::power(2.0, 1.0);
        cfg.shapes = Shapes {
            phi: [id, sq.clone(), sq],
            psi: [rt.clone(), rt.clone(), rt],
        };
        let o = check_survival_inequality(&cfg, [&fg, &f2, &g2], 0.01).unwrap();
        assert!((o.integrals[0].get() - 1.0 / 3.0).abs() < 1e-8);
        assert!((o.integrals[1].get() - 0.25).abs() < 1e-8);
        assert!((o.integrals[2].get() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-8);
        assert!(o.holds);
    }

    #[test]
    fn probe_turns_lukasiewicz_witness_into_integral_violation() {
        let w = FusionOp::lukasiewicz();
        let prod = FusionOp::prod();
        let cfg = InequalityConfig::uniform(prod.clone(), prod, w, CdDomain::Interval);
        let v = check_one_variable_condition(&cfg, 0.01);
        let &[a, b, c] = v.witness().expect("violation") else {
            panic!()
        };
        let probe = indicator_probe(&cfg, a, b, c).unwrap();
        assert!(!probe.outcome.holds, "{probe:?}");
    }

    #[test]
    fn minitive_measures_pass_any_functions() {
        let min = FusionOp::min();
        let prod = FusionOp::prod();
        let mut cfg =
            InequalityConfig::uniform(prod.clone(), prod, min.clone(), CdDomain::Interval);
        cfg.triangle = min;
        let m = random::necessity(&mut random::rng(9), 4);
        let r = any_functions_check(&cfg, &m, 100, 1, 0.01, false);
        assert_eq!(r.failures, 0);
        assert!(r.verdict.holds(), "{r:?}");
        assert!(r.stages.iter().all(|s| s.status == StageStatus::Passed));
    }
}
