//! Executes scenarios against the library.

use serde::Serialize;
use serde_json::json;

use sugeno_core::chebyshev::{
    any_functions_check, check_integral_inequality, check_one_variable_condition, check_point,
    check_scalar_condition, check_survival_inequality, check_with_hypotheses,
    compare_condition_forms, indicator_probe, liapunov_check, q_condition,
    search_commutativity_gap, search_counterexample, sugeno_chebyshev, InequalityOutcome,
    PipelineReport, ShapeFunction,
};
use sugeno_core::dependence::{
    comonotone_report, is_m_positively_dependent, levels_realized, measure_supports_all_pairs,
    DependenceQuery,
};
use sugeno_core::fusion::{dominates, leq_min};
use sugeno_core::integral::{integrate_simple, integrate_survival, q_integral, IntegralResult};
use sugeno_core::measure::{MonotoneMeasure, MAX_PAIR_SCAN_ATOMS};
use sugeno_core::properties::{self, PropertyReport};
use sugeno_core::verdict::DEFAULT_TOLERANCE;
use sugeno_core::{Evidence, GridSpec, NonNegExt, Verdict};

use crate::report::{
    describe, join_evidence, method_evidence, point, to_value, verdict_evidence, Report, Status,
};
use crate::scenario::{
    Body, Builder, ConditionSpec, DependenceCheck, DependenceSpec, InequalitySpec, IntegralForm,
    IntegrateSpec, PropertySpec, Scenario, ScenarioError, SearchSpec, DEFAULT_BUDGET, DEFAULT_GRID,
    DEFAULT_SEED,
};

/// Command-line overrides of scenario settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub grid: Option<f64>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub tolerance: Option<f64>,
    pub allow_range_escape: bool,
}

/// Effective settings for one run.
struct Settings {
    grid: f64,
    seed: u64,
    budget: usize,
    tolerance: f64,
    allow_range_escape: bool,
}

pub fn run_scenario(s: &Scenario, o: &Overrides) -> Report {
    let settings = Settings {
        grid: o.grid.or(s.grid).unwrap_or(DEFAULT_GRID),
        seed: o.seed.or(s.seed).unwrap_or(DEFAULT_SEED),
        budget: o.budget.or(s.budget).unwrap_or(DEFAULT_BUDGET),
        tolerance: o.tolerance.or(s.tolerance).unwrap_or(DEFAULT_TOLERANCE),
        allow_range_escape: o.allow_range_escape,
    };
    let kind = s.body.kind();
    let base = Report::new(&s.name, kind, &s.description);
    let b = Builder {
        scenario: &s.name,
        grid: settings.grid,
    };
    let out = match &s.body {
        Body::Integrate(spec) => integrate(base, &b, spec, &settings),
        Body::Dependence(spec) => dependence(base, &b, spec, &settings),
        Body::Condition(spec) => condition(base, &b, spec, &settings),
        Body::Inequality(spec) => inequality(base, &b, spec, &settings),
        Body::Search(spec) => search(base, &b, spec, &settings),
        Body::PropertyRun(spec) => property_run(base, spec, &settings),
    };
    out.unwrap_or_else(|e| Report::error(&s.name, kind, &s.description, e.to_string()))
}

type Outcome = Result<Report, ScenarioError>;

fn verdict_report(mut r: Report, verdict: &Verdict) -> Report {
    if let Some(e) = verdict_evidence(verdict) {
        r.evidence = e;
    }
    r.summary = describe(verdict);
    r.with_status(Status::of(verdict))
}

#[derive(Serialize)]
struct Labeled<'a> {
    label: &'a str,
    #[serde(flatten)]
    result: &'a IntegralResult,
}

fn integrate(mut r: Report, b: &Builder, spec: &IntegrateSpec, st: &Settings) -> Outcome {
    let m = spec.measure.as_ref().map(|m| b.measure(m)).transpose()?;
    let mut results = Vec::with_capacity(spec.integrals.len());
    for (i, item) in spec.integrals.iter().enumerate() {
        let field = format!("integrals[{i}]");
        let op = b.op(&format!("{field}.op"), &item.op)?;
        let computed = match (&item.survival, &m, &item.f) {
            (Some(sv), _, _) => {
                if item.form == IntegralForm::Q {
                    return Err(b.err(&field, "q-integrals need a finite measure"));
                }
                let scenario = b.survival(&format!("{field}.survival"), sv)?;
                integrate_survival(&op, &scenario, st.grid)
            }
            (None, Some(m), Some(f)) => {
                let k = item.k.unwrap_or(op.bound());
                let f = b.function(&format!("{field}.f"), f, k)?;
                let d = b.set(&format!("{field}.domain"), m, &item.domain)?;
                match item.form {
                    IntegralForm::Upper => integrate_simple(&op, m, d, &f),
                    IntegralForm::Q => q_integral(&op, m, &f),
                }
            }
            _ => {
                return Err(b.err(
                    &field,
                    "needs either `survival` or a scenario `measure` with `f`",
                ))
            }
        };
        match computed {
            Ok(res) => results.push((item.label.as_str(), res)),
            Err(e) => {
                r.summary = format!("{}: {e}", item.label);
                r.evidence = "none".to_string();
                return Ok(r.with_status(Status::HypothesisFailed));
            }
        }
    }
    r.evidence = join_evidence(results.iter().map(|(_, res)| method_evidence(&res.method)));
    r.lines = results
        .iter()
        .map(|(label, res)| format!("{label} = {} ({})", res.value, method_evidence(&res.method)))
        .collect();
    r.summary = format!("{} integral(s) computed", results.len());
    let labeled: Vec<Labeled> = results
        .iter()
        .map(|(label, result)| Labeled { label, result })
        .collect();
    r.result = json!({ "integrals": to_value(&labeled) });
    Ok(r.with_status(Status::Success))
}

/// Structural predicates of a measure, when small enough to scan.
fn measure_facts(m: &MonotoneMeasure) -> serde_json::Value {
    if m.space().len() > MAX_PAIR_SCAN_ATOMS {
        return serde_json::Value::Null;
    }
    json!({
        "range": m.range(),
        "capacity": m.is_capacity(),
        "minitive": m.is_minitive().ok(),
        "subadditive": m.is_subadditive().ok(),
        "supermodular": m.is_supermodular().ok(),
    })
}

fn dependence(mut r: Report, b: &Builder, spec: &DependenceSpec, st: &Settings) -> Outcome {
    let m = b.measure(&spec.measure)?;
    let triangle = b.op("triangle", &spec.triangle)?;
    let allow = spec.allow_range_escape || st.allow_range_escape;
    let needs_functions = matches!(
        spec.check,
        DependenceCheck::Functions | DependenceCheck::Comonotone
    );
    let functions = if needs_functions {
        let (Some(f), Some(g)) = (&spec.f, &spec.g) else {
            return Err(b.err("f, g", "this check needs both functions"));
        };
        Some((b.function("f", f, spec.k)?, b.function("g", g, spec.k)?))
    } else {
        None
    };
    let a = b.set("a", &m, &spec.a)?;
    let bset = b.set("b", &m, &spec.b)?;
    let outcome = match (spec.check, &functions) {
        (DependenceCheck::Functions, Some((f, g))) => is_m_positively_dependent(&DependenceQuery {
            m: &m,
            f,
            g,
            a,
            b: bset,
            triangle: &triangle,
            k: spec.k.get(),
            allow_range_escape: allow,
        }),
        (DependenceCheck::Comonotone, Some((f, g))) => Ok(comonotone_report(&m, f, g, a)),
        (DependenceCheck::AllPairs, _) => measure_supports_all_pairs(&m, &triangle, allow),
        (DependenceCheck::Realized, _) => levels_realized(&m, &triangle, allow),
        _ => unreachable!("functions were built for function checks"),
    };
    let report = match outcome {
        Ok(rep) => rep,
        Err(e) => {
            r.summary = e.to_string();
            r.evidence = "none".to_string();
            r.result = json!({ "measure": measure_facts(&m) });
            return Ok(r.with_status(Status::HypothesisFailed));
        }
    };
    r.summary = match &report.witness {
        None => format!("{:?} check holds for ▵ = {}", spec.check, triangle.name()),
        Some(w) => format!("{:?} check fails: {}", spec.check, to_value(w)),
    };
    r.lines = report
        .warnings
        .iter()
        .map(|w| format!("warning: {w}"))
        .collect();
    r.result = json!({
        "check": format!("{:?}", spec.check),
        "triangle": triangle.name(),
        "report": to_value(&report),
        "measure": measure_facts(&m),
    });
    let status = if report.holds {
        Status::Holds
    } else {
        Status::Violated
    };
    Ok(r.with_status(status))
}

fn condition(r: Report, b: &Builder, spec: &ConditionSpec, st: &Settings) -> Outcome {
    let grid = GridSpec::with_step(st.grid);
    let measure = |m: &Option<_>| m.as_ref().map(|m| b.measure(m)).transpose();
    match spec {
        ConditionSpec::Scalar {
            config,
            measure: m,
            points,
        } => {
            let m = measure(m)?;
            let cfg = b.config(config, m.as_ref(), st.tolerance)?;
            let verdict = check_scalar_condition(&cfg, st.grid);
            let checked: Vec<(Vec<f64>, Verdict)> = points
                .iter()
                .map(|p| (p.to_vec(), check_point(&cfg, p[0], p[1], p[2], p[3])))
                .collect();
            let mut r = verdict_report(r, &verdict);
            if r.status == Status::Holds && checked.iter().any(|(_, v)| v.is_violated()) {
                r = r.with_status(Status::Violated);
            }
            if !checked.is_empty() {
                r.evidence = join_evidence([r.evidence.clone(), "exact".to_string()]);
            }
            r.lines = checked
                .iter()
                .map(|(p, v)| format!("at {}: {}", point(p), describe(v)))
                .collect();
            if let sugeno_core::chebyshev::CdDomain::Finite { values } = &cfg.cd {
                r.lines
                    .insert(0, format!("c, d enumerated over {}", point(values)));
            }
            let pts: Vec<_> = checked
                .iter()
                .map(|(p, v)| json!({ "point": p, "verdict": to_value(v) }))
                .collect();
            r.result =
                json!({ "cd": to_value(&cfg.cd), "verdict": to_value(&verdict), "points": pts });
            Ok(r)
        }
        ConditionSpec::OneVariable {
            config,
            measure: m,
            probe,
        } => {
            let m = measure(m)?;
            let cfg = b.config(config, m.as_ref(), st.tolerance)?;
            let verdict = check_one_variable_condition(&cfg, st.grid);
            let mut r = verdict_report(r, &verdict);
            let mut probe_out = serde_json::Value::Null;
            if let (true, Some(w)) = (*probe, verdict.witness()) {
                match indicator_probe(&cfg, w[0], w[1], w[2]) {
                    Ok(p) => {
                        r.lines.push(format!(
                            "indicator pair: m = {}, f = {}, g = {}: lhs = {}, rhs = {}",
                            point(&p.measure),
                            point(&p.f),
                            point(&p.g),
                            p.outcome.lhs,
                            p.outcome.rhs
                        ));
                        probe_out = to_value(&p);
                    }
                    Err(e) => r.lines.push(format!("probe failed: {e}")),
                }
            }
            r.result = json!({ "verdict": to_value(&verdict), "probe": probe_out });
            Ok(r)
        }
        ConditionSpec::Equivalence { config, measure: m } => {
            let m = measure(m)?;
            let cfg = b.config(config, m.as_ref(), st.tolerance)?;
            let rep = compare_condition_forms(&cfg, st.grid);
            let mut r = r;
            r.evidence = join_evidence(
                [
                    verdict_evidence(&rep.four_variable),
                    verdict_evidence(&rep.one_variable),
                ]
                .into_iter()
                .flatten(),
            );
            r.summary = format!(
                "four-variable form {}, one-variable form {}",
                rep.four_variable.label(),
                rep.one_variable.label()
            );
            r.lines = vec![
                format!("four-variable: {}", describe(&rep.four_variable)),
                format!("one-variable: {}", describe(&rep.one_variable)),
            ];
            r.lines.extend(rep.notes.iter().cloned());
            r.result = to_value(&rep);
            let status = if rep.agree {
                Status::Holds
            } else {
                Status::Violated
            };
            Ok(r.with_status(status))
        }
        ConditionSpec::Q {
            conj,
            phi,
            star,
            pins,
        } => {
            let conj = b.op("conj", conj)?;
            let star = b.op("star", star)?;
            let phi = b.shapes("phi", phi.as_ref(), 3, 1.0, None)?;
            let phi: [ShapeFunction; 3] = [phi[0].clone(), phi[1].clone(), phi[2].clone()];
            let verdict = q_condition(&conj, &phi, &star, st.grid, *pins);
            let mut r = verdict_report(r, &verdict);
            r.result = json!({ "conj": conj.name(), "pins": pins, "verdict": to_value(&verdict) });
            Ok(r)
        }
        ConditionSpec::Commutativity { op, star } => {
            let s = b.op("op", op)?;
            let star = b.op("star", star)?;
            let mut r = r;
            r.evidence = Evidence::Grid {
                step: st.grid,
                points: 0,
                capped: false,
            }
            .to_string();
            match search_commutativity_gap(&s, &star, st.grid) {
                Ok(Some(gap)) => {
                    r.summary = format!(
                        "argument orders disagree at {}: {} vs {}",
                        point(&[gap.a, gap.b, gap.c]),
                        point(&[gap.first_order.0, gap.first_order.1]),
                        point(&[gap.second_order.0, gap.second_order.1]),
                    );
                    r.result = json!({ "gap": to_value(&gap) });
                    Ok(r.with_status(Status::Violated))
                }
                Ok(None) => {
                    r.summary = "both argument orders give the same verdict on the grid".into();
                    r.result = json!({ "gap": null });
                    Ok(r.with_status(Status::Holds))
                }
                Err(e) => Ok(verdict_report(r, &e.into_verdict())),
            }
        }
        ConditionSpec::Dominance { outer, inner } => {
            let outer = b.op("outer", outer)?;
            let inner = b.op("inner", inner)?;
            let verdict = dominates(&outer, &inner, &grid).map_err(|e| b.err("dominance", e))?;
            let mut r = verdict_report(r, &verdict);
            r.result = json!({ "outer": outer.name(), "inner": inner.name(), "verdict": to_value(&verdict) });
            Ok(r)
        }
        ConditionSpec::LeqMin { op } => {
            let op = b.op("op", op)?;
            let verdict = leq_min(&op, &grid).map_err(|e| b.err("op", e))?;
            let mut r = verdict_report(r, &verdict);
            r.result = json!({ "op": op.name(), "verdict": to_value(&verdict) });
            Ok(r)
        }
    }
}

fn outcome_lines(o: &InequalityOutcome) -> Vec<String> {
    let mut lines: Vec<String> = ["φ₁(f∗g)", "φ₂(f)", "φ₃(g)"]
        .iter()
        .zip(&o.integrals)
        .map(|(name, res)| {
            format!(
                "I({name}) = {} ({})",
                res.value,
                method_evidence(&res.method)
            )
        })
        .collect();
    lines.push(format!("lhs = {}, rhs = {}", o.lhs, o.rhs));
    lines
}

fn outcome_report(mut r: Report, o: &InequalityOutcome) -> Report {
    r.evidence = join_evidence(o.integrals.iter().map(|i| method_evidence(&i.method)));
    r.summary = if o.holds {
        format!("inequality holds: lhs = {} ≥ rhs = {}", o.lhs, o.rhs)
    } else {
        format!("inequality violated: lhs = {} < rhs = {}", o.lhs, o.rhs)
    };
    r.lines = outcome_lines(o);
    r.result = to_value(o);
    let status = if o.holds {
        Status::Holds
    } else {
        Status::Violated
    };
    r.with_status(status)
}

fn pipeline_report(r: Report, p: &PipelineReport) -> Report {
    let mut r = verdict_report(r, &p.verdict);
    let stage_evidence = p
        .stages
        .iter()
        .filter_map(|s| s.verdict.as_ref().and_then(verdict_evidence));
    let integral_evidence = p
        .outcome
        .iter()
        .flat_map(|o| o.integrals.iter().map(|i| method_evidence(&i.method)));
    r.evidence = join_evidence(stage_evidence.chain(integral_evidence));
    if let Verdict::Violated { .. } | Verdict::HoldsOnGrid { .. } = &p.verdict {
        if let Some(o) = &p.outcome {
            r.summary = format!(
                "inequality {}: lhs = {}, rhs = {}",
                p.verdict.label(),
                o.lhs,
                o.rhs
            );
        }
    }
    for s in &p.stages {
        let mut line = format!(
            "stage {}: {}",
            s.name,
            format!("{:?}", s.status).to_lowercase()
        );
        if let Some(d) = &s.detail {
            line.push_str(&format!(" ({d})"));
        }
        r.lines.push(line);
    }
    if p.contradiction {
        r.lines
            .push("every hypothesis passed but the inequality failed".to_string());
    }
    r.result = to_value(p);
    r
}

fn inequality(r: Report, b: &Builder, spec: &InequalitySpec, st: &Settings) -> Outcome {
    let nn = |field: &str, v: f64| NonNegExt::new(v).map_err(|e| b.err(field, e));
    match spec {
        InequalitySpec::Direct {
            config,
            measure,
            f,
            g,
            a,
            b: bs,
        } => {
            let m = b.measure(measure)?;
            let cfg = b.config(config, Some(&m), st.tolerance)?;
            let k = nn("config.k", cfg.k)?;
            let (f, g) = (b.function("f", f, k)?, b.function("g", g, k)?);
            let (a, bset) = (b.set("a", &m, a)?, b.set("b", &m, bs)?);
            match check_integral_inequality(&cfg, &m, &f, &g, a, bset) {
                Ok(o) => Ok(outcome_report(r, &o)),
                Err(e) => Ok(verdict_report(r, &e.into_verdict())),
            }
        }
        InequalitySpec::Survival { config, survival } => {
            let cfg = b.config(config, None, st.tolerance)?;
            let fg = b.survival("survival.fg", &survival.fg)?;
            let f = b.survival("survival.f", &survival.f)?;
            let g = b.survival("survival.g", &survival.g)?;
            match check_survival_inequality(&cfg, [&fg, &f, &g], st.grid) {
                Ok(o) => Ok(outcome_report(r, &o)),
                Err(e) => Ok(verdict_report(r, &e.into_verdict())),
            }
        }
        InequalitySpec::Dependent {
            config,
            measure,
            f,
            g,
            a,
            b: bs,
            allow_range_escape,
        } => {
            let m = b.measure(measure)?;
            let cfg = b.config(config, Some(&m), st.tolerance)?;
            let k = nn("config.k", cfg.k)?;
            let (f, g) = (b.function("f", f, k)?, b.function("g", g, k)?);
            let (a, bset) = (b.set("a", &m, a)?, b.set("b", &m, bs)?);
            let allow = *allow_range_escape || st.allow_range_escape;
            let p = check_with_hypotheses(&cfg, &m, &f, &g, a, bset, st.grid, allow);
            Ok(pipeline_report(r, &p))
        }
        InequalitySpec::Comonotone {
            measure,
            f,
            g,
            a,
            phi,
            psi,
            star,
        } => {
            let m = b.measure(measure)?;
            let (f, g) = (
                b.function("f", f, NonNegExt::ONE)?,
                b.function("g", g, NonNegExt::ONE)?,
            );
            let a = b.set("a", &m, a)?;
            let phi = b.shapes("phi", Some(phi), 3, 1.0, None)?;
            let psi = b.shapes("psi", Some(psi), 3, 1.0, Some(&phi))?;
            let star = b.op("star", star)?;
            let p = sugeno_chebyshev(
                &m,
                &f,
                &g,
                a,
                [phi[0].clone(), phi[1].clone(), phi[2].clone()],
                [psi[0].clone(), psi[1].clone(), psi[2].clone()],
                &star,
                st.grid,
            );
            Ok(pipeline_report(r, &p))
        }
        InequalitySpec::Liapunov {
            measure,
            f,
            a,
            phi,
            psi,
        } => {
            let m = b.measure(measure)?;
            let f = b.function("f", f, NonNegExt::ONE)?;
            let a = b.set("a", &m, a)?;
            let phi = b.shapes("phi", Some(phi), 2, 1.0, None)?;
            let psi = b.shapes("psi", Some(psi), 2, 1.0, Some(&phi))?;
            let p = liapunov_check(
                &m,
                &f,
                a,
                [phi[0].clone(), phi[1].clone()],
                [psi[0].clone(), psi[1].clone()],
                st.grid,
            );
            Ok(pipeline_report(r, &p))
        }
        InequalitySpec::AnyFunctions {
            config,
            measure,
            trials,
            allow_range_escape,
        } => {
            let m = b.measure(measure)?;
            let cfg = b.config(config, Some(&m), st.tolerance)?;
            let allow = *allow_range_escape || st.allow_range_escape;
            let rep = any_functions_check(&cfg, &m, *trials, st.seed, st.grid, allow);
            let mut r = verdict_report(r, &rep.verdict);
            r.evidence = join_evidence(
                rep.stages
                    .iter()
                    .filter_map(|s| s.verdict.as_ref().and_then(verdict_evidence))
                    .chain([Evidence::RandomTrials {
                        trials: rep.trials,
                        seed: rep.seed,
                    }
                    .to_string()]),
            );
            r.summary = format!(
                "{} of {} random pairs violate the inequality",
                rep.failures, rep.trials
            );
            for s in &rep.stages {
                r.lines.push(format!(
                    "stage {}: {}",
                    s.name,
                    format!("{:?}", s.status).to_lowercase()
                ));
            }
            r.result = to_value(&rep);
            Ok(r)
        }
    }
}

fn search(mut r: Report, b: &Builder, spec: &SearchSpec, st: &Settings) -> Outcome {
    let m = spec.measure.as_ref().map(|m| b.measure(m)).transpose()?;
    let cfg = b.config(&spec.config, m.as_ref(), st.tolerance)?;
    let out = search_counterexample(&cfg, st.grid, st.budget);
    r.lines = out
        .levels
        .iter()
        .map(|(step, n)| format!("level step {step}: {n} points"))
        .collect();
    r.result = to_value(&out);
    let r = match &out.found {
        Some(v) => {
            let mut r = verdict_report(r, v);
            r.result = to_value(&out);
            r
        }
        None if out.budget_exhausted => {
            r.summary = format!(
                "no witness before the budget of {} points ran out",
                out.budget
            );
            r.evidence = match out.levels.last() {
                Some((step, _)) => format!("grid({step})"),
                None => "none".to_string(),
            };
            r.with_status(Status::Inconclusive)
        }
        None => {
            r.summary = "no witness at any level".to_string();
            r.evidence = format!("grid({})", st.grid);
            r.with_status(Status::Holds)
        }
    };
    Ok(r)
}

/// Property runs by name, at their default sizes.
pub const PROPERTY_NAMES: [&str; 9] = [
    "integral_matches_oracle",
    "scalar_forms_agree",
    "comonotone_sugeno_inequality",
    "minitive_any_functions",
    "minitive_measure_dependence",
    "supermodular_lukasiewicz_dependence",
    "godel_small_measure_dependence",
    "comonotone_min_dependence",
    "min_dominates_lukasiewicz",
];

fn property(name: &str, seed: u64) -> Option<PropertyReport> {
    Some(match name {
        "integral_matches_oracle" => properties::oracle_agreement(1000, seed),
        "scalar_forms_agree" => properties::forms_agree(200, seed),
        "comonotone_sugeno_inequality" => properties::comonotone_sugeno(1000, seed),
        "minitive_any_functions" => properties::minitive_any_functions(500, 4, seed),
        "minitive_measure_dependence" => properties::minitive_dependence(300, seed),
        "supermodular_lukasiewicz_dependence" => properties::supermodular_dependence(300, seed),
        "godel_small_measure_dependence" => properties::godel_dependence(300, seed),
        "comonotone_min_dependence" => properties::comonotone_dependence(300, seed),
        "min_dominates_lukasiewicz" => properties::min_dominates_lukasiewicz(0.01),
        _ => return None,
    })
}

fn property_run(mut r: Report, spec: &PropertySpec, st: &Settings) -> Outcome {
    let reports: Vec<PropertyReport> = if spec.properties.is_empty() {
        properties::run_suite(st.seed)
    } else {
        let mut out = Vec::new();
        for name in &spec.properties {
            out.push(
                property(name, st.seed).ok_or_else(|| ScenarioError::Invalid {
                    scenario: r.scenario.clone(),
                    field: "properties".to_string(),
                    message: format!(
                        "unknown property `{name}` (known: {})",
                        PROPERTY_NAMES.join(", ")
                    ),
                })?,
            );
        }
        out
    };
    let failed = reports.iter().filter(|p| !p.passed()).count();
    r.evidence = join_evidence(reports.iter().map(|p| {
        if p.name == "min_dominates_lukasiewicz" {
            format!("grid({})", 0.01)
        } else {
            Evidence::RandomTrials {
                trials: p.trials,
                seed: p.seed,
            }
            .to_string()
        }
    }));
    r.summary = format!(
        "{} of {} properties passed",
        reports.len() - failed,
        reports.len()
    );
    r.lines = reports
        .iter()
        .map(|p| {
            let mut line = format!("{}: {} failures in {} trials", p.name, p.failures, p.trials);
            if let Some(f) = &p.first_failure {
                line.push_str(&format!(" (first: {f})"));
            }
            line
        })
        .collect();
    r.result = json!({ "properties": to_value(&reports) });
    let status = if failed == 0 {
        Status::Holds
    } else {
        Status::Violated
    };
    Ok(r.with_status(status))
}
