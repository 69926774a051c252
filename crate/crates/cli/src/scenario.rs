//! Scenario files.
//!
//! A file is a JSON object with a `scenarios` array. Every scenario has a
//! `name`, an optional `description`, a `kind` and kind-specific fields.
//! Expressions are strings in the exprlang grammar; numeric bounds accept the
//! string `"inf"`. See `docs/scenarios.md` for an annotated example per kind.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Deserialize;
use thiserror::Error;

use sugeno_core::chebyshev::{CdDomain, InequalityConfig, ShapeFlags, ShapeFunction, Shapes};
use sugeno_core::exprlang::{parse, parse_with_vars, Interval};
use sugeno_core::fusion::{validate_flags, FlagStatus};
use sugeno_core::integral::SimpleFunction;
use sugeno_core::measure::{AtomSet, FiniteSpace, MonotoneMeasure, Segment, SurvivalScenario};
use sugeno_core::{Builtin, Flags, FusionOp, GridSpec, NonNegExt};

pub const DEFAULT_GRID: f64 = 0.01;
pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_BUDGET: usize = 50_000_000;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("scenario `{scenario}`: {field}: {message}")]
    Invalid {
        scenario: String,
        field: String,
        message: String,
    },
    #[error("duplicate scenario name `{0}`")]
    Duplicate(String),
    #[error("unknown scenario `{0}`")]
    Unknown(String),
    #[error("{origin}: {message}")]
    Io { origin: String, message: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenarios: Vec<Scenario>,
}

impl ScenarioFile {
    /// Parses a file; `origin` names it in error messages.
    pub fn parse(origin: &str, text: &str) -> Result<ScenarioFile, ScenarioError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax {
            origin: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        for (i, s) in file.scenarios.iter().enumerate() {
            if file.scenarios[..i].iter().any(|t| t.name == s.name) {
                return Err(ScenarioError::Duplicate(s.name.clone()));
            }
        }
        Ok(file)
    }
}

/// serde_json appends " at line L column C"; the location is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Grid step for sampled checks.
    #[serde(default)]
    pub grid: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Point budget for counterexample searches.
    #[serde(default)]
    pub budget: Option<usize>,
    /// Comparison slack for `lhs ≥ rhs`.
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Integrate(IntegrateSpec),
    Dependence(DependenceSpec),
    Condition(ConditionSpec),
    Inequality(InequalitySpec),
    Search(SearchSpec),
    PropertyRun(PropertySpec),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Integrate(_) => "integrate",
            Body::Dependence(_) => "dependence",
            Body::Condition(_) => "condition",
            Body::Inequality(_) => "inequality",
            Body::Search(_) => "search",
            Body::PropertyRun(_) => "property-run",
        }
    }
}

// ---- building blocks ----

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MeasureSpec {
    /// Values keyed by comma-separated atom labels; `""` is the empty set and
    /// may be omitted.
    Table {
        atoms: Vec<String>,
        values: BTreeMap<String, NonNegExt>,
    },
    Additive {
        atoms: Vec<String>,
        weights: Vec<f64>,
    },
    Necessity {
        atoms: Vec<String>,
        possibility: Vec<f64>,
    },
    Possibility {
        atoms: Vec<String>,
        possibility: Vec<f64>,
    },
    /// `m(B) = h(P(B))` with `h` an expression in one variable.
    Distorted {
        atoms: Vec<String>,
        probability: Vec<f64>,
        distortion: String,
    },
}

/// Function values per atom, or an expression evaluated at one point per atom.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Values(Vec<f64>),
    Expr { expr: String, at: Vec<f64> },
}

/// A builtin name, or an object naming a bounded builtin or a custom body in
/// the variables `a` and `b`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OpSpec {
    Name(String),
    Object(OpObject),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpObject {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub body: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub bound: Option<NonNegExt>,
    #[serde(default)]
    pub flags: Option<Flags>,
}

/// One operation for all three slots, or one per slot.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OpList {
    Many(Vec<OpSpec>),
    One(OpSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ShapeSpec {
    Expr(String),
    Object(ShapeObject),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeObject {
    pub expr: String,
    #[serde(default)]
    pub domain: Option<[NonNegExt; 2]>,
    #[serde(default)]
    pub flags: Option<ShapeFlags>,
}

/// One shape for every slot, or one per slot. For `psi`, the string
/// `"inverse"` means the inverse of the matching `phi`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ShapeList {
    Many(Vec<ShapeSpec>),
    One(ShapeSpec),
}

/// Where `c, d` range: `"interval"` for `[0, ȳ]`, `"measure"` for the range
/// of the scenario's measure, or an explicit list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CdSpec {
    Keyword(String),
    Values(Vec<f64>),
}

impl Default for CdSpec {
    fn default() -> Self {
        CdSpec::Keyword("interval".to_string())
    }
}

fn one() -> NonNegExt {
    NonNegExt::ONE
}

fn min_op() -> OpSpec {
    OpSpec::Name("min".to_string())
}

fn prod_op() -> OpSpec {
    OpSpec::Name("prod".to_string())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    /// `∗`, combining `f` and `g`.
    pub inner: OpSpec,
    /// `⋆`; defaults to `inner`.
    #[serde(default)]
    pub outer: Option<OpSpec>,
    /// `∘₁, ∘₂, ∘₃`.
    pub circ: OpList,
    /// `▵`.
    #[serde(default = "min_op")]
    pub triangle: OpSpec,
    #[serde(default)]
    pub phi: Option<ShapeList>,
    #[serde(default)]
    pub psi: Option<ShapeList>,
    #[serde(default = "one")]
    pub k: NonNegExt,
    #[serde(default = "one")]
    pub ybar: NonNegExt,
    #[serde(default)]
    pub cd: CdSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    /// Interval of `t`, written like `"[0, 0.25]"` or `"(0.25, 1]"`.
    pub interval: String,
    /// `G(t)` as an expression in `t`.
    pub expr: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurvivalSpec {
    #[serde(default = "one")]
    pub bound: NonNegExt,
    pub segments: Vec<SegmentSpec>,
}

// ---- kinds ----

#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralForm {
    /// `sup_t t ∘ m(D ∩ {f ≥ t})`.
    #[default]
    Upper,
    /// `sup_t m({f ≥ t}) ⊗ t`.
    Q,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralItem {
    pub label: String,
    pub op: OpSpec,
    #[serde(default)]
    pub form: IntegralForm,
    #[serde(default)]
    pub f: Option<FunctionSpec>,
    /// Bound on the values of `f`; defaults to the bound of `op`.
    #[serde(default)]
    pub k: Option<NonNegExt>,
    #[serde(default)]
    pub domain: Option<Vec<String>>,
    #[serde(default)]
    pub survival: Option<SurvivalSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateSpec {
    #[serde(default)]
    pub measure: Option<MeasureSpec>,
    pub integrals: Vec<IntegralItem>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum DependenceCheck {
    /// m-positive dependence of `f|_A` and `g|_B`.
    #[default]
    Functions,
    /// `m(C∩D) ≥ m(C) ▵ m(D)` for every pair of sets.
    AllPairs,
    /// Every pair of measure values is realized with `m(C∩D) = c ▵ d`.
    Realized,
    Comonotone,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DependenceSpec {
    pub measure: MeasureSpec,
    #[serde(default)]
    pub check: DependenceCheck,
    #[serde(default)]
    pub f: Option<FunctionSpec>,
    #[serde(default)]
    pub g: Option<FunctionSpec>,
    #[serde(default)]
    pub a: Option<Vec<String>>,
    #[serde(default)]
    pub b: Option<Vec<String>>,
    #[serde(default = "min_op")]
    pub triangle: OpSpec,
    #[serde(default = "one")]
    pub k: NonNegExt,
    #[serde(default)]
    pub allow_range_escape: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ConditionSpec {
    /// The four-variable condition, plus optional single points.
    Scalar {
        config: ConfigSpec,
        #[serde(default)]
        measure: Option<MeasureSpec>,
        #[serde(default)]
        points: Vec<[f64; 4]>,
    },
    /// The one-variable form; `probe` turns a witness into an integral pair.
    OneVariable {
        config: ConfigSpec,
        #[serde(default)]
        measure: Option<MeasureSpec>,
        #[serde(default)]
        probe: bool,
    },
    /// Whether the two forms give the same verdict.
    Equivalence {
        config: ConfigSpec,
        #[serde(default)]
        measure: Option<MeasureSpec>,
    },
    /// Condition for q-integrals with a fuzzy conjunction and `ψᵢ = φᵢ⁻¹`.
    Q {
        conj: OpSpec,
        #[serde(default)]
        phi: Option<ShapeList>,
        #[serde(default = "prod_op")]
        star: OpSpec,
        #[serde(default)]
        pins: [Option<f64>; 3],
    },
    /// Points where the two argument orders of `op` disagree.
    Commutativity {
        op: OpSpec,
        #[serde(default = "prod_op")]
        star: OpSpec,
    },
    /// `outer(inner(a,b), inner(c,d)) ≥ inner(outer(a,c), outer(b,d))`.
    Dominance { outer: OpSpec, inner: OpSpec },
    /// `op ≤ min`.
    LeqMin { op: OpSpec },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurvivalTriple {
    /// Level function of `φ₁(f ∗ g)`.
    pub fg: SurvivalSpec,
    /// Level function of `φ₂(f)`.
    pub f: SurvivalSpec,
    /// Level function of `φ₃(g)`.
    pub g: SurvivalSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InequalitySpec {
    /// Evaluates both sides for given `f, g`.
    Direct {
        config: ConfigSpec,
        measure: MeasureSpec,
        f: FunctionSpec,
        g: FunctionSpec,
        #[serde(default)]
        a: Option<Vec<String>>,
        #[serde(default)]
        b: Option<Vec<String>>,
    },
    /// Both sides from closed-form level functions.
    Survival {
        config: ConfigSpec,
        survival: SurvivalTriple,
    },
    /// Hypotheses (dependence, scalar condition over the measure range), then
    /// the inequality.
    Dependent {
        config: ConfigSpec,
        measure: MeasureSpec,
        f: FunctionSpec,
        g: FunctionSpec,
        #[serde(default)]
        a: Option<Vec<String>>,
        #[serde(default)]
        b: Option<Vec<String>>,
        #[serde(default)]
        allow_range_escape: bool,
    },
    /// Sugeno integrals of comonotone functions with `∗ ≤ min`.
    Comonotone {
        measure: MeasureSpec,
        f: FunctionSpec,
        g: FunctionSpec,
        #[serde(default)]
        a: Option<Vec<String>>,
        phi: ShapeList,
        psi: ShapeList,
        #[serde(default = "prod_op")]
        star: OpSpec,
    },
    /// `ψ₁(I(φ₁(f))) ≥ ψ₂(I(φ₂(f)))`.
    Liapunov {
        measure: MeasureSpec,
        f: FunctionSpec,
        #[serde(default)]
        a: Option<Vec<String>>,
        phi: ShapeList,
        psi: ShapeList,
    },
    /// Set-pair condition on the measure and random function pairs.
    AnyFunctions {
        config: ConfigSpec,
        measure: MeasureSpec,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        allow_range_escape: bool,
    },
}

fn default_trials() -> usize {
    200
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub config: ConfigSpec,
    #[serde(default)]
    pub measure: Option<MeasureSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertySpec {
    /// Property names; empty runs the whole suite.
    #[serde(default)]
    pub properties: Vec<String>,
}

// ---- conversion to library types ----

/// Builds library values for one scenario, tagging errors with the field.
pub struct Builder<'a> {
    pub scenario: &'a str,
    pub grid: f64,
}

impl Builder<'_> {
    pub fn err(&self, field: &str, message: impl Display) -> ScenarioError {
        ScenarioError::Invalid {
            scenario: self.scenario.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    pub fn measure(&self, spec: &MeasureSpec) -> Result<MonotoneMeasure, ScenarioError> {
        let e = |m| self.err("measure", m);
        let space = |atoms: &[String]| FiniteSpace::new(atoms.iter().cloned()).map_err(e);
        match spec {
            MeasureSpec::Table { atoms, values } => {
                let space = space(atoms)?;
                let mut entries = vec![(AtomSet::EMPTY, 0.0)];
                for (key, v) in values {
                    let labels: Vec<&str> = key
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .collect();
                    let set = space.set_of(&labels).map_err(e)?;
                    entries.push((set, v.get()));
                }
                MonotoneMeasure::from_entries(space, entries).map_err(e)
            }
            MeasureSpec::Additive { atoms, weights } => {
                MonotoneMeasure::additive(space(atoms)?, weights).map_err(e)
            }
            MeasureSpec::Necessity { atoms, possibility } => {
                MonotoneMeasure::necessity_from_possibility(space(atoms)?, possibility).map_err(e)
            }
            MeasureSpec::Possibility { atoms, possibility } => {
                MonotoneMeasure::possibility(space(atoms)?, possibility).map_err(e)
            }
            MeasureSpec::Distorted {
                atoms,
                probability,
                distortion,
            } => {
                let h = parse(distortion).map_err(|p| self.err("measure.distortion", p))?;
                MonotoneMeasure::distorted_probability(space(atoms)?, probability, &h).map_err(e)
            }
        }
    }

    pub fn function(
        &self,
        field: &str,
        spec: &FunctionSpec,
        k: NonNegExt,
    ) -> Result<SimpleFunction, ScenarioError> {
        let values = match spec {
            FunctionSpec::Values(v) => v.clone(),
            FunctionSpec::Expr { expr, at } => {
                let parsed = parse(expr).map_err(|p| self.err(field, p))?;
                let vars = parsed.variables();
                if vars.len() > 1 {
                    return Err(self.err(field, "expression uses more than one variable"));
                }
                let var = vars.first().map_or("x", String::as_str);
                at.iter()
                    .map(|&x| parsed.eval_f64(&[(var, x)]))
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|ev| self.err(field, ev))?
            }
        };
        SimpleFunction::new(values, k).map_err(|ie| self.err(field, ie))
    }

    pub fn set(
        &self,
        field: &str,
        m: &MonotoneMeasure,
        labels: &Option<Vec<String>>,
    ) -> Result<AtomSet, ScenarioError> {
        match labels {
            None => Ok(m.space().universe()),
            Some(l) => m.space().set_of(l).map_err(|e| self.err(field, e)),
        }
    }

    pub fn op(&self, field: &str, spec: &OpSpec) -> Result<FusionOp, ScenarioError> {
        let builtin = |name: &str| {
            Builtin::from_name(name).ok_or_else(|| {
                self.err(
                    field,
                    format!(
                        "unknown operation `{name}` (expected min, prod, lukasiewicz, godel or godel_contra)"
                    ),
                )
            })
        };
        match spec {
            OpSpec::Name(name) => Ok(FusionOp::builtin(builtin(name)?)),
            OpSpec::Object(o) => match (&o.builtin, &o.body) {
                (Some(name), None) => {
                    if o.flags.is_some() {
                        return Err(self.err(field, "builtins carry their own flags"));
                    }
                    FusionOp::builtin_with_bound(builtin(name)?, o.bound.unwrap_or(NonNegExt::ONE))
                        .map_err(|e| self.err(field, e))
                }
                (None, Some(body)) => {
                    let expr =
                        parse_with_vars(body, &["a", "b"]).map_err(|e| self.err(field, e))?;
                    let op = FusionOp::custom(
                        o.name.clone().unwrap_or_else(|| body.clone()),
                        expr,
                        o.bound.unwrap_or(NonNegExt::ONE),
                        o.flags.unwrap_or_default(),
                    );
                    self.check_flags(field, &op)?;
                    Ok(op)
                }
                _ => Err(self.err(field, "give exactly one of `builtin` and `body`")),
            },
        }
    }

    /// Declared flags of custom operations are spot-checked on the grid.
    fn check_flags(&self, field: &str, op: &FusionOp) -> Result<(), ScenarioError> {
        let report =
            validate_flags(op, &GridSpec::with_step(self.grid)).map_err(|e| self.err(field, e))?;
        for check in &report.checks {
            if let FlagStatus::Violated { detail, .. } = &check.status {
                return Err(self.err(
                    field,
                    format!("declared flag {:?} fails: {detail}", check.flag),
                ));
            }
        }
        Ok(())
    }

    fn ops3(&self, field: &str, list: &OpList) -> Result<[FusionOp; 3], ScenarioError> {
        match list {
            OpList::One(s) => {
                let op = self.op(field, s)?;
                Ok([op.clone(), op.clone(), op])
            }
            OpList::Many(v) if v.len() == 3 => Ok([
                self.op(&format!("{field}[0]"), &v[0])?,
                self.op(&format!("{field}[1]"), &v[1])?,
                self.op(&format!("{field}[2]"), &v[2])?,
            ]),
            OpList::Many(v) => {
                Err(self.err(field, format!("expected 3 operations, got {}", v.len())))
            }
        }
    }

    pub fn shape(
        &self,
        field: &str,
        spec: &ShapeSpec,
        default_domain: (f64, f64),
    ) -> Result<ShapeFunction, ScenarioError> {
        let (src, domain, flags) = match spec {
            ShapeSpec::Expr(s) => (
                s.as_str(),
                default_domain,
                ShapeFlags::CONTINUOUS_INCREASING,
            ),
            ShapeSpec::Object(o) => (
                o.expr.as_str(),
                o.domain
                    .map_or(default_domain, |[lo, hi]| (lo.get(), hi.get())),
                o.flags.unwrap_or(ShapeFlags::CONTINUOUS_INCREASING),
            ),
        };
        ShapeFunction::parse(src, domain.0, domain.1, flags).map_err(|e| self.err(field, e))
    }

    /// `n` shapes: `φ` on `[0, ȳ]`, or `ψ` on `[0, φᵢ(ȳ)]` when `inverse_of`
    /// supplies the matching `φ`.
    pub fn shapes(
        &self,
        field: &str,
        list: Option<&ShapeList>,
        n: usize,
        ybar: f64,
        inverse_of: Option<&[ShapeFunction]>,
    ) -> Result<Vec<ShapeFunction>, ScenarioError> {
        let specs: Vec<Option<&ShapeSpec>> = match list {
            None => vec![None; n],
            Some(ShapeList::One(s)) => vec![Some(s); n],
            Some(ShapeList::Many(v)) if v.len() == n => v.iter().map(Some).collect(),
            Some(ShapeList::Many(v)) => {
                return Err(self.err(field, format!("expected {n} shapes, got {}", v.len())))
            }
        };
        let mut out = Vec::with_capacity(n);
        for (i, spec) in specs.into_iter().enumerate() {
            let f = format!("{field}[{i}]");
            let phi = inverse_of.map(|p| &p[i]);
            let shape = match (spec, phi) {
                (None, _) => ShapeFunction::identity(ybar),
                (Some(ShapeSpec::Expr(s)), Some(phi)) if s == "inverse" => {
                    ShapeFunction::inverse_of(phi, None).map_err(|e| self.err(&f, e))?
                }
                (Some(s), Some(phi)) => {
                    let top = phi.eval(ybar).map_err(|e| self.err(&f, e))?;
                    self.shape(&f, s, (0.0, top))?
                }
                (Some(s), None) => self.shape(&f, s, (0.0, ybar))?,
            };
            out.push(shape);
        }
        Ok(out)
    }

    pub fn config(
        &self,
        spec: &ConfigSpec,
        measure: Option<&MonotoneMeasure>,
        tolerance: f64,
    ) -> Result<InequalityConfig, ScenarioError> {
        let inner = self.op("config.inner", &spec.inner)?;
        let outer = match &spec.outer {
            Some(o) => self.op("config.outer", o)?,
            None => inner.clone(),
        };
        let circ = self.ops3("config.circ", &spec.circ)?;
        let triangle = self.op("config.triangle", &spec.triangle)?;
        let ybar = spec.ybar.get();
        let phi = self.shapes("config.phi", spec.phi.as_ref(), 3, ybar, None)?;
        let psi = self.shapes("config.psi", spec.psi.as_ref(), 3, ybar, Some(&phi))?;
        let cd = match &spec.cd {
            CdSpec::Values(v) => CdDomain::Finite { values: v.clone() },
            CdSpec::Keyword(k) if k == "interval" => CdDomain::Interval,
            CdSpec::Keyword(k) if k == "measure" => match measure {
                Some(m) => CdDomain::Finite { values: m.range() },
                None => return Err(self.err("config.cd", "`measure` needs a measure block")),
            },
            CdSpec::Keyword(k) => {
                return Err(self.err(
                    "config.cd",
                    format!("expected \"interval\", \"measure\" or a list, got {k:?}"),
                ))
            }
        };
        Ok(InequalityConfig {
            inner,
            outer,
            circ,
            triangle,
            shapes: Shapes {
                phi: into3(phi),
                psi: into3(psi),
            },
            k: spec.k.get(),
            ybar,
            cd,
            tolerance,
        })
    }

    pub fn survival(
        &self,
        field: &str,
        spec: &SurvivalSpec,
    ) -> Result<SurvivalScenario, ScenarioError> {
        let mut segments = Vec::with_capacity(spec.segments.len());
        for (i, s) in spec.segments.iter().enumerate() {
            let f = format!("{field}.segments[{i}]");
            let interval = parse_interval(&s.interval).map_err(|m| self.err(&f, m))?;
            let expr = parse_with_vars(&s.expr, &["t"]).map_err(|e| self.err(&f, e))?;
            segments.push(Segment { interval, expr });
        }
        SurvivalScenario::new(spec.bound.get(), segments).map_err(|e| self.err(field, e))
    }
}

fn into3<T>(v: Vec<T>) -> [T; 3] {
    v.try_into()
        .unwrap_or_else(|_| unreachable!("three shapes requested"))
}

/// Parses `"[lo, hi]"`, `"(lo, hi]"` and the like; `inf` is allowed as a bound.
pub fn parse_interval(src: &str) -> Result<Interval, String> {
    let s = src.trim();
    let bad = || format!("malformed interval {src:?}");
    let lo_closed = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match s.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    let inner = &s[1..s.len() - 1];
    let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
    let num = |t: &str| -> Result<f64, String> {
        match t.trim() {
            "inf" => Ok(f64::INFINITY),
            t => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("interval {src:?} has lo > hi"));
    }
    Ok(Interval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_parse_with_open_ends() {
        let i = parse_interval("(0.25, 0.5]").unwrap();
        assert_eq!(
            (i.lo, i.hi, i.lo_closed, i.hi_closed),
            (0.25, 0.5, false, true)
        );
        assert!(parse_interval("[1, inf)").unwrap().hi.is_infinite());
        assert!(parse_interval("0, 1").is_err());
        assert!(parse_interval("[2, 1]").is_err());
    }

    #[test]
    fn syntax_errors_carry_location() {
        let err = ScenarioFile::parse("f.json", "{\n  \"scenarios\": [\n    {\"name\": 1}\n  ]\n}")
            .unwrap_err();
        match err {
            ScenarioError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn table_measure_keys_are_label_lists() {
        let spec: MeasureSpec = serde_json::from_str(
            r#"{"type": "table", "atoms": ["u", "v"], "values": {"u": 0.3, "v": 0.6, "u,v": 1}}"#,
        )
        .unwrap();
        let b = Builder {
            scenario: "t",
            grid: 0.01,
        };
        let m = b.measure(&spec).unwrap();
        assert_eq!(m.table(), &[0.0, 0.3, 0.6, 1.0]);
    }

    #[test]
    fn custom_operation_with_false_flag_is_rejected() {
        let spec: OpSpec =
            serde_json::from_str(r#"{"body": "a - a*b", "flags": {"non_decreasing": true}}"#)
                .unwrap();
        let b = Builder {
            scenario: "t",
            grid: 0.1,
        };
        let err = b.op("op", &spec).unwrap_err().to_string();
        assert!(err.contains("NonDecreasing"), "{err}");
    }

    #[test]
    fn inverse_psi_follows_phi() {
        let b = Builder {
            scenario: "t",
            grid: 0.01,
        };
        let phi = b
            .shapes(
                "phi",
                Some(&ShapeList::One(ShapeSpec::Expr("x^2".into()))),
                3,
                1.0,
                None,
            )
            .unwrap();
        let psi = b
            .shapes(
                "psi",
                Some(&ShapeList::One(ShapeSpec::Expr("inverse".into()))),
                3,
                1.0,
                Some(&phi),
            )
            .unwrap();
        assert!((psi[0].eval(0.25).unwrap() - 0.5).abs() < 1e-12);
    }
}
