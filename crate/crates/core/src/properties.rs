//! Seeded random-trial runs of the library's claims. Each trial derives its
//! own generator from the run seed and the trial index, so results do not
//! depend on scheduling.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chebyshev::{
    any_functions_check, compare_condition_forms, sugeno_chebyshev, CdDomain, InequalityConfig,
    ShapeFunction, Shapes,
};
use crate::dependence::{
    is_comonotone, is_m_positively_dependent, measure_supports_all_pairs, DependenceQuery,
};
use crate::exprlang::parse;
use crate::fusion::{dominates, FusionOp};
use crate::grid::{self, GridSpec};
use crate::integral::{integrate_simple, oracle::oracle_grid_integral};
use crate::measure::{AtomSet, FiniteSpace, MonotoneMeasure};
use crate::random;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    random::rng(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs `trial` for every index; `Some(detail)` marks a failure.
fn run(
    name: &'static str,
    trials: usize,
    seed: u64,
    trial: impl Fn(usize, &mut ChaCha8Rng) -> Option<String> + Sync,
) -> PropertyReport {
    let failures: Vec<(usize, String)> = (0..trials)
        .into_par_iter()
        .filter_map(|i| trial(i, &mut trial_rng(seed, i)).map(|d| (i, d)))
        .collect();
    PropertyReport {
        name,
        trials,
        seed,
        failures: failures.len(),
        first_failure: failures
            .into_iter()
            .next()
            .map(|(i, d)| format!("trial {i}: {d}")),
    }
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())].clone()
}

fn semicopulas() -> [FusionOp; 3] {
    [FusionOp::min(), FusionOp::prod(), FusionOp::lukasiewicz()]
}

/// Exact candidate-set integrals against the brute-force grid sup at step
/// 0.01: the grid never exceeds the exact value and trails it by at most one
/// step.
pub fn oracle_agreement(trials: usize, seed: u64) -> PropertyReport {
    const STEP: f64 = 0.01;
    let ops = [
        FusionOp::min(),
        FusionOp::prod(),
        FusionOp::lukasiewicz(),
        FusionOp::godel(),
        FusionOp::godel_contra(),
    ];
    run("integral_matches_oracle", trials, seed, |_, rng| {
        let n = rng.gen_range(1..=6);
        let m = random::capacity(rng, n);
        let f = random::function(rng, n, 1.0);
        let d = random::nonempty_set(rng, n);
        let op = pick(rng, &ops);
        let exact = match integrate_simple(&op, &m, d, &f) {
            Ok(r) => r.get(),
            Err(e) => return Some(e.to_string()),
        };
        let oracle = match oracle_grid_integral(&op, &m, d, &f, STEP) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        (oracle > exact + 1e-12 || exact - oracle > STEP + 1e-12).then(|| {
            format!(
                "`{}` f = {:?}: exact {exact}, oracle {oracle}",
                op.name(),
                f.values()
            )
        })
    })
}

fn random_shape(rng: &mut ChaCha8Rng) -> ShapeFunction {
    match rng.gen_range(0..3) {
        0 => ShapeFunction::identity(1.0),
        1 => ShapeFunction::power(2.0, 1.0),
        _ => ShapeFunction::power(0.5, 1.0),
    }
}

/// The four-variable and one-variable forms of the scalar condition give
/// the same verdict on random configurations.
pub fn forms_agree(trials: usize, seed: u64) -> PropertyReport {
    run("scalar_forms_agree", trials, seed, |_, rng| {
        let ops = semicopulas();
        let circ = [pick(rng, &ops), pick(rng, &ops), pick(rng, &ops)];
        let mut cfg = InequalityConfig::uniform(
            pick(rng, &ops),
            pick(rng, &ops),
            FusionOp::min(),
            CdDomain::Interval,
        );
        cfg.circ = circ;
        cfg.shapes = Shapes {
            phi: [random_shape(rng), random_shape(rng), random_shape(rng)],
            psi: [random_shape(rng), random_shape(rng), random_shape(rng)],
        };
        let step = if rng.gen_bool(0.5) {
            let mut values = vec![0.0, 1.0];
            values.extend((0..rng.gen_range(0..4)).map(|_| (rng.gen_range(1..20) as f64) / 20.0));
            cfg.cd = CdDomain::Finite { values };
            0.05
        } else {
            0.1
        };
        let r = compare_condition_forms(&cfg, step);
        (!r.agree).then(|| {
            format!(
                "four-variable {:?} vs one-variable {:?}",
                r.four_variable, r.one_variable
            )
        })
    })
}

/// Sugeno-integral inequality for comonotone pairs, cycling `∗` through
/// product, Łukasiewicz and min.
pub fn comonotone_sugeno(trials: usize, seed: u64) -> PropertyReport {
    let stars = [FusionOp::prod(), FusionOp::lukasiewicz(), FusionOp::min()];
    run("comonotone_sugeno_inequality", trials, seed, |i, rng| {
        let n = rng.gen_range(1..=6);
        let m = random::capacity(rng, n);
        let (f, g) = random::comonotone_pair(rng, n, 1.0);
        let a = random::nonempty_set(rng, n);
        let star = &stars[i % stars.len()];
        let id = ShapeFunction::identity(1.0);
        let r = sugeno_chebyshev(
            &m,
            &f,
            &g,
            a,
            [id.clone(), id.clone(), id.clone()],
            [id.clone(), id.clone(), id],
            star,
            0.05,
        );
        (!r.verdict.holds()).then(|| {
            format!(
                "`{}` f = {:?}, g = {:?}: {:?}",
                star.name(),
                f.values(),
                g.values(),
                r.verdict
            )
        })
    })
}

/// Necessity measures with `∘ᵢ = ▵ = min` and `∗ = ⋆ = ·`: the inequality
/// holds for arbitrary pairs. Each measure gets `pairs` random pairs.
pub fn minitive_any_functions(measures: usize, pairs: usize, seed: u64) -> PropertyReport {
    run("minitive_any_functions", measures, seed, |i, rng| {
        let n = rng.gen_range(1..=5);
        let m = random::necessity(rng, n);
        let prod = FusionOp::prod();
        let cfg =
            InequalityConfig::uniform(prod.clone(), prod, FusionOp::min(), CdDomain::Interval);
        let r = any_functions_check(&cfg, &m, pairs, seed.wrapping_add(i as u64), 0.05, false);
        let stages_ok = r
            .stages
            .iter()
            .all(|s| s.status == crate::chebyshev::StageStatus::Passed);
        (!(r.verdict.holds() && stages_ok)).then(|| format!("{:?}", r))
    })
}

fn dependent(
    m: &MonotoneMeasure,
    rng: &mut ChaCha8Rng,
    triangle: &FusionOp,
    sets: impl Fn(&mut ChaCha8Rng) -> (AtomSet, AtomSet),
) -> Option<String> {
    let n = m.space().len();
    let f = random::function(rng, n, 1.0);
    let g = random::function(rng, n, 1.0);
    let (a, b) = sets(rng);
    let q = DependenceQuery {
        m,
        f: &f,
        g: &g,
        a,
        b,
        triangle,
        k: 1.0,
        allow_range_escape: true,
    };
    match is_m_positively_dependent(&q) {
        Ok(r) if r.holds => None,
        Ok(r) => Some(format!(
            "`{}` f = {:?}, g = {:?}: {:?}",
            triangle.name(),
            f.values(),
            g.values(),
            r.witness
        )),
        Err(e) => Some(e.to_string()),
    }
}

/// Minitive measures make every pair dependent for any semicopula `▵`.
pub fn minitive_dependence(trials: usize, seed: u64) -> PropertyReport {
    run("minitive_measure_dependence", trials, seed, |_, rng| {
        let n = rng.gen_range(1..=5);
        let m = random::necessity(rng, n);
        let triangle = pick(rng, &semicopulas());
        match measure_supports_all_pairs(&m, &triangle, true) {
            Ok(r) if r.holds => {}
            Ok(r) => return Some(format!("set pair fails: {:?}", r.witness)),
            Err(e) => return Some(e.to_string()),
        }
        dependent(&m, rng, &triangle, |rng| {
            (random::nonempty_set(rng, n), random::nonempty_set(rng, n))
        })
    })
}

/// Convex distortions of probabilities are supermodular, have subadditive
/// duals and make every pair dependent for `▵ = W`.
pub fn supermodular_dependence(trials: usize, seed: u64) -> PropertyReport {
    let distortions = ["x", "x^1.5", "x^2", "x^3", "0.5 * x + 0.5 * x^2"]
        .map(|s| parse(s).expect("distortion parses"));
    run(
        "supermodular_lukasiewicz_dependence",
        trials,
        seed,
        |_, rng| {
            let n = rng.gen_range(1..=5);
            let p = random::probability(rng, n);
            let h = pick(rng, &distortions);
            let m = match MonotoneMeasure::distorted_probability(
                FiniteSpace::with_atoms(n).expect("small"),
                &p,
                &h,
            ) {
                Ok(m) => m,
                Err(e) => return Some(e.to_string()),
            };
            match (
                m.is_supermodular(),
                m.dual().and_then(|d| d.is_subadditive()),
            ) {
                (Ok(true), Ok(true)) => {}
                other => {
                    return Some(format!(
                        "h = {h}: supermodular/dual-subadditive = {other:?}"
                    ))
                }
            }
            dependent(&m, rng, &FusionOp::lukasiewicz(), |rng| {
                (random::nonempty_set(rng, n), random::nonempty_set(rng, n))
            })
        },
    )
}

/// Capacities with `m(E) ≤ 0.5` for `E ≠ X` make every pair on a common
/// proper subset `A = B` dependent for the Gödel conjunction.
pub fn godel_dependence(trials: usize, seed: u64) -> PropertyReport {
    run("godel_small_measure_dependence", trials, seed, |_, rng| {
        let n = rng.gen_range(2..=5);
        let base = random::capacity(rng, n);
        let full = base.space().universe().0 as usize;
        let table = base
            .table()
            .iter()
            .enumerate()
            .map(|(mask, v)| if mask == full { 1.0 } else { 0.5 * v })
            .collect();
        let m = match MonotoneMeasure::from_table(base.space().clone(), table) {
            Ok(m) => m,
            Err(e) => return Some(e.to_string()),
        };
        dependent(&m, rng, &FusionOp::godel(), |rng| {
            let a = AtomSet(rng.gen_range(1..(1u32 << n) - 1));
            (a, a)
        })
    })
}

/// Comonotone pairs on `A` are dependent for `▵ = min` with `B = A`.
pub fn comonotone_dependence(trials: usize, seed: u64) -> PropertyReport {
    run("comonotone_min_dependence", trials, seed, |_, rng| {
        let n = rng.gen_range(1..=6);
        let m = random::capacity(rng, n);
        let (f, g) = random::comonotone_pair(rng, n, 1.0);
        let a = random::nonempty_set(rng, n);
        if !is_comonotone(&f, &g, a) {
            return Some("generator produced a non-comonotone pair".into());
        }
        let min = FusionOp::min();
        let q = DependenceQuery {
            m: &m,
            f: &f,
            g: &g,
            a,
            b: a,
            triangle: &min,
            k: 1.0,
            allow_range_escape: false,
        };
        match is_m_positively_dependent(&q) {
            Ok(r) if r.holds => None,
            Ok(r) => Some(format!("{:?}", r.witness)),
            Err(e) => Some(e.to_string()),
        }
    })
}

/// `min` dominates `W` on the grid.
pub fn min_dominates_lukasiewicz(step: f64) -> PropertyReport {
    let verdict = dominates(
        &FusionOp::min(),
        &FusionOp::lukasiewicz(),
        &GridSpec::with_step(step),
    );
    let points = grid::uniform(0.0, 1.0, step).len().pow(4);
    let first_failure = match verdict {
        Ok(Verdict::HoldsOnGrid { .. }) => None,
        Ok(v) => Some(format!("{v:?}")),
        Err(e) => Some(e.to_string()),
    };
    PropertyReport {
        name: "min_dominates_lukasiewicz",
        trials: points,
        seed: 0,
        failures: usize::from(first_failure.is_some()),
        first_failure,
    }
}

/// The full suite at its default sizes.
pub fn run_suite(seed: u64) -> Vec<PropertyReport> {
    vec![
        oracle_agreement(1000, seed),
        forms_agree(200, seed),
        comonotone_sugeno(1000, seed),
        minitive_any_functions(500, 4, seed),
        minitive_dependence(300, seed),
        supermodular_dependence(300, seed),
        godel_dependence(300, seed),
        comonotone_dependence(300, seed),
        min_dominates_lukasiewicz(0.01),
    ]
}
