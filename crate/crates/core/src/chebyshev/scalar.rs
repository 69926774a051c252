//! Grid scans of the scalar conditions. Every scan walks its coordinates in
//! lexicographic order and reports the first violation, re-evaluated directly
//! from the operations before it is returned.

use serde::Serialize;

use super::{ChebyshevError, InequalityConfig, ShapeFunction};
use crate::fusion::{Builtin, FusionOp};
use crate::grid;
use crate::value::NonNegExt;
use crate::verdict::{scan_first, Evidence, Verdict, DEFAULT_TOLERANCE};

type Cell = Result<f64, ChebyshevError>;

#[inline]
fn get(c: &Cell) -> Result<f64, ChebyshevError> {
    c.clone()
}

fn table(xs: &[f64], ys: &[f64], f: impl Fn(f64, f64) -> Cell) -> Vec<Cell> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for &x in xs {
        for &y in ys {
            out.push(f(x, y));
        }
    }
    out
}

fn shape_of(s: &ShapeFunction, x: f64) -> Cell {
    Ok(s.eval(x)?)
}

fn op(o: &FusionOp, a: f64, b: f64) -> Cell {
    Ok(o.apply(a, b)?)
}

/// Both sides of the four-variable condition at one point.
pub fn scalar_sides(
    cfg: &InequalityConfig,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
) -> Result<(f64, f64), ChebyshevError> {
    let [phi1, phi2, phi3] = &cfg.shapes.phi;
    let [psi1, psi2, psi3] = &cfg.shapes.psi;
    let [c1, c2, c3] = &cfg.circ;
    let lhs = psi1.eval(c1.apply(
        phi1.eval(cfg.inner.apply(a, b)?)?,
        cfg.triangle.apply(c, d)?,
    )?)?;
    let left = psi2.eval(c2.apply(phi2.eval(a)?, c)?)?;
    let right = psi3.eval(c3.apply(phi3.eval(b)?, d)?)?;
    Ok((lhs, cfg.outer.apply(left, right)?))
}

/// Both sides of the one-variable form with `d̄ = sup` of the `c, d` domain.
pub fn one_variable_sides(
    cfg: &InequalityConfig,
    a: f64,
    b: f64,
    c: f64,
) -> Result<(f64, f64), ChebyshevError> {
    let [phi1, phi2, phi3] = &cfg.shapes.phi;
    let [psi1, psi2, psi3] = &cfg.shapes.psi;
    let [c1, c2, c3] = &cfg.circ;
    let d_bar = cfg.d_bar();
    let lhs = psi1.eval(c1.apply(phi1.eval(cfg.inner.apply(a, b)?)?, c)?)?;
    let l2 = |x: f64| -> Cell { Ok(psi2.eval(c2.apply(phi2.eval(a)?, x)?)?) };
    let l3 = |x: f64| -> Cell { Ok(psi3.eval(c3.apply(phi3.eval(b)?, x)?)?) };
    let first = cfg.outer.apply(l2(c)?, l3(d_bar)?)?;
    let second = cfg.outer.apply(l2(d_bar)?, l3(c)?)?;
    Ok((lhs, first.max(second)))
}

fn violated(witness: Vec<f64>, (lhs, rhs): (f64, f64), evidence: Evidence) -> Verdict {
    debug_assert!(
        lhs < rhs,
        "re-check disagrees at {witness:?}: {lhs} vs {rhs}"
    );
    Verdict::Violated {
        witness,
        lhs,
        rhs,
        evidence,
    }
}

/// Evaluates the four-variable condition at a single point.
pub fn check_point(cfg: &InequalityConfig, a: f64, b: f64, c: f64, d: f64) -> Verdict {
    match scalar_sides(cfg, a, b, c, d) {
        Ok((lhs, rhs)) if lhs < rhs - cfg.tolerance => Verdict::Violated {
            witness: vec![a, b, c, d],
            lhs,
            rhs,
            evidence: Evidence::Exact,
        },
        Ok(_) => Verdict::HoldsOnGrid {
            evidence: Evidence::Exact,
        },
        Err(e) => e.into_verdict(),
    }
}

/// Scans `a, b` over the `[0, k]` grid and `c, d` over the configured domain.
pub fn check_scalar_condition(cfg: &InequalityConfig, grid_step: f64) -> Verdict {
    if let Some(v) = cfg.check_hypotheses() {
        return v;
    }
    scan_c1(cfg, grid_step).unwrap_or_else(ChebyshevError::into_verdict)
}

fn scan_c1(cfg: &InequalityConfig, step: f64) -> Result<Verdict, ChebyshevError> {
    let ab = cfg.ab_values(step);
    let (cd, capped) = cfg.cd_values(step);
    let (n, nc) = (ab.len(), cd.len());
    let [phi1, phi2, phi3] = &cfg.shapes.phi;
    let [psi1, psi2, psi3] = &cfg.shapes.psi;
    let [c1, c2, c3] = &cfg.circ;

    let inner = table(&ab, &ab, |a, b| shape_of(phi1, op(&cfg.inner, a, b)?));
    let left = table(&ab, &cd, |a, c| shape_of(psi2, op(c2, phi2.eval(a)?, c)?));
    let right = table(&ab, &cd, |b, d| shape_of(psi3, op(c3, phi3.eval(b)?, d)?));
    let tri = table(&cd, &cd, |c, d| op(&cfg.triangle, c, d));

    let hit = scan_first(n, |i| {
        for j in 0..n {
            let p = get(&inner[i * n + j])?;
            for ci in 0..nc {
                let l = get(&left[i * nc + ci])?;
                for di in 0..nc {
                    let lhs = psi1.eval(c1.apply(p, get(&tri[ci * nc + di])?)?)?;
                    let rhs = cfg.outer.apply(l, get(&right[j * nc + di])?)?;
                    if lhs < rhs - cfg.tolerance {
                        return Ok(Some([ab[i], ab[j], cd[ci], cd[di]]));
                    }
                }
            }
        }
        Ok::<_, ChebyshevError>(None)
    })?;
    let evidence = Evidence::Grid {
        step,
        points: n * n * nc * nc,
        capped,
    };
    Ok(match hit {
        None => Verdict::HoldsOnGrid { evidence },
        Some([a, b, c, d]) => violated(vec![a, b, c, d], scalar_sides(cfg, a, b, c, d)?, evidence),
    })
}

/// Scans the one-variable form over `a, b, c`.
pub fn check_one_variable_condition(cfg: &InequalityConfig, grid_step: f64) -> Verdict {
    if let Some(v) = cfg.check_hypotheses() {
        return v;
    }
    scan_c2(cfg, grid_step).unwrap_or_else(ChebyshevError::into_verdict)
}

fn scan_c2(cfg: &InequalityConfig, step: f64) -> Result<Verdict, ChebyshevError> {
    let ab = cfg.ab_values(step);
    let (mut cd, capped) = cfg.cd_values(step);
    let d_bar = cfg.d_bar();
    if cd.last() != Some(&d_bar) {
        cd.push(d_bar);
    }
    let (n, nc) = (ab.len(), cd.len());
    let top = nc - 1;
    let [phi1, phi2, phi3] = &cfg.shapes.phi;
    let [psi1, psi2, psi3] = &cfg.shapes.psi;
    let [c1, c2, c3] = &cfg.circ;

    let inner = table(&ab, &ab, |a, b| shape_of(phi1, op(&cfg.inner, a, b)?));
    let left = table(&ab, &cd, |a, c| shape_of(psi2, op(c2, phi2.eval(a)?, c)?));
    let right = table(&ab, &cd, |b, d| shape_of(psi3, op(c3, phi3.eval(b)?, d)?));

    let hit = scan_first(n, |i| {
        for j in 0..n {
            let p = get(&inner[i * n + j])?;
            let l_top = get(&left[i * nc + top])?;
            let r_top = get(&right[j * nc + top])?;
            for ci in 0..nc {
                let lhs = psi1.eval(c1.apply(p, cd[ci])?)?;
                let first = cfg.outer.apply(get(&left[i * nc + ci])?, r_top)?;
                let second = cfg.outer.apply(l_top, get(&right[j * nc + ci])?)?;
                if lhs < first.max(second) - cfg.tolerance {
                    return Ok(Some([ab[i], ab[j], cd[ci]]));
                }
            }
        }
        Ok::<_, ChebyshevError>(None)
    })?;
    let evidence = Evidence::Grid {
        step,
        points: n * n * nc,
        capped,
    };
    Ok(match hit {
        None => Verdict::HoldsOnGrid { evidence },
        Some([a, b, c]) => violated(vec![a, b, c], one_variable_sides(cfg, a, b, c)?, evidence),
    })
}

/// Verdicts of the four-variable form (with `▵ = min`) and the one-variable
/// form on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub four_variable: Verdict,
    pub one_variable: Verdict,
    pub agree: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn compare_condition_forms(cfg: &InequalityConfig, grid_step: f64) -> EquivalenceReport {
    let mut notes = Vec::new();
    let mut with_min = cfg.clone();
    if cfg.triangle.as_builtin() != Some(Builtin::Min) {
        notes.push(format!(
            "▵ = `{}` replaced by min for the four-variable form",
            cfg.triangle.name()
        ));
    }
    let bound = NonNegExt::new(cfg.d_bar().max(1.0)).unwrap_or(NonNegExt::ONE);
    with_min.triangle =
        FusionOp::builtin_with_bound(Builtin::Min, bound).expect("min accepts any bound");
    let four_variable = check_scalar_condition(&with_min, grid_step);
    let one_variable = check_one_variable_condition(cfg, grid_step);
    let agree = four_variable.label() == one_variable.label();
    if !agree {
        notes.push(
            "the two forms disagree; a declared monotonicity flag is likely wrong".to_string(),
        );
    }
    EquivalenceReport {
        four_variable,
        one_variable,
        agree,
        notes,
    }
}

/// Condition for q-integrals with fuzzy conjunction `⊗` and `ψᵢ = φᵢ⁻¹`:
///
/// ```text
/// φ₁⁻¹(a ⊗ φ₁(b ∗ c)) ≥ [φ₂⁻¹(a ⊗ φ₂(b)) ∗ φ₃⁻¹(1 ⊗ φ₃(c))] ∨ [φ₂⁻¹(1 ⊗ φ₂(b)) ∗ φ₃⁻¹(a ⊗ φ₃(c))]
/// ```
///
/// for `a, b, c ∈ [0, 1]`. `pins` fixes coordinates to a single value.
pub fn q_condition(
    conj: &FusionOp,
    phi: &[ShapeFunction; 3],
    star: &FusionOp,
    grid_step: f64,
    pins: [Option<f64>; 3],
) -> Verdict {
    q_scan(conj, phi, star, grid_step, pins).unwrap_or_else(ChebyshevError::into_verdict)
}

fn q_scan(
    conj: &FusionOp,
    phi: &[ShapeFunction; 3],
    star: &FusionOp,
    step: f64,
    pins: [Option<f64>; 3],
) -> Result<Verdict, ChebyshevError> {
    let fail = |detail: String, value: Option<f64>| Ok(Verdict::HypothesisFailed { detail, value });
    if !conj.flags().fuzzy_conjunction {
        return fail(
            format!("`{}` is not declared a fuzzy conjunction", conj.name()),
            None,
        );
    }
    let mut psi = Vec::with_capacity(3);
    for (i, p) in phi.iter().enumerate() {
        let (zero, one) = (p.eval(0.0)?, p.eval(1.0)?);
        if zero.abs() > 1e-12 {
            return fail(format!("φ{}(0) = {zero}, expected 0", i + 1), Some(zero));
        }
        let top = conj.apply(1.0, one)?;
        if top > one + DEFAULT_TOLERANCE {
            return fail(
                format!("1 ⊗ φ{0}(1) = {top} exceeds φ{0}(1) = {one}", i + 1),
                Some(top),
            );
        }
        psi.push(ShapeFunction::inverse_of(p, None)?);
    }
    let axis = |pin: Option<f64>| pin.map_or_else(|| grid::uniform(0.0, 1.0, step), |v| vec![v]);
    let (xa, xb, xc) = (axis(pins[0]), axis(pins[1]), axis(pins[2]));
    let (nb, nc) = (xb.len(), xc.len());

    let w = table(&xb, &xc, |b, c| shape_of(&phi[0], op(star, b, c)?));
    let u2 = table(&xa, &xb, |a, b| {
        shape_of(&psi[1], op(conj, a, phi[1].eval(b)?)?)
    });
    let v2 = table(&[1.0], &xb, |one, b| {
        shape_of(&psi[1], op(conj, one, phi[1].eval(b)?)?)
    });
    let u3 = table(&xa, &xc, |a, c| {
        shape_of(&psi[2], op(conj, a, phi[2].eval(c)?)?)
    });
    let v3 = table(&[1.0], &xc, |one, c| {
        shape_of(&psi[2], op(conj, one, phi[2].eval(c)?)?)
    });

    let hit = scan_first(xa.len(), |i| {
        let a = xa[i];
        for j in 0..nb {
            for k in 0..nc {
                let lhs = psi[0].eval(conj.apply(a, get(&w[j * nc + k])?)?)?;
                let first = star.apply(get(&u2[i * nb + j])?, get(&v3[k])?)?;
                let second = star.apply(get(&v2[j])?, get(&u3[i * nc + k])?)?;
                if lhs < first.max(second) - DEFAULT_TOLERANCE {
                    return Ok(Some([a, xb[j], xc[k]]));
                }
            }
        }
        Ok::<_, ChebyshevError>(None)
    })?;
    let evidence = Evidence::Grid {
        step,
        points: xa.len() * nb * nc,
        capped: false,
    };
    Ok(match hit {
        None => Verdict::HoldsOnGrid { evidence },
        Some([a, b, c]) => {
            let lhs = psi[0].eval(conj.apply(a, phi[0].eval(star.apply(b, c)?)?)?)?;
            let first = star.apply(
                psi[1].eval(conj.apply(a, phi[1].eval(b)?)?)?,
                psi[2].eval(conj.apply(1.0, phi[2].eval(c)?)?)?,
            )?;
            let second = star.apply(
                psi[1].eval(conj.apply(1.0, phi[1].eval(b)?)?)?,
                psi[2].eval(conj.apply(a, phi[2].eval(c)?)?)?,
            )?;
            violated(vec![a, b, c], (lhs, first.max(second)), evidence)
        }
    })
}

/// Result of a coarse-to-fine counterexample search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// The first violation, from the coarsest level that has one.
    pub found: Option<Verdict>,
    /// `(step, points)` of every level that ran to completion or to a witness.
    pub levels: Vec<(f64, usize)>,
    pub budget: usize,
    pub budget_exhausted: bool,
}

const SEARCH_STEPS: [f64; 4] = [0.25, 0.1, 0.05, 0.02];

/// Runs the four-variable scan on successively finer grids ending at
/// `grid_step`, stopping at the first witness or when the next level would
/// exceed `budget` evaluated points.
pub fn search_counterexample(
    cfg: &InequalityConfig,
    grid_step: f64,
    budget: usize,
) -> SearchOutcome {
    let mut steps: Vec<f64> = SEARCH_STEPS
        .iter()
        .copied()
        .filter(|s| *s > grid_step)
        .collect();
    steps.push(grid_step);
    let mut levels = Vec::new();
    let mut used = 0usize;
    for step in steps {
        let n = cfg.ab_values(step).len();
        let nc = cfg.cd_values(step).0.len();
        let points = n * n * nc * nc;
        if used + points > budget {
            return SearchOutcome {
                found: None,
                levels,
                budget,
                budget_exhausted: true,
            };
        }
        used += points;
        levels.push((step, points));
        let verdict = check_scalar_condition(cfg, step);
        if !verdict.holds() {
            return SearchOutcome {
                found: Some(verdict),
                levels,
                budget,
                budget_exhausted: false,
            };
        }
    }
    SearchOutcome {
        found: None,
        levels,
        budget,
        budget_exhausted: false,
    }
}

/// A point where the two argument orders of `S` give different verdicts for
/// `S(a ∗ b, c) ≥ (S(a, c) ∗ b) ∨ (a ∗ S(b, c))` and
/// `S(c, a ∗ b) ≥ (S(c, a) ∗ b) ∨ (a ∗ S(c, b))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutativityGap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub first_order: (f64, f64),
    pub second_order: (f64, f64),
}

pub fn search_commutativity_gap(
    s: &FusionOp,
    star: &FusionOp,
    grid_step: f64,
) -> Result<Option<CommutativityGap>, ChebyshevError> {
    let pts = grid::uniform(0.0, 1.0, grid_step);
    let n = pts.len();
    type Sides = ((f64, f64), (f64, f64));
    let sides = |a: f64, b: f64, c: f64| -> Result<Sides, ChebyshevError> {
        let ab = star.apply(a, b)?;
        let first = (
            s.apply(ab, c)?,
            star.apply(s.apply(a, c)?, b)?
                .max(star.apply(a, s.apply(b, c)?)?),
        );
        let second = (
            s.apply(c, ab)?,
            star.apply(s.apply(c, a)?, b)?
                .max(star.apply(a, s.apply(c, b)?)?),
        );
        Ok((first, second))
    };
    scan_first(n, |i| {
        for &b in &pts {
            for &c in &pts {
                let a = pts[i];
                let (first, second) = sides(a, b, c)?;
                let holds = |(l, r): (f64, f64)| l >= r - DEFAULT_TOLERANCE;
                if holds(first) != holds(second) {
                    return Ok(Some(CommutativityGap {
                        a,
                        b,
                        c,
                        first_order: first,
                        second_order: second,
                    }));
                }
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::super::{CdDomain, Shapes};
    use super::*;
    use crate::exprlang::parse_with_vars;
    use crate::fusion::Flags;

    fn w_config(cd: CdDomain) -> InequalityConfig {
        InequalityConfig::uniform(
            FusionOp::prod(),
            FusionOp::prod(),
            FusionOp::lukasiewicz(),
            cd,
        )
    }

    #[test]
    fn lukasiewicz_two_valued_range_holds() {
        let v = check_scalar_condition(
            &w_config(CdDomain::Finite {
                values: vec![0.0, 1.0],
            }),
            0.01,
        );
        assert!(v.holds(), "{v:?}");
    }

    #[test]
    fn lukasiewicz_interval_is_violated() {
        let cfg = w_config(CdDomain::Interval);
        let v = check_scalar_condition(&cfg, 0.01);
        assert_eq!(v.witness(), Some(&[0.01, 0.02, 1.0, 0.99][..]));
        let Verdict::Violated { lhs, rhs, .. } = check_point(&cfg, 0.5, 0.5, 0.75, 0.75) else {
            panic!("expected a violation at the worked point")
        };
        assert_eq!(lhs, 0.0);
        assert!((rhs - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn min_config_holds_on_coarse_interval() {
        let cfg = InequalityConfig::uniform(
            FusionOp::prod(),
            FusionOp::prod(),
            FusionOp::min(),
            CdDomain::Interval,
        );
        assert!(check_scalar_condition(&cfg, 0.05).holds());
        assert!(check_one_variable_condition(&cfg, 0.05).holds());
    }

    #[test]
    fn forms_agree_on_lukasiewicz() {
        for cd in [
            CdDomain::Interval,
            CdDomain::Finite {
                values: vec![0.0, 1.0],
            },
        ] {
            let r = compare_condition_forms(&w_config(cd), 0.05);
            assert!(r.agree, "{r:?}");
        }
    }

    #[test]
    fn godel_q_condition_fails_on_b_equal_one() {
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
            assert_eq!(v.witness(), Some(&[0.01, 1.0, 0.01][..]), "{}", conj.name());
        }
    }

    #[test]
    fn semicopula_q_condition_holds() {
        let id = ShapeFunction::identity(1.0);
        let phi = [id.clone(), id.clone(), id];
        // a ⊗ b = min(b, a)
        let conj = FusionOp::min().swapped();
        assert!(q_condition(&conj, &phi, &FusionOp::prod(), 0.02, [None; 3]).holds());
    }

    #[test]
    fn q_condition_needs_phi_zero() {
        let phi = ShapeFunction::parse(
            "0.5 * (x + 1)",
            0.0,
            1.0,
            super::super::ShapeFlags::CONTINUOUS_INCREASING,
        )
        .unwrap();
        let v = q_condition(
            &FusionOp::godel(),
            &[phi.clone(), phi.clone(), phi],
            &FusionOp::prod(),
            0.1,
            [None; 3],
        );
        assert!(matches!(v, Verdict::HypothesisFailed { value: Some(v), .. } if v == 0.5));
    }

    #[test]
    fn search_finds_lukasiewicz_witness_early() {
        let out = search_counterexample(&w_config(CdDomain::Interval), 0.01, 10_000_000);
        let found = out.found.expect("witness");
        let w = found.witness().unwrap();
        assert!(w < &[0.5, 0.5, 0.75, 0.75][..]);
        let none = search_counterexample(
            &InequalityConfig::uniform(
                FusionOp::prod(),
                FusionOp::prod(),
                FusionOp::min(),
                CdDomain::Interval,
            ),
            0.05,
            10_000_000,
        );
        assert!(none.found.is_none() && !none.budget_exhausted);
        let tight = search_counterexample(&w_config(CdDomain::Interval), 0.01, 10);
        assert!(tight.budget_exhausted);
    }

    #[test]
    fn commutativity_gap_for_ab2() {
        let s = FusionOp::custom(
            "ab2",
            parse_with_vars("a * b^2", &["a", "b"]).unwrap(),
            NonNegExt::ONE,
            Flags {
                non_decreasing: true,
                ..Flags::default()
            },
        );
        let gap = search_commutativity_gap(&s, &FusionOp::prod(), 0.05)
            .unwrap()
            .expect("gap");
        assert!(gap.first_order.0 >= gap.first_order.1 - DEFAULT_TOLERANCE);
        assert!(gap.second_order.0 < gap.second_order.1 - DEFAULT_TOLERANCE);
        assert!(
            search_commutativity_gap(&FusionOp::min(), &FusionOp::prod(), 0.05)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn hypothesis_failure_on_nonzero_boundary() {
        let mut cfg = w_config(CdDomain::Interval);
        cfg.circ[1] = FusionOp::custom(
            "plus",
            parse_with_vars("min(a + b, 1)", &["a", "b"]).unwrap(),
            NonNegExt::ONE,
            Flags {
                non_decreasing: true,
                ..Flags::default()
            },
        );
        assert!(matches!(
            check_scalar_condition(&cfg, 0.1),
            Verdict::HypothesisFailed { .. }
        ));
        let _ = Shapes::identity(1.0);
    }
}
