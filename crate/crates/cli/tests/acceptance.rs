//! Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::time::{Duration, Instant};

use serde_json::Value;
use sugeno_cli::app;

const RHS_TOL: f64 = 1e-6;
const INTEGRAL_TOL: f64 = 1e-8;
const EQUALITY_TOL: f64 = 1e-9;
const POINT_TOL: f64 = 1e-12;
const FAST: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);

fn repro(name: &str) -> (i32, Value, Duration) {
    let start = Instant::now();
    let out = app::run(["sugeno", "repro", name, "--json"]);
    let elapsed = start.elapsed();
    let value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{name}: bad JSON ({e}): {}", out.stderr));
    (out.code, value, elapsed)
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn integral_values(report: &Value) -> Vec<f64> {
    report["result"]["integrals"]
        .as_array()
        .expect("integrals")
        .iter()
        .map(|i| num(&i["value"]))
        .collect()
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn daraby() -> Check {
    let (code, r, t) = repro("counterexample-daraby-ghadimi");
    let lhs = num(&r["result"]["lhs"]);
    let rhs = num(&r["result"]["rhs"]);
    let expected = 0.15f64.sqrt() + 0.54f64.sqrt() - 1.0;
    ensure(code == 1, format!("exit code {code}"))?;
    ensure(lhs == 0.0, format!("lhs = {lhs}"))?;
    ensure((rhs - expected).abs() <= RHS_TOL, format!("rhs = {rhs}"))?;
    ensure((rhs - 0.1221452).abs() <= RHS_TOL, format!("rhs = {rhs}"))?;
    let summary = r["summary"].as_str().unwrap_or_default();
    ensure(summary.contains("inequality violated"), summary)?;
    ensure(t < FAST, format!("took {t:?}"))?;
    Ok(format!("lhs = 0, rhs = {rhs:.7}, {t:?}"))
}

fn minitive_values() -> Check {
    let (code, r, t) = repro("minitive-sugeno-values");
    let v = integral_values(&r);
    let expected = [1.0 / 3.0, 0.25, (3.0 - 5f64.sqrt()) / 2.0];
    ensure(code == 0, format!("exit code {code}"))?;
    for (got, want) in v.iter().zip(expected) {
        ensure(
            (got - want).abs() <= INTEGRAL_TOL,
            format!("{got} vs {want}"),
        )?;
    }
    let bisection = r["result"]["integrals"]
        .as_array()
        .expect("integrals")
        .iter()
        .all(|i| i["method"]["kind"] == "bisection");
    ensure(bisection, "not every integral used bisection")?;
    ensure(t < FAST, format!("took {t:?}"))?;
    Ok(format!("{:.9}, {:.9}, {:.9}, {t:?}", v[0], v[1], v[2]))
}

fn lebesgue() -> Check {
    let (code, r, _) = repro("lebesgue-equality");
    let v = integral_values(&r);
    ensure(code == 0, format!("exit code {code}"))?;
    ensure(v[0] == 0.0, format!("I(W(f, g)) = {}", v[0]))?;
    ensure(
        (v[1] - (2.0 - 2f64.sqrt())).abs() <= INTEGRAL_TOL,
        format!("I(f) = {}", v[1]),
    )?;
    ensure(
        (v[2] - (2f64.sqrt() - 1.0)).abs() <= INTEGRAL_TOL,
        format!("I(g) = {}", v[2]),
    )?;
    let (lhs, rhs) = (num(&r["result"]["lhs"]), num(&r["result"]["rhs"]));
    ensure(
        (lhs - rhs).abs() <= EQUALITY_TOL,
        format!("lhs = {lhs}, rhs = {rhs}"),
    )?;
    Ok(format!(
        "I(f) = {:.9}, I(g) = {:.9}, lhs = rhs = {lhs}",
        v[1], v[2]
    ))
}

fn lukasiewicz_range() -> Check {
    let (code, r, _) = repro("lukasiewicz-two-valued-range");
    ensure(code == 0, format!("two-valued range: exit code {code}"))?;
    ensure(
        r["result"]["verdict"]["status"] == "holds_on_grid",
        "two-valued range does not hold",
    )?;
    ensure(
        r["result"]["cd"]["values"] == serde_json::json!([0.0, 1.0]),
        "c, d not enumerated exactly over {0, 1}",
    )?;
    let (code, r, _) = repro("lukasiewicz-unit-interval");
    ensure(code == 1, format!("unit interval: exit code {code}"))?;
    let p = &r["result"]["points"][0]["verdict"];
    ensure(p["status"] == "violated", "pinned point not violated")?;
    ensure(
        p["evidence"]["class"] == "exact",
        "pinned point not re-checked exactly",
    )?;
    ensure(
        p["witness"] == serde_json::json!([0.5, 0.5, 0.75, 0.75]),
        format!("witness {}", p["witness"]),
    )?;
    let (lhs, rhs) = (num(&p["lhs"]), num(&p["rhs"]));
    ensure(
        lhs == 0.0 && (rhs - 0.0625).abs() <= POINT_TOL,
        format!("{lhs} vs {rhs}"),
    )?;
    Ok(format!(
        "holds on {{0, 1}}; violated on [0, 1], first witness {}, (0.5, 0.5, 0.75, 0.75) gives 0 < {rhs}",
        r["result"]["verdict"]["witness"]
    ))
}

fn godel() -> Check {
    let mut found = Vec::new();
    for name in ["godel-q-condition", "godel-contra-q-condition"] {
        let (code, r, _) = repro(name);
        let v = &r["result"]["verdict"];
        ensure(
            code == 1 && v["status"] == "violated",
            format!("{name}: not violated"),
        )?;
        ensure(
            v["evidence"]["class"] == "grid" && num(&v["evidence"]["step"]) == 0.01,
            format!("{name}: evidence {}", v["evidence"]),
        )?;
        let w: Vec<f64> = v["witness"]
            .as_array()
            .expect("witness")
            .iter()
            .map(num)
            .collect();
        let (a, b, c) = (w[0], w[1], w[2]);
        ensure(
            b == 1.0 && a > 0.0 && c > 0.0 && a + c <= 1.0,
            format!("{name}: witness {w:?}"),
        )?;
        found.push(format!("{name} at {w:?}"));
    }
    Ok(found.join(", "))
}

fn affine_shape() -> Check {
    let (code, r, _) = repro("affine-shape-undefined-inverse");
    let v = &r["result"]["verdict"];
    ensure(code == 2, format!("exit code {code}"))?;
    ensure(v["status"] == "hypothesis_failed", format!("verdict {v}"))?;
    let value = num(&v["value"]);
    ensure((value - 0.4).abs() <= POINT_TOL, format!("value {value}"))?;
    let detail = v["detail"].as_str().unwrap_or_default();
    ensure(
        detail.contains("inverse") && detail.contains("undefined"),
        detail,
    )?;
    Ok(detail.to_string())
}

fn properties() -> Check {
    let expected = [
        ("integral_matches_oracle", 1000),
        ("scalar_forms_agree", 200),
        ("comonotone_sugeno_inequality", 1000),
        ("minitive_any_functions", 500),
        ("minitive_measure_dependence", 300),
        ("supermodular_lukasiewicz_dependence", 300),
        ("godel_small_measure_dependence", 300),
    ];
    let (code, r, t) = repro("property-suite");
    let props = r["result"]["properties"].as_array().expect("properties");
    for (name, trials) in expected {
        let p = props
            .iter()
            .find(|p| p["name"] == name)
            .ok_or(format!("{name} missing"))?;
        ensure(
            num(&p["trials"]) as usize >= trials,
            format!("{name}: {} trials", p["trials"]),
        )?;
        ensure(
            p["failures"] == 0,
            format!("{name}: {}", p["first_failure"]),
        )?;
    }
    let dominance = props
        .iter()
        .find(|p| p["name"] == "min_dominates_lukasiewicz")
        .ok_or("dominance check missing")?;
    ensure(
        dominance["failures"] == 0,
        "min does not dominate lukasiewicz",
    )?;
    ensure(code == 0, format!("exit code {code}"))?;
    ensure(t < PROPERTY_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{} properties, zero failures, {t:?}", props.len()))
}

fn determinism() -> Check {
    let first = app::run(["sugeno", "repro", "--all", "--json"]);
    let second = app::run(["sugeno", "repro", "--all", "--json"]);
    let count = serde_json::from_str::<Value>(&first.stdout)
        .map_err(|e| e.to_string())?
        .as_array()
        .map_or(0, Vec::len);
    ensure(first.stdout == second.stdout, "reports differ between runs")?;
    ensure(count > 0, "no reports")?;
    Ok(format!(
        "{count} reports, {} bytes, identical",
        first.stdout.len()
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("counterexample refutes the inequality", daraby),
        ("minitive capacity integrals by bisection", minitive_values),
        ("Lebesgue pair reaches equality", lebesgue),
        (
            "lukasiewicz condition depends on the measure range",
            lukasiewicz_range,
        ),
        ("Gödel q-condition witnesses", godel),
        ("affine shape has undefined inverse at 0.4", affine_shape),
        ("property suite", properties),
        ("bundled reports are byte-stable", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS {}. {name}: {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {}. {name}: panicked", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
