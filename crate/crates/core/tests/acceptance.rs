//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails. All comparisons are exact.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use stirling_core::identity::{self, IdentityId, IdentityReport, ReportSet};
use stirling_core::oracle::{self, EnumerationBudget};
use stirling_core::poly::{self, Poly};
use stirling_core::stirling::Fault;
use stirling_core::{BigInt, BigRat, IndexCap, StirlingEngine, StirlingKind};

type Outcome = Result<String, String>;

struct Criterion {
    label: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let engine = StirlingEngine::default();
    let budget = EnumerationBudget::DEFAULT;
    let mut cases = 0;
    for n in 1..=10 {
        let cycles = oracle::cycle_count_histogram(budget, n).map_err(|e| e.to_string())?;
        let blocks = oracle::block_count_histogram(budget, n).map_err(|e| e.to_string())?;
        for m in 1..=n {
            let unsigned = engine.stirling(StirlingKind::FirstUnsigned, n, m).unwrap();
            let signed = engine.stirling(StirlingKind::FirstSigned, n, m).unwrap();
            ensure(unsigned == BigInt::from(cycles[m]), || {
                format!("first kind ({n},{m})")
            })?;
            ensure(BigInt::from(signed.magnitude().clone()) == unsigned, || {
                format!("sign ({n},{m})")
            })?;
            let second = engine.stirling(StirlingKind::Second, n, m).unwrap();
            ensure(second == BigInt::from(blocks[m]), || {
                format!("second kind ({n},{m})")
            })?;
            cases += 2;
        }
    }
    ensure(cases == 110, || format!("expected 110 cases, ran {cases}"))?;
    Ok(format!("{cases} cases"))
}

fn conversions() -> Outcome {
    let engine = StirlingEngine::default();
    let mut cases = 0;
    for n in 1..=40 {
        for m in 1..=n {
            let s1 = engine.stirling(StirlingKind::FirstSigned, n, m).unwrap();
            let s2 = engine.stirling(StirlingKind::Second, n, m).unwrap();
            ensure(engine.first_from_second(n, m).unwrap() == s1, || {
                format!("s1 ({n},{m})")
            })?;
            ensure(engine.second_from_first(n, m).unwrap() == s2, || {
                format!("s2 ({n},{m})")
            })?;
            cases += 2;
        }
    }
    Ok(format!("{cases} values"))
}

fn orthogonality() -> Outcome {
    let engine = StirlingEngine::default();
    let mut pairs = 0;
    for j in 0..=30 {
        for k in 0..=30 {
            let c = identity::check_orthogonality(&engine, j, k).unwrap();
            let delta = if j == k {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            ensure(c.expected == delta, || format!("delta ({j},{k})"))?;
            ensure(c.first_second == delta, || {
                format!("first-second sum at ({j},{k}) = {}", c.first_second)
            })?;
            ensure(c.second_first == delta, || {
                format!("second-first sum at ({j},{k}) = {}", c.second_first)
            })?;
            pairs += 1;
        }
    }
    ensure(pairs == 961, || format!("{pairs} pairs"))?;
    Ok(format!("{pairs} pairs each"))
}

fn unit_sums() -> Outcome {
    let engine = StirlingEngine::default();
    for m in 1..=60 {
        let a = identity::check_unit_sum_first(&engine, m).unwrap();
        let b = identity::check_unit_sum_second(&engine, m).unwrap();
        ensure(a.is_one() && b.is_one(), || format!("m = {m}: {a}, {b}"))?;
    }
    Ok("m = 1..=60".into())
}

fn basis_polys() -> Outcome {
    let engine = StirlingEngine::default();
    for m in 1..=40 {
        let want = Poly::monomial(m);
        ensure(poly::basis_poly_first(&engine, m).unwrap() == want, || {
            format!("first, m = {m}")
        })?;
        ensure(poly::basis_poly_second(&engine, m).unwrap() == want, || {
            format!("second, m = {m}")
        })?;
    }
    let points = [
        BigRat::from_integer(1.into()),
        BigRat::from_integer((-2).into()),
        BigRat::new(3.into(), 7.into()),
    ];
    for x in &points {
        let mut power = BigRat::one();
        for m in 1..=25 {
            power *= x;
            let a = poly::poly_eval(&poly::basis_poly_first(&engine, m).unwrap(), x);
            let b = poly::poly_eval(&poly::basis_poly_second(&engine, m).unwrap(), x);
            ensure(a == power && b == power, || format!("x = {x}, m = {m}"))?;
        }
    }
    Ok("coefficient-wise m <= 40, 3 points m <= 25".into())
}

fn residuals() -> Outcome {
    let engine = StirlingEngine::default();
    for m in 1..=40 {
        ensure(
            poly::residual_poly_first(&engine, m).unwrap().is_zero(),
            || format!("first, m = {m}"),
        )?;
        ensure(
            poly::residual_poly_second(&engine, m).unwrap().is_zero(),
            || format!("second, j = {m}"),
        )?;
    }
    Ok("m = 1..=40".into())
}

fn row_relations() -> Outcome {
    let engine = StirlingEngine::default();
    for m in 2..=60 {
        let (l, r) = identity::check_row_relation_first(&engine, m).unwrap();
        ensure(l == r, || format!("first, m = {m}: {l} != {r}"))?;
        let (l, r) = identity::check_row_relation_second(&engine, m).unwrap();
        ensure(l == r, || format!("second, j = {m}: {l} != {r}"))?;
    }
    Ok("m = 2..=60".into())
}

fn deriv_relations() -> Outcome {
    let engine = StirlingEngine::default();
    for m in 2..=60 {
        let (l, r) = identity::check_deriv_relation_second(&engine, m).unwrap();
        ensure(l == r, || {
            format!("second-kind relation, m = {m}: {l} != {r}")
        })?;
        let (l, r) = identity::check_deriv_relation_first(&engine, m).unwrap();
        ensure(l == r, || {
            format!("first-kind relation, j = {m}: {l} != {r}")
        })?;
    }
    for m in 2..=40 {
        let (l, r) = identity::check_deriv_relation_second(&engine, m).unwrap();
        let linear = poly::linear_coefficient(&poly::residual_poly_first(&engine, m).unwrap());
        ensure(l == r && linear.is_zero(), || {
            format!("linear coefficient route, m = {m}: {linear}")
        })?;
    }
    Ok("m = 2..=60, linear-coefficient route m <= 40".into())
}

fn mutation_sensitivity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5712_11A6);
    let watched = [
        IdentityId::UnitSum5,
        IdentityId::UnitSum6,
        IdentityId::Orthogonality3,
        IdentityId::Residual13,
    ];
    let mut tried = Vec::new();
    for _ in 0..8 {
        let kind = if rng.gen_bool(0.5) {
            StirlingKind::FirstSigned
        } else {
            StirlingKind::Second
        };
        let n = rng.gen_range(0..=10);
        let m = rng.gen_range(0..=n);
        let engine =
            StirlingEngine::with_faults(IndexCap::DEFAULT, vec![Fault::bump(kind, n, m)]).unwrap();
        let failing: Vec<IdentityId> = watched
            .iter()
            .copied()
            .filter(|&id| !identity::run_identity(&engine, id, 12).unwrap().passed())
            .collect();
        ensure(!failing.is_empty(), || {
            format!("{kind}({n},{m}) +1 went unnoticed")
        })?;
        tried.push(format!("{kind}({n},{m})"));
    }
    Ok(format!("caught all of {}", tried.join(" ")))
}

fn validate_report(r: &Value) -> Result<(), String> {
    let obj = r.as_object().ok_or("report is not an object")?;
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    ensure(
        keys == ["counterexamples", "elapsed_ms", "id", "range", "status"],
        || format!("keys {keys:?}"),
    )?;
    let id = r["id"].as_str().ok_or("id not a string")?;
    ensure(id.parse::<IdentityId>().is_ok(), || {
        format!("unknown id {id}")
    })?;
    ensure(
        r["range"]["description"].is_string() && r["range"]["cases"].is_u64(),
        || "range".into(),
    )?;
    let status = r["status"].as_str().ok_or("status not a string")?;
    ensure(status == "pass" || status == "fail", || {
        format!("status {status}")
    })?;
    ensure(r["elapsed_ms"].is_u64(), || "elapsed_ms".into())?;
    let ces = r["counterexamples"]
        .as_array()
        .ok_or("counterexamples not an array")?;
    ensure((status == "pass") == ces.is_empty(), || {
        format!("{id}: status/counterexample mismatch")
    })?;
    for c in ces {
        ensure(
            c["indices"]
                .as_object()
                .is_some_and(|o| o.values().all(Value::is_u64)),
            || "indices".into(),
        )?;
        ensure(c["lhs"].is_string() && c["rhs"].is_string(), || {
            "lhs/rhs".into()
        })?;
    }
    Ok(())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_stirling");
    let run = |extra: &[&str]| {
        let mut args = vec![
            "verify",
            "--identity",
            "all",
            "--max",
            "25",
            "--format",
            "json",
        ];
        args.extend_from_slice(extra);
        Command::new(bin)
            .args(&args)
            .output()
            .map_err(|e| e.to_string())
    };

    let clean = run(&[])?;
    ensure(clean.status.code() == Some(0), || {
        format!("clean exit {:?}", clean.status.code())
    })?;
    let text = String::from_utf8(clean.stdout).map_err(|e| e.to_string())?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(doc["all_passed"] == Value::Bool(true), || {
        "all_passed".into()
    })?;
    let reports = doc["reports"].as_array().ok_or("reports not an array")?;
    ensure(reports.len() == 14, || format!("{} reports", reports.len()))?;
    for r in reports {
        validate_report(r)?;
        ensure(r["status"] == "pass", || {
            format!("{} did not pass", r["id"])
        })?;
    }
    let typed: ReportSet = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(
        serde_json::to_string(&typed).unwrap() == text.trim_end(),
        || "JSON does not round-trip".into(),
    )?;

    let faulty = run(&["--inject-fault", "second:6:3"])?;
    ensure(faulty.status.code() == Some(1), || {
        format!("faulted exit {:?}", faulty.status.code())
    })?;
    let doc: Value = serde_json::from_slice(&faulty.stdout).map_err(|e| e.to_string())?;
    ensure(doc["all_passed"] == Value::Bool(false), || {
        "faulted all_passed".into()
    })?;
    let mut serialized = 0;
    for r in doc["reports"].as_array().ok_or("reports")? {
        validate_report(r)?;
        let typed: IdentityReport = serde_json::from_value(r.clone()).map_err(|e| e.to_string())?;
        serialized += typed.counterexamples.len();
    }
    ensure(serialized >= 1, || "no counterexample serialized".into())?;
    Ok(format!(
        "14 pass reports; fault build exit 1 with {serialized} counterexamples"
    ))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            label: "AC1 oracle equivalence n <= 10",
            limit: secs(60),
            check: oracle_equivalence,
        },
        Criterion {
            label: "AC2 conversion sums n <= 40",
            limit: secs(10),
            check: conversions,
        },
        Criterion {
            label: "AC3 orthogonality j, k <= 30",
            limit: secs(5),
            check: orthogonality,
        },
        Criterion {
            label: "AC4 unit sums m <= 60",
            limit: secs(5),
            check: unit_sums,
        },
        Criterion {
            label: "AC5 basis polynomials m <= 40",
            limit: secs(10),
            check: basis_polys,
        },
        Criterion {
            label: "AC6 residual polynomials m <= 40",
            limit: secs(10),
            check: residuals,
        },
        Criterion {
            label: "AC7 row relations m <= 60",
            limit: secs(5),
            check: row_relations,
        },
        Criterion {
            label: "AC8 derivative relations m <= 60",
            limit: secs(5),
            check: deriv_relations,
        },
        Criterion {
            label: "AC9 mutation sensitivity",
            limit: None,
            check: mutation_sensitivity,
        },
        Criterion {
            label: "AC10 CLI verify contract",
            limit: None,
            check: cli_contract,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {:<36} {:>9.2?}  {detail}", c.label, elapsed),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:<36} {:>9.2?}  {why}", c.label, elapsed);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
