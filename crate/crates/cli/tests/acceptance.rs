//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use springopt_core::bounds::{check_dominance, registry, DEFAULT_BOX};
use springopt_core::loading::{simulate_loading, Ramp};
use springopt_core::network::random_tree;
use springopt_core::solve::{brute_force, solve_case, GridSpec};
use springopt_core::{
    canonical_case, evaluate, resistance, response_force, CaseId, ConstraintParams, Limits,
};

const C_STAR: f64 = 27.0 / 13.0;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn springopt(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_springopt"))
        .args(args)
        .env_remove("SPRINGOPT_CONFIG")
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse_tuple(s: &str) -> Vec<f64> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(", ")
        .map(|v| v.parse().unwrap())
        .collect()
}

fn ac1() -> Check {
    let start = Instant::now();
    let (code, out) = springopt(&["solve", "--all"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit {code}"))?;
    let line = out
        .lines()
        .find(|l| l.starts_with("BEST "))
        .ok_or("no BEST line")?;
    ensure(line.starts_with("BEST case=9.1 cost=2.076923"), || {
        line.to_string()
    })?;
    let c = parse_tuple(line.split("c=").nth(1).ok_or("no c")?);
    let want = [0.75, 0.576923, 0.576923, 0.173077];
    ensure(
        c.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-6),
        || format!("c = {c:?}"),
    )?;
    // exact rationals through the library at full precision
    let lib = springopt_core::solve::solve_all(&ConstraintParams::default(), 1e-6)
        .map_err(|e| e.to_string())?;
    let best = lib.best.ok_or("no best")?;
    let exact = [0.75, 15.0 / 26.0, 15.0 / 26.0, 9.0 / 52.0];
    ensure(
        best.c.iter().zip(exact).all(|(a, b)| (a - b).abs() <= 1e-6),
        || format!("{:?}", best.c),
    )?;
    ensure((best.cost - C_STAR).abs() <= 1e-6, || {
        format!("cost {}", best.cost)
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("best 9.1 cost {:.9} in {elapsed:.2?}", best.cost))
}

fn ac2() -> Check {
    let c = Limits::new(vec![0.75, 15.0 / 26.0, 15.0 / 26.0, 9.0 / 52.0]).unwrap();
    let e = evaluate(
        &canonical_case(CaseId::new(9).unwrap()),
        &c,
        &ConstraintParams::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure((e.force - 0.75).abs() <= 1e-9, || {
        format!("F = {}", e.force)
    })?;
    ensure((e.performance - 0.5).abs() <= 1e-9, || {
        format!("F_R = {}", e.performance)
    })?;
    ensure((e.resistance - 3.5).abs() <= 1e-12, || {
        format!("R = {}", e.resistance)
    })?;
    Ok(format!(
        "F={} F_R={} R={}",
        e.force, e.performance, e.resistance
    ))
}

fn ac3() -> Check {
    let (code, out) = springopt(&[
        "verify",
        "--all",
        "--cstar",
        "2.076923",
        "--samples",
        "100000",
    ]);
    ensure(code == 0, || format!("exit {code}\n{out}"))?;
    let mut certified = 0;
    for line in out
        .lines()
        .filter(|l| !l.starts_with("9.") && l.contains("certification"))
    {
        ensure(line.contains("certification=pass"), || line.to_string())?;
        certified += 1;
    }
    ensure(certified == 13, || {
        format!("{certified} subcases certified")
    })?;
    ensure(out.contains("0 violations across 15 subcases"), || {
        out.clone()
    })?;
    let p = ConstraintParams::default();
    let cost = |label: &str, case: u8| -> Result<f64, String> {
        let r = solve_case(CaseId::new(case).unwrap(), &p, 1e-6).map_err(|e| e.to_string())?;
        r.subcases
            .iter()
            .find(|s| s.label == label)
            .and_then(|s| s.cost)
            .ok_or(format!("{label} infeasible"))
    };
    let (c2, c61) = (cost("2", 2)?, cost("6.1", 6)?);
    ensure((c2 - 3.0).abs() <= 1e-6, || format!("case 2 cost {c2}"))?;
    ensure((c61 - 4.0).abs() <= 1e-6, || format!("case 6.1 cost {c61}"))?;
    Ok(format!(
        "13 subcases certified at 1e5 samples; case 2 = {c2}, 6.1 = {c61}"
    ))
}

fn ac4() -> Check {
    let p = ConstraintParams::default();
    let start = Instant::now();
    let mut accepted = 0;
    for bound in registry() {
        for seed in 1..=5 {
            let r = check_dominance(bound, &p, 100_000, seed, DEFAULT_BOX)
                .map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("{} seed {seed}: {:?}", bound.label, r.violations.first())
            })?;
            accepted += r.accepted;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "0 violations, {accepted} in-domain samples, {elapsed:.2?}"
    ))
}

fn ac5() -> Check {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let p = ConstraintParams::default();
    let grid = GridSpec::uniform(0.02, 2.5);
    let start = Instant::now();
    let results = pool.install(|| {
        CaseId::all()
            .map(|id| {
                brute_force(id, &p, &grid).map(|r| (id, r.best_cost.unwrap_or(f64::INFINITY)))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let elapsed = start.elapsed();
    let results = results.map_err(|e| e.to_string())?;
    let (best_id, best) =
        results
            .iter()
            .copied()
            .fold((CaseId::new(1).unwrap(), f64::INFINITY), |a, b| {
                if b.1 < a.1 {
                    b
                } else {
                    a
                }
            });
    ensure(best_id.get() == 9, || {
        format!("grid minimum at case {best_id}: {results:?}")
    })?;
    ensure((best - C_STAR).abs() <= 0.08, || {
        format!("case 9 grid cost {best}")
    })?;
    for (id, cost) in &results {
        ensure(*cost >= C_STAR - 0.08, || {
            format!("case {id} grid cost {cost}")
        })?;
    }
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    let others = results
        .iter()
        .filter(|(id, _)| id.get() != 9)
        .map(|r| r.1)
        .fold(f64::INFINITY, f64::min);
    Ok(format!(
        "case 9 grid cost {best:.2}, next best {others:.2}, {elapsed:.1?} on one thread"
    ))
}

fn closed_resistance(case: u8, c: &[f64]) -> f64 {
    let inv = |x: f64| 1.0 / x;
    let (c1, c2, c3, c4) = (c[0], c[1], c[2], c[3]);
    match case {
        1 => inv(c1) + inv(c2 + c3) + inv(c4),
        2 => inv(c1) + inv(c2) + inv(c3) + inv(c4),
        3 => inv(inv(inv(c1) + inv(c2)) + inv(inv(c3) + inv(c4))),
        4 => inv(inv(inv(c1) + inv(c2) + inv(c3)) + c4),
        5 => inv(inv(inv(c1) + inv(c2)) + c3 + c4),
        6 => inv(c1) + inv(c2 + c3 + c4),
        7 => inv(c1 + c3) + inv(c2 + c4),
        8 => inv(c1 + c2 + c3 + c4),
        9 => inv(c1) + inv(c4 + inv(inv(c2) + inv(c3))),
        10 => inv(c4 + inv(inv(c1) + inv(c2 + c3))),
        _ => unreachable!(),
    }
}

fn ac6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for id in CaseId::all() {
        let tree = canonical_case(id);
        for _ in 0..1000 {
            let v: Vec<f64> = (0..4).map(|_| rng.gen_range(0.01..5.0)).collect();
            let c = Limits::new(v.clone()).unwrap();
            let r = resistance(&tree, &c).map_err(|e| e.to_string())?;
            let want = closed_resistance(id.get(), &v);
            let rel = (r - want).abs() / want;
            worst = worst.max(rel);
            ensure(rel <= 1e-12, || format!("case {id} c={v:?}: {r} vs {want}"))?;
            let f = response_force(&tree, &c).map_err(|e| e.to_string())?;
            for k in [0.5, 2.0, 10.0] {
                let s = c.scaled(k).map_err(|e| e.to_string())?;
                let rs = resistance(&tree, &s).map_err(|e| e.to_string())?;
                let fs = response_force(&tree, &s).map_err(|e| e.to_string())?;
                ensure((rs - r / k).abs() <= 1e-12 * (r / k), || {
                    format!("R scaling case {id} k={k}")
                })?;
                ensure((fs - f * k).abs() <= 1e-12 * (f * k), || {
                    format!("F scaling case {id} k={k}")
                })?;
            }
        }
    }
    Ok(format!("10000 limits, worst relative error {worst:.1e}"))
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let m = rng.gen_range(1..=6);
        let tree = random_tree(&mut rng, m);
        let c = Limits::new((0..m).map(|_| rng.gen_range(0.1..2.0)).collect()).unwrap();
        let formula = response_force(&tree, &c).map_err(|e| e.to_string())?;
        let unit = vec![1.0; m];
        let run = simulate_loading(&tree, &c, &unit, Ramp::covering(&c, &unit, 5000))
            .map_err(|e| e.to_string())?;
        let k: Vec<f64> = (0..m).map(|_| rng.gen_range(0.5..2.0)).collect();
        let stiff = simulate_loading(&tree, &c, &k, Ramp::covering(&c, &k, 5000))
            .map_err(|e| e.to_string())?;
        let err = (run.max_force - formula).abs();
        let shift = (stiff.max_force - run.max_force).abs();
        worst = worst.max(err).max(shift);
        ensure(err <= 1e-3, || {
            format!("{tree} c={c:?}: sim {} vs {formula}", run.max_force)
        })?;
        ensure(shift <= 1e-3, || {
            format!("{tree} k={k:?}: {} vs {}", stiff.max_force, run.max_force)
        })?;
    }
    Ok(format!("200 trees, worst deviation {worst:.1e}"))
}

fn ac8() -> Check {
    let dir = std::env::temp_dir().join(format!("springopt-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let rows = |subcase: &str, res: &str| -> Result<Vec<Vec<String>>, String> {
        let path = dir.join(format!("{subcase}.csv"));
        let (code, _) = springopt(&[
            "regions",
            "--subcase",
            subcase,
            "--res",
            res,
            "--out",
            path.to_str().unwrap(),
        ]);
        ensure(code == 0, || format!("regions {subcase} exit {code}"))?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        Ok(text
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect())
    };
    let six = rows("6.1", "400")?;
    // 1-D: x, F_tilde_R, C_tilde, feasible_strength, feasible_FR
    let cheap = six
        .iter()
        .filter(|r| r[3] == "true" && r[4] == "true" && r[2].parse::<f64>().unwrap() < 2.077)
        .count();
    ensure(cheap == 0, || {
        format!("{cheap} feasible cells of 6.1 below 2.077")
    })?;
    let nine = rows("9.1", "400")?;
    ensure(nine.len() == 160_000, || format!("{} rows", nine.len()))?;
    let width = 3.0 / 400.0;
    let near = nine.iter().find(|r| {
        let (x, y): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        r[4] == "true" && r[5] == "true" && (x - 0.75).abs() <= width && (y - 0.5769).abs() <= width
    });
    let near = near.ok_or("no feasible 9.1 cell within one cell width of (0.75, 0.5769)")?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "6.1 has no cheap feasible cell; 9.1 feasible cell at ({}, {})",
        near[0], near[1]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 optimum reproduction", ac1),
        ("AC2 active constraints at the optimum", ac2),
        ("AC3 non-reachability and closed-form cases", ac3),
        ("AC4 dominance suite", ac4),
        ("AC5 brute-force corroboration", ac5),
        ("AC6 evaluator identities", ac6),
        ("AC7 simulator oracle", ac7),
        ("AC8 region data", ac8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
