use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use clap::{ArgGroup, Args};
use serde::Serialize;
use serde_json::json;
use springopt_core::bounds::{
    self, Certification, DominanceReport, SubcaseBound, DEFAULT_BOX, RECOMMENDED_SAMPLES,
};
use springopt_core::eval::Limits;
use springopt_core::loading::{simulate_loading, Ramp};
use springopt_core::report;
use springopt_core::solve::{self, BruteResult, SearchBox};
use springopt_core::{canonical_case, evaluate, parse_topology, response_force, CaseId, SpTree};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Infeasible,
    Violation,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Infeasible => 2,
            Outcome::Violation => 3,
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn write_to(path: Option<&Path>, body: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(err),
    }
}

/// Writes the rendering matching the configured format.
fn emit<T: Serialize>(
    cfg: &RunConfig,
    value: &T,
    text: impl FnOnce() -> String,
    csv: impl FnOnce() -> String,
) -> Result<(), String> {
    let body = match cfg.format {
        Format::Text => text(),
        Format::Csv => csv(),
        Format::Json => serde_json::to_string_pretty(value).map_err(err)? + "\n",
    };
    write_to(cfg.output.as_deref(), &body)
}

fn case_id(n: u8) -> Result<CaseId, String> {
    CaseId::new(n).map_err(err)
}

fn fixed_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

pub fn list_cases(cfg: &RunConfig, subcases: bool) -> CmdResult {
    if subcases {
        let rows = bounds::registry();
        let value: Vec<_> = rows
            .iter()
            .map(|b| {
                json!({
                    "subcase": b.label, "case": b.case(), "mirror_of": b.mirror_of,
                    "variables": b.variables, "domain": b.domain_text, "force": b.force_text,
                    "performance": b.performance_text, "cost": b.cost_text, "lift": b.lift_text,
                })
            })
            .collect();
        emit(
            cfg,
            &value,
            || report::registry_text(rows),
            || report::registry_csv(rows),
        )?;
        return Ok(Outcome::Success);
    }
    let rows: Vec<(CaseId, SpTree)> = CaseId::all().map(|id| (id, canonical_case(id))).collect();
    let value: Vec<_> = rows
        .iter()
        .map(|(id, t)| json!({"case": id, "topology": t.to_string(), "resistance": id.resistance_formula()}))
        .collect();
    emit(
        cfg,
        &value,
        || {
            rows.iter()
                .map(|(id, t)| format!("{id}  {t}  {}\n", id.resistance_formula()))
                .collect()
        },
        || {
            let mut out = String::from("case,topology,resistance\n");
            for (id, t) in &rows {
                let _ = writeln!(
                    out,
                    "{id},{},{}",
                    report::csv_field(&t.to_string()),
                    report::csv_field(id.resistance_formula())
                );
            }
            out
        },
    )?;
    Ok(Outcome::Success)
}

/// A network and its limits.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("network").required(true).args(["case", "topology"])))]
pub struct Target {
    /// Arrangement 1..=10.
    #[arg(long)]
    pub case: Option<u8>,
    /// Topology such as `s(1,p(2,3))`.
    #[arg(long)]
    pub topology: Option<String>,
    /// Elastic limits, comma separated.
    #[arg(
        long = "c",
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub c: Vec<f64>,
}

impl Target {
    fn resolve(&self) -> Result<(SpTree, Limits), String> {
        let tree = match (self.case, &self.topology) {
            (Some(n), _) => canonical_case(case_id(n)?),
            (None, Some(expr)) => parse_topology(expr).map_err(err)?,
            (None, None) => return Err("pass --case or --topology".into()),
        };
        let c = Limits::new(self.c.clone()).map_err(err)?;
        if c.len() != tree.spring_count() {
            return Err(format!(
                "{} has {} springs but {} limits were given",
                tree,
                tree.spring_count(),
                c.len()
            ));
        }
        Ok((tree, c))
    }
}

pub fn eval(cfg: &RunConfig, target: &Target) -> CmdResult {
    let (tree, c) = target.resolve()?;
    let p = &cfg.params;
    let e = evaluate(&tree, &c, p).map_err(err)?;
    // constraints count as met within the run tolerance
    let strength_ok = e.force >= p.f_min - cfg.tol;
    let fr_ok = e.performance >= p.fr_min - cfg.tol;
    let value = json!({
        "topology": tree.to_string(), "c": c.as_slice(), "F": e.force, "R": e.resistance,
        "FR": e.performance, "C": e.cost, "feasible_strength": strength_ok, "feasible_FR": fr_ok,
    });
    emit(
        cfg,
        &value,
        || {
            format!(
                "topology={tree}\nF={:.6} R={:.6} FR={:.6} C={:.6}\nfeasible_strength={strength_ok} (F-fmin={:.3e})\nfeasible_FR={fr_ok} (FR-frmin={:.3e})\n",
                e.force,
                e.resistance,
                e.performance,
                e.cost,
                e.force - p.f_min,
                e.performance - p.fr_min
            )
        },
        || {
            format!(
                "topology,F,R,FR,C,feasible_strength,feasible_FR\n{},{},{},{},{},{strength_ok},{fr_ok}\n",
                report::csv_field(&tree.to_string()),
                e.force,
                e.resistance,
                e.performance,
                e.cost
            )
        },
    )?;
    Ok(if strength_ok && fr_ok {
        Outcome::Success
    } else {
        Outcome::Infeasible
    })
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["all", "case"])))]
pub struct SolveArgs {
    /// Every subcase of every arrangement.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub case: Option<u8>,
}

pub fn solve(cfg: &RunConfig, args: &SolveArgs) -> CmdResult {
    let report = match args.case {
        Some(n) => solve::solve_case(case_id(n)?, &cfg.params, cfg.tol),
        None => solve::solve_all(&cfg.params, cfg.tol),
    }
    .map_err(err)?;
    emit(
        cfg,
        &report,
        || report::solve_text(&report),
        || report::solve_csv(&report),
    )?;
    Ok(if report.best.is_some() {
        Outcome::Success
    } else {
        Outcome::Infeasible
    })
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["all", "case"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub case: Option<u8>,
    /// Samples per subcase for each check.
    #[arg(long, default_value_t = RECOMMENDED_SAMPLES)]
    pub samples: usize,
    /// Target cost; defaults to the cheapest solved design.
    #[arg(long)]
    pub cstar: Option<f64>,
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    dominance: DominanceReport,
    certification: Certification,
    /// Certification must pass: the subcase belongs to another arrangement
    /// than the optimum.
    required: bool,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    c_star: f64,
    best_label: Option<&'static str>,
    samples: usize,
    seed: u64,
    rows: Vec<VerifyRow>,
    violations: usize,
    failed_certifications: usize,
}

fn slack_range(lo: f64, hi: f64) -> String {
    if lo.is_finite() && hi.is_finite() {
        format!("[{lo:.3e}, {hi:.3e}]")
    } else {
        "-".into()
    }
}

pub fn verify(cfg: &RunConfig, args: &VerifyArgs) -> CmdResult {
    if args.samples == 0 {
        return Err("--samples must be positive".into());
    }
    if args.samples < RECOMMENDED_SAMPLES {
        eprintln!(
            "warning: {} samples is below the recommended {RECOMMENDED_SAMPLES}",
            args.samples
        );
    }
    let solved = solve::solve_all(&cfg.params, cfg.tol).map_err(err)?;
    let best_case = solved
        .best
        .as_ref()
        .map(|b| bounds::lookup(b.label).expect("registry label").case());
    let c_star = match (args.cstar, &solved.best) {
        (Some(v), _) => v,
        (None, Some(b)) => b.cost,
        (None, None) => {
            return Err("no feasible design to take the target cost from; pass --cstar".into())
        }
    };
    let scope: Vec<&SubcaseBound> = match args.case {
        Some(n) => bounds::subcases_of(case_id(n)?).collect(),
        None => bounds::registry().iter().collect(),
    };
    let mut rows = Vec::new();
    for b in scope {
        let dominance =
            bounds::check_dominance(b, &cfg.params, args.samples, cfg.seed, DEFAULT_BOX)
                .map_err(err)?;
        let certification =
            bounds::certify(b, &cfg.params, c_star, args.samples, cfg.seed, DEFAULT_BOX)
                .map_err(err)?;
        rows.push(VerifyRow {
            dominance,
            certification,
            required: Some(b.case()) != best_case,
        });
    }
    let violations = rows.iter().map(|r| r.dominance.violations.len()).sum();
    let failed_certifications = rows
        .iter()
        .filter(|r| r.required && !r.certification.certified())
        .count();
    let report = VerifyReport {
        c_star,
        best_label: solved.best.as_ref().map(|b| b.label),
        samples: args.samples,
        seed: cfg.seed,
        rows,
        violations,
        failed_certifications,
    };
    emit(
        cfg,
        &report,
        || verify_text(&report),
        || verify_csv(&report),
    )?;
    Ok(if violations == 0 && failed_certifications == 0 {
        Outcome::Success
    } else {
        Outcome::Violation
    })
}

fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cstar={:.6} best={} samples={} seed={}",
        r.c_star,
        r.best_label.unwrap_or("-"),
        r.samples,
        r.seed
    );
    for row in &r.rows {
        let d = &row.dominance;
        let c = &row.certification;
        let cert = match (c.certified(), c.empty_sublevel) {
            (true, true) => "pass (empty sublevel set)".to_string(),
            (true, false) => "pass".to_string(),
            (false, _) => format!(
                "FAIL ({} counterexamples, e.g. {})",
                c.counterexamples,
                c.example.as_deref().map(fixed_list).unwrap_or_default()
            ),
        };
        let _ = writeln!(
            out,
            "{:<5} dominance={} accepted={} violations={} FR_slack={} C_slack={} certification{}={}",
            d.label,
            if d.passed() { "pass" } else { "FAIL" },
            d.accepted,
            d.violations.len(),
            slack_range(d.min_performance_slack, d.max_performance_slack),
            slack_range(d.min_cost_slack, d.max_cost_slack),
            if row.required { "" } else { "(informational)" },
            cert
        );
    }
    let _ = writeln!(
        out,
        "{} violations across {} subcases",
        r.violations,
        r.rows.len()
    );
    if r.failed_certifications > 0 {
        let _ = writeln!(
            out,
            "{} required certifications failed",
            r.failed_certifications
        );
    }
    out
}

fn verify_csv(r: &VerifyReport) -> String {
    let mut out = String::from(
        "subcase,accepted,violations,min_performance_slack,max_performance_slack,min_cost_slack,max_cost_slack,certified,required,counterexamples\n",
    );
    for row in &r.rows {
        let d = &row.dominance;
        let c = &row.certification;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            d.label,
            d.accepted,
            d.violations.len(),
            d.min_performance_slack,
            d.max_performance_slack,
            d.min_cost_slack,
            d.max_cost_slack,
            c.certified(),
            row.required,
            c.counterexamples
        );
    }
    out
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["case", "subcase"])))]
pub struct RegionsArgs {
    /// Arrangement with a single subcase.
    #[arg(long)]
    pub case: Option<u8>,
    #[arg(long)]
    pub subcase: Option<String>,
    /// Grid nodes per axis.
    #[arg(long, default_value_t = 200)]
    pub res: usize,
}

pub const REGIONS_HEADER_2D: &str = "x,y,F_tilde_R,C_tilde,feasible_strength,feasible_FR";
pub const REGIONS_HEADER_1D: &str = "x,F_tilde_R,C_tilde,feasible_strength,feasible_FR";

pub fn regions(cfg: &RunConfig, args: &RegionsArgs) -> CmdResult {
    let bound = match (&args.subcase, args.case) {
        (Some(label), _) => bounds::lookup(label).map_err(err)?,
        (None, Some(n)) => {
            let subs: Vec<_> = bounds::subcases_of(case_id(n)?).collect();
            match subs.as_slice() {
                [one] => *one,
                many => {
                    let labels: Vec<_> = many.iter().map(|b| b.label).collect();
                    return Err(format!(
                        "case {n} has subcases {}; pick one with --subcase",
                        labels.join(", ")
                    ));
                }
            }
        }
        (None, None) => unreachable!("clap requires one of --case, --subcase"),
    };
    if args.res == 0 {
        return Err("--res must be positive".into());
    }
    // nodes upper*i/res for i = 1..=res; one cell per row, exact at simple fractions
    let upper = SearchBox::default().upper;
    let axis: Vec<f64> = (1..=args.res)
        .map(|i| upper * i as f64 / args.res as f64)
        .collect();
    let p = &cfg.params;
    let mut out = String::new();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut row = |out: &mut String, x: &[f64]| {
        let fr = bound.performance(x, p);
        let cost = bound.cost(x);
        let strength_ok = bound.strength(x) >= p.f_min;
        let fr_ok = fr.is_some_and(|v| v >= p.fr_min);
        for v in x {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(
            out,
            "{},{cost},{strength_ok},{fr_ok}",
            fr.unwrap_or(f64::NAN)
        );
        if strength_ok && fr_ok && best.as_ref().is_none_or(|b| cost < b.0) {
            best = Some((cost, x.to_vec()));
        }
    };
    if bound.dim() == 1 {
        out.push_str(REGIONS_HEADER_1D);
        out.push('\n');
        for &x in &axis {
            row(&mut out, &[x]);
        }
    } else {
        out.push_str(REGIONS_HEADER_2D);
        out.push('\n');
        for &x in &axis {
            for &y in &axis {
                row(&mut out, &[x, y]);
            }
        }
    }
    write_to(cfg.output.as_deref(), &out)?;
    let summary = match &best {
        Some((cost, x)) => format!(
            "subcase {}: cheapest feasible cell {} cost={cost:.6}",
            bound.label,
            fixed_list(x)
        ),
        None => format!("subcase {}: no feasible cell", bound.label),
    };
    // keep stdout clean when it carries the CSV
    if cfg.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(Outcome::Success)
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["all", "case"])))]
pub struct BruteArgs {
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub case: Option<u8>,
    /// Grid step; the grid starts at one step.
    #[arg(long)]
    pub grid_step: Option<f64>,
    /// Upper end of every axis.
    #[arg(long)]
    pub grid_max: Option<f64>,
}

pub fn brute(cfg: &RunConfig, args: &BruteArgs) -> CmdResult {
    let cases: Vec<CaseId> = match args.case {
        Some(n) => vec![case_id(n)?],
        None => CaseId::all().collect(),
    };
    let results = cases
        .into_iter()
        .map(|id| solve::brute_force(id, &cfg.params, &cfg.grid))
        .collect::<Result<Vec<BruteResult>, _>>()
        .map_err(err)?;
    let best = results
        .iter()
        .filter_map(|r| r.best_cost.map(|c| (r.case, c)))
        .fold(None, |acc: Option<(CaseId, f64)>, (id, c)| match acc {
            Some((_, b)) if b <= c => acc,
            _ => Some((id, c)),
        });
    let value = json!({"grid": cfg.grid, "results": results, "best": best.map(|(id, c)| json!({"case": id, "cost": c}))});
    emit(
        cfg,
        &value,
        || {
            let mut out = format!(
                "grid lower={} upper={} step={}\n",
                cfg.grid.lower, cfg.grid.upper, cfg.grid.step
            );
            for r in &results {
                match (&r.best, r.best_cost) {
                    (Some(c), Some(cost)) => {
                        let _ = writeln!(
                            out,
                            "case={} cost={cost:.6} c={} feasible={} evaluated={}",
                            r.case,
                            fixed_list(c),
                            r.feasible,
                            r.evaluated
                        );
                    }
                    _ => {
                        let _ =
                            writeln!(out, "case={} infeasible evaluated={}", r.case, r.evaluated);
                    }
                }
            }
            if let Some((id, c)) = best {
                let _ = writeln!(out, "BEST case={id} cost={c:.6}");
            }
            out
        },
        || {
            let mut out = String::from("case,best_cost,c,feasible,evaluated\n");
            for r in &results {
                let c = r.best.as_deref().map(|c| {
                    c.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                });
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.case,
                    r.best_cost.map(|v| v.to_string()).unwrap_or_default(),
                    c.unwrap_or_default(),
                    r.feasible,
                    r.evaluated
                );
            }
            out
        },
    )?;
    Ok(if best.is_some() {
        Outcome::Success
    } else {
        Outcome::Infeasible
    })
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub target: Target,
    /// Spring stiffnesses; one value applies to every spring.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 5000)]
    pub steps: usize,
    /// Final elongation; defaults to twice the sum of c_i / k_i.
    #[arg(long)]
    pub ramp: Option<f64>,
}

pub fn simulate(cfg: &RunConfig, args: &SimulateArgs) -> CmdResult {
    let (tree, c) = args.target.resolve()?;
    let k = match args.k.as_slice() {
        [one] => vec![*one; c.len()],
        many if many.len() == c.len() => many.to_vec(),
        many => {
            return Err(format!(
                "{} stiffnesses given for {} springs",
                many.len(),
                c.len()
            ))
        }
    };
    let ramp = match args.ramp {
        Some(total) => Ramp {
            total,
            steps: args.steps,
        },
        None => Ramp::covering(&c, &k, args.steps),
    };
    let run = simulate_loading(&tree, &c, &k, ramp).map_err(err)?;
    let formula = response_force(&tree, &c).map_err(err)?;
    if let Some(path) = &cfg.output {
        let mut csv = String::from("elongation,force\n");
        for (u, f) in run.elongation.iter().zip(&run.force) {
            let _ = writeln!(csv, "{u},{f}");
        }
        write_to(Some(path), &csv)?;
    }
    println!(
        "F_sim={:.6} F_formula={:.6} diff={:.3e} ramp={} steps={}",
        run.max_force,
        formula,
        (run.max_force - formula).abs(),
        ramp.total,
        ramp.steps
    );
    Ok(Outcome::Success)
}
