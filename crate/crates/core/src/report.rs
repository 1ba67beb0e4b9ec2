//! Text and CSV renderings. Text output rounds to six decimals; CSV keeps
//! the shortest representation that parses back to the same `f64`.

use std::fmt::Write as _;

use crate::bounds::SubcaseBound;
use crate::solve::SolveReport;

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

fn fixed_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| fixed(*x)).collect();
    format!("({})", parts.join(", "))
}

fn csv_list(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Quotes a CSV field when it holds a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn solve_text(report: &SolveReport) -> String {
    let p = &report.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "alpha={} beta={} fmin={} frmin={} tol={:e}",
        p.alpha, p.beta, p.f_min, p.fr_min, report.tol
    );
    let _ = writeln!(
        out,
        "{:<6} {:<10} {:<8} {:<24} {:<40} {:<10} active",
        "case", "status", "method", "x", "c", "cost"
    );
    for s in &report.subcases {
        let x = s.x.as_deref().map(fixed_list).unwrap_or_else(|| "-".into());
        let c = s.c.as_deref().map(fixed_list).unwrap_or_else(|| "-".into());
        let cost = s.cost.map(fixed).unwrap_or_else(|| "-".into());
        let method = s
            .method
            .map(|m| m.to_string())
            .unwrap_or_else(|| "-".into());
        let active = if s.active.is_empty() {
            "-".to_string()
        } else {
            s.active.join(",")
        };
        let _ = writeln!(
            out,
            "{:<6} {:<10} {:<8} {:<24} {:<40} {:<10} {}",
            s.label, s.status, method, x, c, cost, active
        );
        for w in &s.warnings {
            let _ = writeln!(out, "  warning[{}]: {w}", s.label);
        }
    }
    match &report.best {
        Some(b) => {
            let _ = writeln!(
                out,
                "BEST case={} cost={} c={}",
                b.label,
                fixed(b.cost),
                fixed_list(&b.c)
            );
        }
        None => {
            let _ = writeln!(out, "INFEASIBLE no subcase admits a feasible point");
        }
    }
    out
}

pub const SOLVE_CSV_HEADER: &str = "subcase,status,x,c,cost,active_constraints";

pub fn solve_csv(report: &SolveReport) -> String {
    let mut out = String::from(SOLVE_CSV_HEADER);
    out.push('\n');
    for s in &report.subcases {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.label,
            s.status,
            s.x.as_deref().map(csv_list).unwrap_or_default(),
            s.c.as_deref().map(csv_list).unwrap_or_default(),
            s.cost.map(|v| v.to_string()).unwrap_or_default(),
            csv_field(&s.active.join(";")),
        );
    }
    out
}

pub fn registry_text(rows: &[SubcaseBound]) -> String {
    let mut out = String::new();
    for b in rows {
        let _ = writeln!(
            out,
            "{} (case {}){}",
            b.label,
            b.case(),
            match b.mirror_of {
                Some(m) => format!(", mirror of {m}"),
                None => String::new(),
            }
        );
        let _ = writeln!(out, "  x        = ({})", b.variables.join(", "));
        let _ = writeln!(out, "  domain   : {}", b.domain_text);
        let _ = writeln!(out, "  F        = {}", b.force_text);
        let _ = writeln!(out, "  F~_R     = {}", b.performance_text);
        let _ = writeln!(out, "  C~       = {}", b.cost_text);
        let _ = writeln!(out, "  lift     : {}", b.lift_text);
    }
    out
}

pub const REGISTRY_CSV_HEADER: &str =
    "subcase,case,mirror_of,variables,domain,force,performance,cost,lift";

pub fn registry_csv(rows: &[SubcaseBound]) -> String {
    let mut out = String::from(REGISTRY_CSV_HEADER);
    out.push('\n');
    for b in rows {
        let fields = [
            b.label.to_string(),
            b.case().to_string(),
            b.mirror_of.unwrap_or("").to_string(),
            b.variables.join(";"),
            b.domain_text.to_string(),
            b.force_text.to_string(),
            b.performance_text.to_string(),
            b.cost_text.to_string(),
            b.lift_text.to_string(),
        ];
        let row: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
