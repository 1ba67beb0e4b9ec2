//! Reduced one- and two-variable bounds for every subcase of the ten
//! four-spring arrangements.
//!
//! A subcase fixes which springs turn plastic first. On its domain the
//! response force is an explicit linear expression, and the performance
//! `F_R` and the cost `C` are bounded by functions of one or two reduced
//! variables:
//!
//! ```text
//! F_R(c) <= F~_R(project(c)),    C(c) >= C~(project(c))
//! ```
//!
//! Each reduced bound is written as `F~_R(x) = alpha * S(x) + beta * R~(x)`
//! where `S` is the (linear) strength in reduced variables and `R~` an upper
//! bound of the resistance. Lifting maps send a reduced point back to a full
//! limits vector that attains both bounds with equality.
//!
//! The dominance inequalities are checked by sampling
//! ([`check_dominance`]); [`certify`] samples the reduced sublevel set
//! `{C~ <= C*}` for feasible points, which is the certificate that the full
//! problem of a subcase cannot cost less than `C*`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{CompiledTree, ConstraintParams, Limits};
use crate::network::{canonical_case, CaseId};

/// Lower end of the sampling box for limits.
pub const SAMPLE_EPS: f64 = 1e-6;

/// Default upper end of the sampling box.
pub const DEFAULT_BOX: f64 = 3.0;

/// Below this many samples the checks are reported as weak.
pub const RECOMMENDED_SAMPLES: usize = 10_000;

const CHUNK: usize = 4096;

/// Relative slack allowed before an inequality counts as violated.
const ROUNDING: f64 = 1e-12;

type Full = [f64; 4];
type Reduced = [f64; 2];

/// One subcase row: domain, projection, reduced bound functions and lift.
#[derive(Clone, Copy)]
pub struct SubcaseBound {
    pub label: &'static str,
    case: u8,
    /// Base entry whose reduced functions this one repeats.
    pub mirror_of: Option<&'static str>,
    /// Reduced variables in terms of the limits.
    pub variables: &'static [&'static str],
    pub domain_text: &'static str,
    pub force_text: &'static str,
    pub performance_text: &'static str,
    pub cost_text: &'static str,
    pub lift_text: &'static str,
    /// `S(x) = w . x`
    pub strength_weights: [f64; 2],
    /// `C~(x) = a . x`
    pub cost_weights: [f64; 2],
    in_domain: fn(&Full) -> bool,
    project: fn(&Full) -> Reduced,
    full_force: fn(&Full) -> f64,
    resistance_bound: fn(&Reduced) -> Option<f64>,
    lift: fn(&Reduced) -> Option<Full>,
}

impl std::fmt::Debug for SubcaseBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubcaseBound")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

fn full(c: &Limits) -> Result<Full> {
    c.as_slice()
        .try_into()
        .map_err(|_| Error::domain(format!("subcase bounds need 4 limits, got {}", c.len())))
}

impl SubcaseBound {
    pub fn case(&self) -> CaseId {
        CaseId::new(self.case).expect("registry case ids are valid")
    }

    /// Number of reduced variables, 1 or 2.
    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn in_domain(&self, c: &Limits) -> Result<bool> {
        Ok((self.in_domain)(&full(c)?))
    }

    pub fn project(&self, c: &Limits) -> Result<Vec<f64>> {
        let x = (self.project)(&full(c)?);
        Ok(x[..self.dim()].to_vec())
    }

    /// The subcase's response force as an explicit function of the limits.
    pub fn full_force(&self, c: &Limits) -> Result<f64> {
        Ok((self.full_force)(&full(c)?))
    }

    fn pad(&self, x: &[f64]) -> Result<Reduced> {
        if x.len() != self.dim() {
            return Err(Error::domain(format!(
                "subcase {} has {} reduced variables, got {}",
                self.label,
                self.dim(),
                x.len()
            )));
        }
        Ok([x[0], x.get(1).copied().unwrap_or(0.0)])
    }

    pub fn strength(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.strength_weights)
            .map(|(x, w)| x * w)
            .sum()
    }

    /// `C~(x)`.
    pub fn cost(&self, x: &[f64]) -> f64 {
        x.iter().zip(self.cost_weights).map(|(x, a)| x * a).sum()
    }

    /// Upper bound of the resistance, `None` where the bound is undefined.
    pub fn resistance_bound(&self, x: &[f64]) -> Option<f64> {
        let x = self.pad(x).ok()?;
        if x[..self.dim()].iter().any(|v| v.is_nan() || *v <= 0.0) {
            return None;
        }
        (self.resistance_bound)(&x)
    }

    /// `F~_R(x) = alpha * S(x) + beta * R~(x)`, `None` where undefined.
    pub fn performance(&self, x: &[f64], params: &ConstraintParams) -> Option<f64> {
        self.resistance_bound(x)
            .map(|r| params.performance(self.strength(x), r))
    }

    /// Whether [`SubcaseBound::lift`] succeeds at `x`.
    pub fn liftable(&self, x: &[f64]) -> bool {
        match self.pad(x) {
            Ok(p) => (self.lift)(&p).is_some_and(|c| c.iter().all(|v| *v > 0.0 && v.is_finite())),
            Err(_) => false,
        }
    }

    /// Full limits attaining `C = C~(x)` and `F_R = F~_R(x)` inside the
    /// subcase domain.
    pub fn lift(&self, x: &[f64]) -> Result<Limits> {
        let p = self.pad(x)?;
        if x.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::domain(format!(
                "reduced point {x:?} of subcase {} must be positive",
                self.label
            )));
        }
        let c = (self.lift)(&p).ok_or_else(|| {
            Error::domain(format!(
                "reduced point {x:?} has no lift in subcase {}",
                self.label
            ))
        })?;
        Limits::new(c.to_vec())
    }
}

fn one_d(x: &Reduced, numerator: f64) -> Option<f64> {
    Some(numerator / x[0])
}

const ONE: [f64; 2] = [1.0, 0.0];
const BOTH: [f64; 2] = [1.0, 1.0];

static REGISTRY: [SubcaseBound; 15] = [
    SubcaseBound {
        label: "9.1",
        case: 9,
        mirror_of: None,
        variables: &["c1", "c2"],
        domain_text: "c2 <= c3, c1 <= c2 + c4, c2 < 2 c1",
        force_text: "F = c1",
        performance_text: "alpha c1 + beta (1/c1 + 1/(c1 - c2/2))",
        cost_text: "2 c1 + c2",
        lift_text: "(c1, c2, c2, c1 - c2)",
        strength_weights: ONE,
        cost_weights: [2.0, 1.0],
        in_domain: |c| c[1] <= c[2] && c[0] <= c[1] + c[3] && c[1] < 2.0 * c[0],
        project: |c| [c[0], c[1]],
        full_force: |c| c[0],
        resistance_bound: |x| {
            let d = x[0] - x[1] / 2.0;
            (d > 0.0).then(|| 1.0 / x[0] + 1.0 / d)
        },
        lift: |x| (x[1] < x[0]).then(|| [x[0], x[1], x[1], x[0] - x[1]]),
    },
    SubcaseBound {
        label: "9.2",
        case: 9,
        mirror_of: None,
        variables: &["c2", "c4"],
        domain_text: "c2 <= c3, c1 >= c2 + c4",
        force_text: "F = c2 + c4",
        performance_text: "alpha (c2 + c4) + beta (1/(c2 + c4) + 1/(c2/2 + c4))",
        cost_text: "3 c2 + 2 c4",
        lift_text: "(c2 + c4, c2, c2, c4)",
        strength_weights: BOTH,
        cost_weights: [3.0, 2.0],
        in_domain: |c| c[1] <= c[2] && c[0] >= c[1] + c[3],
        project: |c| [c[1], c[3]],
        full_force: |c| c[1] + c[3],
        resistance_bound: |x| Some(1.0 / (x[0] + x[1]) + 1.0 / (x[0] / 2.0 + x[1])),
        lift: |x| Some([x[0] + x[1], x[0], x[0], x[1]]),
    },
    SubcaseBound {
        label: "1.1",
        case: 1,
        mirror_of: None,
        variables: &["c1"],
        domain_text: "c1 <= c4, c1 <= c2 + c3",
        force_text: "F = c1",
        performance_text: "alpha c1 + beta 3/c1",
        cost_text: "3 c1",
        lift_text: "(c1, c1/2, c1/2, c1)",
        strength_weights: ONE,
        cost_weights: [3.0, 0.0],
        in_domain: |c| c[0] <= c[3] && c[0] <= c[1] + c[2],
        project: |c| [c[0], 0.0],
        full_force: |c| c[0],
        resistance_bound: |x| one_d(x, 3.0),
        lift: |x| Some([x[0], x[0] / 2.0, x[0] / 2.0, x[0]]),
    },
    SubcaseBound {
        label: "1.2",
        case: 1,
        mirror_of: Some("1.1"),
        variables: &["c2+c3"],
        domain_text: "c1 <= c4, c2 + c3 <= c1",
        force_text: "F = c2 + c3",
        performance_text: "alpha x + beta 3/x, x = c2 + c3",
        cost_text: "3 x",
        lift_text: "(x, x/2, x/2, x)",
        strength_weights: ONE,
        cost_weights: [3.0, 0.0],
        in_domain: |c| c[0] <= c[3] && c[1] + c[2] <= c[0],
        project: |c| [c[1] + c[2], 0.0],
        full_force: |c| c[1] + c[2],
        resistance_bound: |x| one_d(x, 3.0),
        lift: |x| Some([x[0], x[0] / 2.0, x[0] / 2.0, x[0]]),
    },
    SubcaseBound {
        label: "2",
        case: 2,
        mirror_of: None,
        variables: &["c1"],
        domain_text: "c1 <= c2, c1 <= c3, c1 <= c4",
        force_text: "F = c1",
        performance_text: "alpha c1 + beta 4/c1",
        cost_text: "4 c1",
        lift_text: "(c1, c1, c1, c1)",
        strength_weights: ONE,
        cost_weights: [4.0, 0.0],
        in_domain: |c| c[0] <= c[1] && c[0] <= c[2] && c[0] <= c[3],
        project: |c| [c[0], 0.0],
        full_force: |c| c[0],
        resistance_bound: |x| one_d(x, 4.0),
        lift: |x| Some([x[0]; 4]),
    },
    SubcaseBound {
        label: "3",
        case: 3,
        mirror_of: None,
        variables: &["c1+c3"],
        domain_text: "c1 <= c2, c3 <= c4",
        force_text: "F = c1 + c3",
        performance_text: "alpha x + beta 2/x, x = c1 + c3",
        cost_text: "2 x",
        lift_text: "(x/2, x/2, x/2, x/2)",
        strength_weights: ONE,
        cost_weights: [2.0, 0.0],
        in_domain: |c| c[0] <= c[1] && c[2] <= c[3],
        project: |c| [c[0] + c[2], 0.0],
        full_force: |c| c[0] + c[2],
        resistance_bound: |x| one_d(x, 2.0),
        lift: |x| Some([x[0] / 2.0; 4]),
    },
    SubcaseBound {
        label: "4",
        case: 4,
        mirror_of: None,
        variables: &["c1", "c4"],
        domain_text: "c1 <= c2, c1 <= c3",
        force_text: "F = c1 + c4",
        performance_text: "alpha (c1 + c4) + beta 1/(c1/3 + c4)",
        cost_text: "3 c1 + c4",
        lift_text: "(c1, c1, c1, c4)",
        strength_weights: BOTH,
        cost_weights: [3.0, 1.0],
        in_domain: |c| c[0] <= c[1] && c[0] <= c[2],
        project: |c| [c[0], c[3]],
        full_force: |c| c[0] + c[3],
        resistance_bound: |x| Some(1.0 / (x[0] / 3.0 + x[1])),
        lift: |x| Some([x[0], x[0], x[0], x[1]]),
    },
    SubcaseBound {
        label: "5",
        case: 5,
        mirror_of: None,
        variables: &["c1", "c3+c4"],
        domain_text: "c1 <= c2",
        force_text: "F = c1 + c3 + c4",
        performance_text: "alpha (x + y) + beta 1/(x/2 + y), x = c1, y = c3 + c4",
        cost_text: "2 x + y",
        lift_text: "(x, x, y/2, y/2)",
        strength_weights: BOTH,
        cost_weights: [2.0, 1.0],
        in_domain: |c| c[0] <= c[1],
        project: |c| [c[0], c[2] + c[3]],
        full_force: |c| c[0] + c[2] + c[3],
        resistance_bound: |x| Some(1.0 / (x[0] / 2.0 + x[1])),
        lift: |x| Some([x[0], x[0], x[1] / 2.0, x[1] / 2.0]),
    },
    SubcaseBound {
        label: "6.1",
        case: 6,
        mirror_of: None,
        variables: &["c1"],
        domain_text: "c1 <= c2 + c3 + c4",
        force_text: "F = c1",
        performance_text: "alpha c1 + beta 2/c1",
        cost_text: "2 c1",
        lift_text: "(c1, c1/3, c1/3, c1/3)",
        strength_weights: ONE,
        cost_weights: [2.0, 0.0],
        in_domain: |c| c[0] <= c[1] + c[2] + c[3],
        project: |c| [c[0], 0.0],
        full_force: |c| c[0],
        resistance_bound: |x| one_d(x, 2.0),
        lift: |x| Some([x[0], x[0] / 3.0, x[0] / 3.0, x[0] / 3.0]),
    },
    SubcaseBound {
        label: "6.2",
        case: 6,
        mirror_of: Some("6.1"),
        variables: &["c2+c3+c4"],
        domain_text: "c2 + c3 + c4 <= c1",
        force_text: "F = c2 + c3 + c4",
        performance_text: "alpha x + beta 2/x, x = c2 + c3 + c4",
        cost_text: "2 x",
        lift_text: "(x, x/3, x/3, x/3)",
        strength_weights: ONE,
        cost_weights: [2.0, 0.0],
        in_domain: |c| c[1] + c[2] + c[3] <= c[0],
        project: |c| [c[1] + c[2] + c[3], 0.0],
        full_force: |c| c[1] + c[2] + c[3],
        resistance_bound: |x| one_d(x, 2.0),
        lift: |x| Some([x[0], x[0] / 3.0, x[0] / 3.0, x[0] / 3.0]),
    },
    SubcaseBound {
        label: "7.1",
        case: 7,
        mirror_of: None,
        variables: &["c1+c3"],
        domain_text: "c1 + c3 <= c2 + c4",
        force_text: "F = c1 + c3",
        performance_text: "alpha x + beta 2/x, x = c1 + c3",
        cost_text: "2 x",
        lift_text: "(x/2, x/2, x/2, x/2)",
        strength_weights: ONE,
        cost_weights: [2.0, 0.0],
        in_domain: |c| c[0] + c[2] <= c[1] + c[3],
        project: |c| [c[0] + c[2], 0.0],
        full_force: |c| c[0] + c[2],
        resistance_bound: |x| one_d(x, 2.0),
        lift: |x| Some([x[0] / 2.0; 4]),
    },
    SubcaseBound {
        label: "7.2",
        case: 7,
        mirror_of: Some("7.1"),
        variables: &["c2+c4"],
        domain_text: "c2 + c4 <= c1 + c3",
        force_text: "F = c2 + c4",
        performance_text: "alpha x + beta 2/x, x = c2 + c4",
        cost_text: "2 x",
        lift_text: "(x/2, x/2, x/2, x/2)",
        strength_weights: ONE,
        cost_weights: [2.0, 0.0],
        in_domain: |c| c[1] + c[3] <= c[0] + c[2],
        project: |c| [c[1] + c[3], 0.0],
        full_force: |c| c[1] + c[3],
        resistance_bound: |x| one_d(x, 2.0),
        lift: |x| Some([x[0] / 2.0; 4]),
    },
    SubcaseBound {
        label: "8",
        case: 8,
        mirror_of: None,
        variables: &["c1+c2+c3+c4"],
        domain_text: "all c",
        force_text: "F = c1 + c2 + c3 + c4",
        performance_text: "alpha x + beta 1/x, x = c1 + c2 + c3 + c4",
        cost_text: "x",
        lift_text: "(x/4, x/4, x/4, x/4)",
        strength_weights: ONE,
        cost_weights: [1.0, 0.0],
        in_domain: |_| true,
        project: |c| [c[0] + c[1] + c[2] + c[3], 0.0],
        full_force: |c| c[0] + c[1] + c[2] + c[3],
        resistance_bound: |x| one_d(x, 1.0),
        lift: |x| Some([x[0] / 4.0; 4]),
    },
    SubcaseBound {
        label: "10.1",
        case: 10,
        mirror_of: None,
        variables: &["c1", "c4"],
        domain_text: "c1 <= c2 + c3",
        force_text: "F = c1 + c4",
        performance_text: "alpha (c1 + c4) + beta 1/(c4 + c1/2)",
        cost_text: "2 c1 + c4",
        lift_text: "(c1, c1/2, c1/2, c4)",
        strength_weights: BOTH,
        cost_weights: [2.0, 1.0],
        in_domain: |c| c[0] <= c[1] + c[2],
        project: |c| [c[0], c[3]],
        full_force: |c| c[0] + c[3],
        resistance_bound: |x| Some(1.0 / (x[1] + x[0] / 2.0)),
        lift: |x| Some([x[0], x[0] / 2.0, x[0] / 2.0, x[1]]),
    },
    SubcaseBound {
        label: "10.2",
        case: 10,
        mirror_of: Some("10.1"),
        variables: &["c2+c3", "c4"],
        domain_text: "c2 + c3 <= c1",
        force_text: "F = c2 + c3 + c4",
        performance_text: "alpha (x + c4) + beta 1/(c4 + x/2), x = c2 + c3",
        cost_text: "2 x + c4",
        lift_text: "(x, x/2, x/2, c4)",
        strength_weights: BOTH,
        cost_weights: [2.0, 1.0],
        in_domain: |c| c[1] + c[2] <= c[0],
        project: |c| [c[1] + c[2], c[3]],
        full_force: |c| c[1] + c[2] + c[3],
        resistance_bound: |x| Some(1.0 / (x[1] + x[0] / 2.0)),
        lift: |x| Some([x[0], x[0] / 2.0, x[0] / 2.0, x[1]]),
    },
];

/// All fifteen subcases, Case 9 first.
pub fn registry() -> &'static [SubcaseBound] {
    &REGISTRY
}

pub fn lookup(label: &str) -> Result<&'static SubcaseBound> {
    REGISTRY
        .iter()
        .find(|b| b.label == label)
        .ok_or_else(|| Error::domain(format!("unknown subcase {label:?}")))
}

/// Subcases belonging to one arrangement.
pub fn subcases_of(case: CaseId) -> impl Iterator<Item = &'static SubcaseBound> {
    REGISTRY.iter().filter(move |b| b.case == case.get())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub c: Vec<f64>,
    /// `"performance"` (F~_R < F_R) or `"cost"` (C~ > C).
    pub kind: &'static str,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub label: &'static str,
    pub samples: usize,
    /// Draws that fell inside the subcase domain.
    pub accepted: usize,
    pub violations: Vec<Violation>,
    /// Largest observed `F~_R - F_R`.
    pub max_performance_slack: f64,
    /// Largest observed `C - C~`.
    pub max_cost_slack: f64,
    /// Smallest observed slacks; nonnegative up to rounding when the bound holds.
    pub min_performance_slack: f64,
    pub min_cost_slack: f64,
}

impl DominanceReport {
    fn empty(label: &'static str) -> Self {
        DominanceReport {
            label,
            samples: 0,
            accepted: 0,
            violations: Vec::new(),
            max_performance_slack: f64::NEG_INFINITY,
            max_cost_slack: f64::NEG_INFINITY,
            min_performance_slack: f64::INFINITY,
            min_cost_slack: f64::INFINITY,
        }
    }

    fn merge(mut self, other: DominanceReport) -> Self {
        self.samples += other.samples;
        self.accepted += other.accepted;
        self.violations.extend(other.violations);
        self.max_performance_slack = self.max_performance_slack.max(other.max_performance_slack);
        self.max_cost_slack = self.max_cost_slack.max(other.max_cost_slack);
        self.min_performance_slack = self.min_performance_slack.min(other.min_performance_slack);
        self.min_cost_slack = self.min_cost_slack.min(other.min_cost_slack);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Random stream for chunk `chunk` of a run seeded with `seed`. Chunks are
/// independent of how they are scheduled across threads.
fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn chunks(samples: usize) -> impl IndexedParallelIterator<Item = (usize, usize)> {
    let n = samples.div_ceil(CHUNK);
    (0..n)
        .into_par_iter()
        .map(move |k| (k, CHUNK.min(samples - k * CHUNK)))
}

fn check_sampling_args(samples: usize, upper: f64) -> Result<()> {
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    if !(upper.is_finite() && upper > SAMPLE_EPS) {
        return Err(Error::domain(format!(
            "sampling box {upper} must exceed {SAMPLE_EPS}"
        )));
    }
    Ok(())
}

/// Samples limits uniformly in `(eps, upper]^4`, keeps those inside the
/// subcase domain and checks `F~_R(project(c)) >= F_R(c)` and
/// `C~(project(c)) <= C(c)`.
pub fn check_dominance(
    bound: &SubcaseBound,
    params: &ConstraintParams,
    samples: usize,
    seed: u64,
    upper: f64,
) -> Result<DominanceReport> {
    check_sampling_args(samples, upper)?;
    params.validate()?;
    let tree = CompiledTree::new(&canonical_case(bound.case()))?;
    let label = bound.label;
    let report = chunks(samples)
        .map(|(k, n)| {
            let mut rng = chunk_rng(seed, k);
            let mut part = DominanceReport::empty(label);
            part.samples = n;
            for _ in 0..n {
                let mut c = [0.0; 4];
                for v in &mut c {
                    // (eps, upper]
                    *v = upper - rng.gen::<f64>() * (upper - SAMPLE_EPS);
                }
                if !(bound.in_domain)(&c) {
                    continue;
                }
                part.accepted += 1;
                let x = (bound.project)(&c);
                let x = &x[..bound.dim()];
                let (force, res) = tree.force_resistance(&c);
                let fr = params.performance(force, res);
                let cost: f64 = c.iter().sum();
                let perf_slack = match bound.performance(x, params) {
                    Some(v) => v - fr,
                    None => f64::NEG_INFINITY,
                };
                let cost_slack = cost - bound.cost(x);
                part.max_performance_slack = part.max_performance_slack.max(perf_slack);
                part.min_performance_slack = part.min_performance_slack.min(perf_slack);
                part.max_cost_slack = part.max_cost_slack.max(cost_slack);
                part.min_cost_slack = part.min_cost_slack.min(cost_slack);
                if perf_slack < -ROUNDING * fr.abs().max(1.0) {
                    part.violations.push(Violation {
                        c: c.to_vec(),
                        kind: "performance",
                        amount: -perf_slack,
                    });
                }
                if cost_slack < -ROUNDING * cost.max(1.0) {
                    part.violations.push(Violation {
                        c: c.to_vec(),
                        kind: "cost",
                        amount: -cost_slack,
                    });
                }
            }
            part
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(DominanceReport::empty(label), DominanceReport::merge);
    Ok(report)
}

/// Outcome of sampling the reduced sublevel set `{C~ <= C*}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub label: &'static str,
    pub c_star: f64,
    pub samples: usize,
    /// Reduced-feasible samples with `C~ <= C*`.
    pub counterexamples: usize,
    pub example: Option<Vec<f64>>,
    /// The sublevel set meets no strength-feasible point of the box.
    pub empty_sublevel: bool,
}

impl Certification {
    /// No reduced-feasible point costs `C*` or less.
    pub fn certified(&self) -> bool {
        self.counterexamples == 0
    }
}

/// Reduced feasibility without lifting: bound defined, strength and
/// performance constraints met.
pub fn reduced_feasible(bound: &SubcaseBound, x: &[f64], params: &ConstraintParams) -> bool {
    bound.strength(x) >= params.f_min
        && bound
            .performance(x, params)
            .is_some_and(|v| v >= params.fr_min)
}

/// Samples the reduced box `(eps, upper]^dim` restricted to `C~ <= C*` for
/// reduced-feasible points. None found certifies (statistically) that the
/// subcase's full problem cannot cost less than `C*`, given dominance.
pub fn certify(
    bound: &SubcaseBound,
    params: &ConstraintParams,
    c_star: f64,
    samples: usize,
    seed: u64,
    upper: f64,
) -> Result<Certification> {
    check_sampling_args(samples, upper)?;
    params.validate()?;
    if !c_star.is_finite() {
        return Err(Error::domain("target cost must be finite"));
    }
    let dim = bound.dim();
    // bounding box of {x >= eps, S(x) >= f_min when S is one variable, C~(x) <= C*}
    let mut lo = [SAMPLE_EPS; 2];
    let mut hi = [upper; 2];
    if bound.strength_weights == ONE || dim == 1 {
        lo[0] = lo[0].max(params.f_min);
    }
    for (i, h) in hi.iter_mut().enumerate().take(dim) {
        let others: f64 = (0..dim)
            .filter(|&j| j != i)
            .map(|j| bound.cost_weights[j] * lo[j])
            .sum();
        *h = h.min((c_star - others) / bound.cost_weights[i]);
    }
    let empty = (0..dim).any(|i| hi[i] < lo[i]);
    let mut cert = Certification {
        label: bound.label,
        c_star,
        samples: 0,
        counterexamples: 0,
        example: None,
        empty_sublevel: empty,
    };
    if empty {
        return Ok(cert);
    }
    let parts: Vec<(usize, usize, Option<Vec<f64>>)> = chunks(samples)
        .map(|(k, n)| {
            let mut rng = chunk_rng(seed, k);
            let mut hits = 0;
            let mut first = None;
            for _ in 0..n {
                let mut x = [0.0; 2];
                for i in 0..dim {
                    x[i] = lo[i] + rng.gen::<f64>() * (hi[i] - lo[i]);
                }
                let x = &x[..dim];
                if bound.cost(x) <= c_star && reduced_feasible(bound, x, params) {
                    hits += 1;
                    first.get_or_insert_with(|| x.to_vec());
                }
            }
            (n, hits, first)
        })
        .collect();
    for (n, hits, first) in parts {
        cert.samples += n;
        cert.counterexamples += hits;
        if cert.example.is_none() {
            cert.example = first;
        }
    }
    Ok(cert)
}

/// Boolean form of [`certify`].
pub fn check_proposition2(
    bound: &SubcaseBound,
    params: &ConstraintParams,
    c_star: f64,
    samples: usize,
    seed: u64,
    upper: f64,
) -> Result<bool> {
    certify(bound, params, c_star, samples, seed, upper).map(|c| c.certified())
}
