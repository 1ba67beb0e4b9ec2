//! Quasi-static, displacement-controlled loading of an elastic-perfectly
//! plastic series-parallel network.
//!
//! Every spring obeys `f = k (e - p)` with `|f| <= c`. The terminal
//! elongation grows in equal increments. Within an increment the network
//! is piecewise linear, so the increment is split at each yield event:
//! the recursive tangent stiffness routes elongation through the tree
//! (series springs share force, parallel branches share elongation, a
//! yielded spring has zero tangent stiffness) and the next spring to reach
//! its limit is located exactly. Leaves are updated with an elastic
//! predictor followed by a plastic corrector.
//!
//! Nothing here uses the min/sum limit rules, so the peak terminal force is
//! an independent check of [`crate::eval::response_force`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::Limits;
use crate::network::{Node, SpTree};

/// Relative tolerance for deciding that a spring sits at its limit.
const YIELD_TOL: f64 = 1e-12;

/// Allowed relative spread of member forces in a series chain.
const SERIES_FORCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ramp {
    /// Final terminal elongation.
    pub total: f64,
    pub steps: usize,
}

impl Ramp {
    /// Ramp of length `2 * sum(c_i / k_i)`, long enough for every plastic
    /// event to occur.
    pub fn covering(c: &Limits, k: &[f64], steps: usize) -> Ramp {
        let total = 2.0 * c.as_slice().iter().zip(k).map(|(c, k)| c / k).sum::<f64>();
        Ramp { total, steps }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoadingRun {
    /// Terminal elongation after each increment.
    pub elongation: Vec<f64>,
    /// Terminal force after each increment.
    pub force: Vec<f64>,
    pub max_force: f64,
}

enum Kind {
    Leaf(usize),
    Series(Vec<usize>),
    Parallel(Vec<usize>),
}

#[derive(Clone, Copy, Default)]
struct Spring {
    elongation: f64,
    plastic: f64,
    force: f64,
    yielded: bool,
}

struct Network<'a> {
    nodes: Vec<Kind>,
    root: usize,
    limit: &'a [f64],
    stiffness: &'a [f64],
    springs: Vec<Spring>,
    tangent: Vec<f64>,
}

impl<'a> Network<'a> {
    fn new(tree: &SpTree, limit: &'a [f64], stiffness: &'a [f64]) -> Self {
        let mut nodes = Vec::new();
        let root = build(tree.root(), &mut nodes);
        let tangent = vec![0.0; nodes.len()];
        Network {
            nodes,
            root,
            limit,
            stiffness,
            springs: vec![Spring::default(); limit.len()],
            tangent,
        }
    }

    fn update_tangent(&mut self, node: usize) -> f64 {
        let value = match &self.nodes[node] {
            Kind::Leaf(i) => {
                if self.springs[*i].yielded {
                    0.0
                } else {
                    self.stiffness[*i]
                }
            }
            Kind::Series(ch) => {
                let ch = ch.clone();
                let mut compliance = 0.0;
                let mut rigid_plastic = false;
                for child in ch {
                    let kc = self.update_tangent(child);
                    if kc == 0.0 {
                        rigid_plastic = true;
                    } else {
                        compliance += 1.0 / kc;
                    }
                }
                if rigid_plastic {
                    0.0
                } else {
                    1.0 / compliance
                }
            }
            Kind::Parallel(ch) => {
                let ch = ch.clone();
                ch.into_iter().map(|child| self.update_tangent(child)).sum()
            }
        };
        self.tangent[node] = value;
        value
    }

    /// Adds to `out[i]` the elongation spring `i` takes when `node` is
    /// stretched by `d` at the current tangent stiffnesses.
    fn route(&self, node: usize, d: f64, out: &mut [f64]) -> Result<()> {
        match &self.nodes[node] {
            Kind::Leaf(i) => out[*i] += d,
            Kind::Parallel(ch) => {
                for &child in ch {
                    self.route(child, d, out)?;
                }
            }
            Kind::Series(ch) => {
                let k = self.tangent[node];
                if k > 0.0 {
                    let df = k * d;
                    for &child in ch {
                        self.route(child, df / self.tangent[child], out)?;
                    }
                } else {
                    // plastic flow concentrates in a yielded member
                    let child = ch
                        .iter()
                        .copied()
                        .find(|&c| self.tangent[c] == 0.0)
                        .ok_or_else(|| {
                            Error::Consistency(
                                "series chain with zero stiffness but no yielded member".into(),
                            )
                        })?;
                    self.route(child, d, out)?;
                }
            }
        }
        Ok(())
    }

    fn apply(&mut self, increments: &[f64]) {
        for (i, &de) in increments.iter().enumerate() {
            if de == 0.0 {
                continue;
            }
            let (k, c) = (self.stiffness[i], self.limit[i]);
            let s = &mut self.springs[i];
            s.elongation += de;
            if s.yielded {
                s.plastic += de;
                continue;
            }
            // elastic predictor
            s.force = k * (s.elongation - s.plastic);
            // plastic corrector
            if s.force >= c * (1.0 - YIELD_TOL) {
                s.plastic = s.elongation - c / k;
                s.force = c;
                s.yielded = true;
            }
        }
    }

    fn terminal_force(&self, node: usize) -> Result<f64> {
        match &self.nodes[node] {
            Kind::Leaf(i) => Ok(self.springs[*i].force),
            Kind::Parallel(ch) => ch.iter().map(|&c| self.terminal_force(c)).sum(),
            Kind::Series(ch) => {
                let forces = ch
                    .iter()
                    .map(|&c| self.terminal_force(c))
                    .collect::<Result<Vec<_>>>()?;
                let lo = forces.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = forces.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if hi - lo > SERIES_FORCE_TOL * hi.abs().max(1.0) {
                    return Err(Error::Consistency(format!(
                        "series members carry different forces ({lo} vs {hi})"
                    )));
                }
                Ok(lo)
            }
        }
    }

    /// Advances the terminal elongation by `du`, splitting at yield events.
    fn advance(&mut self, du: f64) -> Result<()> {
        let m = self.springs.len();
        let mut remaining = du;
        let mut rates = vec![0.0; m];
        // at most one new yield event per spring
        for _ in 0..=m + 1 {
            if remaining <= 0.0 {
                return Ok(());
            }
            let k_root = self.update_tangent(self.root);
            rates.iter_mut().for_each(|r| *r = 0.0);
            if k_root == 0.0 {
                self.route(self.root, remaining, &mut rates)?;
                self.apply(&rates);
                return Ok(());
            }
            self.route(self.root, 1.0, &mut rates)?;
            let mut step = remaining;
            let mut next = None;
            for (i, s) in self.springs.iter().enumerate() {
                let df = self.stiffness[i] * rates[i];
                if s.yielded || df <= 0.0 {
                    continue;
                }
                let to_limit = ((self.limit[i] - s.force) / df).max(0.0);
                if to_limit < step {
                    step = to_limit;
                    next = Some(i);
                }
            }
            rates.iter_mut().for_each(|r| *r *= step);
            self.apply(&rates);
            if let Some(i) = next {
                let (k, c) = (self.stiffness[i], self.limit[i]);
                let s = &mut self.springs[i];
                if !s.yielded {
                    s.plastic = s.elongation - c / k;
                    s.force = c;
                    s.yielded = true;
                }
            }
            remaining -= step;
            if next.is_none() {
                return Ok(());
            }
        }
        Err(Error::Consistency(
            "more yield events than springs within one increment".into(),
        ))
    }
}

fn build(node: &Node, nodes: &mut Vec<Kind>) -> usize {
    let kind = match node {
        Node::Leaf(i) => Kind::Leaf(i - 1),
        Node::Series(ch) => Kind::Series(ch.iter().map(|n| build(n, nodes)).collect()),
        Node::Parallel(ch) => Kind::Parallel(ch.iter().map(|n| build(n, nodes)).collect()),
    };
    nodes.push(kind);
    nodes.len() - 1
}

/// Runs the loading ramp and records the terminal force after each
/// increment.
pub fn simulate_loading(
    tree: &SpTree,
    c: &Limits,
    stiffness: &[f64],
    ramp: Ramp,
) -> Result<LoadingRun> {
    let m = tree.spring_count();
    if c.len() != m || stiffness.len() != m {
        return Err(Error::domain(format!(
            "tree has {m} springs; got {} limits and {} stiffnesses",
            c.len(),
            stiffness.len()
        )));
    }
    if let Some(k) = stiffness.iter().find(|k| !(k.is_finite() && **k > 0.0)) {
        return Err(Error::domain(format!(
            "stiffness {k} must be positive and finite"
        )));
    }
    if ramp.steps == 0 {
        return Err(Error::domain("ramp needs at least one step"));
    }
    if !(ramp.total.is_finite() && ramp.total >= 0.0) {
        return Err(Error::domain("ramp length must be finite and nonnegative"));
    }

    let mut net = Network::new(tree, c.as_slice(), stiffness);
    let mut elongation = Vec::with_capacity(ramp.steps);
    let mut force = Vec::with_capacity(ramp.steps);
    let du = ramp.total / ramp.steps as f64;
    let mut max_force = 0.0f64;
    for step in 1..=ramp.steps {
        net.advance(du)?;
        let f = net.terminal_force(net.root)?;
        max_force = max_force.max(f);
        elongation.push(ramp.total * step as f64 / ramp.steps as f64);
        force.push(f);
    }
    Ok(LoadingRun {
        elongation,
        force,
        max_force,
    })
}
