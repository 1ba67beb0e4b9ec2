//! Resistance, response force, multi-functional performance and cost.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{Node, SpTree};

/// Elastic limits `c_1..c_m`, all strictly positive and finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Limits(Vec<f64>);

impl Limits {
    pub fn new(values: Vec<f64>) -> Result<Limits> {
        if values.is_empty() {
            return Err(Error::domain("limits vector is empty"));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::domain(format!(
                "elastic limit c{} = {v} must be positive and finite",
                i + 1
            )));
        }
        Ok(Limits(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Spring `i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn scaled(&self, factor: f64) -> Result<Limits> {
        Limits::new(self.0.iter().map(|c| c * factor).collect())
    }

    /// Fabrication cost, the sum of the limits.
    pub fn cost(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<f64>> for Limits {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Limits> {
        Limits::new(values)
    }
}

/// Weights and thresholds of the design problem
/// `F >= f_min`, `alpha*F + beta*R >= fr_min`, `C -> min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConstraintParams {
    pub alpha: f64,
    pub beta: f64,
    pub f_min: f64,
    pub fr_min: f64,
}

impl Default for ConstraintParams {
    fn default() -> Self {
        ConstraintParams {
            alpha: 0.2,
            beta: 0.1,
            f_min: 0.75,
            fr_min: 0.5,
        }
    }
}

impl ConstraintParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.alpha.is_finite()
            && self.beta.is_finite()
            && self.f_min.is_finite()
            && self.fr_min.is_finite()
            && self.alpha > 0.0
            && self.beta > 0.0
            && self.f_min >= 0.0
            && self.fr_min >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "need alpha > 0, beta > 0, f_min >= 0, fr_min >= 0; got {self:?}"
            )))
        }
    }

    pub fn performance(&self, force: f64, resistance: f64) -> f64 {
        self.alpha * force + self.beta * resistance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub force: f64,
    pub resistance: f64,
    pub performance: f64,
    pub cost: f64,
    pub feasible_force: bool,
    pub feasible_performance: bool,
}

impl Evaluation {
    pub fn feasible(&self) -> bool {
        self.feasible_force && self.feasible_performance
    }
}

fn check_len(tree: &SpTree, c: &Limits) -> Result<()> {
    if tree.spring_count() != c.len() {
        return Err(Error::domain(format!(
            "tree has {} springs but {} limits were given",
            tree.spring_count(),
            c.len()
        )));
    }
    Ok(())
}

fn node_resistance(node: &Node, c: &[f64]) -> f64 {
    match node {
        Node::Leaf(i) => 1.0 / c[i - 1],
        Node::Series(ch) => ch.iter().map(|n| node_resistance(n, c)).sum(),
        Node::Parallel(ch) => 1.0 / ch.iter().map(|n| 1.0 / node_resistance(n, c)).sum::<f64>(),
    }
}

fn node_force(node: &Node, c: &[f64]) -> f64 {
    match node {
        Node::Leaf(i) => c[i - 1],
        Node::Series(ch) => ch
            .iter()
            .map(|n| node_force(n, c))
            .fold(f64::INFINITY, f64::min),
        Node::Parallel(ch) => ch.iter().map(|n| node_force(n, c)).sum(),
    }
}

/// Equivalent resistance with spring resistances `1/c_i`.
pub fn resistance(tree: &SpTree, c: &Limits) -> Result<f64> {
    check_len(tree, c)?;
    Ok(node_resistance(tree.root(), c.as_slice()))
}

/// Maximal stress under displacement-controlled loading: weakest member of
/// a series chain, sum over parallel branches.
pub fn response_force(tree: &SpTree, c: &Limits) -> Result<f64> {
    check_len(tree, c)?;
    Ok(node_force(tree.root(), c.as_slice()))
}

pub fn cost(c: &Limits) -> f64 {
    c.cost()
}

pub fn evaluate(tree: &SpTree, c: &Limits, params: &ConstraintParams) -> Result<Evaluation> {
    params.validate()?;
    let force = response_force(tree, c)?;
    let resistance = resistance(tree, c)?;
    let performance = params.performance(force, resistance);
    Ok(Evaluation {
        force,
        resistance,
        performance,
        cost: c.cost(),
        feasible_force: force >= params.f_min,
        feasible_performance: performance >= params.fr_min,
    })
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Leaf(usize),
    Series(usize),
    Parallel(usize),
}

const STACK: usize = 32;

/// Postfix form of a tree for tight evaluation loops. Computes the same
/// `(F, R)` pair as [`response_force`] and [`resistance`] without
/// recursion or allocation; inputs are not validated.
#[derive(Debug, Clone)]
pub struct CompiledTree {
    ops: Vec<Op>,
    springs: usize,
}

impl CompiledTree {
    pub fn new(tree: &SpTree) -> Result<CompiledTree> {
        if tree.spring_count() > STACK {
            return Err(Error::domain(format!(
                "compiled trees support at most {STACK} springs"
            )));
        }
        let mut ops = Vec::new();
        emit(tree.root(), &mut ops);
        Ok(CompiledTree {
            ops,
            springs: tree.spring_count(),
        })
    }

    pub fn spring_count(&self) -> usize {
        self.springs
    }

    /// `(F, R)` for raw limits; `c.len()` must equal the spring count.
    #[inline]
    pub fn force_resistance(&self, c: &[f64]) -> (f64, f64) {
        debug_assert_eq!(c.len(), self.springs);
        let mut force = [0.0f64; STACK];
        let mut res = [0.0f64; STACK];
        let mut top = 0usize;
        for op in &self.ops {
            match *op {
                Op::Leaf(i) => {
                    force[top] = c[i];
                    res[top] = 1.0 / c[i];
                    top += 1;
                }
                Op::Series(n) => {
                    let base = top - n;
                    let (mut f, mut r) = (force[base], res[base]);
                    for k in base + 1..top {
                        f = f.min(force[k]);
                        r += res[k];
                    }
                    force[base] = f;
                    res[base] = r;
                    top = base + 1;
                }
                Op::Parallel(n) => {
                    let base = top - n;
                    let (mut f, mut g) = (force[base], 1.0 / res[base]);
                    for k in base + 1..top {
                        f += force[k];
                        g += 1.0 / res[k];
                    }
                    force[base] = f;
                    res[base] = 1.0 / g;
                    top = base + 1;
                }
            }
        }
        (force[0], res[0])
    }
}

fn emit(node: &Node, ops: &mut Vec<Op>) {
    match node {
        Node::Leaf(i) => ops.push(Op::Leaf(i - 1)),
        Node::Series(ch) => {
            ch.iter().for_each(|n| emit(n, ops));
            ops.push(Op::Series(ch.len()));
        }
        Node::Parallel(ch) => {
            ch.iter().for_each(|n| emit(n, ops));
            ops.push(Op::Parallel(ch.len()));
        }
    }
}
