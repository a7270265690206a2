//! The A∞-relations
//!
//!   Σ_{r,s} (−1)^{‖a₁‖+⋯+‖a_r‖} μ^{d−s+1}(a_d, …, a_{r+s+1}, μ^s(a_{r+s}, …, a_{r+1}), a_r, …, a_1) = 0
//!
//! evaluated sparsely: every term is generated from pairs of stored entries,
//! so the check covers all total arities 1 … 2D − 1 at once.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::{Field, Scalar};
use crate::multimap::{ByOutput, MultiMap};
use crate::space::{GradedSpace, LinComb};

use super::AInfAlgebra;

/// Nonzero value of an equation on one basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub value: LinComb,
}

/// Result of an equation check: passes iff no residuals remain. Residuals
/// are sorted by arity, then lexicographically by input tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub failures: Vec<Residual>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn from_accumulator(acc: Accumulator) -> Self {
        let mut failures: Vec<Residual> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(inputs, value)| Residual {
                arity: inputs.len(),
                inputs,
                value,
            })
            .collect();
        failures.sort_by(|a, b| a.arity.cmp(&b.arity).then_with(|| a.inputs.cmp(&b.inputs)));
        Self { failures }
    }

    /// Human-readable residuals, naming inputs in `input` and outputs in `output`.
    pub fn describe(&self, input: &GradedSpace, output: &GradedSpace, limit: usize) -> Vec<String> {
        self.failures
            .iter()
            .take(limit)
            .map(|r| {
                let ins: Vec<&str> = r.inputs.iter().map(|&k| input.id(k)).collect();
                format!(
                    "arity {} on ({}): {}",
                    r.arity,
                    ins.join(", "),
                    format_lincomb(&r.value, output)
                )
            })
            .collect()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass")
        } else {
            write!(f, "{} failing tuples", self.failures.len())
        }
    }
}

pub fn format_lincomb(v: &LinComb, space: &GradedSpace) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| format!("{c}*{}", space.id(k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Tuple ↦ accumulated value.
pub(crate) type Accumulator = BTreeMap<Vec<usize>, LinComb>;

pub(crate) fn accumulate(acc: &mut Accumulator, tuple: Vec<usize>, value: &LinComb, c: &Scalar) {
    if c.is_zero() || value.is_zero() {
        return;
    }
    let entry = acc.entry(tuple).or_default();
    entry.add_scaled(value, c);
}

/// Adds Σ (−1)^{Σ‖right inputs‖} outer(…, inner(…), right inputs) over every
/// stored entry of `outer` and every slot, where `inner_by_output` indexes the
/// inner map by output. `reduced(k)` is the reduced degree of input `k`.
pub(crate) fn accumulate_insertions(
    acc: &mut Accumulator,
    field: Field,
    outer: &MultiMap,
    inner_by_output: &HashMap<usize, Vec<(&[usize], &Scalar)>>,
    reduced: &dyn Fn(usize) -> i64,
    scale: &Scalar,
) {
    for (outer_inputs, value) in outer.entries() {
        let k = outer_inputs.len();
        let mut right_sum = 0i64;
        for slot in (0..k).rev() {
            if let Some(inners) = inner_by_output.get(&outer_inputs[slot]) {
                let sign = field.sign(right_sum);
                for (inner_inputs, c) in inners {
                    let mut tuple = Vec::with_capacity(k - 1 + inner_inputs.len());
                    tuple.extend_from_slice(&outer_inputs[..slot]);
                    tuple.extend_from_slice(inner_inputs);
                    tuple.extend_from_slice(&outer_inputs[slot + 1..]);
                    accumulate(acc, tuple, value, &(&(&sign * c) * scale));
                }
            }
            right_sum += reduced(outer_inputs[slot]);
        }
    }
}

/// All A∞-relation residuals of `alg`.
pub fn check_relations(alg: &AInfAlgebra) -> CheckReport {
    let field = alg.field();
    let space = alg.space();
    let reduced = |k: usize| space.reduced(k);
    let mut acc = Accumulator::new();
    let one = field.one();
    let indexed: Vec<(usize, ByOutput)> = alg.maps().map(|(d, m)| (d, m.by_output())).collect();
    for (_, outer) in alg.maps() {
        for (_, inner) in &indexed {
            accumulate_insertions(&mut acc, field, outer, inner, &reduced, &one);
        }
    }
    CheckReport::from_accumulator(acc)
}
