//! Sparse multilinear maps on basis tuples.
//!
//! Tuples are stored in written order `(a_d, …, a_1)`: slot 0 holds the
//! leftmost input and the last slot holds `a_1`, the first-composed element.
//! Composability reads right to left: `target(a_k) = source(a_{k+1})`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::space::{GradedSpace, LinComb};

/// Entries grouped by output basis index: (inputs, coefficient).
pub type ByOutput<'a> = HashMap<usize, Vec<(&'a [usize], &'a Scalar)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    arity: usize,
    degree_shift: i64,
    entries: BTreeMap<Vec<usize>, LinComb>,
}

impl MultiMap {
    pub fn new(arity: usize, degree_shift: i64) -> Self {
        assert!(arity >= 1, "multimaps have arity at least one");
        Self {
            arity,
            degree_shift,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree_shift(&self) -> i64 {
        self.degree_shift
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &LinComb)> + '_ {
        self.entries.iter()
    }

    pub fn get(&self, inputs: &[usize]) -> Option<&LinComb> {
        self.entries.get(inputs)
    }

    /// Adds `value` to the entry at `inputs`, dropping it if it cancels.
    pub fn add(&mut self, inputs: Vec<usize>, value: &LinComb) {
        assert_eq!(
            inputs.len(),
            self.arity,
            "tuple length must equal the arity"
        );
        if value.is_zero() {
            return;
        }
        let emptied = {
            let slot = self.entries.entry(inputs.clone()).or_default();
            slot.add_comb(value);
            slot.is_zero()
        };
        if emptied {
            self.entries.remove(&inputs);
        }
    }

    pub fn add_term(&mut self, inputs: Vec<usize>, output: usize, c: &Scalar) {
        if !c.is_zero() {
            self.add(inputs, &LinComb::term(output, c.clone()));
        }
    }

    /// Multilinear extension of the stored entries; tuples that are not
    /// stored (in particular non-composable ones) contribute zero.
    pub fn apply(&self, args: &[LinComb]) -> Result<LinComb> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let mut out = LinComb::zero();
        if args.iter().any(LinComb::is_zero) {
            return Ok(out);
        }
        'entries: for (inputs, value) in &self.entries {
            let mut coeff: Option<Scalar> = None;
            for (slot, &k) in inputs.iter().enumerate() {
                match args[slot].get(k) {
                    Some(c) => {
                        coeff = Some(match coeff {
                            Some(acc) => &acc * c,
                            None => c.clone(),
                        })
                    }
                    None => continue 'entries,
                }
            }
            out.add_scaled(value, &coeff.expect("arity >= 1"));
        }
        Ok(out)
    }

    /// For each output basis index, the entries whose value contains it.
    pub fn by_output(&self) -> ByOutput<'_> {
        let mut out: HashMap<usize, Vec<(&[usize], &Scalar)>> = HashMap::new();
        for (inputs, value) in &self.entries {
            for (k, c) in value.iter() {
                out.entry(k).or_default().push((inputs.as_slice(), c));
            }
        }
        out
    }

    /// Rewrites every tuple and output through index maps.
    pub fn reindex(
        &self,
        input_map: impl Fn(usize, usize) -> usize,
        output_map: impl Fn(usize) -> usize,
    ) -> MultiMap {
        let mut out = MultiMap::new(self.arity, self.degree_shift);
        for (inputs, value) in &self.entries {
            let tuple = inputs
                .iter()
                .enumerate()
                .map(|(slot, &k)| input_map(slot, k))
                .collect();
            out.add(tuple, &value.map_indices(|k| Some(output_map(k))));
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> MultiMap {
        let mut out = MultiMap::new(self.arity, self.degree_shift);
        for (inputs, value) in &self.entries {
            out.add(inputs.clone(), &value.scaled(c));
        }
        out
    }

    /// Checks degrees and R-composability of every entry. `inputs[slot]` is the
    /// space read by that slot.
    pub fn validate(
        &self,
        name: &str,
        inputs: &[&GradedSpace],
        output: &GradedSpace,
    ) -> Result<()> {
        assert_eq!(inputs.len(), self.arity);
        for (tuple, value) in &self.entries {
            let label = || {
                tuple
                    .iter()
                    .enumerate()
                    .map(|(slot, &k)| inputs[slot].id(k).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            for (slot, &k) in tuple.iter().enumerate() {
                if k >= inputs[slot].dim() {
                    return Err(Error::Input(format!(
                        "{name}: input index {k} out of range"
                    )));
                }
            }
            let Some((source, target)) = composable_ends(inputs, tuple) else {
                return Err(Error::NotComposable {
                    map: name.to_string(),
                    inputs: label(),
                });
            };
            let in_degree: i64 = tuple
                .iter()
                .enumerate()
                .map(|(slot, &k)| inputs[slot].degree(k))
                .sum();
            for (k, _) in value.iter() {
                if k >= output.dim() {
                    return Err(Error::Input(format!(
                        "{name}: output index {k} out of range"
                    )));
                }
                let out = output.element(k);
                let expected = in_degree + self.degree_shift;
                if out.degree != expected {
                    return Err(Error::DegreeMismatch {
                        map: name.to_string(),
                        inputs: label(),
                        output: out.id.clone(),
                        expected,
                        found: out.degree,
                    });
                }
                if out.source != source || out.target != target {
                    return Err(Error::NotComposable {
                        map: name.to_string(),
                        inputs: label(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// (source of a_1, target of a_d) when the tuple composes, `None` otherwise.
pub fn composable_ends(spaces: &[&GradedSpace], tuple: &[usize]) -> Option<(usize, usize)> {
    let n = tuple.len();
    let el = |slot: usize| spaces[slot].element(tuple[slot]);
    for slot in 0..n.saturating_sub(1) {
        // slot+1 is composed before slot
        if el(slot + 1).target != el(slot).source {
            return None;
        }
    }
    Some((el(n - 1).source, el(0).target))
}
