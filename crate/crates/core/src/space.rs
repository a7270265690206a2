//! Graded vector spaces over R = K e₁ ⊕ ⋯ ⊕ K e_m and sparse vectors in them.
//!
//! A basis element `x` with `source = i`, `target = j` lives in the summand
//! e_j · V · e_i, i.e. it is a morphism from object i to object j.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub id: String,
    pub degree: i64,
    /// 1-based object index.
    pub source: usize,
    /// 1-based object index.
    pub target: usize,
}

impl BasisElement {
    pub fn new(id: impl Into<String>, degree: i64, source: usize, target: usize) -> Self {
        Self {
            id: id.into(),
            degree,
            source,
            target,
        }
    }

    /// ‖x‖ = deg(x) − 1.
    pub fn reduced_degree(&self) -> i64 {
        self.degree - 1
    }
}

/// Finite graded basis with object labels. Immutable once built.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    num_objects: usize,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.num_objects == other.num_objects && self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(num_objects: usize, basis: Vec<BasisElement>) -> Result<Self> {
        if num_objects == 0 {
            return Err(Error::Input(
                "a graded space needs at least one object".into(),
            ));
        }
        let mut index = HashMap::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            for object in [b.source, b.target] {
                if object == 0 || object > num_objects {
                    return Err(Error::ObjectOutOfRange {
                        id: b.id.clone(),
                        object,
                        num_objects,
                    });
                }
            }
            if index.insert(b.id.clone(), k).is_some() {
                return Err(Error::DuplicateBasisId(b.id.clone()));
            }
        }
        Ok(Self {
            num_objects,
            basis,
            index,
        })
    }

    pub fn empty(num_objects: usize) -> Self {
        Self::new(num_objects, Vec::new()).expect("empty space is valid")
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, k: usize) -> &BasisElement {
        &self.basis[k]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.position(id)
            .ok_or_else(|| Error::UnknownBasisId(id.to_string()))
    }

    pub fn id(&self, k: usize) -> &str {
        &self.basis[k].id
    }

    pub fn degree(&self, k: usize) -> i64 {
        self.basis[k].degree
    }

    pub fn reduced(&self, k: usize) -> i64 {
        self.basis[k].degree - 1
    }

    /// Reduced degree of the element named `id`.
    pub fn reduced_degree(&self, id: &str) -> Result<i64> {
        Ok(self.basis[self.lookup(id)?].reduced_degree())
    }

    /// Σ ‖x‖ over the listed elements. Callers add their own offsets.
    pub fn koszul_exponent<S: AsRef<str>>(&self, ids: &[S]) -> Result<i64> {
        ids.iter().map(|id| self.reduced_degree(id.as_ref())).sum()
    }

    /// Indices of the basis elements spanning the (degree, source, target) block.
    pub fn block(&self, degree: i64, source: usize, target: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| {
                let b = &self.basis[k];
                b.degree == degree && b.source == source && b.target == target
            })
            .collect()
    }

    /// All (degree, source, target) triples occurring in the basis, sorted.
    pub fn blocks(&self) -> Vec<(i64, usize, usize)> {
        let mut out: Vec<_> = self
            .basis
            .iter()
            .map(|b| (b.degree, b.source, b.target))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Same basis with every degree raised by `k` (the shift X[−k]).
    pub fn raise_degrees(&self, k: i64) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                degree: b.degree + k,
                ..b.clone()
            })
            .collect();
        Self::new(self.num_objects, basis).expect("raising degrees keeps a valid space")
    }

    /// Renames every basis element through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                id: f(&b.id),
                ..b.clone()
            })
            .collect();
        Self::new(self.num_objects, basis)
    }
}

/// A sparse vector: basis index ↦ nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<usize, Scalar>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: usize, field: Field) -> Self {
        Self::term(k, field.one())
    }

    pub fn term(k: usize, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(k, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&Scalar> {
        self.terms.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, k: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// self += other
    pub fn add_comb(&mut self, other: &LinComb) {
        for (k, v) in other.iter() {
            self.add_term(k, v);
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, other: &LinComb, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k, &(v * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> LinComb {
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    /// Re-indexes every term through `f`, dropping terms mapped to `None`.
    pub fn map_indices(&self, f: impl Fn(usize) -> Option<usize>) -> LinComb {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            if let Some(j) = f(k) {
                out.add_term(j, c);
            }
        }
        out
    }

    /// Applies a linear map given by its values on basis vectors.
    pub fn apply_linear(&self, images: impl Fn(usize) -> LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&images(k), c);
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }
}
