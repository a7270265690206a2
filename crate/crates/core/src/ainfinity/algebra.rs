use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::multimap::MultiMap;
use crate::space::{GradedSpace, LinComb};

/// A finite-dimensional A∞-algebra over R = K^m with μ^d = 0 for d > arity bound.
///
/// Only nonzero structure maps are stored, so two algebras compare equal
/// exactly when their structure constants agree in the same basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfAlgebra {
    field: Field,
    space: GradedSpace,
    maps: BTreeMap<usize, MultiMap>,
    arity_bound: usize,
    units: Option<Vec<usize>>,
}

impl AInfAlgebra {
    /// Validates degrees (μ^d has degree 2 − d), composability and units.
    /// Relations are not checked here; see [`check_relations`](super::check_relations).
    pub fn new(
        field: Field,
        space: GradedSpace,
        arity_bound: usize,
        maps: impl IntoIterator<Item = MultiMap>,
        units: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut stored = BTreeMap::new();
        for map in maps {
            let d = map.arity();
            if map.degree_shift() != 2 - d as i64 {
                return Err(Error::Input(format!(
                    "mu{d} must have degree {}",
                    2 - d as i64
                )));
            }
            if d > arity_bound && !map.is_zero() {
                return Err(Error::Input(format!(
                    "mu{d} exceeds the arity bound {arity_bound}"
                )));
            }
            let spaces = vec![&space; d];
            map.validate(&format!("mu{d}"), &spaces, &space)?;
            check_field(field, &map)?;
            if map.is_zero() {
                continue;
            }
            match stored.get_mut(&d) {
                None => {
                    stored.insert(d, map);
                }
                Some(existing) => {
                    let existing: &mut MultiMap = existing;
                    for (inputs, value) in map.entries() {
                        existing.add(inputs.clone(), value);
                    }
                }
            }
        }
        stored.retain(|_, m| !m.is_zero());
        if let Some(units) = &units {
            if units.len() != space.num_objects() {
                return Err(Error::InvalidUnits(format!(
                    "expected {} units, got {}",
                    space.num_objects(),
                    units.len()
                )));
            }
            for (i, &u) in units.iter().enumerate() {
                if u >= space.dim() {
                    return Err(Error::InvalidUnits(format!("unit index {u} out of range")));
                }
                let b = space.element(u);
                if b.degree != 0 || b.source != i + 1 || b.target != i + 1 {
                    return Err(Error::InvalidUnits(format!(
                        "unit `{}` must have degree 0 and live on object {}",
                        b.id,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self {
            field,
            space,
            maps: stored,
            arity_bound: arity_bound.max(1),
            units,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn num_objects(&self) -> usize {
        self.space.num_objects()
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn units(&self) -> Option<&[usize]> {
        self.units.as_deref()
    }

    pub fn is_unit(&self, k: usize) -> bool {
        self.units.as_ref().is_some_and(|u| u.contains(&k))
    }

    /// μ^d, or `None` when it vanishes.
    pub fn mu(&self, d: usize) -> Option<&MultiMap> {
        self.maps.get(&d)
    }

    pub fn maps(&self) -> impl Iterator<Item = (usize, &MultiMap)> + '_ {
        self.maps.iter().map(|(d, m)| (*d, m))
    }

    /// True when μ^d = 0 for all d ≥ 3.
    pub fn is_dga(&self) -> bool {
        self.maps.keys().all(|&d| d <= 2)
    }

    /// Applies μ^d to a tuple of vectors written (a_d, …, a_1).
    pub fn apply(&self, args: &[LinComb]) -> Result<LinComb> {
        match self.mu(args.len()) {
            Some(m) => m.apply(args),
            None => Ok(LinComb::zero()),
        }
    }

    /// Same structure with new units (or none).
    pub fn with_units(&self, units: Option<Vec<usize>>) -> Result<Self> {
        Self::new(
            self.field,
            self.space.clone(),
            self.arity_bound,
            self.maps.values().cloned(),
            units,
        )
    }

    /// Same structure with a larger declared arity bound.
    pub fn with_arity_bound(mut self, bound: usize) -> Self {
        self.arity_bound = self.arity_bound.max(bound);
        self
    }
}

fn check_field(field: Field, map: &MultiMap) -> Result<()> {
    for (_, value) in map.entries() {
        for (_, c) in value.iter() {
            field.ensure_same(c.field())?;
        }
    }
    Ok(())
}

/// Incremental construction of structure maps by basis id.
pub struct AlgebraBuilder {
    field: Field,
    space: GradedSpace,
    maps: BTreeMap<usize, MultiMap>,
    arity_bound: usize,
    units: Option<Vec<usize>>,
}

impl AlgebraBuilder {
    pub fn new(field: Field, space: GradedSpace) -> Self {
        Self {
            field,
            space,
            maps: BTreeMap::new(),
            arity_bound: 1,
            units: None,
        }
    }

    pub fn arity_bound(mut self, d: usize) -> Self {
        self.arity_bound = self.arity_bound.max(d);
        self
    }

    /// Adds `coeff · output` to μ^d(inputs), inputs written (a_d, …, a_1).
    pub fn entry(&mut self, inputs: &[&str], output: &str, coeff: i64) -> Result<&mut Self> {
        let c = self.field.from_i64(coeff);
        self.entry_scalar(inputs, output, &c)
    }

    pub fn entry_scalar(
        &mut self,
        inputs: &[&str],
        output: &str,
        c: &crate::field::Scalar,
    ) -> Result<&mut Self> {
        let d = inputs.len();
        let tuple = inputs
            .iter()
            .map(|id| self.space.lookup(id))
            .collect::<Result<Vec<_>>>()?;
        let out = self.space.lookup(output)?;
        self.maps
            .entry(d)
            .or_insert_with(|| MultiMap::new(d, 2 - d as i64))
            .add_term(tuple, out, c);
        self.arity_bound = self.arity_bound.max(d);
        Ok(self)
    }

    pub fn units(&mut self, ids: &[&str]) -> Result<&mut Self> {
        self.units = Some(
            ids.iter()
                .map(|id| self.space.lookup(id))
                .collect::<Result<_>>()?,
        );
        Ok(self)
    }

    /// Adds the structure constants forced by strict unitality of the
    /// declared units: μ²(a, e_i) = a e_i and μ²(e_i, a) = (−1)^{deg a} e_i a.
    pub fn unit_products(&mut self) -> Result<&mut Self> {
        let units = self.units.clone().ok_or(Error::UnitsMissing)?;
        let mu2 = self.maps.entry(2).or_insert_with(|| MultiMap::new(2, 0));
        for (i, &e) in units.iter().enumerate() {
            let obj = i + 1;
            for (k, b) in self.space.basis().iter().enumerate() {
                if b.source == obj {
                    mu2.add_term(vec![k, e], k, &self.field.one());
                }
                if b.target == obj && !(k == e && b.source == obj) {
                    mu2.add_term(vec![e, k], k, &self.field.sign(b.degree));
                }
            }
        }
        self.arity_bound = self.arity_bound.max(2);
        Ok(self)
    }

    pub fn build(&self) -> Result<AInfAlgebra> {
        AInfAlgebra::new(
            self.field,
            self.space.clone(),
            self.arity_bound,
            self.maps.values().cloned(),
            self.units.clone(),
        )
    }
}
