//! Cohomology of μ¹ by exact elimination, one (degree, source, target) block at a time.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{extend_basis, Matrix};
use crate::multimap::MultiMap;
use crate::space::{BasisElement, GradedSpace, LinComb};

use super::AInfAlgebra;

/// A cochain complex of R-bimodules: a graded space with a degree +1 differential.
#[derive(Clone, Debug)]
pub struct Complex {
    field: Field,
    space: GradedSpace,
    differential: MultiMap,
}

impl Complex {
    pub fn new(field: Field, space: GradedSpace, differential: MultiMap) -> Result<Self> {
        if differential.arity() != 1 || differential.degree_shift() != 1 {
            return Err(Error::Input(
                "a differential has arity 1 and degree 1".into(),
            ));
        }
        differential.validate("d", &[&space], &space)?;
        let c = Self {
            field,
            space,
            differential,
        };
        if !c.squares_to_zero() {
            return Err(Error::RelationsFail(
                "differential does not square to zero".into(),
            ));
        }
        Ok(c)
    }

    /// (B, μ¹) for an A∞-algebra.
    pub fn of_algebra(alg: &AInfAlgebra) -> Result<Self> {
        let d = alg.mu(1).cloned().unwrap_or_else(|| MultiMap::new(1, 1));
        Self::new(alg.field(), alg.space().clone(), d)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn apply(&self, v: &LinComb) -> LinComb {
        self.differential
            .apply(std::slice::from_ref(v))
            .expect("arity one")
    }

    fn image(&self, k: usize) -> LinComb {
        self.differential.get(&[k]).cloned().unwrap_or_default()
    }

    pub fn squares_to_zero(&self) -> bool {
        (0..self.space.dim()).all(|k| self.apply(&self.image(k)).is_zero())
    }

    /// Matrix of d restricted to `from` → `to` (rows indexed by `to`).
    fn block_matrix(&self, from: &[usize], to: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, to.len(), from.len());
        let pos: BTreeMap<usize, usize> = to.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        for (col, &k) in from.iter().enumerate() {
            for (out, c) in self.image(k).iter() {
                if let Some(&row) = pos.get(&out) {
                    m.set(row, col, c.clone());
                }
            }
        }
        m
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut groups: BTreeMap<(usize, usize), BTreeMap<i64, Vec<usize>>> = BTreeMap::new();
        for (k, b) in self.space.basis().iter().enumerate() {
            groups
                .entry((b.source, b.target))
                .or_default()
                .entry(b.degree)
                .or_default()
                .push(k);
        }
        let mut blocks = Vec::new();
        for ((source, target), by_degree) in &groups {
            let empty = Vec::new();
            for (&degree, here) in by_degree {
                let next = by_degree.get(&(degree + 1)).unwrap_or(&empty);
                let prev = by_degree.get(&(degree - 1)).unwrap_or(&empty);
                let d_out = self.block_matrix(here, next);
                let d_in = self.block_matrix(prev, here);
                let cycles = d_out.kernel();
                let boundaries = d_in.column_space();
                let reps = extend_basis(self.field, here.len(), &boundaries, &cycles);
                let representatives = reps
                    .into_iter()
                    .map(|v| LinComb::from_terms(here.iter().copied().zip(v)))
                    .collect::<Vec<_>>();
                blocks.push(CohomologyBlock {
                    degree,
                    source: *source,
                    target: *target,
                    chain_dim: here.len(),
                    dim: representatives.len(),
                    representatives,
                });
            }
        }
        blocks.sort_by_key(|b| (b.degree, b.source, b.target));
        Cohomology { blocks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBlock {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    /// Dimension of the cochains in this block.
    pub chain_dim: usize,
    pub dim: usize,
    /// Cycles whose classes form a basis of this block of cohomology.
    pub representatives: Vec<LinComb>,
}

/// Graded dimensions per (degree, source, target) block, with representative cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cohomology {
    pub blocks: Vec<CohomologyBlock>,
}

impl Cohomology {
    /// Total dimension in each degree (zero degrees omitted).
    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            if b.dim > 0 {
                *out.entry(b.degree).or_insert(0) += b.dim;
            }
        }
        out
    }

    /// Nonzero dimensions keyed by (degree, source, target).
    pub fn dims_by_block(&self) -> BTreeMap<(i64, usize, usize), usize> {
        self.blocks
            .iter()
            .filter(|b| b.dim > 0)
            .map(|b| ((b.degree, b.source, b.target), b.dim))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// Σ (−1)^deg dim, per (source, target) block.
    pub fn euler_characteristics(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry((b.source, b.target)).or_insert(0) += if b.degree.rem_euclid(2) == 0 {
                b.dim as i64
            } else {
                -(b.dim as i64)
            };
        }
        out
    }
}

/// Cohomology of an A∞-algebra with respect to μ¹. Errors if μ¹∘μ¹ ≠ 0.
pub fn cohomology(alg: &AInfAlgebra) -> Result<Cohomology> {
    Ok(Complex::of_algebra(alg)?.cohomology())
}

/// Euler characteristic of the cochains themselves, per block.
pub fn chain_euler_characteristics(space: &GradedSpace) -> BTreeMap<(usize, usize), i64> {
    let mut out = BTreeMap::new();
    for b in space.basis() {
        *out.entry((b.source, b.target)).or_insert(0) +=
            if b.degree.rem_euclid(2) == 0 { 1 } else { -1 };
    }
    out
}

/// Mapping cone of a degree-0 chain map f: C → D, with C shifted down by one
/// and differential (c, x) ↦ (−dc, f(c) + dx).
pub fn mapping_cone(source: &Complex, target: &Complex, map: &MultiMap) -> Result<Complex> {
    let field = source.field;
    let n = source.space.dim();
    let mut basis: Vec<BasisElement> = source
        .space
        .basis()
        .iter()
        .map(|b| BasisElement::new(format!("cone:{}", b.id), b.degree - 1, b.source, b.target))
        .collect();
    basis.extend(target.space.basis().iter().cloned());
    let space = GradedSpace::new(source.space.num_objects(), basis)?;
    let mut d = MultiMap::new(1, 1);
    let minus = field.from_i64(-1);
    for k in 0..n {
        let mut v = source.image(k).map_indices(Some).scaled(&minus);
        let fk = map.get(&[k]).cloned().unwrap_or_default();
        v.add_comb(&fk.map_indices(|j| Some(j + n)));
        d.add(vec![k], &v);
    }
    for k in 0..target.space.dim() {
        d.add(vec![k + n], &target.image(k).map_indices(|j| Some(j + n)));
    }
    Complex::new(field, space, d)
}

/// A chain map is a quasi-isomorphism iff its mapping cone is acyclic.
pub fn chain_map_is_quasi_iso(source: &Complex, target: &Complex, map: &MultiMap) -> bool {
    match mapping_cone(source, target, map) {
        Ok(cone) => cone.cohomology().total_dim() == 0,
        Err(_) => false,
    }
}

/// Image of a vector under a linear map stored as an arity-1 multimap.
pub fn apply_linear(map: &MultiMap, v: &LinComb) -> LinComb {
    map.apply(std::slice::from_ref(v)).expect("arity one")
}
