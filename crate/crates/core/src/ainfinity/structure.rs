//! Strict units, subalgebras, directed parts, object doubling and changes of basis.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::multimap::MultiMap;
use crate::space::{BasisElement, GradedSpace, LinComb};

use super::AInfAlgebra;

/// Checks μ¹(e_i) = 0, μ²(a, e_i) = a e_i, μ²(e_i, a) = (−1)^{‖a‖−1} e_i a and
/// μ^d(…, e_i, …) = 0 for d ≥ 3 on every basis element.
pub fn check_strict_unital(alg: &AInfAlgebra) -> Result<bool> {
    let units = alg.units().ok_or(Error::UnitsMissing)?;
    let field = alg.field();
    let space = alg.space();
    for (i, &e) in units.iter().enumerate() {
        let obj = i + 1;
        if alg.mu(1).and_then(|m| m.get(&[e])).is_some() {
            return Ok(false);
        }
        for (k, b) in space.basis().iter().enumerate() {
            let right = alg
                .mu(2)
                .and_then(|m| m.get(&[k, e]))
                .cloned()
                .unwrap_or_default();
            let want_right = if b.source == obj {
                LinComb::basis(k, field)
            } else {
                LinComb::zero()
            };
            if right != want_right {
                return Ok(false);
            }
            let left = alg
                .mu(2)
                .and_then(|m| m.get(&[e, k]))
                .cloned()
                .unwrap_or_default();
            let want_left = if b.target == obj {
                LinComb::term(k, field.sign(b.reduced_degree() - 1))
            } else {
                LinComb::zero()
            };
            if left != want_left {
                return Ok(false);
            }
        }
        for (d, mu) in alg.maps() {
            if d >= 3 && mu.entries().any(|(inputs, _)| inputs.contains(&e)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A basis subset of `parent` closed under every μ^d, together with the
/// subalgebra it spans (same basis ids, same structure constants).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraWitness {
    parent: AInfAlgebra,
    members: Vec<usize>,
    sub: AInfAlgebra,
}

impl SubalgebraWitness {
    pub fn new(parent: AInfAlgebra, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&k) = members.iter().find(|&&k| k >= parent.dim()) {
            return Err(Error::Input(format!("subalgebra index {k} out of range")));
        }
        let sub = restrict(&parent, &members)?;
        Ok(Self {
            parent,
            members,
            sub,
        })
    }

    pub fn from_ids(parent: AInfAlgebra, ids: &[impl AsRef<str>]) -> Result<Self> {
        let members = ids
            .iter()
            .map(|id| parent.space().lookup(id.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, members)
    }

    /// The whole algebra as a subalgebra of itself.
    pub fn full(parent: AInfAlgebra) -> Self {
        let members = (0..parent.dim()).collect();
        Self::new(parent, members).expect("an algebra is closed in itself")
    }

    pub fn parent(&self) -> &AInfAlgebra {
        &self.parent
    }

    pub fn sub(&self) -> &AInfAlgebra {
        &self.sub
    }

    /// Parent indices of the subalgebra basis, in subalgebra order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    /// Parent indices outside the subalgebra.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent.dim())
            .filter(|&k| !self.contains(k))
            .collect()
    }
}

/// The subalgebra spanned by `members` (sorted parent indices), after
/// checking closure under every μ^d.
fn restrict(parent: &AInfAlgebra, members: &[usize]) -> Result<AInfAlgebra> {
    let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let space = GradedSpace::new(
        parent.num_objects(),
        members
            .iter()
            .map(|&k| parent.space().element(k).clone())
            .collect(),
    )?;
    let mut maps = Vec::new();
    for (d, mu) in parent.maps() {
        let mut restricted = MultiMap::new(d, mu.degree_shift());
        for (inputs, value) in mu.entries() {
            if !inputs.iter().all(|k| pos.contains_key(k)) {
                continue;
            }
            if let Some((out, _)) = value.iter().find(|(out, _)| !pos.contains_key(out)) {
                let ids: Vec<&str> = inputs.iter().map(|&k| parent.space().id(k)).collect();
                return Err(Error::ClosureViolation(format!(
                    "mu{d}({}) has a component along `{}`",
                    ids.join(", "),
                    parent.space().id(out)
                )));
            }
            restricted.add(
                inputs.iter().map(|k| pos[k]).collect(),
                &value.map_indices(|k| pos.get(&k).copied()),
            );
        }
        maps.push(restricted);
    }
    let units = match parent.units() {
        Some(units) if units.iter().all(|u| pos.contains_key(u)) => {
            Some(units.iter().map(|u| pos[u]).collect())
        }
        _ => None,
    };
    AInfAlgebra::new(parent.field(), space, parent.arity_bound(), maps, units)
}

/// Units plus every basis element from a lower- to a higher-numbered object.
pub fn directed_subalgebra(b: &AInfAlgebra) -> Result<SubalgebraWitness> {
    let units = b.units().ok_or(Error::UnitsMissing)?;
    let members: Vec<usize> = (0..b.dim())
        .filter(|&k| {
            let el = b.space().element(k);
            units.contains(&k) || el.source < el.target
        })
        .collect();
    SubalgebraWitness::new(b.clone(), members)
}

/// Basis id of the copy of `id` running from copy `s` to copy `t` (0 or 1).
pub fn doubled_id(id: &str, s: u8, t: u8) -> String {
    format!("{id}@{s}{t}")
}

/// B ⊗ mat₂(K) over K^{2m}: objects i and i + m are two copies of object i.
pub fn double_objects(b: &AInfAlgebra) -> Result<AInfAlgebra> {
    let m = b.num_objects();
    let n = b.dim();
    // index of copy (k, s, t) is 4k + 2s + t
    let idx = |k: usize, s: usize, t: usize| 4 * k + 2 * s + t;
    let mut basis = Vec::with_capacity(4 * n);
    for el in b.space().basis() {
        for s in 0..2u8 {
            for t in 0..2u8 {
                basis.push(BasisElement::new(
                    doubled_id(&el.id, s, t),
                    el.degree,
                    el.source + s as usize * m,
                    el.target + t as usize * m,
                ));
            }
        }
    }
    let space = GradedSpace::new(2 * m, basis)?;
    let mut maps = Vec::new();
    for (d, mu) in b.maps() {
        let mut doubled = MultiMap::new(d, mu.degree_shift());
        for (inputs, value) in mu.entries() {
            // copy labels c_0 … c_d along the chain a_1 → … → a_d
            for labels in 0..(1usize << (d + 1)) {
                let copy = |j: usize| (labels >> j) & 1;
                // input at slot `slot` is a_{d - slot}, running from copy (d-slot-1) to copy (d-slot)
                let tuple: Vec<usize> = inputs
                    .iter()
                    .enumerate()
                    .map(|(slot, &k)| {
                        let pos = d - slot;
                        idx(k, copy(pos - 1), copy(pos))
                    })
                    .collect();
                let out = value.map_indices(|k| Some(idx(k, copy(0), copy(d))));
                doubled.add(tuple, &out);
            }
        }
        maps.push(doubled);
    }
    let units = b.units().map(|u| {
        u.iter()
            .map(|&e| idx(e, 0, 0))
            .chain(u.iter().map(|&e| idx(e, 1, 1)))
            .collect()
    });
    AInfAlgebra::new(b.field(), space, b.arity_bound(), maps, units)
}

/// Rewrites `alg` in a new basis. `forward[j]` expresses new basis vector j
/// in old coordinates; `inverse[k]` expresses old basis vector k in new
/// coordinates. The caller guarantees the two are mutually inverse.
pub fn change_basis(
    alg: &AInfAlgebra,
    new_space: GradedSpace,
    forward: &[LinComb],
    inverse: &[LinComb],
    units: Option<Vec<usize>>,
) -> Result<AInfAlgebra> {
    assert_eq!(forward.len(), new_space.dim());
    assert_eq!(inverse.len(), alg.dim());
    // old index -> list of (new index, coefficient) with old appearing in forward[new]
    let mut preimages: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); alg.dim()];
    for (j, v) in forward.iter().enumerate() {
        for (k, c) in v.iter() {
            preimages[k].push((j, c.clone()));
        }
    }
    let field = alg.field();
    let mut maps = Vec::new();
    for (d, mu) in alg.maps() {
        let mut out = MultiMap::new(d, mu.degree_shift());
        for (inputs, value) in mu.entries() {
            let image = value.apply_linear(|k| inverse[k].clone());
            if image.is_zero() {
                continue;
            }
            let mut stack: Vec<(Vec<usize>, crate::field::Scalar)> =
                vec![(Vec::new(), field.one())];
            for &k in inputs {
                let mut next = Vec::new();
                for (prefix, c) in &stack {
                    for (j, cj) in &preimages[k] {
                        let mut t = prefix.clone();
                        t.push(*j);
                        next.push((t, c * cj));
                    }
                }
                stack = next;
            }
            for (tuple, c) in stack {
                out.add(tuple, &image.scaled(&c));
            }
        }
        maps.push(out);
    }
    AInfAlgebra::new(field, new_space, alg.arity_bound(), maps, units)
}

/// First difference between two algebras compared by basis id, ignoring basis
/// order: basis data, units, then structure constants. `None` means equal.
pub fn first_difference(x: &AInfAlgebra, y: &AInfAlgebra) -> Option<String> {
    if x.field() != y.field() {
        return Some(format!("fields differ: {} vs {}", x.field(), y.field()));
    }
    if x.num_objects() != y.num_objects() {
        return Some(format!(
            "object counts differ: {} vs {}",
            x.num_objects(),
            y.num_objects()
        ));
    }
    let mut to_y = Vec::with_capacity(x.dim());
    for b in x.space().basis() {
        match y.space().position(&b.id) {
            Some(k) if y.space().element(k) == b => to_y.push(k),
            Some(_) => return Some(format!("basis element `{}` has different data", b.id)),
            None => return Some(format!("`{}` missing from the second algebra", b.id)),
        }
    }
    if x.dim() != y.dim() {
        return Some(format!("dimensions differ: {} vs {}", x.dim(), y.dim()));
    }
    let ux = x
        .units()
        .map(|u| u.iter().map(|&k| to_y[k]).collect::<Vec<_>>());
    if ux.as_deref() != y.units() {
        return Some("units differ".into());
    }
    let arities: BTreeSet<usize> = x
        .maps()
        .map(|(d, _)| d)
        .chain(y.maps().map(|(d, _)| d))
        .collect();
    for d in arities {
        let empty = MultiMap::new(d, 2 - d as i64);
        let mx = x.mu(d).unwrap_or(&empty);
        let my = y.mu(d).unwrap_or(&empty);
        let mut tuples: BTreeSet<Vec<usize>> = mx
            .entries()
            .map(|(t, _)| t.iter().map(|&k| to_y[k]).collect())
            .collect();
        tuples.extend(my.entries().map(|(t, _)| t.clone()));
        let from_y: BTreeMap<usize, usize> =
            to_y.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        for t in tuples {
            let tx: Vec<usize> = t.iter().map(|k| from_y[k]).collect();
            let vx = mx
                .get(&tx)
                .map(|v| v.map_indices(|k| Some(to_y[k])))
                .unwrap_or_default();
            let vy = my.get(&t).cloned().unwrap_or_default();
            if vx != vy {
                let ids: Vec<&str> = t.iter().map(|&k| y.space().id(k)).collect();
                return Some(format!(
                    "mu{d}({}) differs: {} vs {}",
                    ids.join(", "),
                    super::format_lincomb(&vx, y.space()),
                    super::format_lincomb(&vy, y.space())
                ));
            }
        }
    }
    None
}

/// The same algebra with its basis listed in the order `order` (old indices).
pub fn permute_basis(alg: &AInfAlgebra, order: &[usize]) -> Result<AInfAlgebra> {
    let field = alg.field();
    let space = GradedSpace::new(
        alg.num_objects(),
        order
            .iter()
            .map(|&k| alg.space().element(k).clone())
            .collect(),
    )?;
    let forward: Vec<LinComb> = order.iter().map(|&k| LinComb::basis(k, field)).collect();
    let mut inverse = vec![LinComb::zero(); alg.dim()];
    for (j, &k) in order.iter().enumerate() {
        inverse[k] = LinComb::basis(j, field);
    }
    let units = alg.units().map(|u| {
        u.iter()
            .map(|e| order.iter().position(|k| k == e).expect("unit kept"))
            .collect()
    });
    change_basis(alg, space, &forward, &inverse, units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::{check_relations, cohomology, AlgebraBuilder};
    use crate::field::Field;
    use crate::fixtures::{fix_an, fix_dual, fix_k, path_a2};

    const Q: Field = Field::Rational;

    #[test]
    fn fixtures_are_strictly_unital() {
        assert!(check_strict_unital(fix_k(Q).parent()).unwrap());
        assert!(check_strict_unital(fix_an(Q, 2).parent()).unwrap());
        let no_units = fix_k(Q).parent().with_units(None).unwrap();
        assert!(matches!(
            check_strict_unital(&no_units),
            Err(Error::UnitsMissing)
        ));
    }

    #[test]
    fn higher_product_on_unit_breaks_unitality() {
        let space = GradedSpace::new(
            1,
            vec![
                BasisElement::new("e", 0, 1, 1),
                BasisElement::new("x", 1, 1, 1),
                BasisElement::new("y", 0, 1, 1),
            ],
        )
        .unwrap();
        let mut b = AlgebraBuilder::new(Q, space);
        b.units(&["e"]).unwrap().unit_products().unwrap();
        b.entry(&["e", "x", "y"], "y", 1).unwrap();
        assert!(!check_strict_unital(&b.build().unwrap()).unwrap());
    }

    #[test]
    fn directed_part_of_an() {
        let b = fix_an(Q, 2).parent().clone();
        let d = directed_subalgebra(&b).unwrap();
        assert_eq!(d.sub().dim(), 3);
        assert!(first_difference(d.sub(), &path_a2(Q)).is_none());
        // one object: only the unit survives
        let dual = fix_dual(Q, 1).parent().clone();
        assert_eq!(directed_subalgebra(&dual).unwrap().members(), &[0]);
    }

    #[test]
    fn closure_is_enforced() {
        let space = GradedSpace::new(
            1,
            vec![
                BasisElement::new("e", 0, 1, 1),
                BasisElement::new("x", 1, 1, 1),
            ],
        )
        .unwrap();
        let mut b = AlgebraBuilder::new(Q, space);
        b.entry(&["e"], "x", 1).unwrap();
        let alg = b.build().unwrap();
        assert!(matches!(
            SubalgebraWitness::from_ids(alg.clone(), &["e"]),
            Err(Error::ClosureViolation(_))
        ));
        let w = SubalgebraWitness::from_ids(alg, &["x"]).unwrap();
        assert_eq!(w.complement(), vec![0]);
    }

    #[test]
    fn doubling_quadruples_dimension() {
        let k = fix_k(Q).parent().clone();
        let d = double_objects(&k).unwrap();
        assert_eq!(d.num_objects(), 2);
        assert_eq!(d.dim(), 4);
        assert!(check_relations(&d).passed());
        assert!(check_strict_unital(&d).unwrap());
        let b = fix_an(Q, 3).parent().clone();
        let db = double_objects(&b).unwrap();
        assert_eq!(db.dim(), 4 * b.dim());
        assert!(check_relations(&db).passed());
    }

    #[test]
    fn rescaling_and_back() {
        let b = fix_dual(Q, 2).parent().clone();
        let two = Q.from_i64(2);
        let half = two.inverse().unwrap();
        let forward = vec![LinComb::basis(0, Q), LinComb::term(1, two)];
        let inverse = vec![LinComb::basis(0, Q), LinComb::term(1, half.clone())];
        let scaled =
            change_basis(&b, b.space().clone(), &forward, &inverse, Some(vec![0])).unwrap();
        assert!(check_relations(&scaled).passed());
        assert_eq!(
            cohomology(&scaled).unwrap().dims_by_degree(),
            cohomology(&b).unwrap().dims_by_degree()
        );
        let back = change_basis(
            &scaled,
            b.space().clone(),
            &inverse,
            &forward,
            Some(vec![0]),
        )
        .unwrap();
        assert!(first_difference(&back, &b).is_none());
    }

    #[test]
    fn permutation_is_invisible_to_comparison() {
        let b = fix_an(Q, 2).parent().clone();
        let order: Vec<usize> = (0..b.dim()).rev().collect();
        let p = permute_basis(&b, &order).unwrap();
        assert!(first_difference(&p, &b).is_none());
        assert!(first_difference(&b, fix_an(Q, 1).parent()).is_some());
    }
}
