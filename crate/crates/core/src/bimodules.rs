//! A∞-bimodules over an A∞-algebra A. The operation μ^{s|1|r} is stored as a
//! multimap of arity s + 1 + r whose slot s reads the bimodule and whose other
//! slots read A. Bimodule equations are those of the trivial extension A ⊕ P.

use std::collections::{BTreeMap, BTreeSet};

use crate::ainfinity::cohomology::chain_map_is_quasi_iso;
use crate::ainfinity::{
    check_homomorphism, AInfAlgebra, AInfHomomorphism, CheckReport, Complex, SubalgebraWitness,
};
use crate::error::{Error, Result};
use crate::multimap::MultiMap;
use crate::space::{BasisElement, GradedSpace, LinComb};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfBimodule {
    base: AInfAlgebra,
    space: GradedSpace,
    maps: BTreeMap<(usize, usize), MultiMap>,
}

fn slot_spaces<'a>(
    base: &'a AInfAlgebra,
    middle: &'a GradedSpace,
    s: usize,
    r: usize,
) -> Vec<&'a GradedSpace> {
    let mut spaces = vec![base.space(); s + 1 + r];
    spaces[s] = middle;
    spaces
}

impl AInfBimodule {
    /// Maps are keyed by (s, r). Validates arity, degree 1 − r − s and composability.
    pub fn new(
        base: AInfAlgebra,
        space: GradedSpace,
        maps: impl IntoIterator<Item = ((usize, usize), MultiMap)>,
    ) -> Result<Self> {
        if space.num_objects() != base.num_objects() {
            return Err(Error::BaseMismatch);
        }
        let mut stored: BTreeMap<(usize, usize), MultiMap> = BTreeMap::new();
        for ((s, r), map) in maps {
            if map.arity() != s + 1 + r {
                return Err(Error::ArityMismatch {
                    expected: s + 1 + r,
                    found: map.arity(),
                });
            }
            if map.degree_shift() != 1 - (r + s) as i64 {
                return Err(Error::Input(format!(
                    "mu{s}|1|{r} must have degree {}",
                    1 - (r + s) as i64
                )));
            }
            map.validate(
                &format!("mu{s}|1|{r}"),
                &slot_spaces(&base, &space, s, r),
                &space,
            )?;
            let slot = stored
                .entry((s, r))
                .or_insert_with(|| MultiMap::new(s + 1 + r, 1 - (r + s) as i64));
            for (inputs, value) in map.entries() {
                slot.add(inputs.clone(), value);
            }
        }
        stored.retain(|_, m| !m.is_zero());
        Ok(Self {
            base,
            space,
            maps: stored,
        })
    }

    pub fn zero(base: AInfAlgebra, space: GradedSpace) -> Result<Self> {
        Self::new(base, space, [])
    }

    pub fn base(&self) -> &AInfAlgebra {
        &self.base
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn map(&self, s: usize, r: usize) -> Option<&MultiMap> {
        self.maps.get(&(s, r))
    }

    pub fn maps(&self) -> impl Iterator<Item = ((usize, usize), &MultiMap)> + '_ {
        self.maps.iter().map(|(k, m)| (*k, m))
    }

    /// Largest total arity s + 1 + r with a nonzero operation.
    pub fn arity_bound(&self) -> usize {
        self.maps.keys().map(|(s, r)| s + 1 + r).max().unwrap_or(1)
    }

    /// The complex (P, μ^{0|1|0}).
    pub fn complex(&self) -> Result<Complex> {
        let d = self
            .map(0, 0)
            .cloned()
            .unwrap_or_else(|| MultiMap::new(1, 1));
        Complex::new(self.base.field(), self.space.clone(), d)
    }

    /// Same structure with renamed basis ids.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Self::new(
            self.base.clone(),
            self.space.rename(f)?,
            self.maps.iter().map(|(k, m)| (*k, m.clone())),
        )
    }
}

/// Σ ‖a‖ over the algebra slots to the right of the bimodule slot.
fn right_exponent(base: &AInfAlgebra, inputs: &[usize], s: usize) -> i64 {
    inputs[s + 1..]
        .iter()
        .map(|&k| base.space().reduced(k))
        .sum()
}

/// B as a bimodule over a subalgebra A, with the signs of the diagonal bimodule:
/// μ^{s|1|r}(a…, b, a…) = (−1)^{‖a_1‖+⋯+‖a_r‖+1} μ_B(a…, b, a…).
pub fn restriction_bimodule(pair: &SubalgebraWitness) -> AInfBimodule {
    let parent = pair.parent();
    let base = pair.sub().clone();
    let field = parent.field();
    let to_sub: BTreeMap<usize, usize> = pair
        .members()
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i))
        .collect();
    let mut maps: BTreeMap<(usize, usize), MultiMap> = BTreeMap::new();
    for (d, mu) in parent.maps() {
        for (inputs, value) in mu.entries() {
            for s in 0..d {
                let r = d - 1 - s;
                let outer: Option<Vec<usize>> = inputs
                    .iter()
                    .enumerate()
                    .map(|(slot, &k)| {
                        if slot == s {
                            Some(k)
                        } else {
                            to_sub.get(&k).copied()
                        }
                    })
                    .collect();
                let Some(tuple) = outer else { continue };
                let exp: i64 = inputs[s + 1..]
                    .iter()
                    .map(|&k| parent.space().reduced(k))
                    .sum::<i64>()
                    + 1;
                maps.entry((s, r))
                    .or_insert_with(|| MultiMap::new(d, 1 - (r + s) as i64))
                    .add(tuple, &value.scaled(&field.sign(exp)));
            }
        }
    }
    AInfBimodule::new(base, parent.space().clone(), maps).expect("restriction of a valid algebra")
}

/// A as a bimodule over itself.
pub fn diagonal_bimodule(a: &AInfAlgebra) -> AInfBimodule {
    restriction_bimodule(&SubalgebraWitness::full(a.clone()))
}

/// P[−1] (degrees raised by one) with sign (−1)^{‖a_1‖+⋯+‖a_r‖+1}.
fn shift_down(p: &AInfBimodule, raise: i64) -> AInfBimodule {
    let field = p.base.field();
    let maps = p.maps.iter().map(|(&(s, r), m)| {
        let mut out = MultiMap::new(m.arity(), m.degree_shift());
        for (inputs, value) in m.entries() {
            let exp = right_exponent(&p.base, inputs, s) + 1;
            out.add(inputs.clone(), &value.scaled(&field.sign(exp)));
        }
        ((s, r), out)
    });
    AInfBimodule::new(
        p.base.clone(),
        p.space.raise_degrees(raise),
        maps.collect::<Vec<_>>(),
    )
    .expect("shift of a valid bimodule")
}

/// P[k]: degrees lowered by k, composed from unit shifts.
pub fn shift_bimodule(p: &AInfBimodule, k: i64) -> AInfBimodule {
    let mut out = p.clone();
    for _ in 0..k.unsigned_abs() {
        out = shift_down(&out, if k < 0 { 1 } else { -1 });
    }
    out
}

/// Id of the dual basis vector of `id`.
pub fn dual_id(id: &str) -> String {
    format!("{id}*")
}

/// Data entering the sign of one dual structure constant: the element p of P
/// paired against, Σ‖a‖ over the left inputs a_{r+s}…a_{r+1} and over the
/// right inputs a_r…a_1, and the counts s, r.
#[derive(Clone, Copy, Debug)]
pub struct DualTerm {
    pub n: i64,
    pub deg_p: i64,
    pub left: i64,
    pub right: i64,
    pub s: i64,
    pub r: i64,
}

fn dual_exponent(t: DualTerm) -> i64 {
    t.deg_p + 1 + t.n * t.left
}

/// P^∨[−n]: the dual of the degree n − r part of P sits in degree r with
/// source and target exchanged, and
/// μ^{s|1|r}(a_{r+s}…a_{r+1}, q*, a_r…a_1)(p) = ± q*(μ_P^{r|1|s}(a_r…a_1, p, a_{r+s}…a_{r+1}))
/// with sign exponent deg p + 1 + n(‖a_{r+1}‖ + ⋯ + ‖a_{r+s}‖).
pub fn dual_bimodule(p: &AInfBimodule, n: i64) -> AInfBimodule {
    dual_bimodule_with(p, n, &dual_exponent)
}

fn dual_bimodule_with(
    p: &AInfBimodule,
    n: i64,
    exponent: &dyn Fn(DualTerm) -> i64,
) -> AInfBimodule {
    let field = p.base.field();
    let basis = p
        .space
        .basis()
        .iter()
        .map(|b| BasisElement::new(dual_id(&b.id), n - b.degree, b.target, b.source))
        .collect();
    let space = GradedSpace::new(p.space.num_objects(), basis).expect("dual ids are distinct");
    let reduced = |k: usize| p.base.space().reduced(k);
    let mut maps: BTreeMap<(usize, usize), MultiMap> = BTreeMap::new();
    for (&(r, s), m) in &p.maps {
        // m is μ_P^{r|1|s}: slots a_r…a_1 (r of them), p, a_{r+s}…a_{r+1} (s of them)
        for (inputs, value) in m.entries() {
            let pre = &inputs[..r];
            let post = &inputs[r + 1..];
            let elem = inputs[r];
            let left: i64 = post.iter().map(|&k| reduced(k)).sum();
            let right: i64 = pre.iter().map(|&k| reduced(k)).sum();
            let mut tuple = Vec::with_capacity(inputs.len());
            tuple.extend_from_slice(post);
            let slot = tuple.len();
            tuple.push(0);
            tuple.extend_from_slice(pre);
            for (q, c) in value.iter() {
                tuple[slot] = q;
                let exp = exponent(DualTerm {
                    n,
                    deg_p: p.space.degree(elem),
                    left,
                    right,
                    s: s as i64,
                    r: r as i64,
                });
                maps.entry((s, r))
                    .or_insert_with(|| MultiMap::new(s + 1 + r, 1 - (r + s) as i64))
                    .add_term(tuple.clone(), elem, &(c * &field.sign(exp)));
            }
        }
    }
    AInfBimodule::new(p.base.clone(), space, maps).expect("dual of a valid bimodule")
}

/// P/Q for the span Q of the basis elements `sub`, together with the strict
/// projection P → P/Q. Errors unless Q is closed under every operation.
pub fn quotient_bimodule(
    p: &AInfBimodule,
    sub: &[usize],
) -> Result<(AInfBimodule, BimoduleMorphism)> {
    let sub: BTreeSet<usize> = sub.iter().copied().collect();
    let keep: Vec<usize> = (0..p.dim()).filter(|k| !sub.contains(k)).collect();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let space = GradedSpace::new(
        p.space.num_objects(),
        keep.iter().map(|&k| p.space.element(k).clone()).collect(),
    )?;
    let mut maps = Vec::new();
    for (&(s, r), m) in &p.maps {
        let mut out = MultiMap::new(m.arity(), m.degree_shift());
        for (inputs, value) in m.entries() {
            let elem = inputs[s];
            if sub.contains(&elem) {
                if let Some((k, _)) = value.iter().find(|(k, _)| !sub.contains(k)) {
                    return Err(Error::NotSubBimodule(format!(
                        "mu{s}|1|{r} sends `{}` to a combination involving `{}`",
                        p.space.id(elem),
                        p.space.id(k)
                    )));
                }
                continue;
            }
            let mut tuple = inputs.clone();
            tuple[s] = pos[&elem];
            out.add(tuple, &value.map_indices(|k| pos.get(&k).copied()));
        }
        maps.push(((s, r), out));
    }
    let quotient = AInfBimodule::new(p.base.clone(), space, maps)?;
    let images: Vec<LinComb> = (0..p.dim())
        .map(|k| match pos.get(&k) {
            Some(&i) => LinComb::basis(i, p.base.field()),
            None => LinComb::zero(),
        })
        .collect();
    let projection = BimoduleMorphism::strict(p, &quotient, &images)?;
    Ok((quotient, projection))
}

/// A ⊕ P: A's basis followed by P's. Mixed operations carry the sign
/// (−1)^{‖a_1‖+⋯+‖a_{i−1}‖+1} with p in position i from the right.
pub fn trivial_extension(a: &AInfAlgebra, p: &AInfBimodule) -> Result<AInfAlgebra> {
    if p.base != *a {
        return Err(Error::BaseMismatch);
    }
    let field = a.field();
    let na = a.dim();
    let mut basis = a.space().basis().to_vec();
    basis.extend(p.space.basis().iter().cloned());
    let space = GradedSpace::new(a.num_objects(), basis)?;
    let mut maps: Vec<MultiMap> = a.maps().map(|(_, m)| m.clone()).collect();
    for (&(s, r), m) in &p.maps {
        let d = s + 1 + r;
        let mut out = MultiMap::new(d, 2 - d as i64);
        for (inputs, value) in m.entries() {
            let exp = right_exponent(a, inputs, s) + 1;
            let mut tuple = inputs.clone();
            tuple[s] += na;
            out.add(
                tuple,
                &value.map_indices(|k| Some(k + na)).scaled(&field.sign(exp)),
            );
        }
        maps.push(out);
    }
    let bound = a.arity_bound().max(p.arity_bound());
    AInfAlgebra::new(field, space, bound, maps, a.units().map(<[usize]>::to_vec))
}

/// `p` with ids primed until none collides with an id of the base, so that
/// A ⊕ P is defined; used where only the structure constants matter.
fn disjoint_from_base(p: &AInfBimodule) -> Result<AInfBimodule> {
    let mut out = p.clone();
    while out
        .space
        .basis()
        .iter()
        .any(|b| p.base.space().position(&b.id).is_some())
    {
        out = out.renamed(|id| format!("{id}'"))?;
    }
    Ok(out)
}

/// Residuals of the bimodule equations, indexed in the trivial extension A ⊕ P.
pub fn check_bimodule_relations(p: &AInfBimodule) -> Result<CheckReport> {
    let ext = trivial_extension(&p.base, &disjoint_from_base(p)?)?;
    let na = p.base.dim();
    let mut report = crate::ainfinity::check_relations(&ext);
    report
        .failures
        .retain(|f| f.inputs.iter().filter(|&&k| k >= na).count() == 1);
    Ok(report)
}

/// A morphism of bimodules over a common base with components φ^{s|1|r} of degree −r − s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMorphism {
    source: AInfBimodule,
    target: AInfBimodule,
    components: BTreeMap<(usize, usize), MultiMap>,
}

impl BimoduleMorphism {
    pub fn new(
        source: AInfBimodule,
        target: AInfBimodule,
        components: impl IntoIterator<Item = ((usize, usize), MultiMap)>,
    ) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::BaseMismatch);
        }
        let mut stored: BTreeMap<(usize, usize), MultiMap> = BTreeMap::new();
        for ((s, r), map) in components {
            if map.arity() != s + 1 + r {
                return Err(Error::ArityMismatch {
                    expected: s + 1 + r,
                    found: map.arity(),
                });
            }
            if map.degree_shift() != -((r + s) as i64) {
                return Err(Error::Input(format!(
                    "phi{s}|1|{r} must have degree {}",
                    -((r + s) as i64)
                )));
            }
            map.validate(
                &format!("phi{s}|1|{r}"),
                &slot_spaces(&source.base, &source.space, s, r),
                &target.space,
            )?;
            let slot = stored
                .entry((s, r))
                .or_insert_with(|| MultiMap::new(s + 1 + r, -((r + s) as i64)));
            for (inputs, value) in map.entries() {
                slot.add(inputs.clone(), value);
            }
        }
        stored.retain(|_, m| !m.is_zero());
        Ok(Self {
            source,
            target,
            components: stored,
        })
    }

    /// φ^{0|1|0} given by the images of the source basis, no higher terms.
    pub fn strict(
        source: &AInfBimodule,
        target: &AInfBimodule,
        images: &[LinComb],
    ) -> Result<Self> {
        assert_eq!(images.len(), source.dim());
        let mut phi = MultiMap::new(1, 0);
        for (k, v) in images.iter().enumerate() {
            phi.add(vec![k], v);
        }
        Self::new(source.clone(), target.clone(), [((0, 0), phi)])
    }

    pub fn identity(p: &AInfBimodule) -> Self {
        let images: Vec<LinComb> = (0..p.dim())
            .map(|k| LinComb::basis(k, p.base.field()))
            .collect();
        Self::strict(p, p, &images).expect("identity is well formed")
    }

    pub fn source(&self) -> &AInfBimodule {
        &self.source
    }

    pub fn target(&self) -> &AInfBimodule {
        &self.target
    }

    pub fn component(&self, s: usize, r: usize) -> Option<&MultiMap> {
        self.components.get(&(s, r))
    }

    pub fn components(&self) -> impl Iterator<Item = ((usize, usize), &MultiMap)> + '_ {
        self.components.iter().map(|(k, m)| (*k, m))
    }

    pub fn linear_part(&self) -> MultiMap {
        self.components
            .get(&(0, 0))
            .cloned()
            .unwrap_or_else(|| MultiMap::new(1, 0))
    }

    /// The induced A∞-homomorphism A ⊕ P → A ⊕ Q: identity on A, φ on the bimodule slot.
    pub fn induced_homomorphism(&self) -> Result<AInfHomomorphism> {
        let a = &self.source.base;
        let na = a.dim();
        let source = trivial_extension(a, &disjoint_from_base(&self.source)?)?;
        let target = trivial_extension(a, &disjoint_from_base(&self.target)?)?;
        let mut linear = MultiMap::new(1, 0);
        for k in 0..na {
            linear.add_term(vec![k], k, &a.field().one());
        }
        let mut components = vec![linear];
        for (&(s, r), m) in &self.components {
            let d = s + 1 + r;
            let mut out = MultiMap::new(d, 1 - d as i64);
            for (inputs, value) in m.entries() {
                let mut tuple = inputs.clone();
                tuple[s] += na;
                out.add(tuple, &value.map_indices(|k| Some(k + na)));
            }
            components.push(out);
        }
        AInfHomomorphism::new(source, target, components)
    }
}

pub fn check_bimodule_morphism(phi: &BimoduleMorphism) -> Result<CheckReport> {
    Ok(check_homomorphism(&phi.induced_homomorphism()?))
}

/// True iff φ^{0|1|0} induces an isomorphism on μ^{0|1|0}-cohomology.
pub fn is_bimodule_quasi_iso(phi: &BimoduleMorphism) -> Result<bool> {
    let report = check_bimodule_morphism(phi)?;
    if !report.passed() {
        return Err(Error::RelationsFail(format!(
            "bimodule morphism equations fail on {} tuples",
            report.failures.len()
        )));
    }
    Ok(chain_map_is_quasi_iso(
        &phi.source.complex()?,
        &phi.target.complex()?,
        &phi.linear_part(),
    ))
}
