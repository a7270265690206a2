//! Simplicial cochain dga's, the relative algebra B = C*(U) ⊕ C*(U,W)[1] of a
//! pair, the double W^σ = U₊ ∪_W U₋ and the sandwich map C*(W^σ) → B^σ.
//!
//! Complexes are Δ-complexes: every simplex carries its ordered vertex list and
//! its faces, so gluing may produce several simplices on one vertex set.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::ainfinity::{
    change_basis, check_homomorphism, cohomology, is_quasi_iso, AInfAlgebra, AInfHomomorphism,
    SubalgebraWitness,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multimap::MultiMap;
use crate::space::{BasisElement, GradedSpace, LinComb};
use crate::suspension::{minus_id, plus_id, shifted_id, suspend, SuspensionResult};

/// Id of the unit cochain, the sum of all vertex duals.
pub const UNIT_ID: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub id: String,
    /// ordered vertex indices
    pub vertices: Vec<usize>,
    /// `faces[i]` omits the i-th vertex
    pub faces: Vec<usize>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Simplex>,
}

/// JSON form: vertex names, simplices as vertex-name lists (closed under faces
/// on load) and, for pairs, the simplices spanning the subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Vec<Vec<String>>>,
}

fn simplex_id(names: &[&str]) -> String {
    names.join(",")
}

impl SimplicialComplex {
    /// The simplicial complex generated by `simplices`, each a list of vertex
    /// names. Vertices inside a simplex are ordered as in `vertices`.
    pub fn new(vertices: Vec<String>, simplices: &[Vec<String>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let position: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if position.len() != vertices.len() {
            return Err(Error::InvalidComplex("repeated vertex name".into()));
        }
        let mut sets: BTreeSet<Vec<usize>> = (0..vertices.len()).map(|v| vec![v]).collect();
        for s in simplices {
            let mut vs =
                s.iter()
                    .map(|name| {
                        position.get(name.as_str()).copied().ok_or_else(|| {
                            Error::InvalidComplex(format!("unknown vertex `{name}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
            vs.sort_unstable();
            vs.dedup();
            if vs.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if vs.len() != s.len() {
                return Err(Error::InvalidComplex(format!(
                    "simplex [{}] repeats a vertex",
                    s.join(", ")
                )));
            }
            // every nonempty subset
            for mask in 1u64..(1 << vs.len()) {
                sets.insert(
                    vs.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        let mut ordered: Vec<Vec<usize>> = sets.into_iter().collect();
        ordered.sort_by_key(|vs| vs.len());
        let index: HashMap<Vec<usize>, usize> = ordered
            .iter()
            .enumerate()
            .map(|(i, vs)| (vs.clone(), i))
            .collect();
        let simplices = ordered
            .iter()
            .map(|vs| {
                let names: Vec<&str> = vs.iter().map(|&v| vertices[v].as_str()).collect();
                let faces = if vs.len() == 1 {
                    vec![]
                } else {
                    (0..vs.len())
                        .map(|i| {
                            let mut f = vs.clone();
                            f.remove(i);
                            index[&f]
                        })
                        .collect()
                };
                Simplex {
                    id: simplex_id(&names),
                    vertices: vs.clone(),
                    faces,
                }
            })
            .collect();
        Ok(Self {
            vertices,
            simplices,
        })
    }

    /// A Δ-complex given directly; faces must point at earlier simplices of one
    /// dimension less with the matching vertex lists.
    pub fn from_delta(vertices: Vec<String>, simplices: Vec<Simplex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut ids = BTreeSet::new();
        for (k, s) in simplices.iter().enumerate() {
            if !ids.insert(s.id.as_str()) {
                return Err(Error::InvalidComplex(format!(
                    "duplicate simplex id `{}`",
                    s.id
                )));
            }
            if s.vertices.is_empty() || s.vertices.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!(
                    "bad vertex list on `{}`",
                    s.id
                )));
            }
            let expected = if s.vertices.len() == 1 {
                0
            } else {
                s.vertices.len()
            };
            if s.faces.len() != expected {
                return Err(Error::InvalidComplex(format!(
                    "`{}` needs {expected} faces",
                    s.id
                )));
            }
            for (i, &f) in s.faces.iter().enumerate() {
                let mut vs = s.vertices.clone();
                vs.remove(i);
                if f >= k || simplices[f].vertices != vs {
                    return Err(Error::InvalidComplex(format!(
                        "face {i} of `{}` is inconsistent",
                        s.id
                    )));
                }
            }
        }
        Ok(Self {
            vertices,
            simplices,
        })
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        Self::new(doc.vertices.clone(), &doc.simplices)
    }

    /// The standard n-simplex on vertices v0, …, vn.
    pub fn simplex(n: usize) -> Self {
        let vertices: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
        Self::new(vertices.clone(), &[vertices]).expect("valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.simplices.iter().position(|s| s.id == id)
    }

    /// Simplex ids spanned by vertex-name lists, closed under faces.
    fn closure_of(&self, generators: &[Vec<String>]) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for g in generators {
            let mut vs: Vec<usize> = g
                .iter()
                .map(|name| {
                    self.vertices
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Error::NotSubcomplex(format!("unknown vertex `{name}`")))
                })
                .collect::<Result<_>>()?;
            vs.sort_unstable();
            let k = self
                .simplices
                .iter()
                .position(|s| s.vertices == vs)
                .ok_or_else(|| {
                    Error::NotSubcomplex(format!("[{}] is not a simplex", g.join(", ")))
                })?;
            self.close(k, &mut out);
        }
        Ok(out)
    }

    fn close(&self, k: usize, out: &mut BTreeSet<usize>) {
        if out.insert(k) {
            for &f in &self.simplices[k].faces {
                self.close(f, out);
            }
        }
    }

    /// The subcomplex on `keep` (closed under faces), with reindexed faces.
    fn restrict(&self, keep: &BTreeSet<usize>) -> Result<Self> {
        let new_index: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let simplices = keep
            .iter()
            .map(|&k| {
                let s = &self.simplices[k];
                Simplex {
                    id: s.id.clone(),
                    vertices: s.vertices.clone(),
                    faces: s.faces.iter().map(|f| new_index[f]).collect(),
                }
            })
            .collect();
        Self::from_delta(self.vertices.clone(), simplices)
    }

    fn front(&self, mut k: usize, p: usize) -> usize {
        while self.simplices[k].dim() > p {
            k = self.simplices[k].faces[self.simplices[k].dim()];
        }
        k
    }

    fn back(&self, mut k: usize, q: usize) -> usize {
        while self.simplices[k].dim() > q {
            k = self.simplices[k].faces[0];
        }
        k
    }

    /// Coboundary and Alexander-Whitney cup product on simplex duals.
    fn cochains(&self, field: Field) -> RawDga {
        let basis: Vec<BasisElement> = self
            .simplices
            .iter()
            .map(|s| BasisElement::new(s.id.clone(), s.dim() as i64, 1, 1))
            .collect();
        let mut d = vec![LinComb::zero(); self.simplices.len()];
        let mut prod: BTreeMap<(usize, usize), LinComb> = BTreeMap::new();
        for (k, s) in self.simplices.iter().enumerate() {
            for (i, &f) in s.faces.iter().enumerate() {
                d[f].add_term(k, &field.sign(i as i64));
            }
            let n = s.dim();
            for p in 0..=n {
                let (x, y) = (self.front(k, p), self.back(k, n - p));
                prod.entry((x, y)).or_default().add_term(k, &field.one());
            }
        }
        let vertex_duals = self
            .simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.dim() == 0)
            .map(|(k, _)| k)
            .collect();
        RawDga {
            basis,
            d,
            prod,
            vertex_duals,
        }
    }
}

/// A dga in a basis without a unit element, before the unit is swapped in.
struct RawDga {
    basis: Vec<BasisElement>,
    d: Vec<LinComb>,
    /// (x₂, x₁) ↦ x₂ · x₁
    prod: BTreeMap<(usize, usize), LinComb>,
    /// these sum to the unit
    vertex_duals: Vec<usize>,
}

/// A cochain algebra together with the passage between its unit basis and the
/// basis of simplex duals.
#[derive(Clone, Debug)]
pub struct CochainAlgebra {
    algebra: AInfAlgebra,
    /// new basis vector ↦ raw coordinates
    to_raw: Vec<LinComb>,
    /// raw basis vector ↦ new coordinates
    from_raw: Vec<LinComb>,
}

impl CochainAlgebra {
    fn build(field: Field, raw: RawDga) -> Result<Self> {
        let space = GradedSpace::new(1, raw.basis.clone())?;
        let sign = |e: i64| field.sign(e);
        // μ¹ = (−1)^{deg} d and μ²(x₂, x₁) = (−1)^{deg x₁} x₂ x₁
        let mut mu1 = MultiMap::new(1, 1);
        for (k, v) in raw.d.iter().enumerate() {
            mu1.add(vec![k], &v.scaled(&sign(space.degree(k))));
        }
        let mut mu2 = MultiMap::new(2, 0);
        for (&(x, y), v) in &raw.prod {
            mu2.add(vec![x, y], &v.scaled(&sign(space.degree(y))));
        }
        let plain = AInfAlgebra::new(field, space.clone(), 2, [mu1, mu2], None)?;

        let n = raw.basis.len();
        let mut to_raw: Vec<LinComb> = (0..n).map(|k| LinComb::basis(k, field)).collect();
        let mut from_raw = to_raw.clone();
        let mut new_basis = raw.basis.clone();
        let Some(&first) = raw.vertex_duals.first() else {
            return Err(Error::EmptyComplex);
        };
        to_raw[first] = LinComb::from_terms(raw.vertex_duals.iter().map(|&v| (v, field.one())));
        let mut back = LinComb::basis(first, field);
        for &v in &raw.vertex_duals[1..] {
            back.add_term(v, &field.from_i64(-1));
        }
        from_raw[first] = back;
        new_basis[first] = BasisElement::new(UNIT_ID, 0, 1, 1);
        let algebra = change_basis(
            &plain,
            GradedSpace::new(1, new_basis)?,
            &to_raw,
            &from_raw,
            Some(vec![first]),
        )?;
        Ok(Self {
            algebra,
            to_raw,
            from_raw,
        })
    }

    pub fn algebra(&self) -> &AInfAlgebra {
        &self.algebra
    }

    /// Coordinates of a raw cochain in the unit basis.
    fn raw_to_unit_basis(&self, v: &LinComb) -> LinComb {
        v.apply_linear(|k| self.from_raw[k].clone())
    }

    fn to_raw(&self, k: usize) -> &LinComb {
        &self.to_raw[k]
    }
}

/// The cochain dga C*(X) with the Alexander-Whitney product, unit "1".
pub fn cochain_dga(x: &SimplicialComplex, field: Field) -> Result<CochainAlgebra> {
    CochainAlgebra::build(field, x.cochains(field))
}

/// A complex U with a subcomplex W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    complex: SimplicialComplex,
    sub: BTreeSet<usize>,
}

impl SimplicialPair {
    /// W given by simplex indices of U; must be closed under faces.
    pub fn new(complex: SimplicialComplex, sub: BTreeSet<usize>) -> Result<Self> {
        for &k in &sub {
            let Some(s) = complex.simplices.get(k) else {
                return Err(Error::NotSubcomplex(format!(
                    "simplex index {k} out of range"
                )));
            };
            if let Some(f) = s.faces.iter().find(|f| !sub.contains(f)) {
                return Err(Error::NotSubcomplex(format!(
                    "face `{}` of `{}` is missing",
                    complex.simplices[*f].id, s.id
                )));
            }
        }
        Ok(Self { complex, sub })
    }

    /// W spanned by vertex-name lists.
    pub fn from_generators(complex: SimplicialComplex, generators: &[Vec<String>]) -> Result<Self> {
        let sub = complex.closure_of(generators)?;
        Self::new(complex, sub)
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        let complex = SimplicialComplex::from_document(doc)?;
        Self::from_generators(complex, doc.subcomplex.as_deref().unwrap_or(&[]))
    }

    /// (Δⁿ, ∂Δⁿ).
    pub fn ball(n: usize) -> Self {
        let complex = SimplicialComplex::simplex(n);
        let top = complex.simplices.len() - 1;
        let sub = (0..complex.simplices.len())
            .filter(|&k| k != top || n == 0)
            .collect();
        Self::new(complex, sub).expect("the boundary is closed")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The JSON form, listing every simplex by vertex names.
    pub fn to_document(&self) -> ComplexDocument {
        let names = |s: &Simplex| {
            s.vertices
                .iter()
                .map(|&v| self.complex.vertices[v].clone())
                .collect()
        };
        ComplexDocument {
            vertices: self.complex.vertices.clone(),
            simplices: self.complex.simplices.iter().map(names).collect(),
            subcomplex: Some(
                self.sub
                    .iter()
                    .map(|&k| names(&self.complex.simplices[k]))
                    .collect(),
            ),
        }
    }

    pub fn sub_indices(&self) -> &BTreeSet<usize> {
        &self.sub
    }

    pub fn in_sub(&self, k: usize) -> bool {
        self.sub.contains(&k)
    }

    /// W as a complex of its own, `None` when empty.
    pub fn subcomplex(&self) -> Result<Option<SimplicialComplex>> {
        if self.sub.is_empty() {
            return Ok(None);
        }
        self.complex.restrict(&self.sub).map(Some)
    }
}

/// Prefix marking relative cochains C*(U,W) inside B.
pub fn relative_id(id: &str) -> String {
    format!("r({id})")
}

/// A = C*(U) ⊂ B = C*(U) ⊕ C*(U,W)[1] together with the restriction B → C*(W).
#[derive(Clone, Debug)]
pub struct PairAlgebra {
    pub pair: SubalgebraWitness,
    cochains: CochainAlgebra,
    /// raw B-index of the relative copy of each simplex outside W
    relative: BTreeMap<usize, usize>,
    pub restriction: AInfHomomorphism,
}

impl PairAlgebra {
    pub fn algebra(&self) -> &AInfAlgebra {
        self.cochains.algebra()
    }
}

fn empty_algebra(field: Field) -> Result<AInfAlgebra> {
    AInfAlgebra::new(field, GradedSpace::empty(1), 2, [], None)
}

pub fn pair_algebra(pair: &SimplicialPair, field: Field) -> Result<PairAlgebra> {
    let u = pair.complex();
    let raw_u = u.cochains(field);
    let nu = raw_u.basis.len();
    let mut basis = raw_u.basis.clone();
    let mut relative = BTreeMap::new();
    for (k, s) in u.simplices.iter().enumerate() {
        if !pair.in_sub(k) {
            relative.insert(k, basis.len());
            basis.push(BasisElement::new(
                relative_id(&s.id),
                s.dim() as i64 - 1,
                1,
                1,
            ));
        }
    }
    let deg = |k: usize| basis[k].degree;
    let rel = |v: &LinComb| v.map_indices(|k| relative.get(&k).copied());

    // d(b, c) = (δb + (−1)^{deg c} c, δc)
    let mut d = raw_u.d.clone();
    for (&k, &r) in &relative {
        let mut v = rel(&raw_u.d[k]);
        v.add_term(k, &field.sign(deg(r)));
        d.push(v);
    }
    // (b₂, c₂)(b₁, c₁) = (b₂b₁, b₂c₁ + (−1)^{deg b₁} c₂b₁)
    let mut prod = raw_u.prod.clone();
    for (&(x, y), v) in &raw_u.prod {
        if let Some(&ry) = relative.get(&y) {
            prod.entry((x, ry)).or_default().add_comb(&rel(v));
        }
        if let Some(&rx) = relative.get(&x) {
            prod.entry((rx, y))
                .or_default()
                .add_scaled(&rel(v), &field.sign(deg(y)));
        }
    }
    prod.retain(|_, v| !v.is_zero());
    let raw = RawDga {
        basis,
        d,
        prod,
        vertex_duals: raw_u.vertex_duals.clone(),
    };
    let cochains = CochainAlgebra::build(field, raw)?;
    let b = cochains.algebra().clone();
    let pair_witness = SubalgebraWitness::new(b.clone(), (0..nu).collect())?;

    // (b, c) ↦ b|W
    let (target, images) = match pair.subcomplex()? {
        None => (empty_algebra(field)?, vec![LinComb::zero(); b.dim()]),
        Some(w) => {
            let cw = cochain_dga(&w, field)?;
            let position: HashMap<&str, usize> = w
                .simplices
                .iter()
                .enumerate()
                .map(|(i, s)| (s.id.as_str(), i))
                .collect();
            let images = (0..b.dim())
                .map(|j| {
                    let raw = cochains.to_raw(j).map_indices(|k| {
                        if k < nu {
                            position.get(u.simplices[k].id.as_str()).copied()
                        } else {
                            None
                        }
                    });
                    cw.raw_to_unit_basis(&raw)
                })
                .collect();
            (cw.algebra().clone(), images)
        }
    };
    let restriction = AInfHomomorphism::strict(&b, &target, &images)?;
    Ok(PairAlgebra {
        pair: pair_witness,
        cochains,
        relative,
        restriction,
    })
}

/// Suffix marking the second copy U₋ in the double.
pub const MINUS_COPY: &str = "~";

/// W^σ = U₊ ∪_W U₋: U₊ keeps the vertices and simplices of U; simplices and
/// vertices of U₋ outside W get fresh copies with a "~" suffix.
pub fn glue_double(pair: &SimplicialPair) -> Result<SimplicialComplex> {
    let u = pair.complex();
    let mut vertices = u.vertices.clone();
    let mut vertex_copy = HashMap::new();
    for (k, s) in u.simplices.iter().enumerate() {
        if s.dim() == 0 && !pair.in_sub(k) {
            vertex_copy.insert(s.vertices[0], vertices.len());
            vertices.push(format!("{}{MINUS_COPY}", u.vertices[s.vertices[0]]));
        }
    }
    let mut simplices = u.simplices.clone();
    let mut copy: HashMap<usize, usize> = pair.sub.iter().map(|&k| (k, k)).collect();
    for (k, s) in u.simplices.iter().enumerate() {
        if pair.in_sub(k) {
            continue;
        }
        copy.insert(k, simplices.len());
        simplices.push(Simplex {
            id: format!("{}{MINUS_COPY}", s.id),
            vertices: s
                .vertices
                .iter()
                .map(|v| vertex_copy.get(v).copied().unwrap_or(*v))
                .collect(),
            faces: s.faces.iter().map(|f| copy[f]).collect(),
        });
    }
    SimplicialComplex::from_delta(vertices, simplices)
}

/// The strict dga map C*(W^σ) → B^σ, a ↦ (a|U₊, a|U₋, 0, a|U₊ − a|U₋), with
/// B^σ in the tagged basis of the suspension of the pair algebra. There the
/// relative slot is s(0, c) = −c, so the last component is sent to s r(a|U₋ − a|U₊).
#[derive(Clone, Debug)]
pub struct Sandwich {
    pub double: SimplicialComplex,
    pub source: CochainAlgebra,
    pub suspension: SuspensionResult,
    pub map: AInfHomomorphism,
}

impl Sandwich {
    pub fn is_homomorphism(&self) -> bool {
        check_homomorphism(&self.map).passed()
    }

    pub fn is_quasi_iso(&self) -> bool {
        is_quasi_iso(&self.map).unwrap_or(false)
    }

    /// H* dims of C*(W^σ) and of B^σ.
    pub fn cohomology_dims(&self) -> Result<(BTreeMap<i64, usize>, BTreeMap<i64, usize>)> {
        Ok((
            cohomology(self.source.algebra())?.dims_by_degree(),
            cohomology(self.suspension.tagged())?.dims_by_degree(),
        ))
    }

    pub fn passed(&self) -> bool {
        self.is_homomorphism() && self.is_quasi_iso()
    }
}

pub fn sandwich_map(pair: &SimplicialPair, field: Field) -> Result<Sandwich> {
    let u = pair.complex();
    let nu = u.simplices.len();
    let double = glue_double(pair)?;
    let source = cochain_dga(&double, field)?;
    let b = pair_algebra(pair, field)?;
    let suspension = suspend(&b.pair)?;
    let target = suspension.tagged();
    let a = b.pair.sub();

    // raw simplex of W^σ ↦ (simplex of U, lies in U₊, lies in U₋)
    let mut origin = vec![(0, false, false); double.simplices.len()];
    for k in 0..nu {
        origin[k] = (k, true, pair.in_sub(k));
    }
    for (j, (&k, _)) in b.relative.iter().enumerate() {
        origin[nu + j] = (k, false, true);
    }

    let tagged = |v: &LinComb, tag: &dyn Fn(&str) -> String| -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (k, c) in v.iter() {
            out.add_term(target.space().lookup(&tag(a.space().id(k)))?, c);
        }
        Ok(out)
    };
    let images = (0..source.algebra().dim())
        .map(|j| {
            let mut plus = LinComb::zero();
            let mut minus = LinComb::zero();
            let mut rel = LinComb::zero();
            for (y, c) in source.to_raw(j).iter() {
                let (k, on_plus, on_minus) = origin[y];
                if on_plus {
                    plus.add_term(k, c);
                }
                if on_minus {
                    minus.add_term(k, c);
                }
                if let Some(&r) = b.relative.get(&k) {
                    let c = if on_plus { -c } else { c.clone() };
                    rel.add_term(r, &c);
                }
            }
            let in_a = |v: &LinComb| b.cochains.raw_to_unit_basis(v);
            let mut image = tagged(&in_a(&plus), &plus_id)?;
            image.add_comb(&tagged(&in_a(&minus), &minus_id)?);
            let rel_b = in_a(&rel);
            for (k, c) in rel_b.iter() {
                image.add_term(
                    target
                        .space()
                        .lookup(&shifted_id(b.algebra().space().id(k)))?,
                    c,
                );
            }
            Ok(image)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = AInfHomomorphism::strict(source.algebra(), target, &images)?;
    Ok(Sandwich {
        double,
        source,
        suspension,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::{check_relations, check_strict_unital};

    const Q: Field = Field::Rational;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn triangle_boundary() -> SimplicialComplex {
        let edges = [names(&["a", "b"]), names(&["b", "c"]), names(&["a", "c"])];
        SimplicialComplex::new(names(&["a", "b", "c"]), &edges).unwrap()
    }

    fn dims(x: &SimplicialComplex, field: Field) -> BTreeMap<i64, usize> {
        cohomology(cochain_dga(x, field).unwrap().algebra())
            .unwrap()
            .dims_by_degree()
    }

    #[test]
    fn point_is_the_ground_field() {
        let pt = cochain_dga(&SimplicialComplex::simplex(0), Q).unwrap();
        assert_eq!(pt.algebra().dim(), 1);
        assert_eq!(pt.algebra().space().id(0), UNIT_ID);
        let renamed = crate::suspension::rename(pt.algebra(), |_| "e".into()).unwrap();
        assert!(
            crate::ainfinity::first_difference(&renamed, crate::fixtures::fix_k(Q).parent())
                .is_none()
        );
        assert_eq!(
            dims(&SimplicialComplex::simplex(0), Q),
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn cochain_cohomology() {
        for field in [Q, Field::prime(2).unwrap()] {
            assert_eq!(
                dims(&triangle_boundary(), field),
                BTreeMap::from([(0, 1), (1, 1)])
            );
            assert_eq!(
                dims(&SimplicialComplex::simplex(2), field),
                BTreeMap::from([(0, 1)])
            );
        }
    }

    #[test]
    fn cochains_form_a_unital_dga() {
        for x in [triangle_boundary(), SimplicialComplex::simplex(3)] {
            let c = cochain_dga(&x, Q).unwrap();
            assert!(c.algebra().is_dga());
            assert!(check_relations(c.algebra()).passed());
            assert!(check_strict_unital(c.algebra()).unwrap());
        }
    }

    #[test]
    fn faces_are_closed_and_repeats_rejected() {
        let x = SimplicialComplex::simplex(2);
        assert_eq!(x.simplices().len(), 7);
        assert_eq!(x.dim(), 2);
        assert!(x.position("v0,v1").is_some());
        assert!(matches!(
            SimplicialComplex::new(vec![], &[]),
            Err(Error::EmptyComplex)
        ));
        assert!(SimplicialComplex::new(names(&["a", "a"]), &[]).is_err());
        assert!(SimplicialComplex::new(names(&["a"]), &[names(&["a", "z"])]).is_err());
    }

    #[test]
    fn pair_algebras() {
        let s0 = pair_algebra(&SimplicialPair::ball(1), Q).unwrap();
        assert!(check_relations(s0.pair.parent()).passed());
        assert_eq!(
            cohomology(s0.pair.parent()).unwrap().dims_by_degree(),
            BTreeMap::from([(0, 2)])
        );
        assert!(is_quasi_iso(&s0.restriction).unwrap());
        let s1 = pair_algebra(&SimplicialPair::ball(2), Q).unwrap();
        assert_eq!(
            cohomology(s1.pair.parent()).unwrap().dims_by_degree(),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert!(s1
            .pair
            .parent()
            .space()
            .position(&relative_id("v0,v1,v2"))
            .is_some());
    }

    #[test]
    fn empty_subcomplex_gives_acyclic_algebra() {
        let pair = SimplicialPair::new(SimplicialComplex::simplex(1), BTreeSet::new()).unwrap();
        assert!(pair.subcomplex().unwrap().is_none());
        let b = pair_algebra(&pair, Q).unwrap();
        assert!(check_relations(b.pair.parent()).passed());
        assert_eq!(cohomology(b.pair.parent()).unwrap().total_dim(), 0);
    }

    #[test]
    fn subcomplex_must_contain_faces() {
        let x = SimplicialComplex::simplex(1);
        let edge = x.position("v0,v1").unwrap();
        assert!(matches!(
            SimplicialPair::new(x.clone(), BTreeSet::from([edge])),
            Err(Error::NotSubcomplex(_))
        ));
        assert!(matches!(
            SimplicialPair::new(x, BTreeSet::from([99])),
            Err(Error::NotSubcomplex(_))
        ));
    }

    #[test]
    fn gluing() {
        let x = SimplicialComplex::simplex(2);
        let all = (0..x.simplices().len()).collect();
        assert_eq!(
            glue_double(&SimplicialPair::new(x.clone(), all).unwrap()).unwrap(),
            x
        );
        let circle = glue_double(&SimplicialPair::ball(1)).unwrap();
        assert_eq!(circle.vertices().len(), 2);
        assert!(circle.position(&format!("v0,v1{MINUS_COPY}")).is_some());
        assert_eq!(dims(&circle, Q), BTreeMap::from([(0, 1), (1, 1)]));
        let sphere = glue_double(&SimplicialPair::ball(2)).unwrap();
        assert_eq!(
            dims(&sphere, Field::prime(2).unwrap()),
            BTreeMap::from([(0, 1), (2, 1)])
        );
    }

    #[test]
    fn sandwich_of_a_point() {
        let s = sandwich_map(&SimplicialPair::ball(0), Q).unwrap();
        assert!(s.passed());
        let (w, b) = s.cohomology_dims().unwrap();
        assert_eq!(w, BTreeMap::from([(0, 1)]));
        assert_eq!(b, w);
    }

    #[test]
    fn documents_round_trip() {
        let pair = SimplicialPair::ball(2);
        let text = serde_json::to_string(&pair.to_document()).unwrap();
        let doc: ComplexDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(SimplicialPair::from_document(&doc).unwrap(), pair);
        let generated = ComplexDocument {
            vertices: names(&["p", "q"]),
            simplices: vec![names(&["p", "q"])],
            subcomplex: Some(vec![names(&["q"])]),
        };
        let pair = SimplicialPair::from_document(&generated).unwrap();
        assert_eq!(pair.sub_indices().len(), 1);
        assert!(pair.in_sub(pair.complex().position("q").unwrap()));
    }
}
