//! A∞-homomorphisms F: A → B with components F^d of degree 1 − d, subject to
//!
//!   Σ μ_B^k(F^{i_k}(…), …, F^{i_1}(…)) = Σ (−1)^{‖a₁‖+⋯+‖a_n‖} F^{d−m+1}(…, μ_A^m(…), a_n, …, a_1).

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::multimap::{ByOutput, MultiMap};
use crate::space::LinComb;

use super::cohomology::{chain_map_is_quasi_iso, Complex};
use super::relations::{accumulate, accumulate_insertions, Accumulator, CheckReport};
use super::AInfAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfHomomorphism {
    source: AInfAlgebra,
    target: AInfAlgebra,
    components: BTreeMap<usize, MultiMap>,
}

impl AInfHomomorphism {
    pub fn new(
        source: AInfAlgebra,
        target: AInfAlgebra,
        components: impl IntoIterator<Item = MultiMap>,
    ) -> Result<Self> {
        source.field().ensure_same(target.field())?;
        if source.num_objects() != target.num_objects() {
            return Err(Error::Input(
                "homomorphism between algebras over different base rings".into(),
            ));
        }
        let mut stored: BTreeMap<usize, MultiMap> = BTreeMap::new();
        for map in components {
            let d = map.arity();
            if map.degree_shift() != 1 - d as i64 {
                return Err(Error::Input(format!(
                    "phi{d} must have degree {}",
                    1 - d as i64
                )));
            }
            let spaces = vec![source.space(); d];
            map.validate(&format!("phi{d}"), &spaces, target.space())?;
            if map.is_zero() {
                continue;
            }
            match stored.get_mut(&d) {
                Some(existing) => {
                    for (inputs, value) in map.entries() {
                        existing.add(inputs.clone(), value);
                    }
                }
                None => {
                    stored.insert(d, map);
                }
            }
        }
        stored.retain(|_, m| !m.is_zero());
        Ok(Self {
            source,
            target,
            components: stored,
        })
    }

    /// φ¹ = id, φ^{≥2} = 0.
    pub fn identity(alg: &AInfAlgebra) -> Self {
        let mut phi = MultiMap::new(1, 0);
        for k in 0..alg.dim() {
            phi.add_term(vec![k], k, &alg.field().one());
        }
        Self::new(alg.clone(), alg.clone(), [phi]).expect("identity is well formed")
    }

    /// A strict homomorphism given by the images of the source basis.
    pub fn strict(source: &AInfAlgebra, target: &AInfAlgebra, images: &[LinComb]) -> Result<Self> {
        assert_eq!(images.len(), source.dim());
        let mut phi = MultiMap::new(1, 0);
        for (k, v) in images.iter().enumerate() {
            phi.add(vec![k], v);
        }
        Self::new(source.clone(), target.clone(), [phi])
    }

    pub fn source(&self) -> &AInfAlgebra {
        &self.source
    }

    pub fn target(&self) -> &AInfAlgebra {
        &self.target
    }

    pub fn component(&self, d: usize) -> Option<&MultiMap> {
        self.components.get(&d)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &MultiMap)> + '_ {
        self.components.iter().map(|(d, m)| (*d, m))
    }

    /// The linear part as a map of basis images.
    pub fn linear_part(&self) -> MultiMap {
        self.components
            .get(&1)
            .cloned()
            .unwrap_or_else(|| MultiMap::new(1, 0))
    }
}

/// Residuals of the homomorphism equations on all composable basis tuples.
pub fn check_homomorphism(phi: &AInfHomomorphism) -> CheckReport {
    let field = phi.source.field();
    let minus_one = field.from_i64(-1);
    let mut acc = Accumulator::new();

    // right-hand side, moved to the left with a minus sign
    let space = phi.source.space();
    let reduced = |k: usize| space.reduced(k);
    let inner: Vec<ByOutput> = phi.source.maps().map(|(_, m)| m.by_output()).collect();
    for (_, f) in phi.components() {
        for idx in &inner {
            accumulate_insertions(&mut acc, field, f, idx, &reduced, &minus_one);
        }
    }

    // left-hand side: μ_B^k applied to blocks of F-outputs
    let producers: HashMap<usize, Vec<(&[usize], &Scalar)>> = {
        let mut all: HashMap<usize, Vec<(&[usize], &Scalar)>> = HashMap::new();
        for (_, f) in phi.components() {
            for (out, list) in f.by_output() {
                all.entry(out).or_default().extend(list);
            }
        }
        all
    };
    for (_, mu) in phi.target.maps() {
        for (outer_inputs, value) in mu.entries() {
            let choices: Option<Vec<&Vec<_>>> =
                outer_inputs.iter().map(|k| producers.get(k)).collect();
            let Some(choices) = choices else { continue };
            let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.one())];
            for options in &choices {
                let mut next = Vec::with_capacity(stack.len() * options.len());
                for (prefix, c) in &stack {
                    for (inputs, coeff) in options.iter() {
                        let mut t = prefix.clone();
                        t.extend_from_slice(inputs);
                        next.push((t, c * *coeff));
                    }
                }
                stack = next;
            }
            for (tuple, c) in stack {
                accumulate(&mut acc, tuple, value, &c);
            }
        }
    }
    CheckReport::from_accumulator(acc)
}

/// True iff φ¹ induces an isomorphism on cohomology in every degree and block.
/// Errors if φ is not a homomorphism.
pub fn is_quasi_iso(phi: &AInfHomomorphism) -> Result<bool> {
    let report = check_homomorphism(phi);
    if !report.passed() {
        return Err(Error::RelationsFail(format!(
            "homomorphism equations fail on {} tuples",
            report.failures.len()
        )));
    }
    let source = Complex::of_algebra(&phi.source)?;
    let target = Complex::of_algebra(&phi.target)?;
    Ok(chain_map_is_quasi_iso(&source, &target, &phi.linear_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures::{fix_an, fix_dual};

    #[test]
    fn identity_passes() {
        let b = fix_an(Field::Rational, 2).parent().clone();
        let id = AInfHomomorphism::identity(&b);
        assert!(check_homomorphism(&id).passed());
        assert!(is_quasi_iso(&id).unwrap());
    }

    #[test]
    fn flipped_sign_fails() {
        let b = fix_an(Field::Rational, 2).parent().clone();
        let field = b.field();
        let a = b.space().lookup("a").unwrap();
        let images: Vec<LinComb> = (0..b.dim())
            .map(|k| {
                if k == a {
                    LinComb::basis(k, field).negated()
                } else {
                    LinComb::basis(k, field)
                }
            })
            .collect();
        let phi = AInfHomomorphism::strict(&b, &b, &images).unwrap();
        assert!(!check_homomorphism(&phi).passed());
    }

    #[test]
    fn zero_on_cohomology_is_not_quasi_iso() {
        let b = fix_dual(Field::Rational, 2).parent().clone();
        let phi = AInfHomomorphism::strict(&b, &b, &vec![LinComb::zero(); b.dim()]).unwrap();
        assert!(check_homomorphism(&phi).passed());
        assert!(!is_quasi_iso(&phi).unwrap());
    }

    #[test]
    fn components_must_have_the_right_degree() {
        let b = fix_dual(Field::Rational, 2).parent().clone();
        let bad = MultiMap::new(2, 0);
        assert!(AInfHomomorphism::new(b.clone(), b, [bad]).is_err());
    }
}
