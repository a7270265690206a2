//! Named example pairs A ⊂ B and seeded random strictly unital algebras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ainfinity::{
    check_relations, directed_subalgebra, AInfAlgebra, AlgebraBuilder, SubalgebraWitness,
};
use crate::bimodules::{diagonal_bimodule, dual_bimodule, trivial_extension};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multimap::composable_ends;
use crate::space::{BasisElement, GradedSpace};

/// The ground field as a one-object algebra, A = B = K.
pub fn fix_k(field: Field) -> SubalgebraWitness {
    let space = GradedSpace::new(1, vec![BasisElement::new("e", 0, 1, 1)]).expect("valid");
    let mut b = AlgebraBuilder::new(field, space);
    b.units(&["e"])
        .and_then(|b| b.unit_products())
        .expect("valid");
    SubalgebraWitness::full(b.build().expect("valid"))
}

/// K ⊂ K ⊕ Kε with deg ε = n and ε² = 0: the trivial extension of K by K[−n].
pub fn fix_dual(field: Field, n: i64) -> SubalgebraWitness {
    let space = GradedSpace::new(
        1,
        vec![
            BasisElement::new("e", 0, 1, 1),
            BasisElement::new("eps", n, 1, 1),
        ],
    )
    .expect("valid");
    let mut b = AlgebraBuilder::new(field, space);
    b.units(&["e"])
        .and_then(|b| b.unit_products())
        .expect("valid");
    SubalgebraWitness::from_ids(b.build().expect("valid"), &["e"]).expect("K is closed")
}

/// The path algebra of 1 → 2: units e1, e2 and an arrow a of degree 0.
pub fn path_a2(field: Field) -> AInfAlgebra {
    let space = GradedSpace::new(
        2,
        vec![
            BasisElement::new("e1", 0, 1, 1),
            BasisElement::new("e2", 0, 2, 2),
            BasisElement::new("a", 0, 1, 2),
        ],
    )
    .expect("valid");
    let mut b = AlgebraBuilder::new(field, space);
    b.units(&["e1", "e2"])
        .and_then(|b| b.unit_products())
        .expect("valid");
    b.build().expect("valid")
}

/// A₂ ⊂ A₂ ⊕ A₂^∨[−n].
pub fn fix_an(field: Field, n: i64) -> SubalgebraWitness {
    let a = path_a2(field);
    let dual = dual_bimodule(&diagonal_bimodule(&a), n);
    let b = trivial_extension(&a, &dual).expect("dual ids are fresh");
    SubalgebraWitness::new(b, (0..a.dim()).collect()).expect("A is closed")
}

/// Parameters of the random search behind [`fix_rand`].
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub max_dim: usize,
    pub max_arity: usize,
    pub degrees: (i64, i64),
    pub max_attempts: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            max_dim: 6,
            max_arity: 3,
            degrees: (-1, 2),
            max_attempts: 20_000,
        }
    }
}

/// A random strictly unital algebra B on one or two objects with at least one
/// structure constant beyond the unit products, paired with its directed
/// subalgebra. Sparse constants are drawn until the A∞-relations hold.
pub fn fix_rand(field: Field, seed: u64) -> Result<SubalgebraWitness> {
    fix_rand_with(field, seed, RandomSpec::default())
}

pub fn fix_rand_with(field: Field, seed: u64, spec: RandomSpec) -> Result<SubalgebraWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spec.max_attempts {
        if let Some(b) = draw(field, &mut rng, spec)? {
            return directed_subalgebra(&b);
        }
    }
    Err(Error::Input(format!(
        "no random algebra found for seed {seed}"
    )))
}

fn draw(field: Field, rng: &mut ChaCha8Rng, spec: RandomSpec) -> Result<Option<AInfAlgebra>> {
    let m = rng.gen_range(1..=2usize);
    let extra = rng.gen_range(1..=spec.max_dim - m);
    let mut basis: Vec<BasisElement> = (1..=m)
        .map(|i| BasisElement::new(format!("e{i}"), 0, i, i))
        .collect();
    for k in 0..extra {
        let source = rng.gen_range(1..=m);
        let target = rng.gen_range(1..=m);
        let degree = rng.gen_range(spec.degrees.0..=spec.degrees.1);
        basis.push(BasisElement::new(
            format!("x{}", k + 1),
            degree,
            source,
            target,
        ));
    }
    let space = GradedSpace::new(m, basis)?;
    let unit_ids: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    let non_units: Vec<usize> = (m..space.dim()).collect();

    // all composable non-unit tuples of arity ≤ D with a degree-compatible output
    let mut candidates: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut tuples: Vec<Vec<usize>> = non_units.iter().map(|&k| vec![k]).collect();
    for d in 1..=spec.max_arity {
        for t in &tuples {
            let Some((source, target)) = composable_ends(&vec![&space; d], t) else {
                continue;
            };
            let degree: i64 = t.iter().map(|&k| space.degree(k)).sum::<i64>() + 2 - d as i64;
            for &out in &non_units {
                let el = space.element(out);
                if el.degree == degree && el.source == source && el.target == target {
                    candidates.push((t.clone(), out));
                }
            }
        }
        tuples = tuples
            .iter()
            .flat_map(|t| {
                non_units
                    .iter()
                    .map(move |&k| [t.as_slice(), &[k]].concat())
            })
            .collect();
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    let count = rng.gen_range(1..=3usize.min(candidates.len()));
    let mut builder = AlgebraBuilder::new(field, space.clone()).arity_bound(2);
    let ids: Vec<&str> = unit_ids.iter().map(String::as_str).collect();
    builder.units(&ids)?.unit_products()?;
    for (tuple, out) in candidates.choose_multiple(rng, count) {
        let c = loop {
            let c = field.from_i64(rng.gen_range(-2..=2));
            if !c.is_zero() {
                break c;
            }
        };
        let names: Vec<&str> = tuple.iter().map(|&k| space.id(k)).collect();
        builder.entry_scalar(&names, space.id(*out), &c)?;
    }
    let b = builder.build()?;
    Ok(check_relations(&b).passed().then_some(b))
}

/// Every named fixture at its default parameters.
pub fn named(field: Field) -> Vec<(String, SubalgebraWitness)> {
    let mut out = vec![("K".to_string(), fix_k(field))];
    for n in 1..=3 {
        out.push((format!("dual-{n}"), fix_dual(field, n)));
    }
    out.push(("an-2".to_string(), fix_an(field, 2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::{check_strict_unital, first_difference};

    #[test]
    fn named_fixtures_are_valid() {
        for field in [
            Field::Rational,
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
        ] {
            for (name, pair) in named(field) {
                assert!(check_relations(pair.parent()).passed(), "{name}");
                assert!(check_strict_unital(pair.parent()).unwrap(), "{name}");
            }
        }
        assert_eq!(fix_an(Field::Rational, 2).sub().dim(), 3);
        assert_eq!(fix_an(Field::Rational, 2).parent().dim(), 6);
    }

    #[test]
    fn seeds_are_reproducible() {
        for seed in 0..5 {
            let a = fix_rand(Field::Rational, seed).unwrap();
            let b = fix_rand(Field::Rational, seed).unwrap();
            assert!(first_difference(a.parent(), b.parent()).is_none());
            assert_eq!(a.members(), b.members());
        }
        let distinct = (0..10)
            .filter(|&s| {
                first_difference(
                    fix_rand(Field::Rational, s).unwrap().parent(),
                    fix_rand(Field::Rational, s + 1).unwrap().parent(),
                )
                .is_some()
            })
            .count();
        assert!(distinct > 5);
    }

    #[test]
    fn random_pairs_respect_bounds() {
        for field in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            for seed in 0..10 {
                let pair = fix_rand(field, seed).unwrap();
                let b = pair.parent();
                assert!(b.dim() <= 6 && b.arity_bound() <= 3 && b.num_objects() <= 2);
                assert!(check_relations(b).passed());
                assert!(check_strict_unital(b).unwrap());
                let extra = b
                    .maps()
                    .map(|(_, m)| {
                        m.entries()
                            .filter(|(t, _)| !t.iter().any(|&k| b.is_unit(k)))
                            .count()
                    })
                    .sum::<usize>();
                assert!(extra >= 1);
            }
        }
    }

    #[test]
    fn impossible_search_reports_an_error() {
        let spec = RandomSpec {
            max_attempts: 0,
            ..RandomSpec::default()
        };
        assert!(fix_rand_with(Field::Rational, 0, spec).is_err());
    }
}
