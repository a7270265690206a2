//! A∞-algebras over R = K^m, their relations, homomorphisms and cohomology.

mod algebra;
pub mod cohomology;
mod homomorphism;
mod relations;
mod structure;

pub use algebra::{AInfAlgebra, AlgebraBuilder};
pub use cohomology::{cohomology, Cohomology, CohomologyBlock, Complex};
pub use homomorphism::{check_homomorphism, is_quasi_iso, AInfHomomorphism};
pub use relations::{check_relations, format_lincomb, CheckReport, Residual};
pub use structure::{
    change_basis, check_strict_unital, directed_subalgebra, double_objects, doubled_id,
    first_difference, permute_basis, SubalgebraWitness,
};
