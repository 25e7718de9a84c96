//! Exact checks behind rational and Galois-like covers of hyper-Kähler
//! manifolds: lattice signatures and q-exceptional divisors, divisorial
//! Zariski decomposition, cyclotomic order bounds, symmetric-group
//! obstructions and Betti-number classification of cover types.
//!
//! All arithmetic is exact. Rationals are [`num_rational::BigRational`].

pub mod betti;
pub mod catalog;
pub mod complement;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod monodromy;
pub mod orders;
pub mod rational;
pub mod zariski;

pub use betti::{
    abelian_betti, betti_lower_bound, classify_cover_types, kunneth_betti, BettiVector,
    ClassificationReport,
};
pub use catalog::standard_lattice;
pub use complement::primitive_orthogonal_complement;
pub use lattice::{
    branch_component_bound, class_gram, direct_sum, is_negative_definite, lattice_from_gram,
    q_exceptional, signature, DivisorClass, Lattice, LatticeError, Signature,
};
pub use monodromy::{
    commuting_orders_possible, galois_like_obstruction, min_symmetric_degree, prime_order_shape,
    ObstructionReport,
};
pub use orders::{
    abelian_order_feasible, alpha, coprime_prime_power_parts, euler_phi, gl_order_feasible,
    order_witness,
};
pub use rational::Rational;
pub use zariski::{zariski_decompose, PrimeSystem, ZariskiDecomposition, ZariskiError};
