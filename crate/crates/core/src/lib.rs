//! Construction of W-graphs from W-graph ideals in Coxeter groups.
//!
//! The pipeline: a [`coxeter`] backend (symmetric groups, dihedral groups)
//! feeds an [`ideal`] constructor, whose index-level table drives the
//! [`wgraph`] engine computing the q-polynomial tables, edge weights and
//! W-graph. The [`verify`] module holds independent oracles (Hecke relation
//! checks, the bar-involution construction, the seminormal form), and
//! [`export`] renders JSON/DOT artifacts.
//!
//! All polynomial arithmetic is exact and generic over the integer
//! coefficient type; the aliases below pick the two supported backends.

pub mod coxeter;
pub mod export;
pub mod ideal;
pub mod laurent;
pub mod tableaux;
pub mod verify;
pub mod wgraph;

pub use coxeter::{CoxeterGroup, CoxeterSpec, Dihedral, GenSet, Perm, TypeA};
pub use ideal::{Family, IdealTable, ParabolicVariant, TableCore};
pub use laurent::{Coeff, LaurentPoly, RationalFn};
pub use tableaux::{Partition, StandardTableau};

/// Arbitrary-precision coefficients: never overflow, the safe default.
pub type BigInt = num_bigint::BigInt;
/// Polynomials over arbitrary-precision integers.
pub type BigPoly = LaurentPoly<BigInt>;
/// Rational functions over arbitrary-precision integers.
pub type BigRationalFn = RationalFn<BigInt>;

/// Machine-word coefficients with checked arithmetic (overflow aborts);
/// the fast path for large tables whose coefficients stay small.
pub type FastPoly = LaurentPoly<i64>;
pub type FastRationalFn = RationalFn<i64>;
