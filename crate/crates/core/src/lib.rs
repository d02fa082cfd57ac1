//! Factorization invariants in block monoids over finite cyclic groups and
//! in numerical monoids: sets of lengths, delta sets, distances, catenary
//! degrees, exhaustive realizability surveys, and explicit blocks with
//! large delta sets.

pub mod atoms;
pub mod cache;
pub mod checkpoint;
pub mod error;
pub mod factor;
pub mod fsutil;
pub mod group;
pub mod metrics;
pub mod numerical;
pub mod report;
pub mod survey;
pub mod witness;

pub use atoms::{atoms_dividing, enumerate_atoms, is_atom, AtomTable};
pub use error::{Error, Result};
pub use factor::{delta_set, factorizations, length_set, DeltaSet, Factorization, Factorizer, LengthSet, Limits};
pub use group::{subsequence_sums, Block, CyclicGroup, Sequence};
pub use metrics::{catenary_degree, catenary_sup, distance, gcd_factorizations};
pub use numerical::{NmFactorization, NmScan, NumericalMonoid, Scalar};
pub use survey::{corollary_excludes, enumerate_blocks, survey, Status, SurveyConfig, SurveyReport};
pub use witness::{build_witness, singleton_witness, verify_witness, ArchimedeanWitness};

/// Numerical monoid over 32-bit elements.
pub type NumericalMonoid32 = NumericalMonoid<u32>;
/// Numerical monoid over 64-bit elements.
pub type NumericalMonoid64 = NumericalMonoid<u64>;
/// Numerical monoid over 128-bit elements.
pub type NumericalMonoid128 = NumericalMonoid<u128>;
pub type NmScan64 = NmScan<u64>;
