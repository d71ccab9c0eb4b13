//! Exact computational verification that a finite group has a
//! self-normalizing Sylow 2-subgroup if and only if every odd-degree
//! irreducible character is fixed by the Galois automorphism that fixes
//! 2-power-order roots of unity and squares odd-order ones.
//!
//! The crate provides the supporting machinery as separate modules:
//!
//! * [`cyclotomic`] — exact arithmetic in Q(zeta_n), Legendre symbols,
//!   Gauss sums and the sign law for square roots under the automorphism;
//! * [`perm`], [`group`] — permutation groups with base/strong-generator
//!   structure, conjugacy classes, Sylow 2-subgroups and normalizers;
//! * [`fq`] — small finite fields and matrix groups over them;
//! * [`chartab`] — exact ordinary character tables by the eigenvector
//!   method, induction/restriction and the sigma action on rows;
//! * [`navarro`] — the two-sided theorem checker and corpus runner;
//! * [`weyl`] — root systems, relative Weyl groups W(lambda) = C ⋉ R,
//!   length parities and enumeration surveys;
//! * [`hecke`] — explicit principal-series modules, the intertwiner basis,
//!   quadratic relations, the T-basis and the sigma action on
//!   Harish-Chandra series for SL2(q), GL2(3) and Sp4(3);
//! * [`generic_hecke`] — generic Iwahori-Hecke algebras at rank <= 2 with
//!   their specializations.

pub mod chartab;
pub mod corpus;
pub mod cyclotomic;
pub mod fq;
pub mod generic_hecke;
pub mod group;
pub mod hecke;
pub mod navarro;
pub mod perm;
pub mod weyl;

use thiserror::Error;

/// Default cap on group orders for operations that enumerate elements.
pub const DEFAULT_MAX_ORDER: u64 = 200_000;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {order} exceeds the size guard {max}")]
    SizeGuard { order: u64, max: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("singular matrix generator")]
    SingularGenerator,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no suitable prime p = 1 mod {exponent} below {cap}")]
    NoSuitablePrime { exponent: u64, cap: u64 },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("enumeration guard: {0}")]
    EnumerationGuard(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
