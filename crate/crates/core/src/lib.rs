//! Exact computational group theory behind the `nilfract` tool.
//!
//! The crate models finitely generated abelian groups in invariant-factor
//! form, finite groups as Cayley tables, actions of finite groups on both,
//! nilpotent structures (central series) and their epimorphism towers,
//! localization away from sets of naturals, and fracture-square
//! certificates for abelian groups and Postnikov-tower data.
//!
//! All arithmetic is arbitrary precision; every value is immutable after
//! construction and every operation is a pure function.
//!
//! ```
//! use nilfract_core::actions::{alpha_lower_central_series, structure_to_tower};
//! use nilfract_core::localization::{localize_finite_nilpotent, NumSet};
//! use nilfract_core::{FiniteGroup, GroupAction};
//!
//! // the quaternion group is nilpotent of class 2 ...
//! let q8 = FiniteGroup::quaternion8();
//! let series = alpha_lower_central_series(&GroupAction::conjugation(&q8)).unwrap();
//! assert_eq!(series.length(), 2);
//! assert_eq!(structure_to_tower(&series).unwrap().length(), 2);
//!
//! // ... and dies under localization away from 2
//! let away = NumSet::from_u64(&[2]).unwrap();
//! let localized = localize_finite_nilpotent(&q8, &away).unwrap();
//! assert!(localized.localized.is_trivial());
//! ```

pub mod abelian;
pub mod actions;
pub mod arith;
pub mod error;
pub mod finite;
pub mod fracture;
pub mod gen;
pub mod jsonutil;
pub mod localization;
pub mod matrix;
pub mod parse;
pub mod postnikov;

pub use abelian::{AbelianElement, AbelianHom, AbelianSubgroup, FgAbelianGroup};
pub use actions::{
    ActionMap, Automorphism, EpiTower, GroupAction, GroupTarget, NilpotentStructure, SubTarget,
    TargetHom,
};
pub use error::{Error, Result};
pub use finite::{FiniteGroup, FiniteHom, ShortExactSequence, Subgroup};
pub use fracture::{FractureFamilies, PullbackCertificate};
pub use localization::{LocalizationResult, LocalizedRing, NumSet};
pub use matrix::IntMatrix;
pub use postnikov::{FactorizationReport, PostnikovData, PostnikovLevel};

/// Brute-force size cap for finite groups, overridable via `NILFRACT_MAX_ORDER`.
pub fn max_group_order() -> usize {
    std::env::var("NILFRACT_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(64)
}

/// Brute-force size cap for abelian torsion parts (enumerations).
pub fn max_abelian_order() -> usize {
    std::env::var("NILFRACT_MAX_ABELIAN")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(200)
}
