//! Single-particle spectrum of the 3-dimensional q-deformed harmonic
//! oscillator with u_q(3) ⊃ so_q(3) symmetry, its shell structure and
//! magic numbers, and comparison against alkali-cluster magic numbers.
//!
//! ```
//! use qshell::{build_scheme, detect_shells, ModelParameters, MagicGrade};
//!
//! let params = ModelParameters::default();
//! let scheme = build_scheme(&params, 100).unwrap();
//! let magics: Vec<u32> = detect_shells(&scheme, 0.39, 0.30)
//!     .iter()
//!     .filter(|r| r.grade == MagicGrade::Primary)
//!     .map(|r| r.count)
//!     .collect();
//! assert_eq!(magics, [2, 8, 20, 34, 40, 58, 92]);
//! ```

pub mod empirics;
pub mod error;
pub mod qmath;
pub mod shells;
pub mod spectrum;

pub use empirics::{
    fit_tau, match_magics, parse_dataset, tau_grid, ExperimentalDataset, FitResult, MatchReport,
    ObservedMagic,
};
pub use error::{Error, Result};
pub use qmath::{q_bracket, DeformationKind, DeformationParameter};
pub use shells::{
    build_scheme, detect_shells, primary_counts, render_table, LevelScheme, MagicGrade,
    MagicRecord, DEFAULT_COUNT_LIMIT, DEFAULT_PRIMARY_GAP, DEFAULT_SECONDARY_GAP,
};
pub use spectrum::{
    allowed_l, casimir_eigenvalue, energy, energy_taylor, enumerate_levels, mean_l2,
    nilsson_energy, Level, ModelParameters, DEFAULT_N_MAX, DEFAULT_TAU,
};
