//! Desk-scale models of fuzzy topological vector spaces.
//!
//! The ambient space is R^n restricted to a bounded box with a uniform
//! evaluation lattice; suprema and infima become lattice maxima and minima.
//! On top of that sit fuzzy sets as expression trees, fuzzy reals and fuzzy
//! vector norms, the two classical fuzzy-norm presentations and the bridge
//! between them, and the weak topology induced by a finite catalog of
//! linear functionals. Verification sweeps report their findings as
//! [`report::CheckReport`] values instead of panicking or erroring.

pub mod affine;
pub mod domain;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod lsc;
pub mod norms;
pub mod reals;
pub mod report;
pub mod set;
pub mod weak;

pub use affine::AffineMap;
pub use domain::Domain;
pub use error::{CoreError, Result};
pub use expr::{FuzzyExpr, GridData, NormLevel, Predicate};
pub use reals::{FelbinNorm, FuzzyReal, Interval, NonNegFuzzyReal};
pub use report::{CheckReport, Verdict, Witness};
pub use set::FuzzySet;
