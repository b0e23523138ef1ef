//! Exact tools for translational tilings `F + A = G` of finitely generated
//! abelian groups and their finite quotients, together with the continuous
//! torus and interval models and factor-of-iid simulators.

pub mod algebra;
pub mod enumerate;
pub mod error;
pub mod fiid;
pub mod intervals;
pub mod lattice;
pub mod limits;
pub mod rational;
pub mod rng;
pub mod structure;
pub mod tilings;
pub mod torus;

pub use algebra::{
    convolve, frobenius_check, group_add, group_neg, is_prime, scalar_dilate, FrobeniusReport,
    GroupElement, GroupSpec, QuotientSpec, Weight,
};
pub use enumerate::{count_and_orbits, enumerate_tilings, OrbitSummary, TilingCatalog};
pub use error::{Result, TileError};
pub use fiid::{
    simulate_nonabelian, simulate_nonabelian_s3, simulate_two_tile, simulate_vertical,
    triple_product_check, validate_trace, FiidTrace, FiidWindow, FiniteGroupTable, TraceReport,
};
pub use intervals::{
    classify_connected, step_convolve, ConnectedClassification, RationalMultiset, StepFunction,
};
pub use rational::Rational;
pub use structure::{
    check_decomposition, decompose, Decomposition, DecompositionReport, QNormalization,
};
pub use tilings::{
    dilation_scan, level_function, verify_tiling, DilationEntry, PeriodicSet, TilingReport,
};
pub use torus::{CellSet, SymbolicScalar, SymbolicVector};
