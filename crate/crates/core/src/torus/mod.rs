//! Measurable tilings of tori modeled exactly: rational grid-cell tiles,
//! shifts with rational and formal irrational parts.

pub mod cells;
pub mod circle;
pub mod connected;
pub mod invariance;
pub mod sine;
pub mod svg;
pub mod symbolic;
pub mod symbolic_verify;
pub mod velocity;
pub mod verify;

pub use cells::CellSet;
pub use circle::{assemble_circle_tiling, circle_rationality, CircleOutcome};
pub use connected::{connected_case, ConnectedPart, ConnectedReport, StripInterval};
pub use invariance::{invariant_along_axis, sl2_normalizer, verify_invariance_along};
pub use sine::{sine_multitile_check, SineCheck};
pub use svg::render_svg;
pub use symbolic::{SymbolicScalar, SymbolicVector};
pub use symbolic_verify::{
    verify_symbolic_tiling, verify_symbolic_tiling_with, SubstitutionPlan, SymbolicTilingReport,
};
pub use velocity::{
    velocity_decomposition, weak_rational_direction, VelocityDecomposition, WeakDirection,
};
pub use verify::verify_rational_torus_tiling;
