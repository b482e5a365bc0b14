//! Interval arithmetic on closed intervals, orders on subintervals of
//! `[0, 1]`, and sampling-based checkers for monotonicity notions of
//! interval-valued functions (standard, directional, weak and G-weak).

pub mod check;
pub mod claims;
pub mod function;
pub mod interval;
pub mod order;

pub use check::{
    check_directional_adm, check_directional_km, check_g_weak, check_g_weak_scalar,
    check_increasing, check_weak_adm, check_weak_km, feasible_max_shift, CheckError, CheckResult,
    DegenerateVec, Direction, RealPairs, SamplingConfig, Sense, Shift, Status, Witness,
};
pub use function::{Builtin, FunctionError, IVFunction};
pub use interval::{Interval, IntervalVector};
pub use order::{is_admissible, km_compare, AdmissibilityReport, OrderRelation, OrderSpec};
