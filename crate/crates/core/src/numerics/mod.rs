//! Numeric building blocks shared by the thermodynamic inversions.

mod fit;
mod integrate;
mod lambert;
mod roots;
mod uncertainty;

pub use fit::{fit_bleaney_bowers, FitResult, MAX_EVALUATIONS};
pub use integrate::{integrate_series_with_tail, Integral, TailModel};
pub use lambert::lambert_w;
pub use roots::{find_crossing, find_root, maximize_scalar, Bracket, Crossing, Maximum};
pub use uncertainty::{propagate_uncertainty, Propagated, Side, ValueWithUncertainty};
