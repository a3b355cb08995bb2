//! Exact signatures of piecewise-polynomial paths, planarly branched and
//! branched lifts, rough-path validators, the sewing map and the extension
//! of truncated rough paths by one degree.

mod checks;
mod extension;
mod lift;
mod path;
mod poly;
mod sewing;

pub use checks::{check_character, check_chen, holder_table, HolderRow, HolderTable, ResidualReport};
pub use extension::{extend, ExtendedLift};
pub use lift::{
    lift_branched, lift_planar, BasisKind, Lift, LiftMode, PullbackLift, Scalar, SignatureLift,
    TabulatedLift, TruncatedLift,
};
pub use path::{signature, simplex_volume, PiecewisePolyPath, MAX_PIECE_DEGREE};
pub use poly::UniPoly;
pub use sewing::{fit_slope, sew, sew_fn, DyadicGrid, Sewing, SewingReport, TwoParamFunction, MAX_DEPTH};
