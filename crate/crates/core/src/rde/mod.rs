//! Homogeneous-space models with polynomial data, their elementary
//! differentials, and the truncated Lie–Butcher integrator driven by a
//! planarly branched lift.

mod expansion;
mod model;
mod operator;
mod poly;
mod solver;

pub use expansion::{
    compare_expansions, evaluate_expansion, expansion_action, five_forest_display, forest_expansion, intro_expansion_check,
    intro_model, lb_coefficient, six_term_display, word_expansion, ExpansionComparison, IntroReport, IntroRow,
};
pub use model::{ChartModel, CompiledFields, MAX_MODEL_DEGREE};
pub use operator::{apply_operator, elementary_differential, ElementaryDifferentials, OperatorSeries};
pub use poly::{monomials_up_to, CompiledPoly, Poly};
pub use solver::{
    composition_study, forests_up_to, lb_step, order_study, reference_solve, solve, uniform_grid, CompositionStudy, LbStepper, OrderRow, OrderStudy,
    Trajectory,
};
