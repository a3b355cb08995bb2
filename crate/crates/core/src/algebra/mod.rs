//! Exact rationals, graded series over an arbitrary basis, words, linear
//! functionals and interval-tracked high-precision reals.

mod functional;
mod rational;
mod real;
mod series;
mod word;

pub use functional::LinearFunctional;
pub use rational::{
    binomial, factorial, fmt_rational, int, parse_rational, pow, rat, to_f64, Rational,
};
pub use real::{Real, DEFAULT_PRECISION};
pub use series::{Graded, Series};
pub use word::Word;
