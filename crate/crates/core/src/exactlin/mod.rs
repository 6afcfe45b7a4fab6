//! Exact linear algebra over the rationals.

pub mod lp;
pub mod matrix;
pub mod rational;

pub use lp::{lp_feasible, Constraint, LpOutcome, Relation};
pub use matrix::{affine_dimension, affine_solution_space, solve_linear, LinearSolution, RatMat, RatVec};
pub use rational::{q, Rational};
