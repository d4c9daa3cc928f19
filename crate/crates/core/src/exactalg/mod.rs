//! Exact coefficient arithmetic: ℚ(params) scalars, polynomials in ∂, λ, μ
//! and linear solving.

mod formal;
mod linsolve;
mod parse;
mod poly;
mod scalar;

pub use formal::{monomial_label, Exps, FormalPoly, FormalVar};
pub use linsolve::{
    kernel_from_columns, solve_linear, system_from_columns, LinearEquation, LinearSystem,
    SolutionSpace,
};
pub use parse::{parse_formal, parse_scalar};
pub use poly::{gcd, Monomial, Poly, Rat, Var};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error("`{input}` uses undeclared parameter `{name}`")]
    UnknownParameter { input: String, name: String },
    #[error("linear system is inconsistent (equation {equation})")]
    Inconsistent { equation: usize },
    #[error("equation references unknown index {0}")]
    UnknownIndex(usize),
}
