//! Truncated series completions of `t`-adic places and uniformization
//! inside them.

mod algebraic;
mod block;
mod discrete;
mod hensel;
mod immediate;
mod kaplansky;
mod place;
mod rows;
mod series;

pub use algebraic::{AlgebraicExtension, UPoly};
pub use block::{algebraic_block, uniformize_completion_algebraic, AlgebraicBlock};
pub use discrete::{uniformize_discrete_rational, DiscretePresentation, GeneratorSpec};
pub use hensel::hensel_lift_root;
pub use immediate::uniformize_immediate_simple;
pub use kaplansky::{kaplansky_normalize, value_via_lvpol, ApproximationWitness};
pub use place::{simple_roots, SeriesGenerator, SeriesPlace};
pub use series::{t_adic_value, TruncatedSeries};

#[cfg(test)]
mod tests;
