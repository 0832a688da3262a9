//! Finitely generated ordered abelian groups with decidable order.
//!
//! Rank-1 blocks embed in the reals through surd weights; higher rank is a
//! lexicographic product of such blocks.

mod order;
mod perron;
mod surd;

pub use order::{convex_decompose, rational_rank, ConvexSplit, GroupElement, GroupOrder};
pub use perron::{
    is_valid_perron, max_steps, perron_positive_basis, perron_positive_basis_with_cap, PerronBasis,
    DEFAULT_MAX_STEPS, MAX_STEPS_ENV,
};
pub use surd::{is_independent, is_square_free, SurdScalar};
