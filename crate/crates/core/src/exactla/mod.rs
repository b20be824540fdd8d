//! Exact integer and rational linear algebra.

mod hnf;
mod matrix;
mod span;

pub use hnf::{hnf_with_strategy, hnf_with_transform, is_row_hnf, HnfResult, HnfStrategy};
pub use matrix::IntMatrix;
pub use span::{affine_rank, affine_rank_points, coords_wrt_frame, in_affine_span};

pub(crate) use hnf::hnf_append_column;
pub(crate) use span::{FrameSolver, SpanBuilder};
