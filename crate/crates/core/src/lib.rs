//! Canonical forms of finite subsets of Z^d under the group of integer
//! affinities `x -> Ax + b`, `det A = ±1`.
//!
//! ```
//! use latcanon::{are_equivalent, canonical_form, PointSet};
//!
//! let a = PointSet::from_i64(&[[0, 0], [3, 1], [1, 2]]);
//! let b = PointSet::from_i64(&[[5, 5], [6, 8], [7, 6]]);
//! assert_eq!(canonical_form(&a), canonical_form(&b));
//! assert!(are_equivalent(&a, &b).unwrap().is_some());
//! ```

pub mod affinity;
pub mod canon;
pub mod eqframes;
pub mod error;
pub mod exactla;
pub mod framecanon;
pub mod int;
pub mod oracle;
pub mod point;
pub mod set;
pub mod weighted;

pub use affinity::{apply_affinity, compose, invert, Affinity, Transform};
pub use canon::{
    are_equivalent, canonical_form, canonical_form_with_witness, canonicalize, equivalence_witness,
    CanonOptions, Canonical, FrameAlgorithm,
};
pub use eqframes::{
    enumerate_frames, equivariant_frames2, equivariant_frames2_with, equivariant_frames_ref,
    equivariant_frames_ref_with, FrameOptions, FrameSet, FrameStats, PivotChoice,
};
pub use error::{Error, Result};
pub use exactla::{HnfResult, HnfStrategy, IntMatrix};
pub use framecanon::{canonical_form_with_frame, cmp_canon_pairs, CanonPair};
pub use int::Int;
pub use point::{cmp_points, Frame, Point, RationalPoint};
pub use set::{cmp_sets, LatticeSet, Mark, PointSet, WeightedPointSet};
pub use weighted::{
    canonical_form_weighted, canonicalize_laurent, parse_laurent, parse_laurent_in, print_laurent,
    LaurentPoly,
};
