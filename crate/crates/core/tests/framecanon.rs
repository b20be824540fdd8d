mod common;

use common::{affinity, point_set, rational_frame};
use latcanon::framecanon::canonical_form_with_frame_using;
use latcanon::{
    apply_affinity, canonical_form_with_frame, Affinity, Frame, HnfStrategy, Int, PointSet,
};
use proptest::prelude::*;

/// A set together with a rational frame spanning the whole space.
fn covered_set() -> impl Strategy<Value = (PointSet, Frame, Affinity)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            point_set(d, 12, 30),
            rational_frame(d, d + 1).prop_filter("spanning", move |f| f.len() == d + 1),
            affinity(d),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn weakly_canonical((set, q, phi) in covered_set()) {
        let (pair, _) = canonical_form_with_frame(&set, &q).unwrap();
        let moved = apply_affinity(&phi, &set).unwrap();
        let moved_q = apply_affinity(&phi, &q).unwrap();
        let (moved_pair, _) = canonical_form_with_frame(&moved, &moved_q).unwrap();
        prop_assert_eq!(pair, moved_pair);
    }

    #[test]
    fn witness_maps_set_and_frame((set, q, _) in covered_set()) {
        let (pair, psi) = canonical_form_with_frame(&set, &q).unwrap();
        prop_assert_eq!(psi.matrix().determinant().abs(), Int::one());
        prop_assert_eq!(apply_affinity(&psi, &set).unwrap(), pair.omega.clone());
        prop_assert!(pair.frame.points()[0].numerators().iter().all(Int::is_zero));
        for p in pair.frame.points() {
            prop_assert!(p.is_integral());
            prop_assert!(pair.omega.contains(&p.to_point().unwrap()));
        }
    }

    #[test]
    fn elimination_order_is_invisible((set, q, _) in covered_set()) {
        let (forward, _) = canonical_form_with_frame_using(&set, &q, HnfStrategy::Forward).unwrap();
        let (smallest, _) =
            canonical_form_with_frame_using(&set, &q, HnfStrategy::SmallestPivot).unwrap();
        prop_assert_eq!(forward, smallest);
    }
}

#[test]
fn uncovered_points_are_rejected() {
    let set = PointSet::from_i64(&[[0, 0], [1, 1]]);
    let q = Frame::from_points(2, vec![[0, 0].into(), [1, 0].into()]).unwrap();
    assert!(canonical_form_with_frame(&set, &q).is_err());
}
