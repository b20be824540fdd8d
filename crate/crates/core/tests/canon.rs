mod common;

use common::{affinity, dim_and_set, point_set, weighted_set};
use latcanon::oracle::{brute_force_equivalent, random_affinity};
use latcanon::{
    apply_affinity, are_equivalent, canonical_form, canonical_form_weighted,
    canonical_form_with_witness, canonicalize, CanonOptions, FrameAlgorithm, Int, PointSet,
    WeightedPointSet,
};
use proptest::prelude::*;

fn set_and_affinity() -> impl Strategy<Value = (PointSet, latcanon::Affinity)> {
    (1usize..=3).prop_flat_map(|d| {
        let max_n = if d == 3 { 10 } else { 24 };
        (point_set(d, max_n, 64), affinity(d))
    })
}

/// Full-dimensional planar sets with coordinates in `[0, 8)`.
fn small_plane_set() -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..8, 0i64..8), 3..=8)
        .prop_map(|pts| PointSet::new(2, pts.into_iter().map(|(x, y)| [x, y].into())).unwrap())
        .prop_filter("full-dimensional", |s| {
            let pts: Vec<_> = s.points().cloned().collect();
            latcanon::exactla::affine_rank_points(&pts) == 2
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn invariant_under_affinities((set, phi) in set_and_affinity()) {
        let moved = apply_affinity(&phi, &set).unwrap();
        prop_assert_eq!(canonical_form(&moved), canonical_form(&set));
    }

    #[test]
    fn witness_and_idempotence(set in dim_and_set(4, 8, 64)) {
        let (omega, psi) = canonical_form_with_witness(&set).unwrap();
        prop_assert_eq!(psi.matrix().determinant().abs(), Int::one());
        prop_assert_eq!(apply_affinity(&psi, &set).unwrap(), omega.clone());
        prop_assert_eq!(canonical_form(&omega), omega);
    }

    #[test]
    fn equivalence_witness_maps_one_set_onto_the_other((set, phi) in set_and_affinity()) {
        let moved = apply_affinity(&phi, &set).unwrap();
        let w = are_equivalent(&set, &moved).unwrap().expect("equivalent by construction");
        prop_assert_eq!(apply_affinity(&w, &set).unwrap(), moved);
    }

    #[test]
    fn agrees_with_brute_force(a in small_plane_set(), b in small_plane_set(), seed in any::<u64>()) {
        let moved = apply_affinity(&random_affinity(2, seed, 40, 3), &a).unwrap();
        prop_assert!(brute_force_equivalent(&a, &moved).unwrap().is_some());
        prop_assert!(are_equivalent(&a, &moved).unwrap().is_some());
        if a.len() == b.len() {
            prop_assert_eq!(
                brute_force_equivalent(&a, &b).unwrap().is_some(),
                are_equivalent(&a, &b).unwrap().is_some()
            );
        }
    }

    #[test]
    fn reference_frames_also_canonicalize(
        set in (1usize..=3).prop_flat_map(|d| point_set(d, 10, 16)),
        seed in any::<u64>(),
    ) {
        let opts = CanonOptions { algorithm: FrameAlgorithm::Reference, ..Default::default() };
        let phi = random_affinity(set.dim(), seed, 40, 3);
        let moved = apply_affinity(&phi, &set).unwrap();
        let here = canonicalize(&set, &opts).unwrap();
        let there = canonicalize(&moved, &opts).unwrap();
        prop_assert_eq!(&here.omega, &there.omega);
        prop_assert_eq!(apply_affinity(&here.psi, &set).unwrap(), here.omega);
    }

    #[test]
    fn weighted_invariance(set in weighted_set(2, 16, 32), phi in affinity(2)) {
        let moved = apply_affinity(&phi, &set).unwrap();
        prop_assert_eq!(canonical_form_weighted(&moved), canonical_form_weighted(&set));
    }

    #[test]
    fn unit_weights_change_nothing(set in dim_and_set(3, 10, 20)) {
        let weighted = WeightedPointSet::uniform(&set, Int::one());
        let form = canonical_form_weighted(&weighted);
        prop_assert_eq!(form.support(), canonical_form(&set));
        prop_assert!(form.items().iter().all(|(_, w)| w.is_one()));
    }
}

#[test]
fn inequivalent_cardinalities() {
    let a = PointSet::from_i64(&[[0, 0], [1, 0]]);
    let b = PointSet::from_i64(&[[0, 0], [1, 0], [0, 1]]);
    assert!(are_equivalent(&a, &b).unwrap().is_none());
}

#[test]
fn dimension_mismatch_is_an_error() {
    let a = PointSet::from_i64(&[[0, 0]]);
    let b = PointSet::from_i64(&[[0, 0, 0]]);
    assert!(are_equivalent(&a, &b).is_err());
}
