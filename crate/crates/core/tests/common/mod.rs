//! Generators shared by the integration suites.

#![allow(dead_code)]

use latcanon::oracle::random_affinity;
use latcanon::{Affinity, Frame, Int, Point, PointSet, RationalPoint, WeightedPointSet};
use proptest::prelude::*;

pub fn coord(bits: u32) -> BoxedStrategy<i64> {
    let lim = if bits >= 63 {
        i64::MAX
    } else {
        (1i64 << bits) - 1
    };
    (-lim..=lim).boxed()
}

pub fn point(d: usize, bits: u32) -> impl Strategy<Value = Point> {
    prop::collection::vec(coord(bits), d).prop_map(Point::from)
}

/// Nonempty sets of at most `max_n` points.
pub fn point_set(d: usize, max_n: usize, bits: u32) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(d, bits), 1..=max_n)
        .prop_map(move |pts| PointSet::new(d, pts).unwrap())
}

pub fn dim_and_set(max_d: usize, max_n: usize, bits: u32) -> impl Strategy<Value = PointSet> {
    (1..=max_d).prop_flat_map(move |d| point_set(d, max_n, bits))
}

pub fn weighted_set(d: usize, max_n: usize, bits: u32) -> impl Strategy<Value = WeightedPointSet> {
    prop::collection::vec((point(d, bits), 1i64..4), 1..=max_n).prop_map(move |items| {
        WeightedPointSet::from_items(d, items.into_iter().map(|(p, w)| (p, Int::from(w)))).unwrap()
    })
}

pub fn affinity(d: usize) -> impl Strategy<Value = Affinity> {
    (any::<u64>(), 0usize..=40).prop_map(move |(seed, steps)| random_affinity(d, seed, steps, 3))
}

/// A frame of up to `max_len` affinely independent points with small
/// denominators, built greedily from random candidates.
pub fn rational_frame(d: usize, max_len: usize) -> impl Strategy<Value = Frame> {
    prop::collection::vec(
        (prop::collection::vec(-6i64..=6, d), 1i64..=3),
        0..=max_len + 3,
    )
    .prop_map(move |cands| {
        let mut pts: Vec<RationalPoint> = Vec::new();
        for (num, den) in cands {
            if pts.len() == max_len.min(d + 1) {
                break;
            }
            let p = RationalPoint::new(num.into_iter().map(Int::from).collect(), Int::from(den));
            let mut next = pts.clone();
            next.push(p);
            if Frame::new(d, next.clone()).is_ok() {
                pts = next;
            }
        }
        Frame::new(d, pts).unwrap()
    })
}
