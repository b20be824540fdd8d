//! Weak canonical form of a set relative to a covering frame.

use std::cmp::Ordering;

use crate::affinity::Affinity;
use crate::error::{check_dim, Error, Result};
use crate::exactla::{
    affine_rank_points, hnf_append_column, hnf_with_strategy, FrameSolver, HnfResult, HnfStrategy,
    IntMatrix, SpanBuilder,
};
use crate::int::Int;
use crate::point::{Frame, Point, RationalPoint};
use crate::set::{cmp_sets, LatticeSet, Mark};

/// A set in normal position together with a complete frame of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonPair<W> {
    pub omega: LatticeSet<W>,
    pub frame: Frame,
}

/// Orders by `omega`, then by the frames as point sequences.
pub fn cmp_canon_pairs<W: Mark>(a: &CanonPair<W>, b: &CanonPair<W>) -> Ordering {
    cmp_sets(&a.omega, &b.omega).then_with(|| a.frame.cmp(&b.frame))
}

/// Computes `(psi(L), psi(T))` and `psi`, where `T` is the complete frame of
/// `L` grown greedily from `Q ∩ L` and `psi` sends `T` to Hermite position.
pub fn canonical_form_with_frame<W: Mark>(
    set: &LatticeSet<W>,
    q: &Frame,
) -> Result<(CanonPair<W>, Affinity)> {
    canonical_form_with_frame_using(set, q, HnfStrategy::default())
}

/// As [`canonical_form_with_frame`], with an explicit elimination order for
/// the Hermite reduction. The pair does not depend on it.
pub fn canonical_form_with_frame_using<W: Mark>(
    set: &LatticeSet<W>,
    q: &Frame,
    strategy: HnfStrategy,
) -> Result<(CanonPair<W>, Affinity)> {
    check_dim(set.dim(), q.dim())?;
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    let solver = FrameSolver::from_frame(q);
    if !set.points().all(|p| solver.contains(p)) {
        return Err(Error::NotCovering);
    }
    let rank = affine_rank_points(&set.points().cloned().collect::<Vec<_>>()) as usize;
    let t = complete_frame(set, q.points(), &[], Some(&solver), rank);
    let psi = frame_affinity(set.dim(), &t, strategy);
    let omega = set.map_injective(|p| psi.apply_point(p));
    let frame = Frame::new_unchecked(
        set.dim(),
        t.iter()
            .map(|p| RationalPoint::from(psi.apply_point(p)))
            .collect(),
    );
    Ok((CanonPair { omega, frame }, psi))
}

/// Greedy completion of `frame ∩ set` to a complete frame of `set`, which
/// has `rank + 1` points. The frame is `q` followed by the integer points
/// `r`, all of which lie in `set`, and must cover `set`.
pub(crate) fn complete_frame<W: Mark>(
    set: &LatticeSet<W>,
    q: &[RationalPoint],
    r: &[Point],
    solver: Option<&FrameSolver>,
    rank: usize,
) -> Vec<Point> {
    let mut t: Vec<Point> = q
        .iter()
        .filter_map(RationalPoint::to_point)
        .filter(|p| set.contains(p))
        .collect();
    debug_assert!(r.iter().all(|p| set.contains(p)));
    t.extend_from_slice(r);
    if t.len() == rank + 1 {
        return t;
    }
    let owned;
    let solver = match solver {
        Some(s) => s,
        None => {
            let mut frame = q.to_vec();
            frame.extend(r.iter().map(RationalPoint::from));
            owned = FrameSolver::new(set.dim(), &frame).expect("frame is independent");
            &owned
        }
    };
    // scaled coordinates order the same way as the true ones
    let coords: Vec<Vec<Int>> = set.points().map(|p| solver.scaled_coords(p)).collect();
    let mut span = SpanBuilder::new(set.dim());
    for p in &t {
        span.push(p);
    }
    while t.len() < rank + 1 {
        let mut best: Option<usize> = None;
        for (i, p) in set.points().enumerate() {
            if span.contains(p) {
                continue;
            }
            best = match best {
                Some(b) => {
                    debug_assert_ne!(coords[i], coords[b], "coordinates determine the point");
                    Some(if coords[i] < coords[b] { i } else { b })
                }
                None => Some(i),
            };
        }
        let b = best.expect("rank counts the missing points");
        span.push(&set.items()[b].0);
        t.push(set.items()[b].0.clone());
    }
    t
}

/// `x -> U (x - t0)` with `U` the Hermite transform of the matrix with
/// columns `ti - t0`.
pub(crate) fn frame_affinity(dim: usize, t: &[Point], strategy: HnfStrategy) -> Affinity {
    FrameAffinities::new(dim, strategy).get(t)
}

/// Computes [`frame_affinity`] for a stream of frames, reusing the Hermite
/// reductions of the prefixes shared with the previous frame.
pub(crate) struct FrameAffinities {
    dim: usize,
    strategy: HnfStrategy,
    /// A prefix `t0, ..., tm` of the previous frame.
    prefix: Vec<Point>,
    /// `reduced[j]` reduces the columns `t1 - t0, ..., tj - t0`.
    reduced: Vec<HnfResult>,
}

impl FrameAffinities {
    pub(crate) fn new(dim: usize, strategy: HnfStrategy) -> FrameAffinities {
        FrameAffinities {
            dim,
            strategy,
            prefix: Vec::new(),
            reduced: Vec::new(),
        }
    }

    pub(crate) fn get(&mut self, t: &[Point]) -> Affinity {
        let t0 = &t[0];
        if t.len() == 1 {
            return Affinity::translation(t0.coords().iter().map(|v| -v).collect());
        }
        let k = t.len() - 1;
        let shared = self
            .prefix
            .iter()
            .zip(&t[..k])
            .take_while(|(a, b)| a == b)
            .count();
        self.prefix.truncate(shared);
        self.reduced.truncate(shared);
        if shared == 0 {
            self.prefix.push(t0.clone());
            self.reduced.push(hnf_with_strategy(
                &IntMatrix::zeros(self.dim, 0),
                self.strategy,
            ));
        }
        for p in &t[self.prefix.len()..k] {
            let next = self.append(p);
            self.reduced.push(next);
            self.prefix.push(p.clone());
        }
        let u = self.append(&t[k]).u;
        let b = u.mul_vec(t0.coords()).into_iter().map(|v| -v).collect();
        Affinity::new_unchecked(u, b)
    }

    /// Reduction of the current prefix with one more column `p - t0`.
    fn append(&self, p: &Point) -> HnfResult {
        let last = self.reduced.last().expect("prefix holds t0");
        hnf_append_column(last, p.sub(&self.prefix[0]).coords(), self.strategy)
    }
}
