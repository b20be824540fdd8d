//! Equivariant selection of frames.
//!
//! [`equivariant_frames2`] is the production path. [`equivariant_frames_ref`]
//! is the simpler, slower variant kept for cross-checking; the two may return
//! different (but each equivariant) sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::affinity::Affinity;
use crate::error::{check_dim, Error, Result};
use crate::exactla::{affine_rank_points, HnfStrategy, SpanBuilder};
use crate::framecanon::{complete_frame, FrameAffinities};
use crate::int::Int;
use crate::point::{Frame, Point, RationalPoint};
use crate::set::{LatticeSet, Mark, PointSet};

/// Which point becomes the origin when a congruent set is halved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotChoice {
    #[default]
    LexMin,
    LexMax,
}

#[derive(Clone, Debug)]
pub struct FrameOptions {
    pub pivot: PivotChoice,
    pub hnf: HnfStrategy,
    /// Check that `(size, diameter)` strictly drops on every recursive call.
    pub instrument: bool,
    /// Largest input accepted by the reference algorithm.
    pub reference_ceiling: usize,
}

impl Default for FrameOptions {
    fn default() -> FrameOptions {
        FrameOptions {
            pivot: PivotChoice::LexMin,
            hnf: HnfStrategy::Forward,
            instrument: false,
            reference_ceiling: 64,
        }
    }
}

/// Counters collected during one top-level call.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameStats {
    pub calls: usize,
    /// Largest frame set returned by any call, nested ones included.
    pub max_frameset: usize,
    pub measure_violations: usize,
}

impl FrameStats {
    pub fn absorb(&mut self, other: &FrameStats) {
        self.calls += other.calls;
        self.max_frameset = self.max_frameset.max(other.max_frameset);
        self.measure_violations += other.measure_violations;
    }
}

/// A deduplicated collection of frames, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameSet {
    frames: Vec<Frame>,
}

impl FrameSet {
    fn from_raw(dim: usize, raw: Vec<Vec<Point>>) -> FrameSet {
        FrameSet::from_frames(
            raw.into_iter()
                .map(|f| {
                    Frame::new_unchecked(dim, f.into_iter().map(RationalPoint::from).collect())
                })
                .collect(),
        )
    }

    pub fn from_frames(mut frames: Vec<Frame>) -> FrameSet {
        frames.sort();
        frames.dedup();
        FrameSet { frames }
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Frame> {
        self.frames.iter()
    }

    /// The image of every frame under `phi`.
    pub fn image(&self, phi: &Affinity) -> FrameSet {
        FrameSet::from_frames(
            self.frames
                .iter()
                .map(|f| {
                    Frame::new_unchecked(
                        f.dim(),
                        f.points().iter().map(|p| phi.apply_rational(p)).collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Frames `R` of points of `set \ Span(Q)` such that `Q ‖ R` is a frame
/// covering `set`, chosen equivariantly.
pub fn equivariant_frames2<W: Mark>(set: &LatticeSet<W>, q: &Frame) -> Result<FrameSet> {
    equivariant_frames2_with(set, q, &FrameOptions::default()).map(|(s, _)| s)
}

pub fn equivariant_frames2_with<W: Mark>(
    set: &LatticeSet<W>,
    q: &Frame,
    opts: &FrameOptions,
) -> Result<(FrameSet, FrameStats)> {
    check_dim(set.dim(), q.dim())?;
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut ctx = Ctx::new(opts);
    let raw = ctx.frames2(set.clone(), q.points().to_vec(), None);
    Ok((FrameSet::from_raw(set.dim(), raw), ctx.stats))
}

/// Complete frames of `set`, chosen equivariantly by the plain recursion.
pub fn equivariant_frames_ref<W: Mark>(set: &LatticeSet<W>) -> Result<FrameSet> {
    equivariant_frames_ref_with(set, &FrameOptions::default()).map(|(s, _)| s)
}

pub fn equivariant_frames_ref_with<W: Mark>(
    set: &LatticeSet<W>,
    opts: &FrameOptions,
) -> Result<(FrameSet, FrameStats)> {
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    if set.len() > opts.reference_ceiling {
        return Err(Error::Precondition(format!(
            "reference frame search limited to {} points, got {}",
            opts.reference_ceiling,
            set.len()
        )));
    }
    let mut ctx = Ctx::new(opts);
    let raw = ctx.frames_ref(set.clone(), None);
    Ok((FrameSet::from_raw(set.dim(), raw), ctx.stats))
}

/// Every ordered tuple `R` of distinct points of `pool` such that `Q ‖ R` is
/// a frame whose span contains `cover_target`, in depth-first index order.
pub fn enumerate_frames(pool: &PointSet, q: &Frame, cover_target: &PointSet) -> Result<Vec<Frame>> {
    let dim = q.dim();
    check_dim(dim, pool.dim())?;
    check_dim(dim, cover_target.dim())?;
    let pool: Vec<Point> = pool.points().cloned().collect();
    let mut joint = q.points().to_vec();
    joint.extend(cover_target.points().map(RationalPoint::from));
    for p in &joint {
        check_dim(dim, p.dim())?;
    }
    let joint_solver = SpanBuilder::from_points(dim, &joint);
    let raw = if pool.iter().all(|p| joint_solver.contains(p)) {
        // covering reduces to reaching the dimension of Span(Q ∪ target)
        let extra = extra_rank(dim, q.points(), cover_target.points());
        independent_tuples(dim, &pool, q.points(), extra)
    } else {
        let target: Vec<Point> = cover_target.points().cloned().collect();
        let mut out = Vec::new();
        let mut walk = TupleWalk::new(dim, &pool, q.points());
        walk.run(usize::MAX, &mut |frame, solver| {
            if target.iter().all(|p| solver.contains(p)) {
                out.push(frame.to_vec());
            }
        });
        out
    };
    Ok(raw
        .into_iter()
        .map(|r| Frame::new_unchecked(dim, r.into_iter().map(RationalPoint::from).collect()))
        .collect())
}

type Measure = (usize, Int);

fn measure<W: Mark>(set: &LatticeSet<W>) -> Measure {
    let mut diam = Int::zero();
    for i in 0..set.dim() {
        let mut it = set.points().map(|p| &p[i]);
        if let Some(first) = it.next() {
            let (lo, hi) = it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
            diam = diam.max(hi - lo);
        }
    }
    (set.len(), diam)
}

struct Ctx<'o> {
    opts: &'o FrameOptions,
    stats: FrameStats,
}

impl<'o> Ctx<'o> {
    fn new(opts: &'o FrameOptions) -> Ctx<'o> {
        Ctx {
            opts,
            stats: FrameStats::default(),
        }
    }

    fn enter<W: Mark>(&mut self, set: &LatticeSet<W>, parent: Option<&Measure>) {
        self.stats.calls += 1;
        if let Some(parent) = parent {
            if measure(set) >= *parent {
                self.stats.measure_violations += 1;
            }
        }
    }

    fn own_measure<W: Mark>(&self, set: &LatticeSet<W>) -> Option<Measure> {
        self.opts.instrument.then(|| measure(set))
    }

    fn leave(&mut self, out: Vec<Vec<Point>>) -> Vec<Vec<Point>> {
        self.stats.max_frameset = self.stats.max_frameset.max(out.len());
        out
    }

    fn pivot<W: Mark>(&self, set: &LatticeSet<W>) -> Point {
        let items = set.items();
        match self.opts.pivot {
            PivotChoice::LexMin => items[0].0.clone(),
            PivotChoice::LexMax => items[items.len() - 1].0.clone(),
        }
    }

    fn frames2<W: Mark>(
        &mut self,
        set: LatticeSet<W>,
        q: Vec<RationalPoint>,
        parent: Option<&Measure>,
    ) -> Vec<Vec<Point>> {
        self.enter(&set, parent);
        let dim = set.dim();
        let set = if q.is_empty() {
            set
        } else {
            let span = SpanBuilder::from_points(dim, &q);
            set.filter(|p| !span.contains(p))
        };
        if set.len() <= 1 {
            let out = vec![set.points().cloned().collect()];
            return self.leave(out);
        }
        let own = self.own_measure(&set);

        if all_congruent(&set) {
            let p = self.pivot(&set);
            let half = set.map_injective(|x| x.halve_from(&p));
            let q_half = q.iter().map(|r| r.halve_from(&p)).collect();
            let inner = self.frames2(half, q_half, own.as_ref());
            let out = inner
                .into_iter()
                .map(|f| f.iter().map(|x| x.double_onto(&p)).collect())
                .collect();
            return self.leave(out);
        }

        let mut classes = set.partition_mod2().expect("set is nonempty");
        let rank = affine_rank_points(&set.points().cloned().collect::<Vec<_>>()) as usize;
        let mut argmin = Argmin::new(&set, rank, self.opts.hnf);

        if 2 * classes[classes.len() - 1].len() <= set.len() {
            let mut pool = BTreeSet::new();
            for class in classes {
                for f in self.frames2(class, q.clone(), own.as_ref()) {
                    pool.extend(f);
                }
            }
            let pool: Vec<Point> = pool.into_iter().collect();
            let extra = extra_rank(dim, &q, set.points());
            TupleWalk::new(dim, &pool, &q).run(extra, &mut |r, _| {
                if r.len() == extra {
                    argmin.offer(&q, r, || r.to_vec());
                }
            });
        } else {
            let big = classes.pop().expect("at least two classes");
            let mut pool = BTreeSet::new();
            let mut rest: Vec<Point> = Vec::new();
            for class in classes {
                rest.extend(class.points().cloned());
                for f in self.frames2(class, q.clone(), own.as_ref()) {
                    pool.extend(f);
                }
            }
            let pool: Vec<Point> = pool.into_iter().collect();
            let extra = extra_rank(dim, &q, rest.iter());
            for r in independent_tuples(dim, &pool, &q, extra) {
                let mut qr = q.clone();
                qr.extend(r.iter().map(RationalPoint::from));
                for t in self.frames2(big.clone(), qr.clone(), own.as_ref()) {
                    argmin.offer(&qr, &t, || {
                        let mut tag = r.clone();
                        tag.extend_from_slice(&t);
                        tag
                    });
                }
            }
        }
        let out = argmin.into_winners();
        self.leave(out)
    }

    fn frames_ref<W: Mark>(
        &mut self,
        set: LatticeSet<W>,
        parent: Option<&Measure>,
    ) -> Vec<Vec<Point>> {
        self.enter(&set, parent);
        let dim = set.dim();
        if set.len() == 1 {
            let out = vec![set.points().cloned().collect()];
            return self.leave(out);
        }
        let own = self.own_measure(&set);
        if all_congruent(&set) {
            let p = self.pivot(&set);
            let half = set.map_injective(|x| x.halve_from(&p));
            let out = self
                .frames_ref(half, own.as_ref())
                .into_iter()
                .map(|f| f.iter().map(|x| x.double_onto(&p)).collect())
                .collect();
            return self.leave(out);
        }
        let mut pool = BTreeSet::new();
        for class in set.partition_mod2().expect("set is nonempty") {
            for f in self.frames_ref(class, own.as_ref()) {
                pool.extend(f);
            }
        }
        let pool: Vec<Point> = pool.into_iter().collect();
        let rank = affine_rank_points(&pool) as usize;
        let mut argmin = Argmin::new(&set, rank, self.opts.hnf);
        TupleWalk::new(dim, &pool, &[]).run(rank + 1, &mut |t, _| {
            if t.len() == rank + 1 {
                argmin.offer(&[], t, || t.to_vec());
            }
        });
        let out = argmin.into_winners();
        self.leave(out)
    }
}

fn all_congruent<W: Mark>(set: &LatticeSet<W>) -> bool {
    let first = &set.items()[0].0;
    set.points().all(|p| {
        p.coords()
            .iter()
            .zip(first.coords())
            .all(|(a, b)| a.is_even() == b.is_even())
    })
}

/// Number of points of `points` needed to extend `q` to a frame of
/// `Span(q ∪ points)`.
fn extra_rank<'a>(
    dim: usize,
    q: &[RationalPoint],
    points: impl Iterator<Item = &'a Point>,
) -> usize {
    let mut span = SpanBuilder::from_points(dim, q);
    let mut extra = 0;
    for p in points {
        if span.is_full() {
            break;
        }
        if span.push(p) {
            extra += 1;
        }
    }
    extra
}

/// Ordered tuples of `size` distinct pool points extending `q` to a frame.
fn independent_tuples(
    dim: usize,
    pool: &[Point],
    q: &[RationalPoint],
    size: usize,
) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    let mut walk = TupleWalk::new(dim, pool, q);
    walk.run(size, &mut |frame, _| {
        if frame.len() == size {
            out.push(frame.to_vec());
        }
    });
    out
}

/// Depth-first walk over ordered tuples of pool points independent of `q`.
struct TupleWalk<'a> {
    pool: &'a [Point],
    span: SpanBuilder,
    current: Vec<Point>,
    used: Vec<bool>,
}

impl<'a> TupleWalk<'a> {
    fn new(dim: usize, pool: &'a [Point], q: &[RationalPoint]) -> TupleWalk<'a> {
        TupleWalk {
            pool,
            span: SpanBuilder::from_points(dim, q),
            current: Vec::new(),
            used: vec![false; pool.len()],
        }
    }

    /// Visits every tuple of length at most `max_len`, shorter ones first
    /// along each branch.
    fn run(&mut self, max_len: usize, visit: &mut dyn FnMut(&[Point], &SpanBuilder)) {
        visit(&self.current, &self.span);
        if self.current.len() == max_len || self.span.is_full() {
            return;
        }
        for i in 0..self.pool.len() {
            if self.used[i] || self.span.contains(&self.pool[i]) {
                continue;
            }
            self.span.push(&self.pool[i]);
            self.used[i] = true;
            self.current.push(self.pool[i].clone());
            self.run(max_len, visit);
            self.current.pop();
            self.used[i] = false;
            self.span.pop();
        }
    }
}

/// The best canonical pair seen so far.
pub(crate) struct Best<W> {
    pub omega: Vec<(Point, W)>,
    pub frame: Vec<Point>,
    pub psi: Affinity,
}

/// Keeps every candidate frame whose canonical pair is minimal.
pub(crate) struct Argmin<'a, W> {
    set: &'a LatticeSet<W>,
    rank: usize,
    affinities: FrameAffinities,
    /// Row-major coordinates of the set when they all fit a machine word.
    words: Option<Vec<i64>>,
    best: Option<Best<W>>,
    winners: Vec<Vec<Point>>,
}

impl<'a, W: Mark> Argmin<'a, W> {
    pub(crate) fn new(set: &'a LatticeSet<W>, rank: usize, strategy: HnfStrategy) -> Self {
        let words = set
            .points()
            .flat_map(|p| p.coords())
            .map(Int::to_i64)
            .collect();
        Argmin {
            set,
            rank,
            affinities: FrameAffinities::new(set.dim(), strategy),
            words,
            best: None,
            winners: Vec::new(),
        }
    }

    /// Offers the frame `q ‖ r`, which must cover the set, with `r` made of
    /// points of the set. `tag` is what gets returned for it.
    pub(crate) fn offer(
        &mut self,
        q: &[RationalPoint],
        r: &[Point],
        tag: impl FnOnce() -> Vec<Point>,
    ) {
        let t = complete_frame(self.set, q, r, None, self.rank);
        let psi = self.affinities.get(&t);
        if let Some(best) = &self.best {
            if self.first_item_cmp(&psi, &best.omega[0]) == Ordering::Greater {
                return;
            }
        }
        let mut omega: Vec<(Point, W)> = self
            .set
            .items()
            .iter()
            .map(|(p, w)| (psi.apply_point(p), w.clone()))
            .collect();
        omega.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let frame: Vec<Point> = t.iter().map(|p| psi.apply_point(p)).collect();
        let ord = match &self.best {
            None => Ordering::Less,
            Some(b) => (&omega, &frame).cmp(&(&b.omega, &b.frame)),
        };
        match ord {
            Ordering::Less => {
                self.best = Some(Best { omega, frame, psi });
                self.winners = vec![tag()];
            }
            Ordering::Equal => self.winners.push(tag()),
            Ordering::Greater => {}
        }
    }

    pub(crate) fn into_winners(self) -> Vec<Vec<Point>> {
        let mut w = self.winners;
        w.sort();
        w.dedup();
        w
    }

    pub(crate) fn into_best(self) -> Option<Best<W>> {
        self.best
    }

    /// Compares the smallest item of `psi(set)` with `target` without
    /// building the image.
    fn first_item_cmp(&self, psi: &Affinity, target: &(Point, W)) -> Ordering {
        if let Some(ord) = self.first_item_cmp_words(psi, target) {
            return ord;
        }
        let a = psi.matrix();
        let b = psi.offset();
        let (tp, tw) = target;
        let mut tie = false;
        'points: for (x, w) in self.set.items() {
            for i in 0..self.set.dim() {
                let mut v = b[i].clone();
                for (c, y) in a.row(i).iter().zip(x.coords()) {
                    if !c.is_zero() {
                        v += c * y;
                    }
                }
                match v.cmp(&tp[i]) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => continue 'points,
                    Ordering::Equal => {}
                }
            }
            match w.cmp(tw) {
                Ordering::Less => return Ordering::Less,
                Ordering::Equal => tie = true,
                Ordering::Greater => {}
            }
        }
        if tie {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    /// The same comparison in machine arithmetic; `None` on overflow.
    fn first_item_cmp_words(&self, psi: &Affinity, target: &(Point, W)) -> Option<Ordering> {
        let words = self.words.as_ref()?;
        let d = self.set.dim();
        let a: Vec<i64> = (0..d)
            .flat_map(|i| psi.matrix().row(i).iter().map(Int::to_i64))
            .collect::<Option<_>>()?;
        let b: Vec<i128> = psi
            .offset()
            .iter()
            .map(Int::to_i128)
            .collect::<Option<_>>()?;
        let tp: Vec<i128> = target
            .0
            .coords()
            .iter()
            .map(Int::to_i128)
            .collect::<Option<_>>()?;
        let mut tie = false;
        'points: for (k, (_, w)) in self.set.items().iter().enumerate() {
            let x = &words[k * d..(k + 1) * d];
            for i in 0..d {
                let mut v = b[i];
                for (c, y) in a[i * d..(i + 1) * d].iter().zip(x) {
                    v = v.checked_add(i128::from(*c) * i128::from(*y))?;
                }
                match v.cmp(&tp[i]) {
                    Ordering::Less => return Some(Ordering::Less),
                    Ordering::Greater => continue 'points,
                    Ordering::Equal => {}
                }
            }
            match w.cmp(&target.1) {
                Ordering::Less => return Some(Ordering::Less),
                Ordering::Equal => tie = true,
                Ordering::Greater => {}
            }
        }
        Some(if tie {
            Ordering::Equal
        } else {
            Ordering::Greater
        })
    }
}
