//! Finite subsets of Z^d, optionally weighted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{check_dim, Error, Result};
use crate::int::Int;
use crate::point::Point;

/// Payload carried by each point of a [`LatticeSet`].
pub trait Mark: Clone + Ord + Hash + fmt::Debug + Send + Sync {
    /// Combines the marks of two equal points.
    fn merge(&mut self, other: Self);
    /// Marks that make a point disappear after merging.
    fn is_void(&self) -> bool;
}

impl Mark for () {
    fn merge(&mut self, _: ()) {}

    fn is_void(&self) -> bool {
        false
    }
}

impl Mark for Int {
    fn merge(&mut self, other: Int) {
        *self += other;
    }

    fn is_void(&self) -> bool {
        self.is_zero()
    }
}

/// A finite subset of Z^d, each point carrying a mark, stored in ascending
/// point order.
///
/// The derived order compares the sorted `(point, mark)` sequences
/// lexicographically, a proper prefix being smaller.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSet<W> {
    dim: usize,
    items: Vec<(Point, W)>,
}

pub type PointSet = LatticeSet<()>;
pub type WeightedPointSet = LatticeSet<Int>;

impl<W: Mark> LatticeSet<W> {
    pub fn empty(dim: usize) -> Self {
        LatticeSet {
            dim,
            items: Vec::new(),
        }
    }

    /// Sorts, merges the marks of repeated points and drops void marks.
    pub fn from_items(dim: usize, items: impl IntoIterator<Item = (Point, W)>) -> Result<Self> {
        let mut merged: BTreeMap<Point, W> = BTreeMap::new();
        for (p, w) in items {
            check_dim(dim, p.dim())?;
            match merged.get_mut(&p) {
                Some(slot) => slot.merge(w),
                None => {
                    merged.insert(p, w);
                }
            }
        }
        Ok(LatticeSet {
            dim,
            items: merged.into_iter().filter(|(_, w)| !w.is_void()).collect(),
        })
    }

    /// Items must already be sorted by point, distinct and non-void.
    pub(crate) fn from_sorted_unchecked(dim: usize, items: Vec<(Point, W)>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0].0 < w[1].0));
        LatticeSet { dim, items }
    }

    /// Builds from items that are distinct but in arbitrary order.
    pub(crate) fn from_distinct_unchecked(dim: usize, mut items: Vec<(Point, W)>) -> Self {
        items.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LatticeSet::from_sorted_unchecked(dim, items)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(Point, W)] {
        &self.items
    }

    pub fn into_items(self) -> Vec<(Point, W)> {
        self.items
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &Point> + '_ {
        self.items.iter().map(|(p, _)| p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.find(p).is_some()
    }

    pub fn mark(&self, p: &Point) -> Option<&W> {
        self.find(p).map(|i| &self.items[i].1)
    }

    fn find(&self, p: &Point) -> Option<usize> {
        self.items.binary_search_by(|(q, _)| q.cmp(p)).ok()
    }

    /// The underlying point set, marks dropped.
    pub fn support(&self) -> PointSet {
        LatticeSet::from_sorted_unchecked(
            self.dim,
            self.items.iter().map(|(p, _)| (p.clone(), ())).collect(),
        )
    }

    /// Keeps the items whose point satisfies `keep`.
    pub(crate) fn filter(&self, mut keep: impl FnMut(&Point) -> bool) -> Self {
        LatticeSet::from_sorted_unchecked(
            self.dim,
            self.items
                .iter()
                .filter(|(p, _)| keep(p))
                .cloned()
                .collect(),
        )
    }

    /// Applies an injective map to every point.
    pub(crate) fn map_injective(&self, mut f: impl FnMut(&Point) -> Point) -> Self {
        LatticeSet::from_distinct_unchecked(
            self.dim,
            self.items.iter().map(|(p, w)| (f(p), w.clone())).collect(),
        )
    }

    /// Largest bit length of any coordinate.
    pub fn max_bits(&self) -> u64 {
        self.points().map(Point::max_bits).max().unwrap_or(0)
    }

    /// Splits the set into congruence classes modulo 2.
    ///
    /// Classes come sorted by size, ties broken by their smallest point.
    pub fn partition_mod2(&self) -> Result<Vec<Self>> {
        if self.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut classes: BTreeMap<Vec<bool>, Vec<(Point, W)>> = BTreeMap::new();
        for item in &self.items {
            classes
                .entry(item.0.residue())
                .or_default()
                .push(item.clone());
        }
        let mut out: Vec<Self> = classes
            .into_values()
            .map(|items| LatticeSet::from_sorted_unchecked(self.dim, items))
            .collect();
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.items[0].0.cmp(&b.items[0].0))
        });
        Ok(out)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<PointSet> {
        LatticeSet::from_items(dim, points.into_iter().map(|p| (p, ())))
    }

    /// Builds from integer literals; the dimension is taken from the first
    /// point and the set must be nonempty.
    pub fn from_i64<const N: usize>(points: &[[i64; N]]) -> PointSet {
        PointSet::new(N, points.iter().map(|&p| Point::from(p))).expect("uniform dimension")
    }
}

impl WeightedPointSet {
    /// Every point with the same weight.
    pub fn uniform(set: &PointSet, weight: Int) -> WeightedPointSet {
        if weight.is_zero() {
            return LatticeSet::empty(set.dim());
        }
        LatticeSet::from_sorted_unchecked(
            set.dim(),
            set.points().map(|p| (p.clone(), weight.clone())).collect(),
        )
    }

    /// The same points with every weight negated.
    pub fn negated(&self) -> WeightedPointSet {
        LatticeSet::from_sorted_unchecked(
            self.dim,
            self.items.iter().map(|(p, w)| (p.clone(), -w)).collect(),
        )
    }
}

/// Total order on sets of equal dimension: sorted sequences compared
/// lexicographically, points first, then marks.
pub fn cmp_sets<W: Mark>(x: &LatticeSet<W>, y: &LatticeSet<W>) -> Ordering {
    debug_assert_eq!(x.dim, y.dim);
    x.items.cmp(&y.items)
}

impl<W: fmt::Debug> fmt::Debug for LatticeSet<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_set();
        for (p, w) in &self.items {
            if std::mem::size_of::<W>() == 0 {
                list.entry(p);
            } else {
                list.entry(&format_args!("{p:?}:{w:?}"));
            }
        }
        list.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted(items: &[([i64; 2], i64)]) -> WeightedPointSet {
        LatticeSet::from_items(
            2,
            items.iter().map(|&(p, w)| (Point::from(p), Int::from(w))),
        )
        .unwrap()
    }

    #[test]
    fn construction_dedups_and_sorts() {
        let s = PointSet::from_i64(&[[1, 0], [0, 5], [1, 0]]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.items()[0].0, Point::from([0, 5]));
        assert!(PointSet::new(2, vec![Point::from([1, 2, 3])]).is_err());
    }

    #[test]
    fn weights_sum_and_cancel() {
        let w = weighted(&[([0, 0], 2), ([1, 1], 3), ([0, 0], -2)]);
        assert_eq!(w.len(), 1);
        assert_eq!(w.mark(&Point::from([1, 1])), Some(&Int::from(3)));
    }

    #[test]
    fn set_order_examples() {
        let empty = PointSet::empty(1);
        let zero = PointSet::from_i64(&[[0]]);
        assert_eq!(cmp_sets(&empty, &zero), Ordering::Less);
        let a = PointSet::from_i64(&[[0, 0], [1, 0]]);
        let b = PointSet::from_i64(&[[0, 0], [0, 1]]);
        assert_eq!(cmp_sets(&a, &b), Ordering::Greater);
        let neg = weighted(&[([0, 0], -1)]);
        let pos = weighted(&[([0, 0], 1)]);
        assert_eq!(cmp_sets(&neg, &pos), Ordering::Less);
    }

    #[test]
    fn partition_examples() {
        let s = PointSet::from_i64(&[[0, 0], [2, 4], [6, 0]]);
        assert_eq!(s.partition_mod2().unwrap().len(), 1);
        let t = PointSet::from_i64(&[[0, 0], [1, 0]]);
        let parts = t.partition_mod2().unwrap();
        assert_eq!(
            parts,
            vec![PointSet::from_i64(&[[0, 0]]), PointSet::from_i64(&[[1, 0]])]
        );
        assert_eq!(PointSet::empty(2).partition_mod2(), Err(Error::EmptyInput));
    }

    #[test]
    fn partition_of_figure_set() {
        let s = PointSet::from_i64(&[
            [3, 0],
            [5, 0],
            [8, 2],
            [8, 5],
            [5, 8],
            [2, 7],
            [0, 4],
            [3, 2],
        ]);
        let parts = s.partition_mod2().unwrap();
        // residues computed coordinate by coordinate
        let mut expected: BTreeMap<Vec<bool>, Vec<[i64; 2]>> = BTreeMap::new();
        for p in [
            [3, 0],
            [5, 0],
            [8, 2],
            [8, 5],
            [5, 8],
            [2, 7],
            [0, 4],
            [3, 2],
        ] {
            expected
                .entry(vec![p[0] % 2 == 1, p[1] % 2 == 1])
                .or_default()
                .push(p);
        }
        assert_eq!(parts.len(), expected.len());
        for class in parts {
            let key = class.items()[0].0.residue();
            assert_eq!(class, PointSet::from_i64(&expected[&key]));
        }
    }
}
