//! Integer and rational points, and frames.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{check_dim, Error, Result};
use crate::exactla::affine_rank;
use crate::int::Int;

/// A point of Z^d.
///
/// Points order lexicographically, first coordinate most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point(Vec<Int>);

impl Point {
    pub fn new(coords: Vec<Int>) -> Point {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Point {
        Point(vec![Int::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    /// Coordinate-wise parity, `true` for odd.
    pub fn residue(&self) -> Vec<bool> {
        self.0.iter().map(|c| !c.is_even()).collect()
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `(self - origin) / 2`, exact when the two points are congruent mod 2.
    pub(crate) fn halve_from(&self, origin: &Point) -> Point {
        let two = Int::from(2);
        Point(
            self.0
                .iter()
                .zip(&origin.0)
                .map(|(a, b)| (a - b).div_exact(&two))
                .collect(),
        )
    }

    /// `2 * self + origin`, the inverse of [`Point::halve_from`].
    pub(crate) fn double_onto(&self, origin: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&origin.0)
                .map(|(a, b)| a + a + b)
                .collect(),
        )
    }

    /// Largest bit length among the coordinates.
    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(Int::bits).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Point {
        Point(v.into_iter().map(Int::from).collect())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Point {
        Point(v.into_iter().map(Int::from).collect())
    }
}

impl Index<usize> for Point {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic comparison of two points of the same dimension.
pub fn cmp_points(p: &Point, q: &Point) -> Ordering {
    debug_assert_eq!(p.dim(), q.dim());
    p.cmp(q)
}

/// A point of Q^d, stored as an integer vector over a common positive
/// denominator in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    num: Vec<Int>,
    den: Int,
}

impl RationalPoint {
    /// Builds `num / den`. Panics if `den` is zero.
    pub fn new(num: Vec<Int>, den: Int) -> RationalPoint {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = den.abs();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return RationalPoint { num, den };
        }
        RationalPoint {
            num: num.iter().map(|c| c.div_exact(&g)).collect(),
            den: den.div_exact(&g),
        }
    }

    pub fn from_ratios(coords: &[BigRational]) -> RationalPoint {
        let den = coords.iter().fold(BigInt::from(1), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let num = coords
            .iter()
            .map(|c| Int::from(c.numer() * (&den / c.denom())))
            .collect();
        RationalPoint::new(num, Int::from(den))
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[Int] {
        &self.num
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    pub fn coord(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].to_bigint(), self.den.to_bigint())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_point(&self) -> Option<Point> {
        self.is_integral().then(|| Point(self.num.clone()))
    }

    /// `(self - origin) / 2`.
    pub(crate) fn halve_from(&self, origin: &Point) -> RationalPoint {
        let num = self
            .num
            .iter()
            .zip(origin.coords())
            .map(|(a, b)| a - &(b * &self.den))
            .collect();
        RationalPoint::new(num, &self.den * &Int::from(2))
    }
}

impl From<Point> for RationalPoint {
    fn from(p: Point) -> RationalPoint {
        RationalPoint {
            num: p.0,
            den: Int::one(),
        }
    }
}

impl From<&Point> for RationalPoint {
    fn from(p: &Point) -> RationalPoint {
        RationalPoint::from(p.clone())
    }
}

impl Ord for RationalPoint {
    fn cmp(&self, other: &RationalPoint) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        for (a, b) in self.num.iter().zip(&other.num) {
            match (a * &other.den).cmp(&(b * &self.den)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for RationalPoint {
    fn partial_cmp(&self, other: &RationalPoint) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.den.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(
                    f,
                    "{}",
                    BigRational::new(c.to_bigint(), self.den.to_bigint())
                )?;
            }
        }
        write!(f, ")")
    }
}

/// An ordered list of affinely independent rational points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    dim: usize,
    points: Vec<RationalPoint>,
}

impl Frame {
    pub fn empty(dim: usize) -> Frame {
        Frame {
            dim,
            points: Vec::new(),
        }
    }

    pub fn new(dim: usize, points: Vec<RationalPoint>) -> Result<Frame> {
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        if affine_rank(&points)? + 1 != points.len() as isize {
            return Err(Error::NotIndependent);
        }
        Ok(Frame { dim, points })
    }

    pub fn from_points(dim: usize, points: Vec<Point>) -> Result<Frame> {
        Frame::new(dim, points.into_iter().map(RationalPoint::from).collect())
    }

    /// Caller guarantees affine independence.
    pub(crate) fn new_unchecked(dim: usize, points: Vec<RationalPoint>) -> Frame {
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        Frame { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    /// The points as integer points, if they all are.
    pub fn integer_points(&self) -> Option<Vec<Point>> {
        self.points.iter().map(RationalPoint::to_point).collect()
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(num: &[i64], den: i64) -> RationalPoint {
        RationalPoint::new(num.iter().map(|&v| Int::from(v)).collect(), Int::from(den))
    }

    #[test]
    fn point_order_examples() {
        let p = |v: [i64; 2]| Point::from(v);
        assert_eq!(cmp_points(&p([0, 1]), &p([1, 0])), Ordering::Less);
        assert_eq!(cmp_points(&p([1, 0]), &p([1, 0])), Ordering::Equal);
        assert_eq!(cmp_points(&p([-3, 5]), &p([-3, 4])), Ordering::Greater);
    }

    #[test]
    fn rational_normalization() {
        assert_eq!(rp(&[2, 4], 4), rp(&[1, 2], 2));
        assert_eq!(rp(&[2, -4], -2), rp(&[-1, 2], 1));
        assert!(rp(&[3, 6], 3).is_integral());
        assert!(rp(&[1, 2], 2) < rp(&[1, 1], 1));
        assert!(rp(&[-1, 0], 3) < rp(&[0, 0], 1));
    }

    #[test]
    fn halving_round_trip() {
        let origin = Point::from([3, -1]);
        let p = Point::from([7, 5]);
        let h = p.halve_from(&origin);
        assert_eq!(h, Point::from([2, 3]));
        assert_eq!(h.double_onto(&origin), p);
        let q = rp(&[1, 0], 1).halve_from(&origin);
        assert_eq!(q, rp(&[-2, 1], 2));
    }

    #[test]
    fn frame_rejects_dependent_points() {
        let pts = vec![
            Point::from([0, 0]),
            Point::from([1, 1]),
            Point::from([2, 2]),
        ];
        assert_eq!(Frame::from_points(2, pts), Err(Error::NotIndependent));
        let dup = vec![Point::from([1, 1]), Point::from([1, 1])];
        assert_eq!(Frame::from_points(2, dup), Err(Error::NotIndependent));
        assert!(Frame::from_points(2, vec![Point::from([0, 0]), Point::from([1, 1])]).is_ok());
    }
}
