//! Affine span queries over Q, done in integer arithmetic.

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{check_dim, Error, Result};
use crate::int::Int;
use crate::point::{Frame, Point, RationalPoint};

use super::hnf::{hnf_with_transform, upper_adjugate};
use super::matrix::IntMatrix;

/// Precomputed solver for one frame `(q0, ..., qm)`.
///
/// With `delta` the common denominator of the frame and `r = delta*p - delta*q0`,
/// a point `p` lies in the span iff `null * r = 0`, and then its frame
/// coordinates are `left * r / det` with `det > 0`.
#[derive(Clone, Debug)]
pub(crate) struct FrameSolver {
    dim: usize,
    inner: Option<Solver>,
}

#[derive(Clone, Debug)]
struct Solver {
    delta: Int,
    base: Vec<Int>,
    null: IntMatrix,
    left: IntMatrix,
    det: Int,
}

/// Affine span grown one point at a time; answers membership only.
///
/// Difference vectors are kept in fraction-free echelon form with primitive
/// rows, each with zeros in the pivot columns of the rows before it.
#[derive(Clone, Debug)]
pub(crate) struct SpanBuilder {
    dim: usize,
    origin: Option<RationalPoint>,
    rows: Vec<(usize, Vec<Int>)>,
}

impl SpanBuilder {
    pub(crate) fn new(dim: usize) -> SpanBuilder {
        SpanBuilder {
            dim,
            origin: None,
            rows: Vec::new(),
        }
    }

    pub(crate) fn from_points<'a>(
        dim: usize,
        points: impl IntoIterator<Item = &'a RationalPoint>,
    ) -> SpanBuilder {
        let mut s = SpanBuilder::new(dim);
        for p in points {
            s.push_rational(p);
        }
        s
    }

    /// Number of independent points pushed.
    pub(crate) fn len(&self) -> usize {
        self.origin.as_ref().map_or(0, |_| self.rows.len() + 1)
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.dim && self.origin.is_some()
    }

    fn residual(&self, num: &[Int], den: &Int) -> Option<Vec<Int>> {
        let o = self.origin.as_ref()?;
        let (on, od) = (o.numerators(), o.denominator());
        let v = if den.is_one() && od.is_one() {
            num.iter().zip(on).map(|(a, b)| a - b).collect()
        } else {
            num.iter()
                .zip(on)
                .map(|(a, b)| &(a * od) - &(b * den))
                .collect()
        };
        Some(self.reduce(v))
    }

    fn reduce(&self, mut v: Vec<Int>) -> Vec<Int> {
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let (a, f) = (&row[*c], v[*c].clone());
            if a.is_one() {
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &(&f * r);
                    }
                }
            } else {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &(&*x * a) - &(&f * r);
                }
            }
        }
        v
    }

    fn contains_raw(&self, num: &[Int], den: &Int) -> bool {
        if den.is_one() {
            if let Some(hit) = self.contains_small(num) {
                return hit;
            }
        }
        match self.residual(num, den) {
            Some(v) => v.iter().all(Int::is_zero),
            None => false,
        }
    }

    /// Membership of an integer point in machine arithmetic; `None` when it
    /// does not fit.
    fn contains_small(&self, num: &[Int]) -> Option<bool> {
        const MAX: usize = 8;
        let Some(o) = &self.origin else {
            return Some(false);
        };
        if self.dim > MAX || !o.denominator().is_one() {
            return None;
        }
        let mut v = [0i128; MAX];
        for (k, (x, y)) in num.iter().zip(o.numerators()).enumerate() {
            v[k] = x.to_i128()?.checked_sub(y.to_i128()?)?;
        }
        let v = &mut v[..self.dim];
        for (c, row) in &self.rows {
            let f = v[*c];
            if f == 0 {
                continue;
            }
            let a = row[*c].to_i128()?;
            let g = Integer::gcd(&a, &f);
            let (a, f) = (a / g, f / g);
            for (x, r) in v.iter_mut().zip(row) {
                let r = r.to_i128()?;
                *x = x.checked_mul(a)?.checked_sub(f.checked_mul(r)?)?;
            }
        }
        Some(v.iter().all(|x| *x == 0))
    }

    /// Undoes the last [`SpanBuilder::push`] that enlarged the span.
    pub(crate) fn pop(&mut self) {
        if self.rows.pop().is_none() {
            self.origin = None;
        }
    }

    pub(crate) fn contains(&self, p: &Point) -> bool {
        self.contains_raw(p.coords(), &Int::one())
    }

    /// Adds `p` and returns whether it enlarged the span.
    pub(crate) fn push_rational(&mut self, p: &RationalPoint) -> bool {
        debug_assert_eq!(p.dim(), self.dim);
        let Some(mut v) = self.residual(p.numerators(), p.denominator()) else {
            self.origin = Some(p.clone());
            return true;
        };
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in v.iter_mut() {
                *x = x.div_exact(&g);
            }
        }
        self.rows.push((c, v));
        true
    }

    pub(crate) fn push(&mut self, p: &Point) -> bool {
        self.push_rational(&RationalPoint::from(p))
    }
}

impl FrameSolver {
    pub(crate) fn new(dim: usize, points: &[RationalPoint]) -> Result<FrameSolver> {
        for p in points {
            check_dim(dim, p.dim())?;
        }
        let Some(first) = points.first() else {
            return Ok(FrameSolver { dim, inner: None });
        };
        let mut delta = first.denominator().clone();
        for p in &points[1..] {
            let g = delta.gcd(p.denominator());
            delta = (&delta * p.denominator()).div_exact(&g);
        }
        let scaled: Vec<Vec<Int>> = points
            .iter()
            .map(|p| {
                let f = delta.div_exact(p.denominator());
                p.numerators().iter().map(|c| c * &f).collect()
            })
            .collect();
        let base = scaled[0].clone();
        let m = points.len() - 1;
        let columns: Vec<Vec<Int>> = scaled[1..]
            .iter()
            .map(|q| q.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        let res = hnf_with_transform(&IntMatrix::from_columns(dim, &columns));
        if res.rank < m {
            return Err(Error::NotIndependent);
        }
        // full column rank puts the pivots on the diagonal of the top block
        let mut top = IntMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                top[(i, j)] = res.h[(i, j)].clone();
            }
        }
        let (adj, det) = upper_adjugate(&top);
        let left = adj
            .mul(&res.u.row_block(0, m))
            .expect("shapes agree by construction");
        let null = res.u.row_block(m, dim);
        Ok(FrameSolver {
            dim,
            inner: Some(Solver {
                delta,
                base,
                null,
                left,
                det,
            }),
        })
    }

    pub(crate) fn from_frame(frame: &Frame) -> FrameSolver {
        FrameSolver::new(frame.dim(), frame.points()).expect("frames are affinely independent")
    }

    fn residual(s: &Solver, p: &Point) -> Vec<Int> {
        p.coords()
            .iter()
            .zip(&s.base)
            .map(|(c, b)| &s.delta * c - b)
            .collect()
    }

    fn residual_rational(s: &Solver, p: &RationalPoint) -> Vec<Int> {
        let e = p.denominator();
        p.numerators()
            .iter()
            .zip(&s.base)
            .map(|(c, b)| &s.delta * c - e * b)
            .collect()
    }

    fn annihilated(s: &Solver, r: &[Int]) -> bool {
        (0..s.null.rows()).all(|i| {
            s.null
                .row(i)
                .iter()
                .zip(r)
                .map(|(a, b)| a * b)
                .sum::<Int>()
                .is_zero()
        })
    }

    pub(crate) fn contains(&self, p: &Point) -> bool {
        debug_assert_eq!(p.dim(), self.dim);
        match &self.inner {
            None => false,
            Some(s) => Self::annihilated(s, &Self::residual(s, p)),
        }
    }

    pub(crate) fn contains_rational(&self, p: &RationalPoint) -> bool {
        match &self.inner {
            None => false,
            Some(s) => Self::annihilated(s, &Self::residual_rational(s, p)),
        }
    }

    /// Frame coordinates of `p` multiplied by a fixed positive constant.
    /// Only meaningful for points of the span; ordering is preserved.
    pub(crate) fn scaled_coords(&self, p: &Point) -> Vec<Int> {
        match &self.inner {
            None => Vec::new(),
            Some(s) => s.left.mul_vec(&Self::residual(s, p)),
        }
    }

    pub(crate) fn coords_rational(&self, p: &RationalPoint) -> Result<Vec<BigRational>> {
        let Some(s) = &self.inner else {
            return Err(Error::NotInSpan);
        };
        let r = Self::residual_rational(s, p);
        if !Self::annihilated(s, &r) {
            return Err(Error::NotInSpan);
        }
        let den = (&s.det * p.denominator()).to_bigint();
        Ok(s.left
            .mul_vec(&r)
            .iter()
            .map(|v| BigRational::new(v.to_bigint(), den.clone()))
            .collect())
    }
}

/// Dimension over Q of the affine span; `-1` for the empty list.
pub fn affine_rank(points: &[RationalPoint]) -> Result<isize> {
    let Some(first) = points.first() else {
        return Ok(-1);
    };
    let dim = first.dim();
    let basis = independent_subset(dim, points)?;
    Ok(basis.len() as isize - 1)
}

/// Affine rank of integer points.
pub fn affine_rank_points(points: &[Point]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let mut span = SpanBuilder::new(first.dim());
    for p in points {
        span.push(p);
        if span.is_full() {
            break;
        }
    }
    span.len() as isize - 1
}

/// Greedy affinely independent subset, in input order.
fn independent_subset(dim: usize, points: &[RationalPoint]) -> Result<Vec<RationalPoint>> {
    let mut span = SpanBuilder::new(dim);
    let mut chosen = Vec::new();
    for p in points {
        check_dim(dim, p.dim())?;
        if span.push_rational(p) {
            chosen.push(p.clone());
        }
    }
    Ok(chosen)
}

/// Whether `p` lies in the affine span of `frame`. The span of the empty
/// frame is empty.
pub fn in_affine_span(p: &RationalPoint, frame: &Frame) -> Result<bool> {
    check_dim(frame.dim(), p.dim())?;
    Ok(FrameSolver::from_frame(frame).contains_rational(p))
}

/// The unique `(c1, ..., cm)` with `p = q0 + sum ci (qi - q0)`.
pub fn coords_wrt_frame(p: &RationalPoint, frame: &Frame) -> Result<Vec<BigRational>> {
    check_dim(frame.dim(), p.dim())?;
    FrameSolver::from_frame(frame).coords_rational(p)
}
