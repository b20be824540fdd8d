//! Integer affinities `x -> Ax + b` with `det A = ±1`.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::exactla::{hnf_with_transform, IntMatrix};
use crate::int::Int;
use crate::point::{Frame, Point, RationalPoint};
use crate::set::{LatticeSet, Mark};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Affinity {
    a: IntMatrix,
    b: Vec<Int>,
}

impl Affinity {
    pub fn new(a: IntMatrix, b: Vec<Int>) -> Result<Affinity> {
        if a.rows() != a.cols() {
            return Err(Error::NotUnimodular);
        }
        check_dim(a.rows(), b.len())?;
        if !a.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(Affinity { a, b })
    }

    pub(crate) fn new_unchecked(a: IntMatrix, b: Vec<Int>) -> Affinity {
        debug_assert!(a.is_unimodular() && a.rows() == b.len());
        Affinity { a, b }
    }

    pub fn identity(dim: usize) -> Affinity {
        Affinity {
            a: IntMatrix::identity(dim),
            b: vec![Int::zero(); dim],
        }
    }

    pub fn translation(b: Vec<Int>) -> Affinity {
        Affinity {
            a: IntMatrix::identity(b.len()),
            b,
        }
    }

    pub fn linear(a: IntMatrix) -> Result<Affinity> {
        let d = a.rows();
        Affinity::new(a, vec![Int::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn offset(&self) -> &[Int] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == IntMatrix::identity(self.dim()) && self.b.iter().all(Int::is_zero)
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        debug_assert_eq!(p.dim(), self.dim());
        let mut out = self.a.mul_vec(p.coords());
        for (o, b) in out.iter_mut().zip(&self.b) {
            *o += b;
        }
        Point::new(out)
    }

    pub fn apply_rational(&self, p: &RationalPoint) -> RationalPoint {
        debug_assert_eq!(p.dim(), self.dim());
        let den = p.denominator();
        let mut out = self.a.mul_vec(p.numerators());
        for (o, b) in out.iter_mut().zip(&self.b) {
            *o += b * den;
        }
        RationalPoint::new(out, den.clone())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Affinity) -> Result<Affinity> {
        check_dim(self.dim(), inner.dim())?;
        let a = self.a.mul(&inner.a)?;
        let mut b = self.a.mul_vec(&inner.b);
        for (x, y) in b.iter_mut().zip(&self.b) {
            *x += y;
        }
        Ok(Affinity { a, b })
    }

    pub fn invert(&self) -> Affinity {
        // the Hermite form of a unimodular matrix is the identity, so the
        // transform is the inverse
        let res = hnf_with_transform(&self.a);
        debug_assert_eq!(res.h, IntMatrix::identity(self.dim()));
        let inv = res.u;
        let b = inv.mul_vec(&self.b).into_iter().map(|v| -v).collect();
        Affinity { a: inv, b }
    }
}

impl fmt::Debug for Affinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {:?}x + {:?}", self.a, self.b)
    }
}

/// Values an affinity can act on.
pub trait Transform: Sized {
    fn ambient_dim(&self) -> usize;
    fn transform(&self, phi: &Affinity) -> Self;
}

impl Transform for Point {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn transform(&self, phi: &Affinity) -> Point {
        phi.apply_point(self)
    }
}

impl Transform for RationalPoint {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn transform(&self, phi: &Affinity) -> RationalPoint {
        phi.apply_rational(self)
    }
}

impl Transform for Frame {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn transform(&self, phi: &Affinity) -> Frame {
        Frame::new_unchecked(
            self.dim(),
            self.points()
                .iter()
                .map(|p| phi.apply_rational(p))
                .collect(),
        )
    }
}

impl<W: Mark> Transform for LatticeSet<W> {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn transform(&self, phi: &Affinity) -> LatticeSet<W> {
        self.map_injective(|p| phi.apply_point(p))
    }
}

/// Maps every point of `x` by `phi`; marks ride along and frame order is kept.
pub fn apply_affinity<T: Transform>(phi: &Affinity, x: &T) -> Result<T> {
    check_dim(phi.dim(), x.ambient_dim())?;
    Ok(x.transform(phi))
}

pub fn compose(phi2: &Affinity, phi1: &Affinity) -> Result<Affinity> {
    phi2.compose(phi1)
}

pub fn invert(phi: &Affinity) -> Affinity {
    phi.invert()
}
