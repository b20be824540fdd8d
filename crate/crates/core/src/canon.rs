//! Canonical forms of finite sets, with witnesses, and equivalence testing.

use crate::affinity::{apply_affinity, Affinity};
use crate::eqframes::{
    equivariant_frames2_with, equivariant_frames_ref_with, Argmin, FrameOptions, FrameStats,
};
use crate::error::{check_dim, Error, Result};
use crate::exactla::affine_rank_points;
use crate::point::{Frame, Point};
use crate::set::{LatticeSet, Mark, PointSet};

/// Which frame search feeds the final minimization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrameAlgorithm {
    #[default]
    Equivariant,
    Reference,
}

#[derive(Clone, Debug, Default)]
pub struct CanonOptions {
    pub algorithm: FrameAlgorithm,
    pub frames: FrameOptions,
}

#[derive(Clone, Debug)]
pub struct Canonical<W> {
    pub omega: LatticeSet<W>,
    /// Sends the input onto `omega`.
    pub psi: Affinity,
    /// Number of frames the minimization ran over.
    pub candidates: usize,
    pub stats: FrameStats,
}

/// Canonical form with witness and instrumentation. The empty set is its own
/// canonical form.
pub fn canonicalize<W: Mark>(set: &LatticeSet<W>, opts: &CanonOptions) -> Result<Canonical<W>> {
    let dim = set.dim();
    if set.is_empty() {
        return Ok(Canonical {
            omega: set.clone(),
            psi: Affinity::identity(dim),
            candidates: 0,
            stats: FrameStats::default(),
        });
    }
    let (frames, stats) = match opts.algorithm {
        FrameAlgorithm::Equivariant => {
            equivariant_frames2_with(set, &Frame::empty(dim), &opts.frames)?
        }
        FrameAlgorithm::Reference => equivariant_frames_ref_with(set, &opts.frames)?,
    };
    let rank = affine_rank_points(&set.points().cloned().collect::<Vec<Point>>()) as usize;
    let mut argmin = Argmin::new(set, rank, opts.frames.hnf);
    for f in frames.iter() {
        let tag = f
            .integer_points()
            .ok_or_else(|| Error::Internal("frame with non-integral points".into()))?;
        argmin.offer(f.points(), &[], || tag);
    }
    let best = argmin
        .into_best()
        .ok_or_else(|| Error::Internal("empty frame set".into()))?;
    Ok(Canonical {
        omega: LatticeSet::from_sorted_unchecked(dim, best.omega),
        psi: best.psi,
        candidates: frames.len(),
        stats,
    })
}

pub fn canonical_form(set: &PointSet) -> PointSet {
    canonicalize(set, &CanonOptions::default())
        .expect("canonical form of a well-formed set")
        .omega
}

pub fn canonical_form_with_witness(set: &PointSet) -> Result<(PointSet, Affinity)> {
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    let c = canonicalize(set, &CanonOptions::default())?;
    Ok((c.omega, c.psi))
}

/// An affinity sending `l1` onto `l2`, if one exists.
pub fn are_equivalent(l1: &PointSet, l2: &PointSet) -> Result<Option<Affinity>> {
    equivalence_witness(l1, l2, &CanonOptions::default())
}

/// As [`are_equivalent`] for marked sets; the affinity also preserves marks.
pub fn equivalence_witness<W: Mark>(
    l1: &LatticeSet<W>,
    l2: &LatticeSet<W>,
    opts: &CanonOptions,
) -> Result<Option<Affinity>> {
    check_dim(l1.dim(), l2.dim())?;
    if l1.len() != l2.len() {
        return Ok(None);
    }
    let c1 = canonicalize(l1, opts)?;
    let c2 = canonicalize(l2, opts)?;
    if c1.omega != c2.omega {
        return Ok(None);
    }
    let witness = c2.psi.invert().compose(&c1.psi)?;
    if apply_affinity(&witness, l1)? != *l2 {
        return Err(Error::Internal(
            "composed witness does not map the sets".into(),
        ));
    }
    Ok(Some(witness))
}
