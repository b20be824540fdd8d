//! Independent checks: random affinities and a brute-force equivalence test.
//!
//! The brute-force search uses its own rational arithmetic and shares no
//! code with the canonical form pipeline beyond the data types.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affinity::Affinity;
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::int::Int;
use crate::point::Point;
use crate::set::PointSet;

pub const BRUTE_FORCE_MAX_POINTS: usize = 10;
pub const BRUTE_FORCE_MAX_DIM: usize = 3;

/// Product of `steps` random elementary unimodular operations followed by a
/// random translation, all entries drawn from `[-max_shift, max_shift]`.
pub fn random_affinity(d: usize, seed: u64, steps: usize, max_shift: i64) -> Affinity {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_affinity_from(&mut rng, d, steps, max_shift)
}

pub fn random_affinity_from<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    steps: usize,
    max_shift: i64,
) -> Affinity {
    assert!(d >= 1, "dimension must be positive");
    let bound = max_shift.unsigned_abs() as i64;
    let mut a = IntMatrix::identity(d);
    for _ in 0..steps {
        let op = if d == 1 { 2 } else { rng.gen_range(0..3) };
        match op {
            0 => {
                let i = rng.gen_range(0..d);
                let j = (i + rng.gen_range(1..d)) % d;
                let c = Int::from(rng.gen_range(-bound..=bound));
                a.sub_row_multiple(i, j, &c);
            }
            1 => {
                let i = rng.gen_range(0..d);
                let j = (i + rng.gen_range(1..d)) % d;
                a.swap_rows(i, j);
            }
            _ => a.negate_row(rng.gen_range(0..d)),
        }
    }
    let b = (0..d)
        .map(|_| Int::from(rng.gen_range(-bound..=bound)))
        .collect();
    Affinity::new_unchecked(a, b)
}

type Q = BigRational;

fn q(v: &Int) -> Q {
    Q::from_integer(v.to_bigint())
}

/// Rank of a list of rational row vectors by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in &mut rows[r + 1..] {
            let f = &row[c] / &pivot[c];
            sub_scaled(&mut row[c..], &pivot[c..], &f);
        }
        r += 1;
    }
    r
}

/// `target -= f * source`, entrywise.
fn sub_scaled(target: &mut [Q], source: &[Q], f: &Q) {
    for (x, y) in target.iter_mut().zip(source) {
        *x -= f * y;
    }
}

/// Inverse of a square rational matrix, if it exists.
fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                sub_scaled(row, &pivot, &f);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in &mut a[c + 1..] {
            let f = &row[c] / &pivot[c];
            sub_scaled(&mut row[c..], &pivot[c..], &f);
        }
    }
    det
}

/// Decides equivalence of two small full-dimensional sets by trying every
/// image of a fixed frame, and returns the first affinity found in index
/// order.
pub fn brute_force_equivalent(l1: &PointSet, l2: &PointSet) -> Result<Option<Affinity>> {
    let d = l1.dim();
    if l2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: l2.dim(),
        });
    }
    if l1.len() != l2.len() {
        return Err(Error::Precondition("sets differ in size".into()));
    }
    if l1.len() > BRUTE_FORCE_MAX_POINTS || d > BRUTE_FORCE_MAX_DIM || d == 0 {
        return Err(Error::Precondition(format!(
            "brute force needs at most {BRUTE_FORCE_MAX_POINTS} points in dimension 1..={BRUTE_FORCE_MAX_DIM}"
        )));
    }
    let a: Vec<&Point> = l1.points().collect();
    let b: Vec<&Point> = l2.points().collect();
    let diffs = |pts: &[&Point]| -> Vec<Vec<Q>> {
        pts.iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .zip(pts[0].coords())
                    .map(|(x, y)| q(&(x - y)))
                    .collect()
            })
            .collect()
    };
    if a.is_empty() || rank(diffs(&a)) != d || rank(diffs(&b)) != d {
        return Err(Error::Precondition(
            "brute force needs full-dimensional sets".into(),
        ));
    }

    // greedy frame of l1 in sorted order
    let mut frame: Vec<usize> = vec![0];
    for i in 1..a.len() {
        let mut pts: Vec<&Point> = frame.iter().map(|&j| a[j]).collect();
        pts.push(a[i]);
        if rank(diffs(&pts)) == frame.len() {
            frame.push(i);
        }
        if frame.len() == d + 1 {
            break;
        }
    }
    // columns p_i - p_0, as a d x d matrix
    let p_mat: Vec<Vec<Q>> = (0..d)
        .map(|r| {
            (1..=d)
                .map(|c| q(&(&a[frame[c]][r] - &a[frame[0]][r])))
                .collect()
        })
        .collect();
    let p_inv = inverse(&p_mat).expect("frame is independent");
    let target: BTreeSet<&Point> = b.iter().copied().collect();

    let mut tuple = vec![0usize; d + 1];
    let mut found = None;
    search(b.len(), 0, &mut tuple, &mut |idx| {
        let q_mat: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                (1..=d)
                    .map(|c| q(&(&b[idx[c]][r] - &b[idx[0]][r])))
                    .collect()
            })
            .collect();
        let lin: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| (0..d).map(|k| &q_mat[r][k] * &p_inv[k][c]).sum())
                    .collect()
            })
            .collect();
        if lin.iter().flatten().any(|v| !v.is_integer()) || !determinant(&lin).abs().is_one() {
            return false;
        }
        let offset: Vec<Q> = (0..d)
            .map(|r| q(&b[idx[0]][r]) - (0..d).map(|c| &lin[r][c] * q(&a[frame[0]][c])).sum::<Q>())
            .collect();
        let to_int = |v: &Q| Int::from(v.to_integer());
        let m: Vec<Vec<BigInt>> = lin
            .iter()
            .map(|r| r.iter().map(Q::to_integer).collect())
            .collect();
        let off: Vec<BigInt> = offset.iter().map(Q::to_integer).collect();
        let maps = a.iter().all(|p| {
            let img: Vec<Int> = (0..d)
                .map(|r| {
                    let s: BigInt =
                        (0..d).map(|c| &m[r][c] * p[c].to_bigint()).sum::<BigInt>() + &off[r];
                    Int::from(s)
                })
                .collect();
            target.contains(&Point::new(img))
        });
        if !maps {
            return false;
        }
        let mat =
            IntMatrix::from_rows(lin.iter().map(|r| r.iter().map(to_int).collect()).collect())
                .expect("square");
        found = Some(Affinity::new(mat, offset.iter().map(to_int).collect()).expect("unimodular"));
        true
    });
    Ok(found)
}

/// Visits ordered tuples of distinct indices below `n` in lexicographic
/// order until `visit` returns true.
fn search(
    n: usize,
    depth: usize,
    tuple: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == tuple.len() {
        return visit(tuple);
    }
    for i in 0..n {
        if tuple[..depth].contains(&i) {
            continue;
        }
        tuple[depth] = i;
        if search(n, depth + 1, tuple, visit) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affinity::apply_affinity;

    #[test]
    fn zero_steps_give_identity() {
        assert!(random_affinity(3, 9, 0, 0).is_identity());
    }

    #[test]
    fn random_affinities_are_unimodular_and_reproducible() {
        for seed in 0..50 {
            let phi = random_affinity(1 + (seed as usize % 4), seed, 40, 5);
            assert!(phi.matrix().is_unimodular());
            assert_eq!(phi, random_affinity(1 + (seed as usize % 4), seed, 40, 5));
        }
    }

    #[test]
    fn figure_pair_is_found() {
        let first = PointSet::from_i64(&[
            [3, 0],
            [5, 0],
            [8, 2],
            [8, 5],
            [5, 8],
            [2, 7],
            [0, 4],
            [3, 2],
        ]);
        let second = PointSet::from_i64(&[
            [10, 0],
            [8, 0],
            [3, 2],
            [0, 5],
            [0, 8],
            [4, 7],
            [9, 4],
            [8, 2],
        ]);
        let w = brute_force_equivalent(&first, &second).unwrap().unwrap();
        assert_eq!(apply_affinity(&w, &first).unwrap(), second);
        assert!(brute_force_equivalent(&first, &first).unwrap().is_some());
    }

    #[test]
    fn stretched_triangle_is_not_equivalent() {
        let a = PointSet::from_i64(&[[0, 0], [1, 0], [0, 1]]);
        let b = PointSet::from_i64(&[[0, 0], [2, 0], [0, 1]]);
        assert_eq!(brute_force_equivalent(&a, &b).unwrap(), None);
    }

    #[test]
    fn preconditions_are_enforced() {
        let line = PointSet::from_i64(&[[0, 0], [1, 1], [2, 2]]);
        assert!(matches!(
            brute_force_equivalent(&line, &line),
            Err(Error::Precondition(_))
        ));
        let a = PointSet::from_i64(&[[0, 0], [1, 0], [0, 1]]);
        let b = PointSet::from_i64(&[[0, 0], [1, 0]]);
        assert!(brute_force_equivalent(&a, &b).is_err());
        let big = PointSet::new(1, (0..11).map(|i| Point::from([i]))).unwrap();
        assert!(brute_force_equivalent(&big, &big).is_err());
    }
}
