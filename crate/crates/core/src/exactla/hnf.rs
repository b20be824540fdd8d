//! Row Hermite normal form with unimodular transform.
//!
//! Convention: `U * M = H` with `U` unimodular and `H` in row echelon form,
//! pivots strictly positive, entries below a pivot zero, entries above a
//! pivot reduced into `[0, pivot)`, zero rows last. This is the unique
//! representative of `M` under left multiplication by `GL(rows, Z)`.

use num_integer::Integer;

use crate::int::{ext_gcd_small, Int};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
}

/// Elimination order used below each pivot. The normal form `H` does not
/// depend on it; the transform `U` may, when `M` has dependent rows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HnfStrategy {
    /// Gcd-combine the pivot row with each lower row, top to bottom.
    #[default]
    Forward,
    /// Euclid on rows: repeatedly promote the row with the smallest nonzero
    /// entry to the pivot position and reduce the others by it.
    SmallestPivot,
}

pub fn hnf_with_transform(m: &IntMatrix) -> HnfResult {
    hnf_with_strategy(m, HnfStrategy::Forward)
}

pub fn hnf_with_strategy(m: &IntMatrix, strategy: HnfStrategy) -> HnfResult {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return HnfResult {
            h: m.clone(),
            u: IntMatrix::identity(rows),
            rank: 0,
        };
    }
    if strategy == HnfStrategy::Forward {
        if let Some(res) = forward_small(m) {
            return res;
        }
    }
    let mut res = HnfResult {
        h: m.clone(),
        u: IntMatrix::identity(rows),
        rank: 0,
    };
    eliminate_from(&mut res, 0, strategy);
    res
}

/// The normal form of `[M | column]` given the normal form of `M`. The
/// elimination treats columns left to right, so the work done on `M` carries
/// over unchanged.
pub(crate) fn hnf_append_column(
    prefix: &HnfResult,
    column: &[Int],
    strategy: HnfStrategy,
) -> HnfResult {
    let rows = prefix.h.rows();
    let cols = prefix.h.cols();
    debug_assert_eq!(column.len(), rows);
    let image = prefix.u.mul_vec(column);
    let mut h = IntMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            h[(i, j)] = prefix.h[(i, j)].clone();
        }
        h[(i, cols)] = image[i].clone();
    }
    let mut res = HnfResult {
        h,
        u: prefix.u.clone(),
        rank: prefix.rank,
    };
    eliminate_from(&mut res, cols, strategy);
    res
}

/// Runs the elimination on columns `start..`, with `res.rank` pivots already
/// placed in the earlier columns.
fn eliminate_from(res: &mut HnfResult, start: usize, strategy: HnfStrategy) {
    let HnfResult { h, u, rank } = res;
    let rows = h.rows();
    let mut r = *rank;
    for c in start..h.cols() {
        if r == rows {
            break;
        }
        match strategy {
            HnfStrategy::Forward => eliminate_forward(h, u, r, c),
            HnfStrategy::SmallestPivot => eliminate_smallest(h, u, r, c),
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    *rank = r;
}

fn eliminate_forward(h: &mut IntMatrix, u: &mut IntMatrix, r: usize, c: usize) {
    for i in r + 1..h.rows() {
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_zero() {
            h.swap_rows(r, i);
            u.swap_rows(r, i);
            continue;
        }
        let a = h[(r, c)].clone();
        let b = h[(i, c)].clone();
        let (g, s, t) = a.ext_gcd(&b);
        let x = a.div_exact(&g);
        let y = -b.div_exact(&g);
        // [[s, t], [-b/g, a/g]] has determinant 1
        h.combine_rows(r, i, &s, &t, &y, &x);
        u.combine_rows(r, i, &s, &t, &y, &x);
    }
}

/// The forward elimination on `[M | I]` in machine integers, step for step
/// the same as the general path; `None` on overflow.
fn forward_small(m: &IntMatrix) -> Option<HnfResult> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            data.push(m[(i, j)].to_i128()?);
        }
    }
    let (a, r) = forward_words(rows, cols, &data)?;
    let w = cols + rows;
    let mut h = IntMatrix::zeros(rows, cols);
    let mut u = IntMatrix::zeros(rows, rows);
    for i in 0..rows {
        for j in 0..cols {
            h[(i, j)] = Int::from(a[i * w + j]);
        }
        for j in 0..rows {
            u[(i, j)] = Int::from(a[i * w + cols + j]);
        }
    }
    Some(HnfResult { h, u, rank: r })
}

/// Forward elimination of the row-major `rows x cols` matrix `m`, returning
/// `[H | U]` row-major and the rank.
pub(crate) fn forward_words(rows: usize, cols: usize, m: &[i128]) -> Option<(Vec<i128>, usize)> {
    let w = cols + rows;
    let mut a = vec![0i128; rows * w];
    for i in 0..rows {
        a[i * w..i * w + cols].copy_from_slice(&m[i * cols..(i + 1) * cols]);
        a[i * w + cols + i] = 1;
    }
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            let b = a[i * w + c];
            if b == 0 {
                continue;
            }
            let p = a[r * w + c];
            if p == 0 {
                for k in 0..w {
                    a.swap(r * w + k, i * w + k);
                }
                continue;
            }
            let (g, s, t) = ext_gcd_small(p, b)?;
            let (x, y) = (p / g, (b / g).checked_neg()?);
            for k in 0..w {
                let (u, v) = (a[r * w + k], a[i * w + k]);
                a[r * w + k] = s.checked_mul(u)?.checked_add(t.checked_mul(v)?)?;
                a[i * w + k] = y.checked_mul(u)?.checked_add(x.checked_mul(v)?)?;
            }
        }
        let p = a[r * w + c];
        if p == 0 {
            continue;
        }
        if p < 0 {
            for k in 0..w {
                a[r * w + k] = a[r * w + k].checked_neg()?;
            }
        }
        let p = a[r * w + c];
        for i in 0..r {
            let q = Integer::div_floor(&a[i * w + c], &p);
            if q != 0 {
                for k in 0..w {
                    a[i * w + k] = a[i * w + k].checked_sub(q.checked_mul(a[r * w + k])?)?;
                }
            }
        }
        r += 1;
    }
    Some((a, r))
}

fn eliminate_smallest(h: &mut IntMatrix, u: &mut IntMatrix, r: usize, c: usize) {
    loop {
        let best = (r..h.rows())
            .filter(|&i| !h[(i, c)].is_zero())
            .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()).then(j.cmp(&i)));
        let Some(best) = best else { return };
        h.swap_rows(r, best);
        u.swap_rows(r, best);
        let pivot = h[(r, c)].clone();
        let mut done = true;
        for i in r + 1..h.rows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            let q = h[(i, c)].div_floor(&pivot);
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
            if !h[(i, c)].is_zero() {
                done = false;
            }
        }
        if done {
            return;
        }
    }
}

/// Checks the row-HNF shape convention exactly.
pub fn is_row_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&c| !h[(r, c)].is_zero()) else {
            seen_zero_row = true;
            continue;
        };
        if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
            return false;
        }
        let pivot = &h[(r, p)];
        if !pivot.is_positive() {
            return false;
        }
        for i in 0..h.rows() {
            let v = &h[(i, p)];
            let ok = match i.cmp(&r) {
                std::cmp::Ordering::Less => !v.is_negative() && v < pivot,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Greater => v.is_zero(),
            };
            if !ok {
                return false;
            }
        }
        last_pivot = Some(p);
    }
    true
}

/// `det(H) * H^{-1}` for a square upper triangular `H` with positive diagonal,
/// together with `det(H)`. Every division in the back substitution is exact
/// because the result is the adjugate.
pub(crate) fn upper_adjugate(h: &IntMatrix) -> (IntMatrix, Int) {
    let n = h.rows();
    debug_assert_eq!(n, h.cols());
    let det: Int = (0..n).fold(Int::one(), |acc, i| acc * &h[(i, i)]);
    let mut adj = IntMatrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = if i == col { det.clone() } else { Int::zero() };
            for j in i + 1..n {
                acc -= &h[(i, j)] * &adj[(j, col)];
            }
            adj[(i, col)] = acc.div_exact(&h[(i, i)]);
        }
    }
    (adj, det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(2);
        let res = hnf_with_transform(&m);
        assert_eq!(res.h, m);
        assert_eq!(res.u, m);
        assert_eq!(res.rank, 2);
    }

    #[test]
    fn single_column_uses_euclid_cofactors() {
        let m = IntMatrix::from_i64(&[&[2], &[4]]);
        let res = hnf_with_transform(&m);
        assert_eq!(res.h, IntMatrix::from_i64(&[&[2], &[0]]));
        assert_eq!(res.u, IntMatrix::from_i64(&[&[1, 0], &[-2, 1]]));
        assert_eq!(res.u.determinant(), Int::one());
    }

    #[test]
    fn empty_matrices_are_degenerate() {
        let m = IntMatrix::zeros(3, 0);
        let res = hnf_with_transform(&m);
        assert_eq!(res.h, m);
        assert_eq!(res.u, IntMatrix::identity(3));
        assert_eq!(res.rank, 0);
    }

    #[test]
    fn shape_checker_rejects_violations() {
        assert!(is_row_hnf(&IntMatrix::from_i64(&[&[2, 1], &[0, 3]])));
        assert!(!is_row_hnf(&IntMatrix::from_i64(&[&[2, 3], &[0, 3]])));
        assert!(!is_row_hnf(&IntMatrix::from_i64(&[&[-2, 0], &[0, 3]])));
        assert!(!is_row_hnf(&IntMatrix::from_i64(&[&[0, 0], &[0, 3]])));
        assert!(!is_row_hnf(&IntMatrix::from_i64(&[&[1, 0], &[1, 3]])));
        assert!(is_row_hnf(&IntMatrix::from_i64(&[&[0, 5], &[0, 0]])));
    }

    #[test]
    fn adjugate_of_triangular() {
        let h = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        let (adj, det) = upper_adjugate(&h);
        assert_eq!(det, Int::from(6));
        assert_eq!(adj.mul(&h).unwrap(), {
            let mut d = IntMatrix::identity(2);
            d[(0, 0)] = Int::from(6);
            d[(1, 1)] = Int::from(6);
            d
        });
    }
}
