mod common;

use latcanon::exactla::{hnf_with_strategy, hnf_with_transform, is_row_hnf};
use latcanon::oracle::random_affinity;
use latcanon::{HnfStrategy, Int, IntMatrix};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Int> {
    prop_oneof![
        4 => (-9i64..=9).prop_map(Int::from),
        2 => any::<i64>().prop_map(Int::from),
        1 => any::<i128>().prop_map(Int::from),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(entry(), c), r)
            .prop_map(|rows| IntMatrix::from_rows(rows).unwrap())
    })
}

/// Rows repeated or combined so that the rank drops.
fn deficient_matrix() -> impl Strategy<Value = IntMatrix> {
    (matrix(3, 5), any::<u64>()).prop_map(|(m, seed)| {
        let mut rows = m.to_rows();
        let extra: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x * &Int::from((seed % 7) as i64 - 3))
                    .collect()
            })
            .collect();
        rows.extend(extra);
        IntMatrix::from_rows(rows).unwrap()
    })
}

fn check_contract(m: &IntMatrix, strategy: HnfStrategy) -> Result<IntMatrix, TestCaseError> {
    let r = hnf_with_strategy(m, strategy);
    prop_assert_eq!(r.u.mul(m).unwrap(), r.h.clone());
    prop_assert_eq!(r.u.determinant().abs(), Int::one());
    prop_assert_eq!((r.h.rows(), r.h.cols()), (m.rows(), m.cols()));
    prop_assert!(is_row_hnf(&r.h));
    prop_assert_eq!(
        r.rank,
        (0..r.h.rows()).filter(|&i| !r.h.is_zero_row(i)).count()
    );
    Ok(r.h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn transform_and_shape(m in matrix(6, 6)) {
        let forward = check_contract(&m, HnfStrategy::Forward)?;
        let smallest = check_contract(&m, HnfStrategy::SmallestPivot)?;
        prop_assert_eq!(forward, smallest);
    }

    #[test]
    fn rank_deficient_inputs(m in deficient_matrix()) {
        let forward = check_contract(&m, HnfStrategy::Forward)?;
        let smallest = check_contract(&m, HnfStrategy::SmallestPivot)?;
        prop_assert_eq!(forward, smallest);
    }

    #[test]
    fn invariant_under_unimodular_rows(m in matrix(6, 6), seed in any::<u64>(), steps in 0usize..=40) {
        let v = random_affinity(m.rows(), seed, steps, 3).matrix().clone();
        let moved = v.mul(&m).unwrap();
        prop_assert_eq!(hnf_with_transform(&moved).h, hnf_with_transform(&m).h);
    }
}

/// Searches every `U` with entries in `[-5, 5]` for the row Hermite form of
/// `[[1, 2], [3, 4]]` by the shape rules alone.
#[test]
fn small_case_matches_exhaustive_search() {
    let m = [[1i64, 2], [3, 4]];
    let mut found = Vec::new();
    for code in 0..11i64.pow(4) {
        let u: Vec<i64> = (0..4).map(|k| code / 11i64.pow(k) % 11 - 5).collect();
        if (u[0] * u[3] - u[1] * u[2]).abs() != 1 {
            continue;
        }
        let h = [
            [
                u[0] * m[0][0] + u[1] * m[1][0],
                u[0] * m[0][1] + u[1] * m[1][1],
            ],
            [
                u[2] * m[0][0] + u[3] * m[1][0],
                u[2] * m[0][1] + u[3] * m[1][1],
            ],
        ];
        let shaped = h[0][0] > 0 && h[1][0] == 0 && h[1][1] > 0 && (0..h[1][1]).contains(&h[0][1]);
        if shaped && !found.contains(&h) {
            found.push(h);
        }
    }
    assert_eq!(found.len(), 1);
    let h = found[0];
    let r = hnf_with_transform(&IntMatrix::from_i64(&[&m[0], &m[1]]));
    assert_eq!(r.h, IntMatrix::from_i64(&[&h[0], &h[1]]));
    assert_eq!(r.rank, 2);
}

#[test]
fn wide_and_tall_shapes() {
    let tall = IntMatrix::from_i64(&[&[2], &[4], &[6]]);
    let r = hnf_with_transform(&tall);
    assert_eq!(r.h, IntMatrix::from_i64(&[&[2], &[0], &[0]]));
    assert_eq!(r.rank, 1);

    let wide = IntMatrix::from_i64(&[&[0, 3, 5, 7]]);
    let r = hnf_with_transform(&wide);
    assert_eq!(r.h, wide);
    assert_eq!(r.u, IntMatrix::identity(1));
}
