//! Rank and determinant of constant matrices by Gaussian elimination.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::ConstMatrix;
use alloc::vec::Vec;

struct Echelon {
    rank: usize,
    swaps: usize,
    pivots: Vec<FieldElem>,
}

/// Row echelon form in place, first nonzero pivot in each column.
///
/// Per pivot: one inversion, then for every lower row with a nonzero entry
/// in the pivot column one multiplication for the factor and two operations
/// per remaining column.
fn echelon(a: &mut ConstMatrix, ctx: &FieldCtx) -> Echelon {
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut swaps = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if piv != rank {
            a.swap_rows(piv, rank);
            swaps += 1;
        }
        let pv = a.get(rank, c);
        pivots.push(pv);
        if rank + 1 < rows {
            let inv = ctx.inv(pv).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let e = a.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let f = ctx.mul(e, inv);
                a.set(r, c, FieldElem::ZERO);
                for j in c + 1..cols {
                    let v = ctx.sub(a.get(r, j), ctx.mul(f, a.get(rank, j)));
                    a.set(r, j, v);
                }
            }
        }
        rank += 1;
    }
    Echelon { rank, swaps, pivots }
}

/// Rank over 𝔽_p.
pub fn rank(a: &ConstMatrix, ctx: &FieldCtx) -> usize {
    let mut w = a.clone();
    echelon(&mut w, ctx).rank
}

/// Determinant as the signed product of pivots.
pub fn determinant(a: &ConstMatrix, ctx: &FieldCtx) -> Result<FieldElem> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Ok(FieldElem::ONE);
    }
    let mut w = a.clone();
    let e = echelon(&mut w, ctx);
    if e.rank < a.rows() {
        return Ok(FieldElem::ZERO);
    }
    let product = e.pivots[1..].iter().fold(e.pivots[0], |acc, &v| ctx.mul(acc, v));
    Ok(if e.swaps % 2 == 1 { ctx.neg(product) } else { product })
}

/// Worst-case operation count of [`rank`] on a `rows × cols` matrix; add
/// `rows` for [`determinant`] (pivot product and sign).
pub fn elimination_op_bound(rows: usize, cols: usize) -> u64 {
    let steps = rows.min(cols);
    let mut total = 0u64;
    for k in 0..steps {
        let below = (rows - k - 1) as u64;
        let right = (cols - k - 1) as u64;
        total += 1 + below * (1 + 2 * right);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use proptest::prelude::*;

    fn k7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    #[test]
    fn rank_examples() {
        let k = k7();
        assert_eq!(rank(&ConstMatrix::identity(3), &k), 3);
        assert_eq!(rank(&ConstMatrix::zeros(2, 5), &k), 0);
        assert_eq!(rank(&ConstMatrix::from_u64s(&k, &[&[0, 0, 1], &[0, 1, 0]]), &k), 2);
        assert_eq!(rank(&ConstMatrix::from_u64s(&k, &[&[1, 2], &[2, 4]]), &k), 1);
        assert_eq!(rank(&ConstMatrix::zeros(0, 3), &k), 0);
    }

    #[test]
    fn determinant_examples() {
        let k = k7();
        assert_eq!(determinant(&ConstMatrix::identity(4), &k).unwrap(), FieldElem::ONE);
        assert_eq!(
            determinant(&ConstMatrix::from_u64s(&k, &[&[1, 1], &[0, 1]]), &k).unwrap(),
            FieldElem::ONE
        );
        assert_eq!(
            determinant(&ConstMatrix::from_u64s(&k, &[&[1, 1], &[0, 0]]), &k).unwrap(),
            FieldElem::ZERO
        );
        // swap: det [[0,1],[1,0]] = -1
        assert_eq!(
            determinant(&ConstMatrix::from_u64s(&k, &[&[0, 1], &[1, 0]]), &k).unwrap(),
            k.elem(6)
        );
        assert_eq!(
            determinant(&ConstMatrix::zeros(2, 3), &k),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    fn random_matrix(k: &FieldCtx, rng: &mut SeededRng, r: usize, c: usize) -> ConstMatrix {
        ConstMatrix::from_fn(r, c, |_, _| k.sample_uniform(rng, false))
    }

    /// Leibniz expansion, exponential but independent of elimination.
    fn det_leibniz(a: &ConstMatrix, k: &FieldCtx) -> FieldElem {
        fn rec(a: &ConstMatrix, k: &FieldCtx, row: usize, used: &mut [bool]) -> FieldElem {
            let m = a.rows();
            if row == m {
                return FieldElem::ONE;
            }
            let mut acc = FieldElem::ZERO;
            let mut sign_pos = true;
            for c in 0..m {
                if used[c] {
                    continue;
                }
                used[c] = true;
                let term = k.mul(a.get(row, c), rec(a, k, row + 1, used));
                used[c] = false;
                acc = if sign_pos { k.add(acc, term) } else { k.sub(acc, term) };
                sign_pos = !sign_pos;
            }
            acc
        }
        rec(a, k, 0, &mut std::vec![false; a.rows()])
    }

    #[test]
    fn determinant_matches_leibniz() {
        let k = FieldCtx::new(5).unwrap();
        let mut rng = SeededRng::new(3);
        for m in 1..=5 {
            for _ in 0..40 {
                let a = random_matrix(&k, &mut rng, m, m);
                assert_eq!(determinant(&a, &k).unwrap(), det_leibniz(&a, &k));
            }
        }
    }

    #[test]
    fn op_count_within_bound() {
        let k = FieldCtx::new(10007).unwrap();
        let mut rng = SeededRng::new(11);
        for (r, c) in [(1, 1), (3, 3), (4, 7), (7, 4), (16, 16), (16, 32)] {
            let a = random_matrix(&k, &mut rng, r, c);
            let (_, ops) = k.measure(|| rank(&a, &k));
            assert!(ops.total() <= elimination_op_bound(r, c), "{r}x{c}: {ops:?}");
            if r == c {
                let (_, ops) = k.measure(|| determinant(&a, &k).unwrap());
                assert!(ops.total() <= elimination_op_bound(r, c) + r as u64);
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative_and_rank_invariants(seed in 0u64..10_000, m in 1usize..5, n in 1usize..6) {
            let k = FieldCtx::new(5).unwrap();
            let mut rng = SeededRng::new(seed);
            let a = random_matrix(&k, &mut rng, m, m);
            let b = random_matrix(&k, &mut rng, m, m);
            let ab = a.mul(&b, &k).unwrap();
            prop_assert_eq!(
                determinant(&ab, &k).unwrap(),
                k.mul(determinant(&a, &k).unwrap(), determinant(&b, &k).unwrap())
            );
            let c = random_matrix(&k, &mut rng, m, n);
            prop_assert_eq!(rank(&c, &k), rank(&c.transpose(), &k));
            let mut perm = c.clone();
            perm.swap_rows(0, m - 1);
            prop_assert_eq!(rank(&perm, &k), rank(&c, &k));
            prop_assert_eq!(determinant(&a, &k).unwrap().is_zero(), rank(&a, &k) < m);
        }
    }
}
