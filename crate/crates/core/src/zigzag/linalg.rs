//! Dense Gaussian elimination over the rationals, for Hom-complex ranks.

use num_rational::BigRational;
use num_traits::Zero;

pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut col = 0;
    while col < ncols && rank < rows.len() {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let head = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &head;
            for c in col..ncols {
                let sub = &factor * &rows[rank][c];
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}
