//! Exact rank of a polynomial matrix over the fraction field, by
//! fraction-free (Bareiss) elimination. Deterministic: pivots are chosen at
//! the first nonzero entry scanning columns left to right, rows top down.

use crate::ring::{div_exact, Polynomial};

use super::ModuleMap;

/// Rank of the matrix of `f` over `Frac(F2[t1, ..., tr])`.
pub fn generic_rank(f: &ModuleMap) -> usize {
    let ring = f.ring().clone();
    let rows = f.num_rows();
    let cols = f.num_cols();
    let mut a: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| (0..cols).map(|j| f.entry(i, j).clone()).collect())
        .collect();

    let mut prev = Polynomial::one(&ring);
    let mut rank = 0;
    let steps = rows.min(cols);
    for step in 0..steps {
        // locate a pivot in the remaining submatrix
        let mut pivot: Option<(usize, usize)> = None;
        'search: for j in step..cols {
            for i in step..rows {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(step, pi);
        if pj != step {
            for row in &mut a {
                row.swap(step, pj);
            }
        }
        rank += 1;
        // Bareiss update: a[i][j] <- (a[s][s] a[i][j] + a[i][s] a[s][j]) / prev
        for i in (step + 1)..rows {
            for j in (step + 1)..cols {
                let num = &(&a[step][step] * &a[i][j]) + &(&a[i][step] * &a[step][j]);
                a[i][j] = if num.is_zero() {
                    num
                } else {
                    div_exact(&num, &prev).expect("Bareiss divisibility over a domain")
                };
            }
        }
        for i in (step + 1)..rows {
            a[i][step] = Polynomial::zero(&ring);
        }
        prev = a[step][step].clone();
    }
    rank
}
