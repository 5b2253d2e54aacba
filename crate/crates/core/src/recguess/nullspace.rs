//! Exact nullspaces of integer matrices.

use dashu_int::ops::{BitTest, DivRem, RemEuclid, UnsignedAbs};
use dashu_int::IBig;

use crate::exact::int_content;

/// A basis of the right nullspace of `rows` (each of length `ncols`), by
/// fraction-free Gauss-Jordan elimination. Every basis vector has coprime
/// integer entries. Vectors are ordered by their free column.
pub fn nullspace(mut rows: Vec<Vec<IBig>>, ncols: usize) -> Vec<Vec<IBig>> {
    let nrows = rows.len();
    let mut prev = IBig::ONE;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ncols {
        let r = pivots.len();
        if r == nrows {
            break;
        }
        // smallest nonzero entry keeps the growth down
        let Some(pr) = (r..nrows)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (&rows[i][col]).unsigned_abs().bit_len())
        else {
            continue;
        };
        rows.swap(r, pr);
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
        let piv = pivot_row[col].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[col].clone();
            for k in 0..ncols {
                if k == col {
                    continue;
                }
                let v = &piv * &row[k] - &factor * &pivot_row[k];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                row[k] = q;
            }
            row[col] = IBig::ZERO;
        }
        prev = piv;
        pivots.push(col);
    }

    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![IBig::ZERO; ncols];
        v[free] = prev.clone();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -rows[i][free].clone();
        }
        let g = int_content(&v);
        if !g.is_zero() {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
        basis.push(v);
    }
    basis
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

/// Rank of `rows` modulo a large prime. This never exceeds the rank over the
/// rationals, so a full column rank here proves the nullspace is trivial.
pub fn rank_mod_prime(rows: &[Vec<IBig>], ncols: usize) -> usize {
    let p = IBig::from(PRIME);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| u64::try_from(x.rem_euclid(&p)).expect("reduced below the prime"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, pr);
        let inv = powmod(m[rank][col], PRIME - 2);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col] == 0 {
                continue;
            }
            let f = mulmod(row[col], inv);
            for k in col..ncols {
                let sub = mulmod(f, pivot_row[k]);
                row[k] = (row[k] + PRIME - sub) % PRIME;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
