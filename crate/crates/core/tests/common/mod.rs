//! Independent oracles shared by the integration tests. Nothing here goes
//! through the crate's matrix, continuant, sum or search code paths.

#![allow(dead_code)]

use std::collections::HashSet;

use quiddity::{RingId, RingValue};

type M = [[RingValue; 2]; 2];

fn mat_mul(a: &M, b: &M) -> M {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `E(a_n) ... E(a_1)` built factor by factor, multiplied left to right.
pub fn naive_word(ring: RingId, entries: &[RingValue]) -> M {
    let factors: Vec<M> = entries
        .iter()
        .rev()
        .map(|x| [[x.clone(), ring.from_i64(-1)], [ring.one(), ring.zero()]])
        .collect();
    let id = [[ring.one(), ring.zero()], [ring.zero(), ring.one()]];
    factors.iter().fold(id, |acc, f| mat_mul(&acc, f))
}

/// `Some(1)` for `Id`, `Some(-1)` for `-Id` (checked in that order).
pub fn naive_sign(ring: RingId, entries: &[RingValue]) -> Option<i64> {
    let m = naive_word(ring, entries);
    [1i64, -1].into_iter().find(|&s| {
        let d = ring.from_i64(s);
        m[0][0] == d && m[1][1] == d && m[0][1].is_zero() && m[1][0].is_zero()
    })
}

/// Integer determinant by cofactor expansion along the first row.
pub fn det_oracle(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_oracle(&minor)
        })
        .sum()
}

/// Determinant of the tridiagonal matrix with `a` on the diagonal and 1 on
/// both off-diagonals.
pub fn continuant_oracle(a: &[i64]) -> i64 {
    let n = a.len();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        a[i]
                    } else if i.abs_diff(j) == 1 {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    det_oracle(&m)
}

/// All tuples of length `n` over `values`, in lexicographic order of indices.
pub fn all_tuples(values: &[RingValue], n: usize) -> Vec<Vec<RingValue>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Generate-and-test: every `n`-tuple over `values` whose naive product is `±Id`.
pub fn brute_force_quiddities(ring: RingId, values: &[RingValue], n: usize) -> Vec<Vec<RingValue>> {
    all_tuples(values, n)
        .into_iter()
        .filter(|t| naive_sign(ring, t).is_some())
        .collect()
}

pub fn oplus(a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![&a[0] + &b[m - 1]];
    out.extend(a[1..n - 1].iter().cloned());
    out.push(&a[n - 1] + &b[0]);
    out.extend(b[1..m - 1].iter().cloned());
    out
}

pub fn dihedral_images(t: &[RingValue]) -> Vec<Vec<RingValue>> {
    let n = t.len();
    let mut rev = t.to_vec();
    rev.reverse();
    let mut out = Vec::new();
    for base in [t.to_vec(), rev] {
        for r in 0..n {
            out.push((0..n).map(|j| base[(j + r) % n].clone()).collect());
        }
    }
    out
}

/// Every tuple of size at most `n_max` that is equivalent to `a ⊕ b` with
/// `a`, `b` quiddities of size >= 3 whose entries come from `operand_values`.
pub fn brute_force_reducible(
    ring: RingId,
    operand_values: &[RingValue],
    n_max: usize,
) -> HashSet<Vec<RingValue>> {
    let by_size: Vec<Vec<Vec<RingValue>>> = (0..n_max)
        .map(|m| {
            if m >= 3 {
                brute_force_quiddities(ring, operand_values, m)
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut out = HashSet::new();
    for m in 3..n_max {
        for l in 3..=(n_max + 2 - m) {
            for a in &by_size[m] {
                for b in &by_size[l] {
                    for img in dihedral_images(&oplus(a, b)) {
                        out.insert(img);
                    }
                }
            }
        }
    }
    out
}

pub fn int_range(lo: i64, hi: i64) -> Vec<RingValue> {
    (lo..=hi).map(RingValue::int).collect()
}
