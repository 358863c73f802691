//! Exact matrix ranks: fraction-free elimination over the integers (giving
//! the rank over the rationals) and Gaussian elimination over a prime field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over the rationals via Bareiss fraction-free elimination. No
/// floating point, all divisions exact.
pub fn rank_bigint(rows: &[Vec<BigInt>]) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let pivot = (rank..m).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        for i in rank + 1..m {
            for j in col + 1..n {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over the prime field `F_p`. Entries are taken mod `p`; `p` must be
/// an odd prime below 2^31.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    assert!(p > 1 && p < (1 << 31), "modulus out of range");
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(pivot) = (rank..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_inverse(a[rank][col], p);
        for j in col..n {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..m {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..n {
                    let sub = f * a[rank][j] % p;
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // Fermat
    mod_pow(x % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_small_integer_matrices() {
        assert_eq!(rank_bigint(&big(&[&[2, 0], &[1, 1], &[0, 2]])), 2);
        assert_eq!(rank_bigint(&big(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])), 3);
        assert_eq!(rank_bigint(&big(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_bigint(&[]), 0);
    }

    #[test]
    fn rank_mod_p_matches_rational_rank_on_unimodular_data() {
        let rows = [&[1u64, 2, 3][..], &[2, 4, 6][..], &[0, 1, 1][..]];
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        assert_eq!(rank_mod_p(&rows, 32003), 2);
    }

    #[test]
    fn rank_can_differ_in_small_characteristic() {
        // determinant 2: singular only mod 2
        let rows = vec![vec![1u64, 1], vec![1, 3]];
        assert_eq!(rank_mod_p(&rows, 2), 1);
        assert_eq!(rank_mod_p(&rows, 32003), 2);
    }
}
