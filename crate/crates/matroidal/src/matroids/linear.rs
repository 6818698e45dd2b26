//! Row-rank computation for linear matroids: Gaussian elimination over a
//! prime field by default, fraction-free elimination over the integers for
//! the exact mode (rank over the rationals equals rank over the integers).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearField {
    Prime(u64),
    /// Exact arithmetic: entries are integers, rank is taken over the rationals.
    Exact,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank of the given rows over GF(p).
pub fn rank_mod_p(rows: &[&[i64]], cols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x.rem_euclid(p as i64)) as u64).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = (m[i][c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let sub = (m[rank][j] as u128 * f as u128 % p as u128) as u64;
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of the given integer rows over the rationals (fraction-free).
pub fn rank_exact(rows: &[&[i64]], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != BigInt::from(0)) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..m.len() {
            if m[i][c] == BigInt::from(0) {
                continue;
            }
            let (a, b) = (m[rank][c].clone(), m[i][c].clone());
            for j in c..cols {
                let v = &m[i][j] * &a - &m[rank][j] * &b;
                m[i][j] = v;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_gf2_style_rows() {
        // {(1,0),(0,1),(1,1)} has rank 2 over any field of characteristic != 2 too
        let rows: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        assert_eq!(rank_mod_p(&refs, 2, 2), 2);
        assert_eq!(rank_mod_p(&refs, 2, DEFAULT_PRIME), 2);
        assert_eq!(rank_exact(&refs, 2), 2);
    }

    #[test]
    fn exact_and_modular_agree_on_random_small_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows_n = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let rows: Vec<Vec<i64>> =
                (0..rows_n).map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            assert_eq!(rank_exact(&refs, cols), rank_mod_p(&refs, cols, DEFAULT_PRIME));
        }
    }

    #[test]
    fn primality_check() {
        assert!(is_prime(2));
        assert!(is_prime(DEFAULT_PRIME));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
