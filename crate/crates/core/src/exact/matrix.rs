use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPoly;

/// Characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier.
///
/// Every division by `k` is exact over the integers, so the recurrence runs
/// entirely in `BigInt`.
pub fn char_poly(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "char_poly needs a square matrix"
    );
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();

    // coeffs[i] is the coefficient of x^i
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    IntPoly::new(coeffs)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = &a[i][k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * &bk[j];
            }
        }
    }
    out
}

/// Rank by fraction-free (Bareiss) elimination; consumes its input.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix: rows are scaled to integers, then
/// eliminated fraction-free.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let scaled = m
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    integer_rank(scaled)
}
