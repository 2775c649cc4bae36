//! Factorization over the rationals.
//!
//! Square-free parts are split modulo a prime below `2^62` (Cantor-Zassenhaus)
//! and the modular factors are recombined by exact trial division over the
//! integers. The prime is large enough that no Hensel lifting is needed for
//! the coefficient sizes that Laplacian polynomials reach; inputs whose
//! factor-coefficient bound exceeds it are rejected.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{is_zero_poly, large_primes, PolyP, PrimeField};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Largest degree accepted by [`irreducible_factors`].
pub const MAX_FACTOR_DEGREE: usize = 16;

const PRIME_POOL: usize = 8;

fn prime_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| large_primes().take(PRIME_POOL).collect())
}

/// Irreducible factors of `p` over Q, repeated by multiplicity, each primitive
/// with positive leading coefficient. Their product equals `p` up to a
/// rational constant. Constants factor to the empty list.
pub fn irreducible_factors(p: &IntPoly) -> Result<Vec<IntPoly>> {
    let degree = p.degree().unwrap_or(0);
    if degree > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part)? {
            out.extend(std::iter::repeat_n(f, mult));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// Distinct irreducible factors of `p`, sorted. The degree cap applies to the
/// square-free part only, so high-multiplicity inputs are accepted.
pub fn distinct_irreducible_factors(p: &IntPoly) -> Result<Vec<IntPoly>> {
    let sf = p.squarefree_part();
    let degree = sf.degree().unwrap_or(0);
    if degree > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out = factor_squarefree(&sf)?;
    sort_factors(&mut out);
    Ok(out)
}

/// Linear factors first, ordered by root; then by degree and coefficients.
fn sort_factors(v: &mut [IntPoly]) {
    v.sort_by(|a, b| {
        let (da, db) = (a.degree(), b.degree());
        da.cmp(&db).then_with(|| {
            if da == Some(1) {
                // root = -c0/c1, c1 > 0
                let (a0, a1) = (&a.coeffs()[0], &a.coeffs()[1]);
                let (b0, b1) = (&b.coeffs()[0], &b.coeffs()[1]);
                (-(a0 * b1)).cmp(&-(b0 * a1))
            } else {
                a.coeffs().cmp(b.coeffs())
            }
        })
    });
}

/// `f` must be square-free and primitive.
fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let f = f.primitive();
    match f.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![f]),
        Some(2) => Ok(factor_quadratic(&f)),
        Some(_) => factor_modular(&f),
    }
}

fn factor_quadratic(f: &IntPoly) -> Vec<IntPoly> {
    let (c, b, a) = (&f.coeffs()[0], &f.coeffs()[1], &f.coeffs()[2]);
    let disc: BigInt = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return vec![f.clone()];
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return vec![f.clone()];
    }
    // roots (-b ± s) / 2a
    let two_a: BigInt = BigInt::from(2) * a;
    [-b + &root, -b - &root]
        .into_iter()
        .map(|num| IntPoly::new(vec![-num, two_a.clone()]).primitive())
        .collect()
}

fn to_modp(f: &IntPoly, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    PrimeField::trim(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r.sign() == Sign::Minus { r + &pb } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
    )
}

fn from_modp_symmetric(g: &[u64], p: u64) -> IntPoly {
    let half = p / 2;
    IntPoly::new(
        g.iter()
            .map(|&c| {
                if c > half {
                    BigInt::from(c) - BigInt::from(p)
                } else {
                    BigInt::from(c)
                }
            })
            .collect(),
    )
}

/// `2^deg * ceil(||f||_2) * |lc|`: bounds every coefficient of `lc * g` for
/// any factor `g` of `f`.
fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let deg = f.degree().unwrap_or(0);
    (BigInt::one() << deg) * norm * f.leading().unwrap().abs()
}

fn choose_prime(f: &IntPoly) -> Result<(PrimeField, PolyP)> {
    let lc = f.leading().unwrap();
    for &p in prime_pool() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField { p };
        let fp = field.monic(&to_modp(f, p));
        let g = field.gcd(&fp, &field.derivative(&fp));
        if g.len() == 1 {
            return Ok((field, fp));
        }
    }
    Err(Error::CoefficientBound)
}

fn factor_modular(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let (field, fp) = choose_prime(f)?;
    if BigInt::from(2) * factor_coefficient_bound(f) >= BigInt::from(field.p) {
        return Err(Error::CoefficientBound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut local = field.factor_squarefree(&fp, &mut rng);
    local.sort();
    if local.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    Ok(recombine(f.clone(), local, field))
}

/// Zassenhaus recombination: try subsets of modular factors in increasing
/// size, accepting those whose lifted product divides the remaining part.
fn recombine(mut f: IntPoly, mut local: Vec<PolyP>, field: PrimeField) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= local.len() {
        let mut hit = None;
        for subset in Subsets::new(local.len(), size) {
            let lc = to_modp(&IntPoly::new(vec![f.leading().unwrap().clone()]), field.p);
            let prod = subset
                .iter()
                .fold(lc, |acc, &i| field.poly_mul(&acc, &local[i]));
            if is_zero_poly(&prod) {
                continue;
            }
            let cand = from_modp_symmetric(&prod, field.p).primitive();
            if let Some(q) = f.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q.primitive();
                for &i in subset.iter().rev() {
                    local.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(f);
    found
}

/// Index subsets of `{0..n}` with `k` elements, lexicographic.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
