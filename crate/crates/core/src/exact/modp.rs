//! Polynomial arithmetic over a prime field `F_p`, `p < 2^62`, and
//! Cantor-Zassenhaus factorization of square-free polynomials.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

/// Dense polynomial over `F_p`, ascending, no trailing zeros.
pub(crate) type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn trim(mut f: PolyP) -> PolyP {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn poly_sub(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| {
                    self.sub(
                        a.get(i).copied().unwrap_or(0),
                        b.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(out)
    }

    pub fn div_rem(self, a: &[u64], d: &[u64]) -> (PolyP, PolyP) {
        let dd = d.len() - 1;
        let inv = self.inv(d[dd]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = self.mul(r[top], inv);
            if c != 0 {
                for (j, &dc) in d.iter().enumerate() {
                    r[top - dd + j] = self.sub(r[top - dd + j], self.mul(c, dc));
                }
                q[top - dd] = c;
            }
            r.pop();
        }
        (Self::trim(q), Self::trim(r))
    }

    pub fn rem(self, a: &[u64], d: &[u64]) -> PolyP {
        self.div_rem(a, d).1
    }

    pub fn monic(self, f: &[u64]) -> PolyP {
        match f.last() {
            None => Vec::new(),
            Some(&lc) => {
                let inv = self.inv(lc);
                f.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(self, f: &[u64]) -> PolyP {
        Self::trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod m`.
    pub fn pow_mod(self, base: &[u64], e: &BigUint, m: &[u64]) -> PolyP {
        let mut result: PolyP = vec![1];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.poly_mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.poly_mul(&result, &b), m);
            }
        }
        self.rem(&result, m)
    }

    /// Irreducible monic factors of a monic square-free `f`.
    pub fn factor_squarefree<R: Rng>(self, f: &[u64], rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out
    }

    fn distinct_degree(self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let p_big = BigUint::from(self.p);
        let x: PolyP = vec![0, 1];
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.len() > 2 * d {
            h = self.pow_mod(&h, &p_big, &rest);
            let g = self.gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
        }
        out
    }

    fn equal_degree<R: Rng>(self, g: &[u64], d: usize, rng: &mut R, out: &mut Vec<PolyP>) {
        let deg = g.len() - 1;
        if deg == d {
            out.push(g.to_vec());
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: PolyP = Self::trim((0..deg).map(|_| rng.random_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.pow_mod(&a, &exp, g);
            let b = self.poly_sub(&b, &[1]);
            if b.is_empty() {
                continue;
            }
            let h = self.gcd(g, &b);
            if h.len() > 1 && h.len() < g.len() {
                let other = self.div_rem(g, &h).0;
                self.equal_degree(&h, d, rng, out);
                self.equal_degree(&other, d, rng, out);
                return;
            }
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let field = PrimeField { p: n };
    'witness: for &a in &SMALL {
        let mut x = field.pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = field.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
pub(crate) fn large_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .filter(|&n| n % 2 == 1 && is_prime_u64(n))
}

pub(crate) fn is_zero_poly(f: &[u64]) -> bool {
    f.iter().all(Zero::is_zero)
}
