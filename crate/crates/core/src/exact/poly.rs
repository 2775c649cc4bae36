use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `x - root`.
    pub fn linear(root: i64) -> Self {
        Self::from_i64s(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates `q^deg * p(num/q)`, which vanishes iff `num/q` is a root.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let d = self.coeffs.len();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for i in (0..d).rev() {
            acc += &self.coeffs[i] * &den_pow * num.pow((i) as u32);
            den_pow *= den;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rat_primitive(p: &RatPoly) -> IntPoly {
        let lcm = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            p.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Exact quotient `self / d` when `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().div_rem(&d.to_rat());
        if !r.is_zero() || q.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPoly::new(
            q.coeffs.iter().map(|c| c.to_integer()).collect(),
        ))
    }

    /// Square-free decomposition of the primitive part: pairs `(a_i, i)` with
    /// `primitive(self) = prod a_i^i` and every `a_i` square-free, primitive,
    /// pairwise coprime. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.to_rat().monic();
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut c = f.div_rem(&b).0;
        let mut d = df.div_rem(&b).0.sub(&c.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((IntPoly::from_rat_primitive(&a), i));
            }
            c = c.div_rem(&a).0;
            d = d.div_rem(&a).0.sub(&c.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> IntPoly {
        self.squarefree_decomposition()
            .iter()
            .fold(IntPoly::one(), |acc, (a, _)| acc.mul(a))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

/// Primitive gcd over the rationals with positive leading coefficient.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let g = p.to_rat().gcd(&q.to_rat());
    Ok(IntPoly::from_rat_primitive(&g))
}

/// Polynomial with rational coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new(
            (0..len)
                .map(|i| {
                    let a = self
                        .coeffs
                        .get(i)
                        .cloned()
                        .unwrap_or_else(BigRational::zero);
                    let b = o.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        if s.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> RatPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[top - dd + j] -= t;
                }
                q[top - dd] = c;
            }
            r.pop();
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        if self.degree() < d.degree() {
            return self.clone();
        }
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s * self = g mod m`.
    pub fn ext_gcd_left(&self, m: &RatPoly) -> (RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), m.clone());
        let (mut s0, mut s1) = (RatPoly::constant(BigRational::one()), RatPoly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        match r0.coeffs.last().cloned() {
            None => (r0, s0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv))
            }
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

/// Ascending-order rendering: `a0 + a1*x + a2*x^2`, zero terms skipped.
fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<String>) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (i, mag) {
            (0, m) => f.write_str(m)?,
            (_, "1") => {}
            (_, m) => write!(f, "{m}*")?,
        }
        match i {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        // x(x-3)^2 and x^2 - 4x + 3
        let a = p(&[0, 9, -6, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(&[-3, 1]));
        // x(x-1)(x-3) and x^2 - 3x + 1
        let c = p(&[0, 3, -4, 1]);
        let d = p(&[1, -3, 1]);
        assert_eq!(poly_gcd(&c, &d).unwrap(), IntPoly::one());
        // gcd(p, p) is the primitive part
        let e = p(&[-4, 0, 2]);
        assert_eq!(poly_gcd(&e, &e).unwrap(), p(&[-2, 0, 1]));
        assert_eq!(
            poly_gcd(&IntPoly::zero(), &IntPoly::zero()),
            Err(Error::BothZero)
        );
        assert_eq!(
            poly_gcd(&IntPoly::zero(), &p(&[2, -4])).unwrap(),
            p(&[-1, 2])
        );
    }

    #[test]
    fn squarefree() {
        // x (x-3)^2
        let a = p(&[0, 9, -6, 1]);
        let dec = a.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-3, 1]), 2)]);
        assert_eq!(a.squarefree_part(), p(&[0, -3, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[0, 9, -6, 1]).to_string(), "9*x - 6*x^2 + x^3");
        assert_eq!(p(&[-3, 1]).to_string(), "-3 + x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn exact_division() {
        let a = p(&[0, 9, -6, 1]);
        assert_eq!(a.div_exact(&p(&[-3, 1])), Some(p(&[0, -3, 1])));
        assert_eq!(a.div_exact(&p(&[-2, 1])), None);
        assert_eq!(p(&[1, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn homogeneous_root_test() {
        // 2x - 1 has root 1/2
        let f = p(&[-1, 2]);
        assert!(f
            .eval_homogeneous(&BigInt::from(1), &BigInt::from(2))
            .is_zero());
        assert!(!f
            .eval_homogeneous(&BigInt::from(1), &BigInt::from(3))
            .is_zero());
    }
}
