//! Arithmetic in `Q[x]/(f)` for irreducible `f`, and generic exact linear
//! algebra over any [`Scalar`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{IntPoly, RatPoly};
use crate::error::{Error, Result};

/// The quotient field `Q[x]/(f)`. The modulus is assumed irreducible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: IntPoly,
    monic: RatPoly,
}

impl NumberField {
    pub fn new(modulus: &IntPoly) -> Arc<NumberField> {
        let modulus = modulus.primitive();
        assert!(
            modulus.degree().unwrap_or(0) >= 1,
            "field modulus must have positive degree"
        );
        let monic = modulus.to_rat().monic();
        Arc::new(NumberField { modulus, monic })
    }

    /// `Q` itself, presented as `Q[x]/(x)`.
    pub fn rationals() -> Arc<NumberField> {
        Self::new(&IntPoly::from_i64s(&[0, 1]))
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_poly(self, RatPoly::x())
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> FieldElement {
        FieldElement::from_poly(self, RatPoly::constant(r))
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.modulus)
    }
}

#[derive(Clone)]
pub struct FieldElement {
    rep: RatPoly,
    field: Arc<NumberField>,
}

impl FieldElement {
    pub fn from_poly(field: &Arc<NumberField>, p: RatPoly) -> Self {
        let rep = p.rem(&field.monic);
        FieldElement {
            rep,
            field: Arc::clone(field),
        }
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.field.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// The rational value when the representative is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }

    fn same_field(&self, o: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &o.field) || self.field.modulus == o.field.modulus
    }

    fn check(&self, o: &FieldElement) {
        assert!(
            self.same_field(o),
            "mixed moduli {:?} and {:?}",
            self.field,
            o.field
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.same_field(o) && self.rep == o.rep
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.field.modulus)
    }
}

/// Exact field arithmetic shared by rationals and number-field elements.
/// Operations taking a second operand panic if the operands are incompatible.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero_exact(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn compatible(&self, o: &Self) -> bool;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn compatible(&self, _: &Self) -> bool {
        true
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement {
            rep: RatPoly::zero(),
            field: Arc::clone(&self.field),
        }
    }
    fn one_like(&self) -> Self {
        self.int_like(1)
    }
    fn int_like(&self, v: i64) -> Self {
        self.field.from_int(v)
    }
    fn is_zero_exact(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.check(o);
        FieldElement {
            rep: self.rep.add(&o.rep),
            field: Arc::clone(&self.field),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        self.check(o);
        FieldElement {
            rep: self.rep.sub(&o.rep),
            field: Arc::clone(&self.field),
        }
    }
    fn times(&self, o: &Self) -> Self {
        self.check(o);
        FieldElement::from_poly(&self.field, self.rep.mul(&o.rep))
    }
    fn negated(&self) -> Self {
        FieldElement {
            rep: self.rep.neg(),
            field: Arc::clone(&self.field),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        let (g, s) = self.rep.ext_gcd_left(&self.field.monic);
        // f irreducible, so the gcd is 1
        assert_eq!(g.degree(), Some(0), "modulus {:?} is reducible", self.field);
        Some(FieldElement::from_poly(&self.field, s))
    }
    fn compatible(&self, o: &Self) -> bool {
        self.same_field(o)
    }
}

/// Basis of the right null space of an `rows x cols` matrix by exact
/// Gauss-Jordan elimination. `proto` supplies the field for the output.
pub fn null_space<S: Scalar>(m: &[Vec<S>], cols: usize, proto: &S) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero_exact()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].inverse().unwrap();
        for j in c..cols {
            a[row][j] = a[row][j].times(&inv);
        }
        for r in 0..a.len() {
            if r == row || a[r][c].is_zero_exact() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in c..cols {
                let t = factor.times(&a[row][j]);
                a[r][j] = a[r][j].minus(&t);
            }
        }
        pivots.push(c);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    let zero = proto.zero_like();
    let one = proto.one_like();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); cols];
            v[free] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][free].negated();
            }
            v
        })
        .collect()
}

/// [`null_space`] for a matrix over one number field.
pub fn null_space_over_field(m: &[Vec<FieldElement>]) -> Result<Vec<Vec<FieldElement>>> {
    let Some(proto) = m.iter().flatten().next() else {
        return Ok(Vec::new());
    };
    let cols = m[0].len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    if m.iter().flatten().any(|e| !e.compatible(proto)) {
        return Err(Error::ModulusMismatch);
    }
    Ok(null_space(m, cols, proto))
}

/// `M v` for an integer matrix and a vector over a field.
pub fn int_mat_vec<S: Scalar>(m: &[Vec<i64>], v: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(v[0].zero_like(), |acc, (&c, x)| {
                if c == 0 {
                    acc
                } else {
                    acc.plus(&x.times(&x.int_like(c)))
                }
            })
        })
        .collect()
}

/// Whether `L y = lambda y` holds exactly.
pub fn verify_eigenpair<S: Scalar>(l: &[Vec<i64>], lambda: &S, y: &[S]) -> Result<bool> {
    let n = l.len();
    if y.len() != n || l.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {n}x{n}, vector has length {}",
            y.len()
        )));
    }
    if y.iter().any(|v| !v.compatible(lambda)) {
        return Err(Error::ModulusMismatch);
    }
    if y.iter().all(Scalar::is_zero_exact) {
        return Err(Error::ZeroVector);
    }
    let ly = int_mat_vec(l, y);
    Ok(ly.iter().zip(y).all(|(a, b)| *a == lambda.times(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn golden_ratio_field() {
        let k = NumberField::new(&IntPoly::from_i64s(&[1, -3, 1]));
        let a = k.generator();
        // a^2 = 3a - 1
        let lhs = a.times(&a);
        let rhs = a.times(&k.from_int(3)).minus(&k.from_int(1));
        assert_eq!(lhs, rhs);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.times(&a), k.from_int(1));
        // 1/a = 3 - a
        assert_eq!(inv, k.from_int(3).minus(&a));
        assert!(k.from_int(0).inverse().is_none());
    }

    #[test]
    fn null_spaces() {
        let k3 = [[-1i64, -1, -1]; 3];
        let m: Vec<Vec<BigRational>> = k3.iter().map(|r| qv(r)).collect();
        let ns = null_space(&m, 3, &q(0));
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(v.iter().fold(q(0), |a, b| a + b), q(0));
        }
        let zero: Vec<Vec<BigRational>> = vec![qv(&[0, 0]), qv(&[0, 0])];
        assert_eq!(null_space(&zero, 2, &q(0)).len(), 2);
    }

    #[test]
    fn null_space_at_irrational_eigenvalue() {
        // F = [[2,-1],[-1,1]] has char poly x^2 - 3x + 1
        let k = NumberField::new(&IntPoly::from_i64s(&[1, -3, 1]));
        let lam = k.generator();
        let f = [[2i64, -1], [-1, 1]];
        let m: Vec<Vec<FieldElement>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        let e = k.from_int(f[i][j]);
                        if i == j {
                            e.minus(&lam)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let ns = null_space_over_field(&m).unwrap();
        assert_eq!(ns.len(), 1);
        let fl: Vec<Vec<i64>> = f.iter().map(|r| r.to_vec()).collect();
        assert!(verify_eigenpair(&fl, &lam, &ns[0]).unwrap());
    }

    #[test]
    fn mixed_moduli_rejected() {
        let k1 = NumberField::new(&IntPoly::from_i64s(&[1, -3, 1]));
        let k2 = NumberField::new(&IntPoly::from_i64s(&[-2, 0, 1]));
        let m = vec![vec![k1.from_int(1), k2.from_int(1)]];
        assert_eq!(
            null_space_over_field(&m).unwrap_err(),
            Error::ModulusMismatch
        );
    }

    #[test]
    fn eigenpairs() {
        let k3 = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        let p3 = vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]];
        assert!(verify_eigenpair(&k3, &q(3), &qv(&[0, 1, -1])).unwrap());
        assert!(verify_eigenpair(&p3, &q(1), &qv(&[1, 0, -1])).unwrap());
        assert!(!verify_eigenpair(&p3, &q(2), &qv(&[1, 0, -1])).unwrap());
        assert_eq!(
            verify_eigenpair(&p3, &q(1), &qv(&[0, 0, 0])),
            Err(Error::ZeroVector)
        );
        assert!(matches!(
            verify_eigenpair(&p3, &q(1), &qv(&[1, 0])),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
