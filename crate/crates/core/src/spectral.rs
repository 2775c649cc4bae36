//! Laplacian eigenspaces over exact fields, restriction to coordinate
//! subspaces, and normalized eigenpairs with prescribed support.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exact::{
    char_poly, distinct_irreducible_factors, null_space, verify_eigenpair, FieldElement, IntPoly,
    NumberField, Rational, Scalar,
};
use crate::graph::{Graph, IntMatrix};

/// An exact eigenpair: a rational eigenvalue with a rational vector, or an
/// algebraic eigenvalue (the generator of `Q[x]/(f)`) with a vector over
/// that field.
#[derive(Clone, PartialEq)]
pub enum EigenPair {
    Rational {
        lambda: Rational,
        vector: Vec<Rational>,
    },
    Algebraic {
        lambda: FieldElement,
        vector: Vec<FieldElement>,
    },
}

impl EigenPair {
    pub fn n(&self) -> usize {
        match self {
            EigenPair::Rational { vector, .. } => vector.len(),
            EigenPair::Algebraic { vector, .. } => vector.len(),
        }
    }

    /// 0-based indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        match self {
            EigenPair::Rational { vector, .. } => nonzero_indices(vector),
            EigenPair::Algebraic { vector, .. } => nonzero_indices(vector),
        }
    }

    pub fn support_mask(&self) -> u64 {
        self.support().iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn is_zero_at(&self, i: usize) -> bool {
        match self {
            EigenPair::Rational { vector, .. } => vector[i].is_zero(),
            EigenPair::Algebraic { vector, .. } => vector[i].is_zero(),
        }
    }

    /// Exact check of `L y = lambda y`.
    pub fn verify(&self, l: &IntMatrix) -> bool {
        match self {
            EigenPair::Rational { lambda, vector } => {
                verify_eigenpair(l, lambda, vector).unwrap_or(false)
            }
            EigenPair::Algebraic { lambda, vector } => {
                verify_eigenpair(l, lambda, vector).unwrap_or(false)
            }
        }
    }

    pub fn rational_eigenvalue(&self) -> Option<&Rational> {
        match self {
            EigenPair::Rational { lambda, .. } => Some(lambda),
            EigenPair::Algebraic { .. } => None,
        }
    }

    /// Minimal polynomial of the eigenvalue.
    pub fn minimal_polynomial(&self) -> IntPoly {
        match self {
            EigenPair::Rational { lambda, .. } => {
                IntPoly::new(vec![-lambda.numer().clone(), lambda.denom().clone()])
            }
            EigenPair::Algebraic { lambda, .. } => lambda.modulus().clone(),
        }
    }

    /// `"5"` or `"x"` (a root of the minimal polynomial).
    pub fn eigenvalue_string(&self) -> String {
        match self {
            EigenPair::Rational { lambda, .. } => lambda.to_string(),
            EigenPair::Algebraic { lambda, .. } => lambda.to_string(),
        }
    }

    pub fn vector_strings(&self) -> Vec<String> {
        match self {
            EigenPair::Rational { vector, .. } => vector.iter().map(ToString::to_string).collect(),
            EigenPair::Algebraic { vector, .. } => vector.iter().map(ToString::to_string).collect(),
        }
    }

    /// Integer vector, when the pair is rational and the vector integral.
    pub fn integer_vector(&self) -> Option<Vec<i64>> {
        match self {
            EigenPair::Rational { vector, .. } => vector
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        i64::try_from(v.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect(),
            EigenPair::Algebraic { .. } => None,
        }
    }
}

impl fmt::Debug for EigenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenPair::Rational { .. } => {
                write!(
                    f,
                    "lambda={} y=[{}]",
                    self.eigenvalue_string(),
                    self.vector_strings().join(", ")
                )
            }
            EigenPair::Algebraic { .. } => write!(
                f,
                "lambda=x mod ({}) y=[{}]",
                self.minimal_polynomial(),
                self.vector_strings().join(", ")
            ),
        }
    }
}

fn nonzero_indices<S: Scalar>(v: &[S]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero_exact())
        .map(|(i, _)| i)
        .collect()
}

/// Basis of the eigenspace of a Laplacian at one irreducible factor of its
/// characteristic polynomial.
#[derive(Clone, Debug)]
pub enum Eigenspace {
    Rational {
        lambda: Rational,
        basis: Vec<Vec<Rational>>,
    },
    Algebraic {
        lambda: FieldElement,
        basis: Vec<Vec<FieldElement>>,
    },
}

impl Eigenspace {
    /// Eigenspace of `l` at the roots of the irreducible `factor`.
    pub fn at_factor(l: &IntMatrix, factor: &IntPoly) -> Eigenspace {
        let n = l.len();
        if factor.degree() == Some(1) {
            let c = factor.coeffs();
            let lambda = Rational::new(-c[0].clone(), c[1].clone());
            let basis = shifted_null_space(l, &lambda, n);
            Eigenspace::Rational { lambda, basis }
        } else {
            let lambda = NumberField::new(factor).generator();
            let basis = shifted_null_space(l, &lambda, n);
            Eigenspace::Algebraic { lambda, basis }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Eigenspace::Rational { basis, .. } => basis.len(),
            Eigenspace::Algebraic { basis, .. } => basis.len(),
        }
    }

    /// Subspace of vectors vanishing on every coordinate in `zero_mask`.
    pub fn restrict(&self, zero_mask: u64) -> Eigenspace {
        match self {
            Eigenspace::Rational { lambda, basis } => Eigenspace::Rational {
                lambda: lambda.clone(),
                basis: restrict_basis(basis, zero_mask, lambda),
            },
            Eigenspace::Algebraic { lambda, basis } => Eigenspace::Algebraic {
                lambda: lambda.clone(),
                basis: restrict_basis(basis, zero_mask, lambda),
            },
        }
    }

    /// Coordinates that are not identically zero on the space.
    pub fn live_mask(&self) -> u64 {
        match self {
            Eigenspace::Rational { basis, .. } => live_mask(basis),
            Eigenspace::Algebraic { basis, .. } => live_mask(basis),
        }
    }

    /// A normalized vector in the space that is nonzero on every coordinate
    /// of `live_mask()`.
    pub fn generic_vector(&self) -> Option<EigenPair> {
        match self {
            Eigenspace::Rational { lambda, basis } => {
                generic_combination(basis, lambda).map(|v| EigenPair::Rational {
                    lambda: lambda.clone(),
                    vector: normalize_rational(v),
                })
            }
            Eigenspace::Algebraic { lambda, basis } => {
                generic_combination(basis, lambda).map(|v| EigenPair::Algebraic {
                    lambda: lambda.clone(),
                    vector: normalize_leading(v),
                })
            }
        }
    }

    pub fn is_zero_eigenvalue(&self) -> bool {
        matches!(self, Eigenspace::Rational { lambda, .. } if lambda.is_zero())
    }
}

fn shifted_null_space<S: Scalar>(l: &IntMatrix, lambda: &S, n: usize) -> Vec<Vec<S>> {
    let m: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = lambda.int_like(l[i][j]);
                    if i == j {
                        e.minus(lambda)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    null_space(&m, n, lambda)
}

fn restrict_basis<S: Scalar>(basis: &[Vec<S>], zero_mask: u64, proto: &S) -> Vec<Vec<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let n = basis[0].len();
    let rows: Vec<Vec<S>> = (0..n)
        .filter(|k| zero_mask >> k & 1 == 1)
        .map(|k| basis.iter().map(|b| b[k].clone()).collect())
        .collect();
    if rows.is_empty() {
        return basis.to_vec();
    }
    null_space(&rows, basis.len(), proto)
        .into_iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    c.iter().zip(basis).fold(proto.zero_like(), |acc, (cj, b)| {
                        if cj.is_zero_exact() {
                            acc
                        } else {
                            acc.plus(&cj.times(&b[i]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn live_mask<S: Scalar>(basis: &[Vec<S>]) -> u64 {
    basis
        .iter()
        .flat_map(|b| nonzero_indices(b))
        .fold(0, |m, i| m | 1 << i)
}

/// `sum t^j w_j` for the first `t = 1, 2, ...` making every live coordinate
/// nonzero. Each live coordinate is a nonzero polynomial in `t` of degree
/// below `dim`, so only finitely many `t` fail.
fn generic_combination<S: Scalar>(basis: &[Vec<S>], proto: &S) -> Option<Vec<S>> {
    if basis.is_empty() {
        return None;
    }
    let live = live_mask(basis);
    let n = basis[0].len();
    let mut t = 1i64;
    loop {
        let tt = proto.int_like(t);
        let mut scale = proto.one_like();
        let mut v = vec![proto.zero_like(); n];
        for b in basis {
            for i in 0..n {
                if !b[i].is_zero_exact() {
                    v[i] = v[i].plus(&scale.times(&b[i]));
                }
            }
            scale = scale.times(&tt);
        }
        if (0..n).all(|i| live >> i & 1 == 0 || !v[i].is_zero_exact()) {
            return Some(v);
        }
        t += 1;
    }
}

/// Primitive integer vector. Sign: at least as many positive as negative
/// entries; on a tie the first nonzero entry is positive.
pub(crate) fn normalize_rational(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v;
    }
    let pos = ints.iter().filter(|c| c.is_positive()).count();
    let neg = ints.iter().filter(|c| c.is_negative()).count();
    let first_neg = ints
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    let flip = neg > pos || (neg == pos && first_neg);
    let g = if flip { -g } else { g };
    ints.into_iter()
        .map(|c| Rational::from_integer(c / &g))
        .collect()
}

/// Scales so that the first nonzero coordinate is 1.
fn normalize_leading<S: Scalar>(v: Vec<S>) -> Vec<S> {
    match v
        .iter()
        .find(|c| !c.is_zero_exact())
        .and_then(Scalar::inverse)
    {
        Some(inv) => v.iter().map(|c| c.times(&inv)).collect(),
        None => v,
    }
}

/// Eigenspaces of `L(g)` for each distinct irreducible factor of its
/// characteristic polynomial, computed once and queried per support set.
#[derive(Clone, Debug)]
pub struct Spectrum {
    laplacian: IntMatrix,
    spaces: Vec<Eigenspace>,
}

impl Spectrum {
    pub fn new(g: &Graph) -> Result<Spectrum> {
        let laplacian = g.laplacian();
        let chi = char_poly(&laplacian);
        let spaces = distinct_irreducible_factors(&chi)?
            .iter()
            .map(|f| Eigenspace::at_factor(&laplacian, f))
            .collect();
        Ok(Spectrum { laplacian, spaces })
    }

    pub fn laplacian(&self) -> &IntMatrix {
        &self.laplacian
    }

    pub fn spaces(&self) -> &[Eigenspace] {
        &self.spaces
    }

    /// An eigenpair whose support is exactly `support_mask`, if one exists.
    /// Eigenvalues are tried in factor order; rational ones come first.
    pub fn with_support(&self, support_mask: u64) -> Option<EigenPair> {
        let n = self.laplacian.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let zero = all & !support_mask;
        self.spaces.iter().find_map(|space| {
            let w = space.restrict(zero);
            if w.dim() == 0 || w.live_mask() != support_mask {
                return None;
            }
            w.generic_vector()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn normalization() {
        let v = vec![q(0), q(6), q(-2), q(-2), q(-2)];
        assert_eq!(normalize_rational(v), vec![q(0), q(-3), q(1), q(1), q(1)]);
        let v = vec![q(0), q(-2), q(2)];
        assert_eq!(normalize_rational(v), vec![q(0), q(1), q(-1)]);
        let v = vec![
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
        ];
        assert_eq!(normalize_rational(v), vec![q(3), q(2)]);
    }

    #[test]
    fn k3_supports() {
        let g = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let s = Spectrum::new(&g).unwrap();
        let pair = s.with_support(0b110).unwrap();
        assert_eq!(pair.rational_eigenvalue(), Some(&q(3)));
        assert_eq!(pair.integer_vector(), Some(vec![0, 1, -1]));
        assert!(pair.verify(s.laplacian()));
        assert!(s.with_support(0b111).is_some());
    }

    #[test]
    fn algebraic_eigenspace() {
        // P4 has eigenvalues 0, 2 and the roots of x^2 - 4x + 2
        let g = graph_from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let s = Spectrum::new(&g).unwrap();
        assert_eq!(s.spaces().len(), 3);
        for sp in s.spaces() {
            assert_eq!(sp.dim(), 1);
            let pair = sp.generic_vector().unwrap();
            assert!(pair.verify(s.laplacian()));
        }
        assert!(s.with_support(0b0110).is_none());
    }
}
