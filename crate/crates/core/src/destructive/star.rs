//! Necessary conditions for a support-4 eigenvector on a five-vertex graph
//! whose quadruple induces a 3-star.

use num_traits::Zero;

use super::check_vertex;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::Graph;

/// Role assignment, 0-based. `s1` is the star centre; `k` the fifth vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadRoles {
    pub s1: usize,
    pub s2: usize,
    pub t1: usize,
    pub t2: usize,
    pub k: usize,
}

impl QuadRoles {
    fn all(&self) -> [usize; 5] {
        [self.s1, self.s2, self.t1, self.t2, self.k]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredicateOutcome {
    NotApplicable,
    Satisfied,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarScreen {
    /// `k` adjacent to all four.
    pub harmonic: PredicateOutcome,
    /// `k` adjacent to exactly `s1, s2, t1`.
    pub surd: PredicateOutcome,
    /// `k` adjacent to exactly `s1, s2`.
    pub two_neighbor: PredicateOutcome,
}

impl StarScreen {
    /// `'a'`, `'b'` or `'c'` for the applicable predicate.
    pub fn situation(&self) -> Option<char> {
        [
            (self.harmonic, 'a'),
            (self.surd, 'b'),
            (self.two_neighbor, 'c'),
        ]
        .into_iter()
        .find(|(o, _)| *o != PredicateOutcome::NotApplicable)
        .map(|(_, c)| c)
    }

    pub fn any_violated(&self) -> bool {
        [self.harmonic, self.surd, self.two_neighbor].contains(&PredicateOutcome::Violated)
    }
}

pub fn lemma3_screen(g: &Graph, roles: &QuadRoles) -> Result<StarScreen> {
    if g.n() != 5 {
        return Err(Error::WrongSize {
            expected: 5,
            found: g.n(),
        });
    }
    let all = roles.all();
    for (i, &v) in all.iter().enumerate() {
        check_vertex(g, v)?;
        if all[..i].contains(&v) {
            return Err(Error::DuplicateVertex(v + 1));
        }
    }
    let QuadRoles { s1, s2, t1, t2, k } = *roles;
    let leaves = [s2, t1, t2];
    let star = leaves.iter().all(|&v| g.has_edge(s1, v))
        && !g.has_edge(s2, t1)
        && !g.has_edge(s2, t2)
        && !g.has_edge(t1, t2);
    if !star {
        return Err(Error::WrongTopology(format!(
            "vertices {:?} do not induce a 3-star centred at {}",
            [s1 + 1, s2 + 1, t1 + 1, t2 + 1],
            s1 + 1
        )));
    }

    let bit = |v: usize| 1u64 << v;
    let quad = bit(s1) | bit(s2) | bit(t1) | bit(t2);
    let seen = g.neighbor_bits(k) & quad;
    let d = |v: usize| g.degree(v) as i64;
    let na = PredicateOutcome::NotApplicable;
    let mut out = StarScreen {
        harmonic: na,
        surd: na,
        two_neighbor: na,
    };

    if seen == quad {
        let denoms = [d(t2) - d(s1) - 1, d(t1) - d(s1) - 1, d(s2) - d(s1) - 1];
        out.harmonic = judge(reciprocal_sum(&denoms).map(|s| s == q(-1)));
    } else if seen == bit(s1) | bit(s2) | bit(t1) {
        let lam = quadratic_roots(d(t1) + d(s2) + 2, (d(s2) - d(t1)).pow(2) + 4);
        let lam_t = quadratic_roots(d(s1) + d(t2) + 1, (d(s1) - d(t2) + 1).pow(2) + 4);
        let hit = lam.iter().any(|a| lam_t.contains(a));
        out.surd = judge(Some(hit));
    } else if seen == bit(s1) | bit(s2) {
        let rhs = reciprocal_sum(&[d(t1) - d(s2) - 1, d(t2) - d(s2) - 1]);
        out.two_neighbor = judge(rhs.map(|r| r == q(d(s1) - d(s2))));
    }
    Ok(out)
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `None` when a denominator vanishes.
fn reciprocal_sum(denoms: &[i64]) -> Option<Rational> {
    denoms.iter().try_fold(Rational::zero(), |acc, &x| {
        (x != 0).then(|| acc + Rational::new(1.into(), x.into()))
    })
}

fn judge(holds: Option<bool>) -> PredicateOutcome {
    match holds {
        Some(true) => PredicateOutcome::Satisfied,
        _ => PredicateOutcome::Violated,
    }
}

/// `rational + coeff * sqrt(radicand)` with `radicand` square-free and
/// greater than one, or `coeff` zero.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: i64,
}

impl Surd {
    fn new(rational: Rational, coeff: Rational, radicand: i64) -> Surd {
        let (square, free) = split_square(radicand);
        let coeff = coeff * q(square);
        if free == 1 || coeff.is_zero() {
            Surd {
                rational: rational + coeff,
                coeff: Rational::zero(),
                radicand: 1,
            }
        } else {
            Surd {
                rational,
                coeff,
                radicand: free,
            }
        }
    }
}

/// Roots `(a ± sqrt(b)) / 2`.
fn quadratic_roots(a: i64, b: i64) -> [Surd; 2] {
    let half = Rational::new(1.into(), 2.into());
    let ra = q(a) * &half;
    [
        Surd::new(ra.clone(), half.clone(), b),
        Surd::new(ra, -half, b),
    ]
}

/// `n = s^2 * f` with `f` square-free; returns `(s, f)`.
fn split_square(mut n: i64) -> (i64, i64) {
    assert!(n > 0);
    let mut s = 1;
    let mut f = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    fn lemma4() -> Graph {
        graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn harmonic_identity_on_lemma4_graph() {
        let roles = QuadRoles {
            s1: 1,
            s2: 4,
            t1: 3,
            t2: 2,
            k: 0,
        };
        let s = lemma3_screen(&lemma4(), &roles).unwrap();
        assert_eq!(s.harmonic, PredicateOutcome::Satisfied);
        assert_eq!(s.two_neighbor, PredicateOutcome::NotApplicable);
        assert_eq!(s.situation(), Some('a'));
    }

    #[test]
    fn two_neighbor_violation() {
        // k=1 sees only s1=2 and s2=5: 1/(1-2-1) + 1/(1-2-1) = -1, but d_s1 - d_s2 = 2
        let g = graph_from_edges(5, &[(2, 3), (2, 4), (2, 5), (1, 2), (1, 5)]).unwrap();
        let roles = QuadRoles {
            s1: 1,
            s2: 4,
            t1: 3,
            t2: 2,
            k: 0,
        };
        let s = lemma3_screen(&g, &roles).unwrap();
        assert_eq!(s.two_neighbor, PredicateOutcome::Violated);
        assert_eq!(s.situation(), Some('c'));
    }

    #[test]
    fn zero_denominator_is_violation() {
        assert_eq!(reciprocal_sum(&[1, 0]), None);
        assert_eq!(
            judge(reciprocal_sum(&[-3, 0]).map(|s| s == q(-1))),
            PredicateOutcome::Violated
        );
    }

    #[test]
    fn rejects_non_star() {
        let p5 = graph_from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let roles = QuadRoles {
            s1: 1,
            s2: 2,
            t1: 3,
            t2: 4,
            k: 0,
        };
        assert!(matches!(
            lemma3_screen(&p5, &roles),
            Err(Error::WrongTopology(_))
        ));
        let k3 = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(matches!(
            lemma3_screen(&k3, &roles),
            Err(Error::WrongSize { .. })
        ));
    }

    #[test]
    fn surds() {
        assert_eq!(split_square(8), (2, 2));
        assert_eq!(split_square(4), (2, 1));
        assert_eq!(split_square(5), (1, 5));
        // (4 + sqrt(4)) / 2 = 3 is rational
        let [a, _] = quadratic_roots(4, 4);
        assert_eq!(a, Surd::new(q(3), Rational::zero(), 1));
        // (2 + sqrt(8)) / 2 = 1 + sqrt(2)
        let [b, c] = quadratic_roots(2, 8);
        assert_eq!(b, Surd::new(q(1), q(1), 2));
        assert_ne!(b, c);
    }
}
