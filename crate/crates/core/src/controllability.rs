//! Controllability of the follower dynamics `x' = -F x - R z`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{
    char_poly, distinct_irreducible_factors, integer_rank, poly_gcd, IntPoly, Scalar,
};
use crate::graph::{follower_partition, Graph, LeaderSet, Partition};
use crate::spectral::{EigenPair, Eigenspace};

/// Rank test on `[R | FR | ... | F^(nf-1) R]`.
pub fn kalman_controllable(p: &Partition) -> bool {
    let nf = p.f.len();
    if nf == 0 {
        return true;
    }
    let f: Vec<Vec<BigInt>> =
        p.f.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
    let mut block: Vec<Vec<BigInt>> =
        p.r.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); nf];
    for _ in 0..nf {
        for (row, b) in rows.iter_mut().zip(&block) {
            row.extend(b.iter().cloned());
        }
        block = mat_mul(&f, &block);
    }
    integer_rank(rows) == nf
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

/// `(deg gcd(char F, char L) >= 1, gcd)`.
pub fn shared_eigenvalue_test(g: &Graph, leaders: &LeaderSet) -> Result<(bool, IntPoly)> {
    g.require_connected()?;
    let p = follower_partition(g, leaders)?;
    let gcd = poly_gcd(&char_poly(&p.f), &char_poly(&g.laplacian()))?;
    Ok((gcd.degree().unwrap_or(0) >= 1, gcd))
}

/// An eigenvector of the Laplacian vanishing on every leader.
#[derive(Clone, Debug, PartialEq)]
pub struct EigCertificate {
    pub pair: EigenPair,
    /// 0-based.
    pub support: Vec<usize>,
}

impl EigCertificate {
    fn new(pair: EigenPair) -> Self {
        let support = pair.support();
        EigCertificate { pair, support }
    }

    pub fn support_labels(&self) -> Vec<usize> {
        self.support.iter().map(|v| v + 1).collect()
    }
}

/// One certificate per irreducible factor of `gcd(char F, char L)` whose
/// eigenspace meets `{y : y_i = 0 for every leader i}` nontrivially.
pub fn leader_vanishing_eigenvectors(
    g: &Graph,
    leaders: &LeaderSet,
) -> Result<Vec<EigCertificate>> {
    let (_, gcd) = shared_eigenvalue_test(g, leaders)?;
    certificates_for(g, leaders, &gcd)
}

fn certificates_for(g: &Graph, leaders: &LeaderSet, gcd: &IntPoly) -> Result<Vec<EigCertificate>> {
    let l = g.laplacian();
    let mut out = Vec::new();
    for f in distinct_irreducible_factors(gcd)? {
        let space = Eigenspace::at_factor(&l, &f).restrict(leaders.mask());
        if let Some(pair) = space.generic_vector() {
            debug_assert!(pair.verify(&l));
            out.push(EigCertificate::new(pair));
        }
    }
    Ok(out)
}

/// Per-node residual `d_k y_k - sum_{i in N_k} y_i - lambda y_k`.
pub fn eigencondition_residual<S: Scalar>(g: &Graph, lambda: &S, y: &[S]) -> Result<Vec<S>> {
    if y.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} vertices, vector has length {}",
            g.n(),
            y.len()
        )));
    }
    if y.iter().any(|v| !v.compatible(lambda)) {
        return Err(Error::ModulusMismatch);
    }
    Ok((0..g.n())
        .map(|k| {
            let own = y[k]
                .times(&lambda.int_like(g.degree(k) as i64))
                .minus(&lambda.times(&y[k]));
            g.neighbors(k).fold(own, |acc, i| acc.minus(&y[i]))
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct ControllabilityReport {
    pub graph: Graph,
    pub leaders: LeaderSet,
    pub kalman_controllable: bool,
    pub shared_eigenvalue_found: bool,
    pub gcd_poly: IntPoly,
    pub certificates: Vec<EigCertificate>,
}

impl ControllabilityReport {
    pub fn controllable(&self) -> bool {
        self.kalman_controllable
    }

    /// Whether the gcd test gives the same verdict as the rank test.
    pub fn gcd_agrees(&self) -> bool {
        self.kalman_controllable != self.shared_eigenvalue_found
    }
}

/// Runs the rank test, the gcd test and the eigenvector search, and checks
/// them against each other.
///
/// The verdict is the rank test. A leader-vanishing eigenvector must exist
/// exactly when the rank test fails, and its eigenvalue is always a common
/// root of `char F` and `char L`. The converse of the latter holds for a
/// single leader but not in general, so a shared root with a controllable
/// verdict is only an error when there is one leader.
pub fn controllability_report(g: &Graph, leaders: &LeaderSet) -> Result<ControllabilityReport> {
    let (shared, gcd) = shared_eigenvalue_test(g, leaders)?;
    let kalman = kalman_controllable(&follower_partition(g, leaders)?);
    let certificates = certificates_for(g, leaders, &gcd)?;

    let context = || format!("graph {g:?}, leaders {:?}", leaders.labels());
    if kalman == !certificates.is_empty() {
        return Err(Error::InconsistentTests(format!(
            "rank test says controllable={kalman} but {} leader-vanishing eigenvectors found; {}",
            certificates.len(),
            context()
        )));
    }
    if !kalman && !shared {
        return Err(Error::InconsistentTests(format!(
            "uncontrollable without a shared eigenvalue; {}",
            context()
        )));
    }
    if leaders.len() == 1 && kalman && shared {
        return Err(Error::InconsistentTests(format!(
            "single leader controllable despite shared eigenvalue; {}",
            context()
        )));
    }
    if certificates.iter().any(|c| {
        c.pair
            .rational_eigenvalue()
            .is_some_and(|l| l == &num_rational::BigRational::from_integer(0.into()))
    }) {
        return Err(Error::InconsistentTests(format!(
            "zero eigenvalue certificate; {}",
            context()
        )));
    }

    Ok(ControllabilityReport {
        graph: g.clone(),
        leaders: leaders.clone(),
        kalman_controllable: kalman,
        shared_eigenvalue_found: shared,
        gcd_poly: gcd,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::graph::graph_from_edges;

    fn k3() -> Graph {
        graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn p3() -> Graph {
        graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_test() {
        let p2 = graph_from_edges(2, &[(1, 2)]).unwrap();
        let part = |g: &Graph, l: &[usize]| {
            follower_partition(g, &LeaderSet::new(g.n(), l).unwrap()).unwrap()
        };
        assert!(kalman_controllable(&part(&p2, &[1])));
        assert!(!kalman_controllable(&part(&k3(), &[1])));
        assert!(kalman_controllable(&part(&p3(), &[1])));
    }

    #[test]
    fn gcd_test() {
        let l = |g: &Graph, v: usize| LeaderSet::new(g.n(), &[v]).unwrap();
        assert_eq!(
            shared_eigenvalue_test(&k3(), &l(&k3(), 1)).unwrap(),
            (true, IntPoly::from_i64s(&[-3, 1]))
        );
        assert_eq!(
            shared_eigenvalue_test(&p3(), &l(&p3(), 1)).unwrap(),
            (false, IntPoly::one())
        );
        assert_eq!(
            shared_eigenvalue_test(&p3(), &l(&p3(), 2)).unwrap(),
            (true, IntPoly::from_i64s(&[-1, 1]))
        );
        let two = graph_from_edges(2, &[]).unwrap();
        assert_eq!(
            shared_eigenvalue_test(&two, &l(&two, 1)),
            Err(Error::DisconnectedGraph)
        );
    }

    #[test]
    fn certificates() {
        let l = |g: &Graph, v: usize| LeaderSet::new(g.n(), &[v]).unwrap();
        let c = leader_vanishing_eigenvectors(&k3(), &l(&k3(), 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].pair.rational_eigenvalue(), Some(&q(3)));
        assert_eq!(c[0].pair.integer_vector(), Some(vec![0, 1, -1]));
        let c = leader_vanishing_eigenvectors(&p3(), &l(&p3(), 2)).unwrap();
        assert_eq!(c[0].pair.integer_vector(), Some(vec![1, 0, -1]));
        assert_eq!(c[0].support_labels(), vec![1, 3]);
        assert!(leader_vanishing_eigenvectors(&p3(), &l(&p3(), 1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn residuals() {
        assert_eq!(
            eigencondition_residual(&k3(), &q(3), &qv(&[0, 1, -1])).unwrap(),
            qv(&[0, 0, 0])
        );
        assert_eq!(
            eigencondition_residual(&k3(), &q(3), &qv(&[0, 1, 1])).unwrap(),
            qv(&[-2, -2, -2])
        );
        let p2 = graph_from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(
            eigencondition_residual(&p2, &q(0), &qv(&[1, 1])).unwrap(),
            qv(&[0, 0])
        );
        assert!(matches!(
            eigencondition_residual(&p2, &q(0), &qv(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn reports() {
        let r = controllability_report(&k3(), &LeaderSet::new(3, &[1]).unwrap()).unwrap();
        assert!(!r.controllable());
        assert_eq!(r.certificates.len(), 1);
        let r = controllability_report(&p3(), &LeaderSet::new(3, &[1]).unwrap()).unwrap();
        assert!(r.controllable());
        assert!(r.certificates.is_empty());
        let star = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let r = controllability_report(&star, &LeaderSet::new(4, &[1]).unwrap()).unwrap();
        assert!(!r.controllable());
    }

    #[test]
    fn multi_leader_shared_root_without_loss_of_control() {
        // P3 driven from the center and one end: F = [1], char L has root 1
        let r = controllability_report(&p3(), &LeaderSet::new(3, &[1, 2]).unwrap()).unwrap();
        assert!(r.controllable());
        assert!(r.shared_eigenvalue_found);
        assert!(!r.gcd_agrees());
    }
}
