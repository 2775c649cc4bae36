use super::{check_vertex, verify_integer_pair};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A pair `{p, q}` that every other vertex sees both or neither of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcdCertificate {
    /// 0-based, `p < q`.
    pub p: usize,
    pub q: usize,
    pub adjacent: bool,
    pub eigenvalue: i64,
    /// `y_p = 1`, `y_q = -1`, zero elsewhere.
    pub vector: Vec<i64>,
}

impl DcdCertificate {
    pub fn labels(&self) -> [usize; 2] {
        [self.p + 1, self.q + 1]
    }
}

/// Structural test over full neighborhoods, then an exact check of the
/// resulting eigenpair.
pub fn is_dcd_pair(g: &Graph, p: usize, q: usize) -> Result<Option<DcdCertificate>> {
    check_vertex(g, p)?;
    check_vertex(g, q)?;
    if p == q {
        return Err(Error::SameVertex(p + 1));
    }
    g.require_connected()?;
    Ok(dcd_unchecked(g, p.min(q), p.max(q)))
}

pub(crate) fn dcd_unchecked(g: &Graph, p: usize, q: usize) -> Option<DcdCertificate> {
    let pair = 1u64 << p | 1u64 << q;
    let separated = (0..g.n()).filter(|&k| k != p && k != q).any(|k| {
        let seen = g.neighbor_bits(k) & pair;
        seen != 0 && seen != pair
    });
    if separated {
        return None;
    }
    assert_eq!(
        g.degree(p),
        g.degree(q),
        "pair passing the neighborhood test must have equal degrees"
    );
    let adjacent = g.has_edge(p, q);
    let d = g.degree(p) as i64;
    let eigenvalue = if adjacent { d + 1 } else { d };
    let mut vector = vec![0; g.n()];
    vector[p] = 1;
    vector[q] = -1;
    assert!(
        verify_integer_pair(g, eigenvalue, &vector),
        "pair certificate failed exact verification"
    );
    Some(DcdCertificate {
        p,
        q,
        adjacent,
        eigenvalue,
        vector,
    })
}

pub fn all_dcd_pairs(g: &Graph) -> Result<Vec<DcdCertificate>> {
    g.require_connected()?;
    let n = g.n();
    Ok((0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .filter_map(|(p, q)| dcd_unchecked(g, p, q))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    #[test]
    fn small_graphs() {
        let k3 = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = is_dcd_pair(&k3, 1, 2).unwrap().unwrap();
        assert!(c.adjacent);
        assert_eq!((c.eigenvalue, c.vector.clone()), (3, vec![0, 1, -1]));

        let p3 = graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let c = is_dcd_pair(&p3, 0, 2).unwrap().unwrap();
        assert!(!c.adjacent);
        assert_eq!((c.eigenvalue, c.vector), (1, vec![1, 0, -1]));
        assert!(is_dcd_pair(&p3, 0, 1).unwrap().is_none());
        assert_eq!(is_dcd_pair(&p3, 1, 1), Err(Error::SameVertex(2)));
    }

    #[test]
    fn enumerations() {
        let star = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let pairs: Vec<[usize; 2]> = all_dcd_pairs(&star)
            .unwrap()
            .iter()
            .map(|c| c.labels())
            .collect();
        assert_eq!(pairs, vec![[2, 3], [2, 4], [3, 4]]);
        let p4 = graph_from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(all_dcd_pairs(&p4).unwrap().is_empty());
        let lemma4 =
            graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let pairs: Vec<[usize; 2]> = all_dcd_pairs(&lemma4)
            .unwrap()
            .iter()
            .map(|c| c.labels())
            .collect();
        assert_eq!(pairs, vec![[1, 2], [3, 4], [3, 5], [4, 5]]);
    }
}
