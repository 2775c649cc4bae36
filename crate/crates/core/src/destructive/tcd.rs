use std::fmt;

use super::{check_vertex, verify_integer_pair};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Induced topology on a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TcdClass {
    /// Triangle.
    I,
    /// Path; `p` is the middle vertex.
    II,
    /// Single edge `pq`.
    III,
    /// No edges.
    IV,
}

impl fmt::Display for TcdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TcdClass::I => "I",
            TcdClass::II => "II",
            TcdClass::III => "III",
            TcdClass::IV => "IV",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcdCertificate {
    /// 0-based vertices in role order `[p, q, r]` for the class.
    pub vertices: [usize; 3],
    pub class: TcdClass,
    pub eigenvalue: i64,
    pub vector: Vec<i64>,
}

impl TcdCertificate {
    pub fn labels(&self) -> [usize; 3] {
        self.vertices.map(|v| v + 1)
    }

    /// Sorted 1-based labels.
    pub fn sorted_labels(&self) -> [usize; 3] {
        let mut l = self.labels();
        l.sort_unstable();
        l
    }

    /// The degree identities and eigenvalue formula of the class.
    pub fn satisfies_class_table(&self, g: &Graph) -> bool {
        let [p, q, r] = self.vertices.map(|v| g.degree(v) as i64);
        let lam = self.eigenvalue;
        match self.class {
            TcdClass::I => p == q && q == r && lam == p + 1,
            TcdClass::II => p == q + 1 && p == r + 1 && lam == p + 1,
            TcdClass::III => p == q && p == r + 1 && lam == r,
            TcdClass::IV => p == q && q == r && lam == r,
        }
    }
}

/// Edges of `g` inside the vertex set `mask`.
pub fn induced_edge_count(g: &Graph, mask: u64) -> u32 {
    (0..g.n())
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| (g.neighbor_bits(v) & mask).count_ones())
        .sum::<u32>()
        / 2
}

pub fn classify_tcd_triple(
    g: &Graph,
    p: usize,
    q: usize,
    r: usize,
) -> Result<Option<TcdCertificate>> {
    for v in [p, q, r] {
        check_vertex(g, v)?;
    }
    if p == q || p == r {
        return Err(Error::DuplicateVertex(p + 1));
    }
    if q == r {
        return Err(Error::DuplicateVertex(q + 1));
    }
    g.require_connected()?;
    let mut t = [p, q, r];
    t.sort_unstable();
    Ok(tcd_unchecked(g, t))
}

/// `t` sorted ascending.
pub(crate) fn tcd_unchecked(g: &Graph, t: [usize; 3]) -> Option<TcdCertificate> {
    let mask = t.iter().fold(0u64, |m, &v| m | 1 << v);
    let separated = (0..g.n()).filter(|k| mask >> k & 1 == 0).any(|k| {
        let seen = g.neighbor_bits(k) & mask;
        seen != 0 && seen != mask
    });
    if separated {
        return None;
    }
    let inner = |v: usize| (g.neighbor_bits(v) & mask).count_ones();
    let (class, roles, pattern) = match induced_edge_count(g, mask) {
        3 => (TcdClass::I, t, [1, 1, -2]),
        0 => (TcdClass::IV, t, [1, 1, -2]),
        2 => {
            let centre = *t.iter().find(|&&v| inner(v) == 2).unwrap();
            let mut rest = t.iter().copied().filter(|&v| v != centre);
            (
                TcdClass::II,
                [centre, rest.next().unwrap(), rest.next().unwrap()],
                [-2, 1, 1],
            )
        }
        _ => {
            let lone = *t.iter().find(|&&v| inner(v) == 0).unwrap();
            let mut ends = t.iter().copied().filter(|&v| v != lone);
            (
                TcdClass::III,
                [ends.next().unwrap(), ends.next().unwrap(), lone],
                [1, 1, -2],
            )
        }
    };
    let d = |i: usize| g.degree(roles[i]) as i64;
    let eigenvalue = match class {
        TcdClass::I | TcdClass::II => d(0) + 1,
        TcdClass::III | TcdClass::IV => d(2),
    };
    let mut vector = vec![0; g.n()];
    for (v, y) in roles.iter().zip(pattern) {
        vector[*v] = y;
    }
    let cert = TcdCertificate {
        vertices: roles,
        class,
        eigenvalue,
        vector,
    };
    if !cert.satisfies_class_table(g) || !verify_integer_pair(g, eigenvalue, &cert.vector) {
        return None;
    }
    Some(cert)
}

pub fn all_tcd_triples(g: &Graph) -> Result<Vec<TcdCertificate>> {
    g.require_connected()?;
    let n = g.n();
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                out.extend(tcd_unchecked(g, [p, q, r]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    fn lemma4() -> Graph {
        graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn classes() {
        let c = classify_tcd_triple(&lemma4(), 2, 3, 4).unwrap().unwrap();
        assert_eq!((c.class, c.eigenvalue), (TcdClass::IV, 2));
        assert_eq!(c.vector, vec![0, 0, 1, 1, -2]);

        let k4 = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let c = classify_tcd_triple(&k4, 1, 2, 3).unwrap().unwrap();
        assert_eq!((c.class, c.eigenvalue), (TcdClass::I, 4));
        assert_eq!(c.vector, vec![0, 1, 1, -2]);

        let p4 = graph_from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(classify_tcd_triple(&p4, 0, 1, 2).unwrap().is_none());
        assert_eq!(
            classify_tcd_triple(&p4, 0, 1, 1),
            Err(Error::DuplicateVertex(2))
        );
    }

    #[test]
    fn path_and_edge_classes() {
        // P3 hanging off a hub that sees all three
        let g = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]).unwrap();
        let c = classify_tcd_triple(&g, 1, 2, 3).unwrap().unwrap();
        assert_eq!(c.class, TcdClass::II);
        assert_eq!(c.labels(), [3, 2, 4]);
        assert_eq!(c.eigenvalue, 4);
        // single edge 2-3 plus isolated 4, all seen by 1
        let g = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3)]).unwrap();
        let c = classify_tcd_triple(&g, 1, 2, 3).unwrap().unwrap();
        assert_eq!(
            (c.class, c.labels(), c.eigenvalue),
            (TcdClass::III, [2, 3, 4], 1)
        );
    }

    #[test]
    fn enumerations() {
        let star = graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let t = all_tcd_triples(&star).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|c| c.class == TcdClass::IV));
        let p5 = graph_from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(all_tcd_triples(&p5).unwrap().is_empty());
        let k4 = graph_from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let t = all_tcd_triples(&k4).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|c| c.class == TcdClass::I));
    }
}
