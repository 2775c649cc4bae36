use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph accepted by the brute-force canonical labeling.
pub const MAX_CANON_N: usize = 8;

/// Isomorphism-invariant graph encoding, optionally with one distinguished
/// vertex that every isomorphism must fix.
///
/// Layout: `[n, flag, bits...]` where `flag` is 1 when a vertex is
/// distinguished and `bits` is the lexicographically smallest upper-triangle
/// adjacency string over all admissible relabelings, packed big-endian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 || s.len() < 4 {
            return None;
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(CanonicalCode(bytes))
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn has_distinguished(&self) -> bool {
        self.0[1] == 1
    }

    /// Reconstructs the canonical representative. The distinguished vertex,
    /// when present, is vertex 0.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let pairs = n * (n - 1) / 2;
        let mut bits = 0u64;
        for (i, b) in self.0[2..].iter().enumerate() {
            bits |= (*b as u64) << (8 * (self.0.len() - 3 - i));
        }
        let total = 8 * (self.0.len() - 2);
        let mut mask = 0u64;
        for e in 0..pairs {
            if bits >> (total - 1 - e) & 1 == 1 {
                mask |= 1 << e;
            }
        }
        Graph::from_edge_mask(n, mask)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Minimum adjacency encoding over all vertex orders; with `distinguished`
/// set, only orders that put that vertex first are considered.
pub fn canonical_form(g: &Graph, distinguished: Option<usize>) -> Result<CanonicalCode> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(Error::SizeTooLarge {
            n,
            min: 1,
            max: MAX_CANON_N,
        });
    }
    if let Some(d) = distinguished {
        if d >= n {
            return Err(Error::IndexOutOfRange { vertex: d + 1, n });
        }
    }
    let pairs = n * (n - 1) / 2;

    // order[pos] = original vertex placed at position pos
    let mut order: Vec<usize> = match distinguished {
        Some(d) => std::iter::once(d)
            .chain((0..n).filter(|&v| v != d))
            .collect(),
        None => (0..n).collect(),
    };
    let fixed = usize::from(distinguished.is_some());

    let encode = |order: &[usize]| -> u64 {
        let mut code = 0u64;
        for a in 0..n {
            for b in a + 1..n {
                code = code << 1 | u64::from(g.has_edge(order[a], order[b]));
            }
        }
        code
    };

    let mut best = encode(&order);
    while next_permutation(&mut order[fixed..]) {
        best = best.min(encode(&order));
    }

    let nbytes = pairs.div_ceil(8);
    let padded = best << (nbytes * 8 - pairs);
    let mut bytes = vec![n as u8, u8::from(distinguished.is_some())];
    for i in (0..nbytes).rev() {
        bytes.push((padded >> (8 * i)) as u8);
    }
    Ok(CanonicalCode(bytes))
}

/// Lexicographic successor; returns false after the last permutation.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    #[test]
    fn relabeled_paths_agree() {
        let a = graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let b = graph_from_edges(3, &[(2, 1), (1, 3)]).unwrap();
        assert_eq!(
            canonical_form(&a, None).unwrap(),
            canonical_form(&b, None).unwrap()
        );
    }

    #[test]
    fn k3_differs_from_p3() {
        let k3 = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let p3 = graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert_ne!(
            canonical_form(&k3, None).unwrap(),
            canonical_form(&p3, None).unwrap()
        );
    }

    #[test]
    fn distinguished_vertex_matters() {
        let g =
            graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let c1 = canonical_form(&g, Some(0)).unwrap();
        let c2 = canonical_form(&g, Some(1)).unwrap();
        let c3 = canonical_form(&g, Some(2)).unwrap();
        assert_ne!(c1, c3);
        // v1 and v2 are swapped by an automorphism
        assert_eq!(c1, c2);
    }

    #[test]
    fn hex_and_graph_round_trip() {
        let g = graph_from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let c = canonical_form(&g, Some(3)).unwrap();
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()), Some(c.clone()));
        let rep = c.to_graph();
        assert_eq!(canonical_form(&rep, Some(0)).unwrap(), c);
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(9);
        assert!(matches!(
            canonical_form(&g, None),
            Err(Error::SizeTooLarge { .. })
        ));
    }
}
