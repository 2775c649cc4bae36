//! Simple undirected graphs, Laplacians and leader/follower partitions.
//!
//! Vertices are 0-based inside the crate. Every constructor that takes
//! user-supplied vertex numbers (`graph_from_edges`, `LeaderSet::new`, the
//! edge-list parser) expects 1-based labels and converts at the boundary.

mod canon;
mod edgelist;
mod enumerate;

pub use canon::{canonical_form, CanonicalCode};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use enumerate::{enumerate_connected_graphs, pair_count, ConnectedGraphs, MAX_ENUMERATION_N};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count; one adjacency row fits a `u64`.
pub const MAX_VERTICES: usize = 64;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph without edges. Panics when `n` is outside `1..=64`.
    pub fn empty(n: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&n),
            "vertex count {n} out of range"
        );
        Graph { n, adj: vec![0; n] }
    }

    /// Builds a graph from 0-based edge pairs.
    pub fn from_edges0(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(Error::SizeTooLarge {
                n,
                min: 1,
                max: MAX_VERTICES,
            });
        }
        let mut g = Graph { n, adj: vec![0; n] };
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u + 1));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Decodes an edge mask: bit `e` selects the `e`-th pair `(i, j)`, `i < j`,
    /// in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        g
    }

    /// Inverse of [`Graph::from_edge_mask`]. Only meaningful for `n <= 11`.
    pub fn edge_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Adjacency row of `v` as a bit set.
    pub fn neighbor_bits(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as sorted 0-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = vec![vec![0i64; self.n]; self.n];
        for (u, row) in l.iter_mut().enumerate() {
            row[u] = self.degree(u) as i64;
            for v in self.neighbors(u) {
                row[v] = -1;
            }
        }
        l
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        g
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::DisconnectedGraph)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        write!(f, "Graph(n={}, [{}])", self.n, edges.join(" "))
    }
}

/// Builds a graph from 1-based edge pairs; duplicate edges collapse.
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(Error::SizeTooLarge {
            n,
            min: 1,
            max: MAX_VERTICES,
        });
    }
    let mut zero_based = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(Error::IndexOutOfRange { vertex: w, n });
            }
        }
        zero_based.push((u - 1, v - 1));
    }
    Graph::from_edges0(n, &zero_based)
}

pub fn laplacian(g: &Graph) -> IntMatrix {
    g.laplacian()
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

/// Sorted set of distinct leader vertices, with at least one follower left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeaderSet {
    n: usize,
    leaders: Vec<usize>,
}

impl LeaderSet {
    /// From 1-based vertex numbers.
    pub fn new(n: usize, leaders: &[usize]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(leaders.len());
        for &v in leaders {
            if v == 0 || v > n {
                return Err(Error::InvalidLeader(v));
            }
            zero_based.push(v - 1);
        }
        Self::from_indices0(n, &zero_based)
    }

    pub fn from_indices0(n: usize, leaders: &[usize]) -> Result<Self> {
        if leaders.is_empty() {
            return Err(Error::EmptyLeaderSet);
        }
        let mut sorted = leaders.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidLeader(w[0] + 1));
            }
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidLeader(v + 1));
        }
        if sorted.len() >= n {
            return Err(Error::EmptyFollowerSet);
        }
        Ok(LeaderSet { n, leaders: sorted })
    }

    /// Leader set from a bit mask over `0..n`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let v: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        Self::from_indices0(n, &v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based leader indices, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.leaders
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.leaders.binary_search(&v).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.leaders.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Followers in ascending order.
    pub fn followers(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.contains(v)).collect()
    }

    /// 1-based labels for output.
    pub fn labels(&self) -> Vec<usize> {
        self.leaders.iter().map(|v| v + 1).collect()
    }
}

/// Follower dynamics `x' = -F x - R z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Principal submatrix of `L` on the follower rows and columns.
    pub f: IntMatrix,
    /// Follower rows of the leader columns of `L`.
    pub r: IntMatrix,
    /// `follower_index[i]` is the original vertex of follower position `i`.
    pub follower_index: Vec<usize>,
    pub leader_index: Vec<usize>,
}

pub fn follower_partition(g: &Graph, leaders: &LeaderSet) -> Result<Partition> {
    if leaders.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "leader set for {} vertices applied to a graph with {}",
            leaders.n(),
            g.n()
        )));
    }
    let l = g.laplacian();
    let followers = leaders.followers();
    if followers.is_empty() {
        return Err(Error::EmptyFollowerSet);
    }
    let f = followers
        .iter()
        .map(|&i| followers.iter().map(|&j| l[i][j]).collect())
        .collect();
    let r = followers
        .iter()
        .map(|&i| leaders.indices().iter().map(|&j| l[i][j]).collect())
        .collect();
    Ok(Partition {
        f,
        r,
        follower_index: followers,
        leader_index: leaders.indices().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn p3() -> Graph {
        graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    pub(crate) fn lemma4_graph() -> Graph {
        graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn builds_small_graphs() {
        assert_eq!(k3().degrees(), vec![2, 2, 2]);
        assert_eq!(p3().degrees(), vec![1, 2, 1]);
        assert_eq!(lemma4_graph().degrees(), vec![4, 4, 2, 2, 2]);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = graph_from_edges(3, &[(1, 2), (2, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            graph_from_edges(3, &[(1, 4)]),
            Err(Error::IndexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            graph_from_edges(3, &[(0, 1)]),
            Err(Error::IndexOutOfRange { vertex: 0, n: 3 })
        );
        assert_eq!(graph_from_edges(3, &[(2, 2)]), Err(Error::SelfLoop(2)));
        assert!(matches!(
            graph_from_edges(65, &[]),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn laplacians() {
        let p2 = graph_from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(p2.laplacian(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(
            k3().laplacian(),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );

        let g = lemma4_graph();
        let l = g.laplacian();
        let edges = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)];
        for i in 0..5 {
            assert_eq!(l[i][i], [4, 4, 2, 2, 2][i]);
            for j in 0..5 {
                if i != j {
                    let e = edges.contains(&(i.min(j) + 1, i.max(j) + 1));
                    assert_eq!(l[i][j], if e { -1 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(k3().is_connected());
        assert!(!Graph::empty(2).is_connected());
        let p5 = graph_from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(p5.is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn partitions() {
        let part = follower_partition(&k3(), &LeaderSet::new(3, &[1]).unwrap()).unwrap();
        assert_eq!(part.f, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(part.r, vec![vec![-1], vec![-1]]);
        assert_eq!(part.follower_index, vec![1, 2]);

        let part = follower_partition(&p3(), &LeaderSet::new(3, &[2]).unwrap()).unwrap();
        assert_eq!(part.f, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(part.r, vec![vec![-1], vec![-1]]);

        let part = follower_partition(&p3(), &LeaderSet::new(3, &[1]).unwrap()).unwrap();
        assert_eq!(part.f, vec![vec![2, -1], vec![-1, 1]]);
        assert_eq!(part.r, vec![vec![-1], vec![0]]);
    }

    #[test]
    fn leader_set_errors() {
        assert_eq!(LeaderSet::new(3, &[]), Err(Error::EmptyLeaderSet));
        assert_eq!(LeaderSet::new(3, &[1, 2, 3]), Err(Error::EmptyFollowerSet));
        assert_eq!(LeaderSet::new(3, &[4]), Err(Error::InvalidLeader(4)));
        assert_eq!(LeaderSet::new(3, &[2, 2]), Err(Error::InvalidLeader(2)));
    }

    #[test]
    fn edge_mask_round_trip() {
        let g = lemma4_graph();
        assert_eq!(Graph::from_edge_mask(5, g.edge_mask()), g);
    }
}
