use super::Graph;
use crate::error::{Error, Result};

/// Largest `n` accepted by the exhaustive enumerator.
pub const MAX_ENUMERATION_N: usize = 8;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Every connected labeled graph on `n` vertices, in increasing edge-mask
/// order (see [`Graph::from_edge_mask`]).
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::SizeTooLarge {
            n,
            min: 2,
            max: MAX_ENUMERATION_N,
        });
    }
    Ok(ConnectedGraphs {
        n,
        next: 0,
        end: 1u64 << pair_count(n),
    })
}

#[derive(Clone, Debug)]
pub struct ConnectedGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        // a connected graph needs at least n-1 edges
        let min_edges = self.n as u32 - 1;
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if mask.count_ones() < min_edges {
                continue;
            }
            let g = Graph::from_edge_mask(self.n, mask);
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}
