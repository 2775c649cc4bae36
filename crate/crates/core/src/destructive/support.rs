use super::check_vertex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{EigenPair, Spectrum};

/// Decides whether `L(g)` has an eigenvector that is nonzero exactly on
/// `support` (0-based), returning a normalized witness.
///
/// Callers querying many supports of one graph should build a
/// [`Spectrum`] once and use [`Spectrum::with_support`].
pub fn eigenvector_support_search(g: &Graph, support: &[usize]) -> Result<Option<EigenPair>> {
    let mut mask = 0u64;
    for &v in support {
        check_vertex(g, v)?;
        mask |= 1 << v;
    }
    if mask == 0 || mask.count_ones() as usize == g.n() {
        return Err(Error::EmptySupport);
    }
    g.require_connected()?;
    Ok(Spectrum::new(g)?.with_support(mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::graph::graph_from_edges;

    #[test]
    fn examples() {
        let k3 = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let w = eigenvector_support_search(&k3, &[1, 2]).unwrap().unwrap();
        assert_eq!(
            w.rational_eigenvalue(),
            Some(&Rational::from_integer(3.into()))
        );
        assert_eq!(w.integer_vector(), Some(vec![0, 1, -1]));

        let lemma4 =
            graph_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let w = eigenvector_support_search(&lemma4, &[1, 2, 3, 4])
            .unwrap()
            .unwrap();
        assert_eq!(
            w.rational_eigenvalue(),
            Some(&Rational::from_integer(5.into()))
        );
        assert_eq!(w.integer_vector(), Some(vec![0, -3, 1, 1, 1]));

        let p4 = graph_from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(eigenvector_support_search(&p4, &[1, 2]).unwrap().is_none());
        assert_eq!(
            eigenvector_support_search(&p4, &[]),
            Err(Error::EmptySupport)
        );
        assert_eq!(
            eigenvector_support_search(&p4, &[0, 1, 2, 3]),
            Err(Error::EmptySupport)
        );
    }
}
