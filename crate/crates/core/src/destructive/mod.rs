//! Vertex sets whose presence among the followers destroys controllability
//! for every leader choice outside them: pairs, triples and (at five
//! vertices) quadruples, each with an exact eigenvector certificate.

mod dcd;
mod qcd;
mod star;
mod support;
mod tcd;

pub use dcd::{all_dcd_pairs, is_dcd_pair, DcdCertificate};
pub use qcd::{
    derive_qcd_catalog, qcd_quads_5, CatalogRecord, QcdCatalog, QcdCertificate,
    CATALOG_GENERATOR_VERSION, EXPECTED_CONFIGURATION_COUNT,
};
pub use star::{lemma3_screen, PredicateOutcome, QuadRoles, StarScreen};
pub use support::eigenvector_support_search;
pub use tcd::{all_tcd_triples, classify_tcd_triple, induced_edge_count, TcdCertificate, TcdClass};

use crate::error::{Error, Result};
use crate::exact::{verify_eigenpair, Rational};
use crate::graph::Graph;

pub(crate) fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::IndexOutOfRange {
            vertex: v + 1,
            n: g.n(),
        });
    }
    Ok(())
}

pub(crate) fn verify_integer_pair(g: &Graph, lambda: i64, y: &[i64]) -> bool {
    let to_q = |v: i64| Rational::from_integer(v.into());
    let y: Vec<Rational> = y.iter().map(|&v| to_q(v)).collect();
    verify_eigenpair(&g.laplacian(), &to_q(lambda), &y).unwrap_or(false)
}
