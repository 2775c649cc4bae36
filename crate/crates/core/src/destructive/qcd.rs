//! Quadruples on five vertices: the catalog of (graph, fifth vertex) shapes
//! admitting an eigenvector that vanishes exactly at the fifth vertex.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::star::{lemma3_screen, QuadRoles, StarScreen};
use super::tcd::induced_edge_count;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, enumerate_connected_graphs, CanonicalCode, Graph};
use crate::spectral::{EigenPair, Spectrum};

/// Bumped whenever derivation or the text format changes.
pub const CATALOG_GENERATOR_VERSION: u32 = 1;

/// Number of five-vertex configurations the catalog is expected to hold.
pub const EXPECTED_CONFIGURATION_COUNT: usize = 15;

const HEADER: &str = "# netctrl qcd catalog";

const BUNDLED: &str = include_str!("../../data/qcd_catalog_5.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct QcdCertificate {
    /// 0-based, ascending.
    pub quad: [usize; 4],
    pub k: usize,
    pub pair: EigenPair,
    pub code: CanonicalCode,
}

impl QcdCertificate {
    pub fn quad_labels(&self) -> [usize; 4] {
        self.quad.map(|v| v + 1)
    }
}

/// Oracle outcome for one labeled graph and one fifth vertex.
#[derive(Clone, Debug)]
pub struct CatalogRecord {
    pub edge_mask: u64,
    pub k: usize,
    pub code: CanonicalCode,
    pub witness: Option<EigenPair>,
    /// How many quad vertices the fifth vertex is adjacent to.
    pub k_quad_neighbors: u32,
    /// Present when the quad induces a 3-star.
    pub star_screen: Option<StarScreen>,
}

#[derive(Clone, Debug, Default)]
pub struct QcdCatalog {
    entries: BTreeSet<CanonicalCode>,
    log: Vec<CatalogRecord>,
    discrepancies: Vec<String>,
}

impl QcdCatalog {
    /// The committed catalog shipped with the crate.
    pub fn bundled() -> QcdCatalog {
        QcdCatalog::from_text(BUNDLED).expect("bundled catalog parses")
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.entries.contains(code)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.entries.iter()
    }

    /// Empty for catalogs loaded from text.
    pub fn log(&self) -> &[CatalogRecord] {
        &self.log
    }

    /// Cross-check failures and the count comparison, if they differ.
    pub fn discrepancies(&self) -> &[String] {
        &self.discrepancies
    }

    pub fn count_report(&self) -> String {
        let n = self.len();
        if n == EXPECTED_CONFIGURATION_COUNT {
            format!("{n} configurations, matching the expected {EXPECTED_CONFIGURATION_COUNT}")
        } else {
            format!(
                "{n} configurations, expected {EXPECTED_CONFIGURATION_COUNT} (differs by {})",
                n as i64 - EXPECTED_CONFIGURATION_COUNT as i64
            )
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{HEADER}\n# generator: {CATALOG_GENERATOR_VERSION}\n# vertices: 5\n# entries: {}\n",
            self.len()
        );
        for code in &self.entries {
            out.push_str(&code.to_hex());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<QcdCatalog> {
        let mut entries = BTreeSet::new();
        let mut declared = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                if let Some(v) = meta.trim().strip_prefix("entries:") {
                    declared = v.trim().parse::<usize>().ok();
                }
                continue;
            }
            let code = CanonicalCode::from_hex(line)
                .filter(|c| c.n() == 5 && c.has_distinguished())
                .ok_or_else(|| Error::Parse {
                    line: i + 1,
                    message: format!("bad catalog code `{line}`"),
                })?;
            entries.insert(code);
        }
        if declared.is_some_and(|d| d != entries.len()) {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "header declares {} entries, found {}",
                    declared.unwrap(),
                    entries.len()
                ),
            });
        }
        Ok(QcdCatalog {
            entries,
            ..Default::default()
        })
    }
}

/// Runs the support oracle on every connected labeled five-vertex graph and
/// every choice of fifth vertex.
pub fn derive_qcd_catalog() -> QcdCatalog {
    let graphs: Vec<Graph> = enumerate_connected_graphs(5)
        .expect("n=5 is in range")
        .collect();
    let log: Vec<CatalogRecord> = graphs.par_iter().flat_map_iter(records_for).collect();

    let mut entries = BTreeSet::new();
    let mut discrepancies = Vec::new();
    for rec in &log {
        if rec.witness.is_none() {
            continue;
        }
        entries.insert(rec.code.clone());
        let g = Graph::from_edge_mask(5, rec.edge_mask);
        if !(2..=4).contains(&rec.k_quad_neighbors) {
            discrepancies.push(format!(
                "{g:?} with k={}: fifth vertex sees {} quad vertices",
                rec.k + 1,
                rec.k_quad_neighbors
            ));
        }
        if rec
            .star_screen
            .as_ref()
            .is_some_and(StarScreen::any_violated)
        {
            discrepancies.push(format!(
                "{g:?} with k={}: support-4 eigenvector but 3-star screen violated",
                rec.k + 1
            ));
        }
    }
    let mut catalog = QcdCatalog {
        entries,
        log,
        discrepancies,
    };
    if catalog.len() != EXPECTED_CONFIGURATION_COUNT {
        let report = catalog.count_report();
        catalog.discrepancies.push(report);
    }
    catalog
}

fn records_for(g: &Graph) -> Vec<CatalogRecord> {
    let spectrum = Spectrum::new(g).expect("five-vertex characteristic polynomials factor");
    (0..5)
        .map(|k| {
            let quad_mask = 0b11111 & !(1u64 << k);
            CatalogRecord {
                edge_mask: g.edge_mask(),
                k,
                code: canonical_form(g, Some(k)).expect("n=5 is in range"),
                witness: spectrum.with_support(quad_mask),
                k_quad_neighbors: (g.neighbor_bits(k) & quad_mask).count_ones(),
                star_screen: star_roles(g, k)
                    .map(|r| lemma3_screen(g, &r).expect("roles form a 3-star")),
            }
        })
        .collect()
}

/// Roles for a quad inducing a 3-star, chosen so that the fifth vertex's
/// adjacency matches one of the screened situations when possible.
fn star_roles(g: &Graph, k: usize) -> Option<QuadRoles> {
    let quad_mask = 0b11111 & !(1u64 << k);
    if induced_edge_count(g, quad_mask) != 3 {
        return None;
    }
    let quad: Vec<usize> = (0..5).filter(|&v| v != k).collect();
    let s1 = *quad
        .iter()
        .find(|&&v| (g.neighbor_bits(v) & quad_mask).count_ones() == 3)?;
    let (mut seen, mut unseen): (Vec<usize>, Vec<usize>) = quad
        .iter()
        .copied()
        .filter(|&v| v != s1)
        .partition(|&v| g.has_edge(k, v));
    seen.append(&mut unseen);
    Some(QuadRoles {
        s1,
        s2: seen[0],
        t1: seen[1],
        t2: seen[2],
        k,
    })
}

/// Quads of a five-vertex graph that support an eigenvector vanishing at the
/// remaining vertex. Catalog membership and the oracle must agree.
pub fn qcd_quads_5(g: &Graph, catalog: &QcdCatalog) -> Result<Vec<QcdCertificate>> {
    if g.n() != 5 {
        return Err(Error::WrongSize {
            expected: 5,
            found: g.n(),
        });
    }
    g.require_connected()?;
    let spectrum = Spectrum::new(g)?;
    let mut out = Vec::new();
    for k in 0..5 {
        let code = canonical_form(g, Some(k))?;
        let listed = catalog.contains(&code);
        let quad_mask = 0b11111 & !(1u64 << k);
        let witness = spectrum.with_support(quad_mask);
        if listed != witness.is_some() {
            return Err(Error::CatalogDisagreement(format!(
                "{g:?} with k={}: catalog says {listed}, eigenvector search says {}",
                k + 1,
                witness.is_some()
            )));
        }
        if let Some(pair) = witness {
            let quad: Vec<usize> = (0..5).filter(|&v| v != k).collect();
            out.push(QcdCertificate {
                quad: [quad[0], quad[1], quad[2], quad[3]],
                k,
                pair,
                code,
            });
        }
    }
    Ok(out)
}
