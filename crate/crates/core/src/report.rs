//! Plain-text reports and DOT export.

use std::fmt::Write as _;

use crate::controllability::ControllabilityReport;
use crate::designer::{DesignOutput, QcdDesignSpec};
use crate::destructive::{DcdCertificate, QcdCertificate, TcdCertificate};
use crate::graph::Graph;
use crate::spectral::EigenPair;

pub const REPORT_VERSION: u32 = 1;

fn header(kind: &str) -> String {
    format!("# netctrl {kind} report v{REPORT_VERSION}\n")
}

fn edge_line(g: &Graph) -> String {
    let e: Vec<String> = g
        .edges()
        .iter()
        .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
        .collect();
    e.join(" ")
}

fn ints(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", s.join(", "))
}

fn pair_line(pair: &EigenPair) -> String {
    format!(
        "lambda={} vector=[{}]",
        pair.eigenvalue_string(),
        pair.vector_strings().join(", ")
    )
}

pub fn controllability_text(r: &ControllabilityReport) -> String {
    let mut out = header("controllability");
    let verdict = |c: bool| if c { "controllable" } else { "uncontrollable" };
    let _ = writeln!(out, "n: {}", r.graph.n());
    let _ = writeln!(out, "edges: {}", edge_line(&r.graph));
    let _ = writeln!(out, "leaders: {:?}", r.leaders.labels());
    let _ = writeln!(out, "verdict: {}", verdict(r.controllable()));
    let _ = writeln!(out, "shared_eigenvalue: {}", r.shared_eigenvalue_found);
    let _ = writeln!(out, "gcd: {}", r.gcd_poly);
    let _ = writeln!(out, "gcd_agrees: {}", r.gcd_agrees());
    for c in &r.certificates {
        let _ = writeln!(
            out,
            "certificate: support={:?} {}",
            c.support_labels(),
            pair_line(&c.pair)
        );
    }
    out
}

/// Certificates found by `detect`; `qcd` is `None` when not requested.
#[derive(Clone, Debug, Default)]
pub struct Detection {
    pub dcd: Option<Vec<DcdCertificate>>,
    pub tcd: Option<Vec<TcdCertificate>>,
    pub qcd: Option<Vec<QcdCertificate>>,
}

impl Detection {
    pub fn is_empty(&self) -> bool {
        [
            self.dcd.as_ref().map(Vec::len),
            self.tcd.as_ref().map(Vec::len),
            self.qcd.as_ref().map(Vec::len),
        ]
        .iter()
        .all(|c| c.unwrap_or(0) == 0)
    }
}

pub fn detection_text(g: &Graph, d: &Detection) -> String {
    let mut out = header("detection");
    let _ = writeln!(out, "n: {}", g.n());
    let _ = writeln!(out, "edges: {}", edge_line(g));
    if let Some(dcd) = &d.dcd {
        let _ = writeln!(out, "dcd: {}", dcd.len());
        for c in dcd {
            let _ = writeln!(
                out,
                "dcd {:?} adjacent={} lambda={} vector={}",
                c.labels(),
                c.adjacent,
                c.eigenvalue,
                ints(&c.vector)
            );
        }
    }
    if let Some(tcd) = &d.tcd {
        let _ = writeln!(out, "tcd: {}", tcd.len());
        for c in tcd {
            let _ = writeln!(
                out,
                "tcd {:?} class={} roles={:?} lambda={} vector={}",
                c.sorted_labels(),
                c.class,
                c.labels(),
                c.eigenvalue,
                ints(&c.vector)
            );
        }
    }
    if let Some(qcd) = &d.qcd {
        let _ = writeln!(out, "qcd: {}", qcd.len());
        for c in qcd {
            let _ = writeln!(
                out,
                "qcd {:?} k={} code={} {}",
                c.quad_labels(),
                c.k + 1,
                c.code.to_hex(),
                pair_line(&c.pair)
            );
        }
    }
    out
}

pub fn design_text(spec: &QcdDesignSpec, d: &DesignOutput) -> String {
    let mut out = header("design");
    let r = spec.roles;
    let _ = writeln!(out, "n: {}", d.graph.n());
    let _ = writeln!(
        out,
        "roles: p={} q={} s1={} s2={} t1={} t2={}",
        r.p, r.q, r.s1, r.s2, r.t1, r.t2
    );
    let _ = writeln!(out, "sigma: {}", d.sigma);
    let _ = writeln!(out, "lambda: {}", d.eigenvalue);
    let _ = writeln!(out, "eta: {}", ints(&d.eta));
    if !d.added_edges.is_empty() {
        let e: Vec<String> = d
            .added_edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        let _ = writeln!(out, "connectivity_edges: {}", e.join(" "));
    }
    let _ = writeln!(out, "edges: {}", edge_line(&d.graph));
    let _ = writeln!(out, "verified: L*eta = {}*eta", d.eigenvalue);
    out
}

/// Drawing hints for [`to_dot`]; all vertices 0-based.
#[derive(Clone, Debug, Default)]
pub struct DotAnnotations {
    pub leaders: Vec<usize>,
    pub shaded: Vec<usize>,
    /// One label per vertex, e.g. eigenvector entries.
    pub values: Option<Vec<String>>,
}

pub fn to_dot(g: &Graph, notes: &DotAnnotations) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let mut attrs = Vec::new();
        if notes.leaders.contains(&v) {
            attrs.push("shape=square".to_string());
        }
        if notes.shaded.contains(&v) {
            attrs.push("style=filled".to_string());
            attrs.push("fillcolor=lightgray".to_string());
        }
        if let Some(vals) = &notes.values {
            attrs.push(format!("xlabel=\"{}\"", vals[v]));
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {};", v + 1);
        } else {
            let _ = writeln!(out, "  {} [{}];", v + 1, attrs.join(", "));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::controllability::controllability_report;
    use crate::graph::{graph_from_edges, LeaderSet};

    #[test]
    fn k3_report() {
        let g = graph_from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let r = controllability_report(&g, &LeaderSet::new(3, &[1]).unwrap()).unwrap();
        let text = controllability_text(&r);
        assert!(text.starts_with("# netctrl controllability report v1\n"));
        assert!(text.contains("verdict: uncontrollable"));
        assert!(text.contains("certificate: support=[2, 3] lambda=3 vector=[0, 1, -1]"));
    }

    #[test]
    fn dot_shapes() {
        let g = graph_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let plain = to_dot(&g, &DotAnnotations::default());
        assert_eq!(
            plain,
            "graph G {\n  node [shape=circle];\n  1;\n  2;\n  3;\n  1 -- 2;\n  2 -- 3;\n}\n"
        );
        let notes = DotAnnotations {
            leaders: vec![0],
            shaded: vec![1, 2],
            values: Some(vec!["0".into(), "1".into(), "-1".into()]),
        };
        let dot = to_dot(&g, &notes);
        assert!(dot.contains("1 [shape=square, xlabel=\"0\"]"));
        assert!(dot.contains("3 [style=filled, fillcolor=lightgray, xlabel=\"-1\"]"));
    }
}
