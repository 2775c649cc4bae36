//! Constructive generator of graphs in which four chosen vertices carry an
//! eigenvector `(1, 1, -1, -1)`, making the system uncontrollable for every
//! leader set that avoids them.
//!
//! Specs use 1-based vertex labels throughout, matching the file format.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{verify_eigenpair, Rational};
use crate::graph::Graph;

/// Smallest vertex count accepted by [`random_design`] and the validator.
pub const MIN_DESIGN_VERTICES: usize = 7;

const MAX_RETRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub p: usize,
    pub q: usize,
    pub s1: usize,
    pub s2: usize,
    pub t1: usize,
    pub t2: usize,
}

impl Roles {
    fn all(&self) -> [(&'static str, usize); 6] {
        [
            ("p", self.p),
            ("q", self.q),
            ("s1", self.s1),
            ("s2", self.s2),
            ("t1", self.t1),
            ("t2", self.t2),
        ]
    }

    pub fn quad(&self) -> [usize; 4] {
        [self.s1, self.s2, self.t1, self.t2]
    }
}

/// How one quad vertex attaches to `{p, q}` and the opposite pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "option")]
pub enum Step1Choice {
    /// Adjacent to both `p` and `q` and to exactly `opposite` in the other pair.
    #[serde(rename = "I")]
    OptI { opposite: usize },
    /// Adjacent to neither `p` nor `q` and to both of the other pair.
    #[serde(rename = "II")]
    OptII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step1 {
    pub s1: Step1Choice,
    pub s2: Step1Choice,
    pub t1: Step1Choice,
    pub t2: Step1Choice,
}

/// Quad neighbors of `p` and of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step3 {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcdDesignSpec {
    pub n: usize,
    /// Edge `s1-s2`.
    #[serde(default)]
    pub case_ii_s: bool,
    /// Edge `t1-t2`.
    #[serde(default)]
    pub case_ii_t: bool,
    /// Remaining vertices adjacent to all four quad vertices.
    #[serde(default)]
    pub omega_quad_neighbors: Vec<usize>,
    /// Remaining vertices adjacent to both `p` and `q`.
    #[serde(default)]
    pub omega_pq_neighbors: Vec<usize>,
    #[serde(default)]
    pub pq_edge: bool,
    /// Any further edges; every rule is checked on the final graph.
    #[serde(default)]
    pub extra_edges: Vec<[usize; 2]>,
    /// Join disconnected remaining vertices by a path attached to `p` and `q`.
    #[serde(default = "yes")]
    pub auto_connect: bool,
    pub roles: Roles,
    pub step1: Step1,
    pub step3: Step3,
}

impl QcdDesignSpec {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn from_toml(text: &str) -> Result<QcdDesignSpec> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map_or(1, |s| text[..s.start].lines().count().max(1)),
            message: e.message().to_string(),
        })
    }

    /// Vertices outside the six roles, ascending.
    pub fn omega(&self) -> Vec<usize> {
        let roles: Vec<usize> = self.roles.all().iter().map(|r| r.1).collect();
        (1..=self.n).filter(|v| !roles.contains(v)).collect()
    }

    pub fn sigma(&self) -> usize {
        self.omega_quad_neighbors.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: String,
    pub message: String,
}

impl Violation {
    fn new(step: &str, message: impl Into<String>) -> Self {
        Violation {
            step: step.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.step, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignOutput {
    pub graph: Graph,
    /// `+1` on `s1, s2`, `-1` on `t1, t2`, zero elsewhere.
    pub eta: Vec<i64>,
    pub eigenvalue: i64,
    pub sigma: usize,
    /// Edges added for connectivity, 1-based.
    pub added_edges: Vec<(usize, usize)>,
}

/// Graph assembled from the spec, with the connectivity edges it needed.
fn assemble(spec: &QcdDesignSpec) -> (Graph, Vec<(usize, usize)>, Vec<Violation>) {
    let n = spec.n;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut bad = Vec::new();
    let r = spec.roles;
    for (v, choice, pair) in [
        (r.s1, spec.step1.s1, [r.t1, r.t2]),
        (r.s2, spec.step1.s2, [r.t1, r.t2]),
        (r.t1, spec.step1.t1, [r.s1, r.s2]),
        (r.t2, spec.step1.t2, [r.s1, r.s2]),
    ] {
        match choice {
            Step1Choice::OptI { opposite } => edges.push((v, opposite)),
            Step1Choice::OptII => edges.extend(pair.iter().map(|&o| (v, o))),
        }
    }
    edges.extend(spec.step3.p.iter().map(|&v| (r.p, v)));
    edges.extend(spec.step3.q.iter().map(|&v| (r.q, v)));
    if spec.case_ii_s {
        edges.push((r.s1, r.s2));
    }
    if spec.case_ii_t {
        edges.push((r.t1, r.t2));
    }
    for &w in &spec.omega_quad_neighbors {
        edges.extend(r.quad().iter().map(|&v| (w, v)));
    }
    for &w in &spec.omega_pq_neighbors {
        edges.extend([(w, r.p), (w, r.q)]);
    }
    if spec.pq_edge {
        edges.push((r.p, r.q));
    }
    edges.extend(spec.extra_edges.iter().map(|e| (e[0], e[1])));

    let mut g = Graph::empty(n);
    let mut ok_edges = Vec::new();
    for (u, v) in edges {
        if u == 0 || v == 0 || u > n || v > n || u == v {
            bad.push(Violation::new(
                "Step 4 d)",
                format!("edge {u}-{v} is not a valid edge on 1..={n}"),
            ));
        } else {
            ok_edges.push((u - 1, v - 1));
        }
    }
    g = Graph::from_edges0(n, &ok_edges).unwrap_or(g);

    let mut added = Vec::new();
    if spec.auto_connect && !g.is_connected() {
        let omega = spec.omega();
        let mut link = |g: &mut Graph, a: usize, b: usize| {
            if !g.has_edge(a - 1, b - 1) {
                let mut e = g.edges();
                e.push((a - 1, b - 1));
                *g = Graph::from_edges0(n, &e).unwrap();
                added.push((a.min(b), a.max(b)));
            }
        };
        for pair in omega.windows(2) {
            if !same_component(&g, pair[0] - 1, pair[1] - 1) {
                link(&mut g, pair[0], pair[1]);
            }
        }
        if let Some(&first) = omega.first() {
            if !same_component(&g, first - 1, r.p - 1) {
                link(&mut g, first, r.p);
                link(&mut g, first, r.q);
            }
        }
    }
    (g, added, bad)
}

fn same_component(g: &Graph, a: usize, b: usize) -> bool {
    let mut seen = 1u64 << a;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in (0..g.n()).filter(|v| frontier >> v & 1 == 1) {
            next |= g.neighbor_bits(v);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen >> b & 1 == 1
}

/// Every rule violated by the spec, checked on the assembled graph.
pub fn validate_design(spec: &QcdDesignSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = spec.n;
    if n < MIN_DESIGN_VERTICES {
        out.push(Violation::new(
            "Roles",
            format!("need at least {MIN_DESIGN_VERTICES} vertices, got {n}"),
        ));
    }
    if n > crate::graph::MAX_VERTICES {
        out.push(Violation::new(
            "Roles",
            format!("at most {} vertices supported", crate::graph::MAX_VERTICES),
        ));
        return out;
    }
    let roles = spec.roles.all();
    for (i, (name, v)) in roles.iter().enumerate() {
        if *v == 0 || *v > n {
            out.push(Violation::new(
                "Roles",
                format!("{name}={v} is outside 1..={n}"),
            ));
        }
        if let Some((other, _)) = roles[..i].iter().find(|(_, w)| w == v) {
            out.push(Violation::new(
                "Roles",
                format!("{other} and {name} are both vertex {v}"),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let omega = spec.omega();
    for &w in spec
        .omega_quad_neighbors
        .iter()
        .chain(&spec.omega_pq_neighbors)
    {
        if !omega.contains(&w) {
            out.push(Violation::new(
                "Step 4",
                format!("vertex {w} is not one of the remaining vertices"),
            ));
        }
    }

    let (g, _, bad) = assemble(spec);
    out.extend(bad);
    let r = spec.roles;
    let adj = |a: usize, b: usize| g.has_edge(a - 1, b - 1);

    let sides = [
        (
            "Step 1",
            [(r.s1, "s1", spec.step1.s1), (r.s2, "s2", spec.step1.s2)],
            [r.t1, r.t2],
        ),
        (
            "Step 2",
            [(r.t1, "t1", spec.step1.t1), (r.t2, "t2", spec.step1.t2)],
            [r.s1, r.s2],
        ),
    ];
    for (step, members, opposite) in sides {
        for (v, name, choice) in members {
            let to_pq = [adj(v, r.p), adj(v, r.q)];
            let to_opp: Vec<usize> = opposite.iter().copied().filter(|&o| adj(v, o)).collect();
            match choice {
                Step1Choice::OptI { opposite: o } => {
                    let label = format!("{step} i)");
                    if !opposite.contains(&o) {
                        out.push(Violation::new(
                            &label,
                            format!("{name}={v}: option I names {o}, not in the opposite pair"),
                        ));
                    }
                    if to_pq != [true, true] {
                        out.push(Violation::new(
                            &label,
                            format!("{name}={v} must be adjacent to both p and q"),
                        ));
                    }
                    if to_opp.len() != 1 {
                        out.push(Violation::new(
                            &label,
                            format!("{name}={v} must be adjacent to exactly one of {opposite:?}, found {to_opp:?}"),
                        ));
                    }
                }
                Step1Choice::OptII => {
                    let label = format!("{step} ii)");
                    if to_pq != [false, false] {
                        out.push(Violation::new(
                            &label,
                            format!("{name}={v} must be adjacent to neither p nor q"),
                        ));
                    }
                    if to_opp.len() != 2 {
                        out.push(Violation::new(
                            &label,
                            format!("{name}={v} must be adjacent to both of {opposite:?}, found {to_opp:?}"),
                        ));
                    }
                }
            }
        }
    }

    for (name, k) in [("p", r.p), ("q", r.q)] {
        let s = [r.s1, r.s2].iter().filter(|&&v| adj(k, v)).count();
        let t = [r.t1, r.t2].iter().filter(|&&v| adj(k, v)).count();
        if s != 1 || t != 1 {
            out.push(Violation::new(
                "Step 3",
                format!(
                    "{name}={k} must see exactly one of s1,s2 and one of t1,t2 (sees {s} and {t})"
                ),
            ));
        }
    }

    if adj(r.s1, r.s2) != spec.case_ii_s {
        out.push(Violation::new(
            "Case II",
            format!(
                "edge s1-s2 presence must equal case_ii_s={}",
                spec.case_ii_s
            ),
        ));
    }
    if adj(r.t1, r.t2) != spec.case_ii_t {
        out.push(Violation::new(
            "Case II",
            format!(
                "edge t1-t2 presence must equal case_ii_t={}",
                spec.case_ii_t
            ),
        ));
    }

    for &w in &omega {
        let pq = [adj(w, r.p), adj(w, r.q)];
        if pq[0] != pq[1] {
            out.push(Violation::new(
                "Step 4 a)",
                format!("vertex {w} is adjacent to only one of p and q"),
            ));
        }
        let seen = r.quad().iter().filter(|&&v| adj(w, v)).count();
        if seen != 0 && seen != 4 {
            out.push(Violation::new(
                "Step 4 b)",
                format!("vertex {w} is adjacent to {seen} of the quad; must be all four or none"),
            ));
        }
    }

    if !g.is_connected() {
        out.push(Violation::new(
            "Connectivity",
            "designed graph is not connected",
        ));
    }
    out
}

pub fn build_design(spec: &QcdDesignSpec) -> Result<DesignOutput> {
    let violations = validate_design(spec);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    let (graph, added_edges, _) = assemble(spec);
    let r = spec.roles;
    let sigma = spec.sigma();
    let mut eta = vec![0i64; spec.n];
    eta[r.s1 - 1] = 1;
    eta[r.s2 - 1] = 1;
    eta[r.t1 - 1] = -1;
    eta[r.t2 - 1] = -1;
    let eigenvalue = sigma as i64 + 4;

    for (v, choice, paired) in [
        (r.s1, spec.step1.s1, spec.case_ii_s),
        (r.s2, spec.step1.s2, spec.case_ii_s),
        (r.t1, spec.step1.t1, spec.case_ii_t),
        (r.t2, spec.step1.t2, spec.case_ii_t),
    ] {
        let base = match choice {
            Step1Choice::OptI { .. } => sigma + 3,
            Step1Choice::OptII => sigma + 2,
        };
        assert_eq!(
            graph.degree(v - 1),
            base + paired as usize,
            "degree of quad vertex {v}"
        );
    }

    let q = |v: i64| Rational::from_integer(v.into());
    let y: Vec<Rational> = eta.iter().map(|&v| q(v)).collect();
    let holds = verify_eigenpair(&graph.laplacian(), &q(eigenvalue), &y)?;
    assert!(holds, "designed vector is not an eigenvector");
    Ok(DesignOutput {
        graph,
        eta,
        eigenvalue,
        sigma,
        added_edges,
    })
}

/// The nine-vertex shapes with `p=1, q=3, s1=2, s2=4, t1=5, t2=6`: `s1` and
/// `t1` take option I, `sigma` of the vertices `7, 8, 9` see the quad and the
/// rest hang off `p` and `q`.
pub fn nine_vertex_spec(sigma: usize) -> QcdDesignSpec {
    assert!(sigma <= 3);
    let roles = Roles {
        p: 1,
        q: 3,
        s1: 2,
        s2: 4,
        t1: 5,
        t2: 6,
    };
    QcdDesignSpec {
        n: 9,
        case_ii_s: false,
        case_ii_t: false,
        omega_quad_neighbors: (7..7 + sigma).collect(),
        omega_pq_neighbors: (7 + sigma..=9).collect(),
        pq_edge: false,
        extra_edges: Vec::new(),
        auto_connect: true,
        roles,
        step1: Step1 {
            s1: Step1Choice::OptI { opposite: 6 },
            s2: Step1Choice::OptII,
            t1: Step1Choice::OptI { opposite: 4 },
            t2: Step1Choice::OptII,
        },
        step3: Step3 {
            p: vec![2, 5],
            q: vec![2, 5],
        },
    }
}

/// Deterministic pseudo-random valid spec on `n` vertices.
pub fn random_design(n: usize, seed: u64) -> Result<QcdDesignSpec> {
    if n < MIN_DESIGN_VERTICES {
        return Err(Error::TooFewVertices(n));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::SizeTooLarge {
            n,
            min: MIN_DESIGN_VERTICES,
            max: crate::graph::MAX_VERTICES,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let spec = sample_spec(n, &mut rng);
        if validate_design(&spec).is_empty() {
            return Ok(spec);
        }
    }
    Err(Error::ExhaustedRetries(MAX_RETRIES))
}

fn sample_spec(n: usize, rng: &mut ChaCha8Rng) -> QcdDesignSpec {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let roles = Roles {
        p: labels[0],
        q: labels[1],
        s1: labels[2],
        s2: labels[3],
        t1: labels[4],
        t2: labels[5],
    };
    let omega: Vec<usize> = labels[6..].to_vec();

    // option I or II per vertex; only one I per pair survives validation
    let s_opt_i: [bool; 2] = [rng.random(), rng.random()];
    let t_opt_i: [bool; 2] = [rng.random(), rng.random()];
    let s = [roles.s1, roles.s2];
    let t = [roles.t1, roles.t2];
    let pick = |opt_i: [bool; 2], other_opt_i: [bool; 2], other: [usize; 2]| {
        (0..2)
            .map(|i| {
                if opt_i[i] {
                    // the opposite vertex taking option II
                    let j = other_opt_i.iter().position(|x| !x).unwrap_or(0);
                    Step1Choice::OptI { opposite: other[j] }
                } else {
                    Step1Choice::OptII
                }
            })
            .collect::<Vec<_>>()
    };
    let sc = pick(s_opt_i, t_opt_i, t);
    let tc = pick(t_opt_i, s_opt_i, s);
    let s_first = s_opt_i.iter().position(|&x| x).map_or(s[0], |i| s[i]);
    let t_first = t_opt_i.iter().position(|&x| x).map_or(t[0], |i| t[i]);

    let mut omega_quad = Vec::new();
    let mut omega_pq = Vec::new();
    for &w in &omega {
        if rng.random_bool(0.4) {
            omega_quad.push(w);
        }
        if rng.random_bool(0.4) {
            omega_pq.push(w);
        }
    }
    omega_quad.sort_unstable();
    omega_pq.sort_unstable();
    let mut extra = Vec::new();
    for (i, &a) in omega.iter().enumerate() {
        for &b in &omega[i + 1..] {
            if rng.random_bool(0.3) {
                extra.push([a.min(b), a.max(b)]);
            }
        }
    }
    QcdDesignSpec {
        n,
        case_ii_s: rng.random(),
        case_ii_t: rng.random(),
        omega_quad_neighbors: omega_quad,
        omega_pq_neighbors: omega_pq,
        pq_edge: rng.random(),
        extra_edges: extra,
        auto_connect: true,
        roles,
        step1: Step1 {
            s1: sc[0],
            s2: sc[1],
            t1: tc[0],
            t2: tc[1],
        },
        step3: Step3 {
            p: vec![s_first, t_first],
            q: vec![s_first, t_first],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one() {
        let a = build_design(&nine_vertex_spec(2)).unwrap();
        assert_eq!(a.eigenvalue, 6);
        assert_eq!(a.eta, vec![0, 1, 0, 1, -1, -1, 0, 0, 0]);
        let b = build_design(&nine_vertex_spec(1)).unwrap();
        assert_eq!(b.eigenvalue, 5);
        assert!(validate_design(&nine_vertex_spec(2)).is_empty());
    }

    #[test]
    fn minimal_case_ii() {
        // s1-s2 edge, no remaining vertex sees the quad
        let spec = QcdDesignSpec {
            n: 7,
            case_ii_s: true,
            ..nine_vertex_spec(0)
        };
        let spec = QcdDesignSpec {
            omega_pq_neighbors: vec![7],
            ..spec
        };
        let out = build_design(&spec).unwrap();
        assert_eq!(out.eigenvalue, 4);
        assert_eq!(out.sigma, 0);
    }

    #[test]
    fn step_violations() {
        let mut spec = nine_vertex_spec(2);
        spec.step3.q = vec![5, 4];
        let v = validate_design(&spec);
        assert!(v.iter().any(|x| x.step == "Step 1 i)"), "{v:?}");
        assert!(v.iter().any(|x| x.step == "Step 1 ii)"), "{v:?}");

        let mut spec = nine_vertex_spec(2);
        spec.extra_edges.push([9, 2]);
        let v = validate_design(&spec);
        assert!(v.iter().any(|x| x.step == "Step 4 b)"), "{v:?}");

        let mut spec = nine_vertex_spec(2);
        spec.extra_edges.push([9, 1]);
        spec.omega_pq_neighbors.clear();
        let v = validate_design(&spec);
        assert!(v.iter().any(|x| x.step == "Step 4 a)"), "{v:?}");

        let mut spec = nine_vertex_spec(2);
        spec.roles.q = 2;
        assert!(validate_design(&spec).iter().all(|x| x.step == "Roles"));
        assert!(matches!(build_design(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn random_specs() {
        let spec = random_design(9, 42).unwrap();
        assert!(build_design(&spec).is_ok());
        assert_eq!(random_design(9, 42).unwrap(), spec);
        assert!(build_design(&random_design(7, 7).unwrap()).is_ok());
        assert_eq!(random_design(6, 1), Err(Error::TooFewVertices(6)));
    }

    #[test]
    fn toml_round_trip() {
        let spec = nine_vertex_spec(2);
        let text = spec.to_toml();
        assert_eq!(QcdDesignSpec::from_toml(&text).unwrap(), spec);
        assert!(matches!(
            QcdDesignSpec::from_toml("n = \"x\""),
            Err(Error::Parse { .. })
        ));
    }
}
