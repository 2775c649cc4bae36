//! Exhaustive and sampled harnesses that compare the structural detectors
//! with the controllability oracles on small graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::controllability::{kalman_controllable, shared_eigenvalue_test};
use crate::destructive::{all_dcd_pairs, all_tcd_triples, induced_edge_count, QcdCatalog};
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, enumerate_connected_graphs, follower_partition, pair_count, Graph, LeaderSet,
};
use crate::spectral::Spectrum;

/// Seed for every sampled regime unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Sampled graphs per size for the six and seven vertex rank/gcd check.
pub const PROP1_SAMPLES: usize = 100;
/// Sampled six-vertex graphs for the support-3 topology check.
pub const FACT1_SAMPLES: usize = 10_000;

const MAX_EXHAUSTIVE: usize = 5;
const MAX_SAMPLED: usize = 7;

const RUN_HEADER: &str = "# netctrl verification run v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Graph,
    /// 1-based leader set or vertex set under test.
    pub vertices: Vec<usize>,
    pub details: String,
}

#[derive(Clone, Debug)]
pub struct VerificationRun {
    pub theorem: String,
    pub instance_count: usize,
    pub agreements: usize,
    /// Sorted by canonical code of the graph, then by vertex set.
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
    /// Secondary tallies, e.g. the single-leader reading.
    pub notes: Vec<String>,
}

impl VerificationRun {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Deterministic summary; elapsed time is left out.
    pub fn to_text(&self) -> String {
        let mut out = format!("{RUN_HEADER}\nsuite: {}\n", self.theorem);
        let _ = writeln!(out, "instances: {}", self.instance_count);
        let _ = writeln!(out, "agreements: {}", self.agreements);
        let _ = writeln!(out, "counterexamples: {}", self.counterexamples.len());
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for c in &self.counterexamples {
            let edges: Vec<String> = c
                .graph
                .edges()
                .iter()
                .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
                .collect();
            let _ = writeln!(
                out,
                "counterexample: n={} edges=[{}] set={:?} {}",
                c.graph.n(),
                edges.join(" "),
                c.vertices,
                c.details
            );
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    agreements: usize,
    counterexamples: Vec<Counterexample>,
    counters: BTreeMap<&'static str, usize>,
}

impl Tally {
    fn check(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) {
        self.instances += 1;
        if ok {
            self.agreements += 1;
        } else {
            self.counterexamples.push(cex());
        }
    }

    fn bump(&mut self, key: &'static str) {
        *self.counters.entry(key).or_default() += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.agreements += other.agreements;
        self.counterexamples.extend(other.counterexamples);
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        self
    }

    fn finish(self, theorem: &str, started: Instant, mut notes: Vec<String>) -> VerificationRun {
        let mut cex = self.counterexamples;
        cex.sort_by_cached_key(|c| {
            let code = canonical_form(&c.graph, None)
                .map(|c| c.to_hex())
                .unwrap_or_default();
            (c.graph.n(), code, c.graph.edge_mask(), c.vertices.clone())
        });
        notes.extend(self.counters.iter().map(|(k, v)| format!("{k}: {v}")));
        VerificationRun {
            theorem: theorem.to_string(),
            instance_count: self.instances,
            agreements: self.agreements,
            counterexamples: cex,
            elapsed: started.elapsed(),
            notes,
        }
    }
}

fn run_over<F>(graphs: &[Graph], per_graph: F) -> Tally
where
    F: Fn(&Graph) -> Tally + Sync + Send,
{
    graphs
        .par_iter()
        .map(per_graph)
        .reduce(Tally::default, Tally::merge)
}

fn all_connected(sizes: std::ops::RangeInclusive<usize>) -> Vec<Graph> {
    sizes
        .flat_map(|n| enumerate_connected_graphs(n).expect("size within enumeration range"))
        .collect()
}

fn check_range(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::SizeTooLarge { n, min, max });
    }
    Ok(())
}

/// `count` connected graphs on `n` vertices, uniform over edge subsets and
/// drawn with replacement.
pub fn sample_connected_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let pairs = pair_count(n);
    let mask = if pairs >= 64 {
        u64::MAX
    } else {
        (1u64 << pairs) - 1
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = Graph::from_edge_mask(n, rng.random::<u64>() & mask);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn subsets_of(pool: &[usize]) -> impl Iterator<Item = u64> + '_ {
    let full = (1u64 << pool.len()) - 1;
    // largest sets first: a controllable set is found fastest there
    (1..=full).rev().map(move |bits| {
        pool.iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(0u64, |m, (_, &v)| m | 1 << v)
    })
}

fn controllable_from(g: &Graph, leader_mask: u64) -> bool {
    let leaders = LeaderSet::from_mask(g.n(), leader_mask).expect("nonempty proper leader set");
    kalman_controllable(&follower_partition(g, &leaders).expect("valid partition"))
}

fn mask_labels(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| v + 1)
        .collect()
}

/// Rank test against the gcd test for every nonempty proper leader set,
/// exhaustively up to five vertices and on sampled graphs above.
pub fn verify_prop1(n_max: usize) -> Result<VerificationRun> {
    verify_prop1_sampled(n_max, PROP1_SAMPLES, DEFAULT_SEED)
}

pub fn verify_prop1_sampled(n_max: usize, samples: usize, seed: u64) -> Result<VerificationRun> {
    check_range(n_max, 2, MAX_SAMPLED)?;
    let started = Instant::now();
    let mut graphs = all_connected(2..=n_max.min(MAX_EXHAUSTIVE));
    for n in MAX_EXHAUSTIVE + 1..=n_max {
        graphs.extend(sample_connected_graphs(n, samples, seed));
    }
    let tally = run_over(&graphs, |g| {
        let mut t = Tally::default();
        let full = (1u64 << g.n()) - 1;
        for mask in 1..full {
            let leaders = LeaderSet::from_mask(g.n(), mask).expect("proper subset");
            let kalman =
                kalman_controllable(&follower_partition(g, &leaders).expect("valid partition"));
            let (shared, gcd) = shared_eigenvalue_test(g, &leaders).expect("connected");
            let single = leaders.len() == 1;
            let agree = kalman != shared;
            t.bump(if single {
                "single-leader instances"
            } else {
                "multi-leader instances"
            });
            if !agree {
                t.bump(if single {
                    "single-leader disagreements"
                } else {
                    "multi-leader disagreements"
                });
            }
            t.check(agree, || Counterexample {
                graph: g.clone(),
                vertices: leaders.labels(),
                details: format!("rank says controllable={kalman}, gcd={gcd}"),
            });
        }
        t
    });
    let mut notes = vec![format!("exhaustive up to n={}", n_max.min(MAX_EXHAUSTIVE))];
    if n_max > MAX_EXHAUSTIVE {
        notes.push(format!(
            "{samples} sampled graphs per size above {MAX_EXHAUSTIVE}, seed {seed}"
        ));
    }
    Ok(tally.finish("prop1", started, notes))
}

/// Pairs: some nonempty leader set avoiding the pair controls the network
/// exactly when the pair is not double-destructive.
pub fn verify_theorem1(n: usize) -> Result<VerificationRun> {
    check_range(n, 3, MAX_EXHAUSTIVE + 1)?;
    let started = Instant::now();
    let graphs = all_connected(3..=n);
    let tally = run_over(&graphs, |g| {
        let mut t = Tally::default();
        let dcd: Vec<[usize; 2]> = all_dcd_pairs(g)
            .expect("connected")
            .iter()
            .map(|c| [c.p, c.q])
            .collect();
        for p in 0..g.n() {
            for q in p + 1..g.n() {
                let pool: Vec<usize> = (0..g.n()).filter(|&v| v != p && v != q).collect();
                let any = subsets_of(&pool).any(|m| controllable_from(g, m));
                let single = pool.iter().any(|&v| controllable_from(g, 1 << v));
                let structural = !dcd.contains(&[p, q]);
                if single != structural {
                    t.bump("single-leader reading disagreements");
                }
                t.check(any == structural, || Counterexample {
                    graph: g.clone(),
                    vertices: vec![p + 1, q + 1],
                    details: format!(
                        "some leader set controls={any}, pair is dcd={}",
                        !structural
                    ),
                });
            }
        }
        t
    });
    Ok(tally.finish(
        "t1",
        started,
        vec!["leader sets of any size drawn from the complement of the pair".into()],
    ))
}

/// Triples: some nonempty leader set avoiding the triple controls the
/// network exactly when the triple is not triple-destructive and none of its
/// pairs is double-destructive.
pub fn verify_theorem2(n: usize) -> Result<VerificationRun> {
    check_range(n, 4, MAX_EXHAUSTIVE + 1)?;
    let started = Instant::now();
    let graphs = all_connected(4..=n);
    let tally = run_over(&graphs, |g| {
        let mut t = Tally::default();
        let dcd: Vec<u64> = all_dcd_pairs(g)
            .expect("connected")
            .iter()
            .map(|c| 1 << c.p | 1 << c.q)
            .collect();
        let tcd: Vec<u64> = all_tcd_triples(g)
            .expect("connected")
            .iter()
            .map(|c| c.vertices.iter().fold(0, |m, v| m | 1 << v))
            .collect();
        let n = g.n();
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    let triple = 1u64 << p | 1 << q | 1 << r;
                    let pool: Vec<usize> = (0..n).filter(|v| triple >> v & 1 == 0).collect();
                    let any = subsets_of(&pool).any(|m| controllable_from(g, m));
                    let single = pool.iter().any(|&v| controllable_from(g, 1 << v));
                    let structural =
                        !tcd.contains(&triple) && !dcd.iter().any(|&d| d & triple == d);
                    if single != structural {
                        t.bump("single-leader reading disagreements");
                    }
                    t.check(any == structural, || Counterexample {
                        graph: g.clone(),
                        vertices: mask_labels(triple),
                        details: format!(
                            "some leader set controls={any}, structural condition={structural}"
                        ),
                    });
                }
            }
        }
        t
    });
    Ok(tally.finish(
        "t2",
        started,
        vec!["leader sets of any size drawn from the complement of the triple".into()],
    ))
}

/// Every eigenvector supported on exactly three vertices has each outside
/// vertex adjacent to all three or to none of them.
pub fn verify_fact1(n: usize) -> Result<VerificationRun> {
    verify_fact1_sampled(n, FACT1_SAMPLES, DEFAULT_SEED)
}

pub fn verify_fact1_sampled(n: usize, samples: usize, seed: u64) -> Result<VerificationRun> {
    check_range(n, 3, MAX_SAMPLED)?;
    let started = Instant::now();
    let mut graphs = all_connected(3..=n.min(MAX_EXHAUSTIVE));
    for size in MAX_EXHAUSTIVE + 1..=n {
        graphs.extend(sample_connected_graphs(size, samples, seed));
    }
    let tally = run_over(&graphs, |g| {
        let mut t = Tally::default();
        let spectrum = Spectrum::new(g).expect("small characteristic polynomials factor");
        let tcd: Vec<u64> = all_tcd_triples(g)
            .expect("connected")
            .iter()
            .map(|c| c.vertices.iter().fold(0, |m, v| m | 1 << v))
            .collect();
        let n = g.n();
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    let triple = 1u64 << p | 1 << q | 1 << r;
                    let Some(pair) = spectrum.with_support(triple) else {
                        continue;
                    };
                    let split = (0..n).filter(|k| triple >> k & 1 == 0).find(|&k| {
                        let seen = g.neighbor_bits(k) & triple;
                        seen != 0 && seen != triple
                    });
                    if tcd.contains(&triple) {
                        t.bump("certified by the triple detector");
                    }
                    t.check(split.is_none(), || Counterexample {
                        graph: g.clone(),
                        vertices: mask_labels(triple),
                        details: format!(
                            "vertex {} sees part of the triple; induced edges {}; {:?}",
                            split.unwrap() + 1,
                            induced_edge_count(g, triple),
                            pair
                        ),
                    });
                }
            }
        }
        t
    });
    let mut notes = vec![format!("exhaustive up to n={}", n.min(MAX_EXHAUSTIVE))];
    if n > MAX_EXHAUSTIVE {
        notes.push(format!(
            "{samples} sampled graphs per size above {MAX_EXHAUSTIVE}, seed {seed}"
        ));
    }
    Ok(tally.finish("fact1", started, notes))
}

/// Five vertices, one leader: the rank test says controllable exactly when
/// the followers hold no destructive pair, triple or quadruple.
pub fn verify_theorem4(catalog: &QcdCatalog) -> Result<VerificationRun> {
    let started = Instant::now();
    let graphs = all_connected(5..=5);
    let tally = run_over(&graphs, |g| {
        let mut t = Tally::default();
        let dcd: Vec<u64> = all_dcd_pairs(g)
            .expect("connected")
            .iter()
            .map(|c| 1 << c.p | 1 << c.q)
            .collect();
        let tcd: Vec<u64> = all_tcd_triples(g)
            .expect("connected")
            .iter()
            .map(|c| c.vertices.iter().fold(0, |m, v| m | 1 << v))
            .collect();
        for leader in 0..5 {
            let followers = 0b11111 & !(1u64 << leader);
            let kalman = controllable_from(g, 1 << leader);
            let qcd = catalog.contains(&canonical_form(g, Some(leader)).expect("n=5"));
            let has_dcd = dcd.iter().any(|&d| d & followers == d);
            let has_tcd = tcd.iter().any(|&d| d & followers == d);
            let structural = !(qcd || has_tcd || has_dcd);
            if qcd {
                t.bump("leaders with a destructive quadruple");
            }
            t.check(kalman == structural, || Counterexample {
                graph: g.clone(),
                vertices: vec![leader + 1],
                details: format!(
                    "rank says controllable={kalman}; dcd={has_dcd} tcd={has_tcd} qcd={qcd}"
                ),
            });
        }
        t
    });
    Ok(tally.finish(
        "t4",
        started,
        vec![format!("catalog with {} configurations", catalog.len())],
    ))
}
