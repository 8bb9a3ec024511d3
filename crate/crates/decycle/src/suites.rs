//! Sweep orchestration: registered suites expand into independent check
//! tasks, workers solve them against a shared cache snapshot, and results
//! merge back deterministically (sorted by claim and instance) regardless
//! of worker count.

use std::sync::mpsc;
use std::sync::Arc;
use std::time::Instant;

use decycle_core::checks::{
    check_conjecture_pair, check_equality_characterization, check_grid_bounds, check_main_theorem,
    check_matching_bound, check_oracle_equivalence, check_prism, check_small_star_range,
    check_star_formula, check_torus_formula, CheckRecord, SolveBackend, Verdict,
};
use decycle_core::fvs::{
    decycling_number_with, DecyclingCertificate, Optimality, SolveMethod, SolverBudget,
};
use decycle_core::graph::VertexSet;
use decycle_core::time::WallStopwatch;
use decycle_core::trees::enumerate_trees;
use decycle_core::{Error, Graph, MAX_VERTICES};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::cache::{Cache, CacheEntry};
use crate::graph6::encode_graph6;
use crate::randgen::{random_connected_in, Prng};

/// Registered suite names, as accepted by `run_sweep` and the CLI.
pub const SUITES: &[&str] = &[
    "thm-main",
    "equality",
    "star-formula",
    "small-star",
    "prism",
    "matching-bound",
    "torus-formula",
    "grid-bounds",
    "oracle-equiv",
    "conjecture-scan",
];

/// Default seed for the pseudorandom suites; recorded in every report.
pub const DEFAULT_SEED: u64 = 0xDECC1E;

#[derive(Clone, Debug)]
pub struct SweepParams {
    /// Overrides each suite's default order ceiling.
    pub n_max: Option<usize>,
    pub budget: SolverBudget,
    pub workers: usize,
    pub seed: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            n_max: None,
            budget: SolverBudget::default(),
            workers: 1,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub solver_invocations: u64,
    pub fail_count: usize,
    /// Report-only records whose `consistent` flag is zero.
    pub finding_count: usize,
    pub params: Value,
}

#[derive(Debug, ThisError)]
pub enum SweepError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("instance '{instance}' failed: {source}")]
    Check {
        instance: String,
        source: Error,
        /// Records completed before the failure, for partial reports.
        partial: Box<SweepOutcome>,
    },
}

type Task = Box<dyn FnOnce(&mut CachingBackend) -> Result<CheckRecord, Error> + Send>;

/// Backend that consults a read-only cache snapshot before solving and
/// collects fresh results for the orchestrator to merge back.
struct CachingBackend {
    snapshot: Arc<Cache>,
    budget: SolverBudget,
    fresh: Vec<CacheEntry>,
    invocations: u64,
}

impl CachingBackend {
    fn new(snapshot: Arc<Cache>, budget: SolverBudget) -> Self {
        CachingBackend {
            snapshot,
            budget,
            fresh: Vec::new(),
            invocations: 0,
        }
    }
}

impl SolveBackend for CachingBackend {
    fn solve(
        &mut self,
        key: &str,
        graph: &Graph,
        certified_floor: usize,
    ) -> Result<DecyclingCertificate, Error> {
        if let Some(entry) = self.snapshot.get(key) {
            let set = VertexSet::from_indices(graph.order(), entry.vertices.iter().copied())?;
            return Ok(DecyclingCertificate {
                set,
                value: entry.value,
                method: SolveMethod::BranchReduce,
                optimality: Optimality::Proven,
                nodes: entry.nodes,
                wall_time: std::time::Duration::from_secs_f64(entry.wall_secs),
            });
        }
        // A fresh result from earlier in this worker's run also counts.
        if let Some(entry) = self.fresh.iter().find(|e| e.key == key) {
            let set = VertexSet::from_indices(graph.order(), entry.vertices.iter().copied())?;
            return Ok(DecyclingCertificate {
                set,
                value: entry.value,
                method: SolveMethod::BranchReduce,
                optimality: Optimality::Proven,
                nodes: entry.nodes,
                wall_time: std::time::Duration::from_secs_f64(entry.wall_secs),
            });
        }
        self.invocations += 1;
        let cert = decycling_number_with(
            graph,
            &self.budget,
            certified_floor,
            &mut WallStopwatch::start(),
        )?;
        self.fresh.push(CacheEntry {
            key: key.to_string(),
            value: cert.value,
            vertices: cert.set.to_vec(),
            nodes: cert.nodes,
            wall_secs: cert.wall_time.as_secs_f64(),
        });
        Ok(cert)
    }
}

fn unordered_tree_pairs(n_lo: usize, n_hi: usize, cap: usize) -> Vec<(Graph, Graph)> {
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        for n2 in n..=n_hi {
            if n * n2 > cap {
                continue;
            }
            let left = enumerate_trees(n).expect("orders validated by caller");
            let right = enumerate_trees(n2).expect("orders validated by caller");
            for (i, t) in left.iter().enumerate() {
                let start = if n == n2 { i } else { 0 };
                for t2 in right.iter().skip(start) {
                    out.push((t.clone(), t2.clone()));
                }
            }
        }
    }
    out
}

fn tasks_for(suite: &str, params: &SweepParams) -> Result<(Vec<Task>, Value), SweepError> {
    let mut tasks: Vec<Task> = Vec::new();
    let meta;
    match suite {
        "thm-main" => {
            let n_max = params.n_max.unwrap_or(5);
            meta = json!({"n_max": n_max});
            for (t, t2) in unordered_tree_pairs(2, n_max, MAX_VERTICES) {
                tasks.push(Box::new(move |be| check_main_theorem(&t, &t2, be)));
            }
        }
        "equality" => {
            let n_max = params.n_max.unwrap_or(5);
            meta = json!({"n_max": n_max});
            for (t, t2) in unordered_tree_pairs(2, n_max, MAX_VERTICES) {
                tasks.push(Box::new(move |be| {
                    check_equality_characterization(&t, &t2, be)
                }));
            }
        }
        "star-formula" => {
            let n_max = params.n_max.unwrap_or(5);
            let star_max = 8;
            meta = json!({"n_max": n_max, "star_max": star_max});
            for n in 2..=n_max {
                for t in enumerate_trees(n).expect("order within range") {
                    for n_star in n..=star_max {
                        if n * n_star > MAX_VERTICES {
                            continue;
                        }
                        let t = t.clone();
                        tasks.push(Box::new(move |be| check_star_formula(&t, n_star, be)));
                    }
                }
            }
        }
        "small-star" => {
            let n_max = params.n_max.unwrap_or(6);
            meta = json!({"n_max": n_max});
            for n in 3..=n_max {
                for t in enumerate_trees(n).expect("order within range") {
                    if decycle_core::trees::is_star(&t).expect("enumerated trees") {
                        continue;
                    }
                    for n_star in 2..n {
                        if n * n_star > MAX_VERTICES {
                            continue;
                        }
                        let t = t.clone();
                        tasks.push(Box::new(move |be| check_small_star_range(&t, n_star, be)));
                    }
                }
            }
        }
        "prism" => {
            let n_max = params.n_max.unwrap_or(10);
            meta = json!({"n_max": n_max});
            for n in 1..=n_max {
                for t in enumerate_trees(n).expect("order within range") {
                    tasks.push(Box::new(move |be| check_prism(&t, be)));
                }
            }
        }
        "matching-bound" => {
            let count = 100;
            meta = json!({"pairs": count, "seed": params.seed, "factor_order_range": [2, 7]});
            let mut rng = Prng::new(params.seed);
            for _ in 0..count {
                let g1 = random_connected_in(&mut rng, 2, 7);
                let g2 = random_connected_in(&mut rng, 2, 7);
                let instance = format!(
                    "g6:{} x g6:{}",
                    encode_graph6(&g1).expect("small factors encode"),
                    encode_graph6(&g2).expect("small factors encode")
                );
                tasks.push(Box::new(move |be| {
                    check_matching_bound(&g1, &g2, &instance, be)
                }));
            }
        }
        "torus-formula" => {
            let pairs: Vec<(usize, usize)> = match params.n_max {
                None => vec![(3, 3), (3, 4), (3, 5), (4, 4), (4, 5)],
                Some(n_max) => {
                    let mut v = Vec::new();
                    for n in 3..=n_max {
                        for n2 in n..=n_max {
                            if n * n2 <= MAX_VERTICES {
                                v.push((n, n2));
                            }
                        }
                    }
                    v
                }
            };
            meta = json!({"pairs": pairs});
            for (n, n2) in pairs {
                tasks.push(Box::new(move |be| check_torus_formula(n, n2, be)));
            }
        }
        "grid-bounds" => {
            let pairs: Vec<(usize, usize)> = match params.n_max {
                None => {
                    let mut v = Vec::new();
                    for n in 2..=5 {
                        for n2 in n..=5 {
                            v.push((n, n2));
                        }
                    }
                    v.push((2, 6));
                    v.push((3, 6));
                    v
                }
                Some(n_max) => {
                    let mut v = Vec::new();
                    for n in 2..=n_max {
                        for n2 in n..=n_max {
                            if n * n2 <= MAX_VERTICES {
                                v.push((n, n2));
                            }
                        }
                    }
                    v
                }
            };
            meta = json!({"pairs": pairs});
            for (n, n2) in pairs {
                tasks.push(Box::new(move |be| check_grid_bounds(n, n2, be)));
            }
        }
        "oracle-equiv" => {
            let random_count = 50;
            meta = json!({
                "product_vertex_cap": 14,
                "random_instances": random_count,
                "random_order_range": [15, 18],
                "seed": params.seed,
            });
            // Every product family the other sweeps touch, capped at 14
            // vertices: tree pairs (grids, prisms, and star products are
            // tree pairs too), tori, and the seeded matching-bound pairs.
            for (t, t2) in unordered_tree_pairs(2, 5, 14) {
                tasks.push(Box::new(move |be| {
                    let (la, ga) = decycle_core::checks::canonical_factor(&t).expect("tree label");
                    let (lb, gb) = decycle_core::checks::canonical_factor(&t2).expect("tree label");
                    let product = decycle_core::product::cartesian_product(&ga, &gb)?;
                    check_oracle_equivalence(&product, &format!("{la} x {lb}"), be)
                }));
            }
            for (n, n2) in [(3usize, 3usize), (3, 4)] {
                tasks.push(Box::new(move |be| {
                    let product = decycle_core::product::cartesian_product(
                        &Graph::cycle(n)?,
                        &Graph::cycle(n2)?,
                    )?;
                    check_oracle_equivalence(&product, &format!("C{n} x C{n2}"), be)
                }));
            }
            let mut pair_rng = Prng::new(params.seed);
            for _ in 0..100 {
                let g1 = random_connected_in(&mut pair_rng, 2, 7);
                let g2 = random_connected_in(&mut pair_rng, 2, 7);
                if g1.order() * g2.order() > 14 {
                    continue;
                }
                let instance = format!(
                    "g6:{} x g6:{}",
                    encode_graph6(&g1).expect("small factors encode"),
                    encode_graph6(&g2).expect("small factors encode")
                );
                tasks.push(Box::new(move |be| {
                    let product = decycle_core::product::cartesian_product(&g1, &g2)?;
                    check_oracle_equivalence(&product, &instance, be)
                }));
            }
            let mut rng = Prng::new(params.seed ^ 0x0eac1e);
            for _ in 0..random_count {
                let g = random_connected_in(&mut rng, 15, 18);
                let key = format!("g6:{}", encode_graph6(&g).expect("small instances encode"));
                tasks.push(Box::new(move |be| check_oracle_equivalence(&g, &key, be)));
            }
        }
        "conjecture-scan" => {
            let n_max = params.n_max.unwrap_or(5).min(6);
            meta = json!({"n_max": n_max});
            for (t, t2) in unordered_tree_pairs(2, n_max, MAX_VERTICES) {
                tasks.push(Box::new(move |be| check_conjecture_pair(&t, &t2, be)));
            }
        }
        other => return Err(SweepError::UnknownSuite(other.to_string())),
    }
    Ok((tasks, meta))
}

fn finding_in(record: &CheckRecord) -> bool {
    record.verdict == Verdict::ReportOnly && record.computed.get("consistent") == Some(&0)
}

/// Runs a registered suite. The cache is consulted before any solver call
/// and extended with every fresh result; records come back sorted by
/// `(claim_id, instance)` so report bodies are identical across runs and
/// worker counts.
pub fn run_sweep(
    suite: &str,
    params: &SweepParams,
    cache: &mut Cache,
) -> Result<SweepOutcome, SweepError> {
    let (tasks, meta) = tasks_for(suite, params)?;
    let snapshot = Arc::new(cache.clone());
    let workers = params.workers.max(1);

    let mut indexed: Vec<(usize, Result<CheckRecord, Error>)> = Vec::with_capacity(tasks.len());
    let mut invocations = 0u64;
    let mut fresh_entries: Vec<CacheEntry> = Vec::new();

    if workers == 1 {
        let mut backend = CachingBackend::new(snapshot, params.budget);
        for (idx, task) in tasks.into_iter().enumerate() {
            let started = Instant::now();
            let result = task(&mut backend).map(|mut r| {
                r.wall_time = started.elapsed();
                r
            });
            indexed.push((idx, result));
        }
        invocations = backend.invocations;
        fresh_entries = backend.fresh;
    } else {
        let (result_tx, result_rx) = mpsc::channel();
        let mut buckets: Vec<Vec<(usize, Task)>> = (0..workers).map(|_| Vec::new()).collect();
        for (idx, task) in tasks.into_iter().enumerate() {
            buckets[idx % workers].push((idx, task));
        }
        std::thread::scope(|scope| {
            for bucket in buckets {
                let tx = result_tx.clone();
                let snapshot = Arc::clone(&snapshot);
                let budget = params.budget;
                scope.spawn(move || {
                    let mut backend = CachingBackend::new(snapshot, budget);
                    let mut results = Vec::with_capacity(bucket.len());
                    for (idx, task) in bucket {
                        let started = Instant::now();
                        let result = task(&mut backend).map(|mut r| {
                            r.wall_time = started.elapsed();
                            r
                        });
                        results.push((idx, result));
                    }
                    tx.send((results, backend.invocations, backend.fresh))
                        .expect("orchestrator alive");
                });
            }
            drop(result_tx);
            while let Ok((results, inv, fresh)) = result_rx.recv() {
                indexed.extend(results);
                invocations += inv;
                fresh_entries.extend(fresh);
            }
        });
        indexed.sort_by_key(|(idx, _)| *idx);
    }

    for entry in fresh_entries {
        cache.insert(entry);
    }

    let mut records = Vec::with_capacity(indexed.len());
    let mut failure: Option<(String, Error)> = None;
    for (idx, result) in indexed {
        match result {
            Ok(r) => records.push(r),
            Err(e) => {
                if failure.is_none() {
                    failure = Some((format!("task #{idx}"), e));
                }
            }
        }
    }
    records.sort_by(|a, b| (&a.claim_id, &a.instance).cmp(&(&b.claim_id, &b.instance)));

    let fail_count = records
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    let finding_count = records.iter().filter(|r| finding_in(r)).count();
    let outcome = SweepOutcome {
        suite: suite.to_string(),
        records,
        solver_invocations: invocations,
        fail_count,
        finding_count,
        params: json!({
            "suite_params": meta,
            "budget": {
                "node_limit": params.budget.node_limit,
                "time_limit_secs": params.budget.time_limit.as_secs_f64(),
            },
            "workers": workers,
        }),
    };
    match failure {
        Some((instance, source)) => Err(SweepError::Check {
            instance,
            source,
            partial: Box::new(outcome),
        }),
        None => Ok(outcome),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{csv_without_timing, records_to_csv};

    #[test]
    fn unknown_suite_is_rejected() {
        let mut cache = Cache::new();
        assert!(matches!(
            run_sweep("nope", &SweepParams::default(), &mut cache),
            Err(SweepError::UnknownSuite(_))
        ));
    }

    #[test]
    fn torus_default_sweep_passes() {
        let mut cache = Cache::new();
        let outcome = run_sweep("torus-formula", &SweepParams::default(), &mut cache).unwrap();
        assert_eq!(outcome.records.len(), 5);
        assert_eq!(outcome.fail_count, 0);
        let values: Vec<i64> = outcome
            .records
            .iter()
            .map(|r| r.computed["nabla"])
            .collect();
        assert_eq!(values, vec![4, 5, 6, 6, 8]);
    }

    #[test]
    fn warm_cache_reruns_identically_with_zero_solves() {
        let mut cache = Cache::new();
        let params = SweepParams {
            n_max: Some(4),
            ..SweepParams::default()
        };
        let first = run_sweep("thm-main", &params, &mut cache).unwrap();
        assert!(first.solver_invocations > 0);
        let second = run_sweep("thm-main", &params, &mut cache).unwrap();
        assert_eq!(second.solver_invocations, 0);
        assert_eq!(
            csv_without_timing(&records_to_csv(&first.records)),
            csv_without_timing(&records_to_csv(&second.records))
        );
    }

    #[test]
    fn workers_do_not_change_the_report() {
        let mut cache1 = Cache::new();
        let mut cache4 = Cache::new();
        let single = SweepParams {
            n_max: Some(4),
            ..SweepParams::default()
        };
        let multi = SweepParams {
            n_max: Some(4),
            workers: 4,
            ..SweepParams::default()
        };
        let a = run_sweep("equality", &single, &mut cache1).unwrap();
        let b = run_sweep("equality", &multi, &mut cache4).unwrap();
        assert_eq!(
            csv_without_timing(&records_to_csv(&a.records)),
            csv_without_timing(&records_to_csv(&b.records))
        );
    }

    #[test]
    fn budget_failure_keeps_partial_results() {
        let mut cache = Cache::new();
        let params = SweepParams {
            n_max: Some(5),
            budget: SolverBudget::new(2, std::time::Duration::from_secs(600)),
            ..SweepParams::default()
        };
        match run_sweep("grid-bounds", &params, &mut cache) {
            Err(SweepError::Check {
                partial, source, ..
            }) => {
                assert!(matches!(source, Error::BudgetExhausted(_)));
                // The tiny grids solve within two nodes; bigger ones cannot.
                assert!(partial.records.len() < 12);
            }
            other => panic!("expected budget failure, got {other:?}"),
        }
    }
}
