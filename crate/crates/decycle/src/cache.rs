//! Line-based solver-result cache. One entry per line, tab-separated:
//!
//! ```text
//! key<TAB>value<TAB>v1,v2,...<TAB>nodes=N;secs=F
//! ```
//!
//! Keys are factor descriptors (`P4 x S6`, canonical tree codes, `C3 x C4`)
//! or literal `g6:` strings, so every key reconstructs its graph; entries
//! whose certificate fails validation against that graph are skipped on
//! load, and one small entry per load is re-solved as a spot check.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::Path;

use decycle_core::fvs::{decycling_number_with, SolverBudget};
use decycle_core::graph::VertexSet;
use decycle_core::product::cartesian_product;
use decycle_core::time::WallStopwatch;
use decycle_core::trees::TreeCode;
use decycle_core::Graph;

use crate::graph6::decode_graph6;

#[derive(Clone, Debug, PartialEq)]
pub struct CacheEntry {
    pub key: String,
    pub value: usize,
    pub vertices: Vec<usize>,
    pub nodes: u64,
    pub wall_secs: f64,
}

impl CacheEntry {
    fn to_line(&self) -> String {
        let verts = if self.vertices.is_empty() {
            "-".to_string()
        } else {
            self.vertices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{}\t{}\t{}\tnodes={};secs={:.6}",
            self.key, self.value, verts, self.nodes, self.wall_secs
        )
    }

    fn parse_line(line: &str) -> Option<CacheEntry> {
        let mut it = line.split('\t');
        let key = it.next()?.to_string();
        if key.is_empty() {
            return None;
        }
        let value: usize = it.next()?.parse().ok()?;
        let verts_tok = it.next()?;
        let vertices: Vec<usize> = if verts_tok == "-" {
            Vec::new()
        } else {
            verts_tok
                .split(',')
                .map(|t| t.parse().ok())
                .collect::<Option<_>>()?
        };
        let stats = it.next()?;
        if it.next().is_some() {
            return None;
        }
        let mut nodes = 0u64;
        let mut wall_secs = 0f64;
        for part in stats.split(';') {
            let (k, v) = part.split_once('=')?;
            match k {
                "nodes" => nodes = v.parse().ok()?,
                "secs" => wall_secs = v.parse().ok()?,
                _ => return None,
            }
        }
        Some(CacheEntry {
            key,
            value,
            vertices,
            nodes,
            wall_secs,
        })
    }

    /// The certificate is feasible on `g` and its size matches the value.
    fn validate_against(&self, g: &Graph) -> bool {
        if self.vertices.len() != self.value {
            return false;
        }
        let Ok(set) = VertexSet::from_indices(g.order(), self.vertices.iter().copied()) else {
            return false;
        };
        g.is_forest_after_removing(set)
    }
}

/// Statistics from one [`Cache::load_merge`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub merged: usize,
    /// Lines that failed to parse.
    pub corrupted: usize,
    /// Parsed entries dropped by certificate validation or the spot check.
    pub rejected: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Cache {
    entries: BTreeMap<String, CacheEntry>,
}

impl Cache {
    pub fn new() -> Cache {
        Cache::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, entry: CacheEntry) {
        self.entries.insert(entry.key.clone(), entry);
    }

    pub fn entries(&self) -> impl Iterator<Item = &CacheEntry> {
        self.entries.values()
    }

    /// Idempotent merge from a cache file. Corrupted lines are skipped and
    /// counted; parseable entries with invalid certificates are rejected.
    /// The lexicographically first reconstructible entry on at most 16
    /// vertices is re-solved to confirm the cached value.
    pub fn load_merge(&mut self, path: &Path) -> io::Result<LoadStats> {
        let mut text = String::new();
        std::fs::File::open(path)?.read_to_string(&mut text)?;
        let mut stats = LoadStats::default();
        let mut spot_checked = false;
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let Some(entry) = CacheEntry::parse_line(line) else {
                stats.corrupted += 1;
                continue;
            };
            match graph_for_key(&entry.key) {
                Some(g) => {
                    if !entry.validate_against(&g) {
                        stats.rejected += 1;
                        continue;
                    }
                    if !spot_checked && g.order() <= 16 {
                        spot_checked = true;
                        let resolved = decycling_number_with(
                            &g,
                            &SolverBudget::default(),
                            0,
                            &mut WallStopwatch::start(),
                        );
                        if resolved.map(|c| c.value) != Ok(entry.value) {
                            stats.rejected += 1;
                            continue;
                        }
                    }
                }
                None => {
                    stats.rejected += 1;
                    continue;
                }
            }
            self.entries.insert(entry.key.clone(), entry);
            stats.merged += 1;
        }
        Ok(stats)
    }

    /// Writes all entries, sorted by key.
    pub fn store(&self, path: &Path) -> io::Result<()> {
        let mut out = String::new();
        for entry in self.entries.values() {
            out.push_str(&entry.to_line());
            out.push('\n');
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(out.as_bytes())
    }
}

/// Reconstructs the graph a cache key describes: `A x B` products, family
/// tokens (`P4`, `S6`, `C5`), canonical tree codes, or `g6:` literals.
pub fn graph_for_key(key: &str) -> Option<Graph> {
    if let Some((a, b)) = key.split_once(" x ") {
        let ga = parse_factor(a)?;
        let gb = parse_factor(b)?;
        return cartesian_product(&ga, &gb).ok();
    }
    parse_factor(key)
}

/// Parses a single factor token: `g6:` literal, canonical tree code, or a
/// family token (`P4`, `S6`, `C5`).
pub fn parse_factor(token: &str) -> Option<Graph> {
    if let Some(g6) = token.strip_prefix("g6:") {
        return decode_graph6(g6).ok();
    }
    if token.starts_with('(') {
        return TreeCode::parse(token).ok().map(|c| c.to_graph());
    }
    if token.len() < 2 || !token.is_char_boundary(1) {
        return None;
    }
    let (family, rest) = token.split_at(1);
    let n: usize = rest.parse().ok()?;
    match family {
        "P" => Graph::path(n).ok(),
        "S" => Graph::star(n).ok(),
        "C" => Graph::cycle(n).ok(),
        _ => None,
    }
}
