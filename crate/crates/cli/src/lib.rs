//! Std companion to `cube-iso-core`: report schema, deterministic parallel
//! scan drivers, and file emission shared by the CLI binary and its tests.

use std::collections::BTreeMap;
use std::io::Write;
use std::ops::Range;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;

use cube_iso_core::cube::CubeDim;
use cube_iso_core::verify::{
    canonicalize_set_witnesses, partition_count, partition_witnesses, partition_witnesses_chunk,
    scan_partitions_chunk, scan_sets_chunk, set_witnesses_chunk, ChunkOutcome,
    PartitionInequality, ScanReport, SetInequality,
};
use cube_iso_core::TOLERANCE;

pub const SCHEMA: &str = "cube-iso/1";
/// Indices per parallel work unit.
const CHUNK: u64 = 1 << 20;

/// Provenance block embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool_version: String,
    pub subcommand: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub threads: usize,
    pub started_at_ms: u64,
    pub finished_at_ms: u64,
    pub input_hashes: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(subcommand: &str, threads: usize) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            args: std::env::args().skip(1).collect(),
            seed: None,
            threads,
            started_at_ms: now_ms(),
            finished_at_ms: 0,
            input_hashes: BTreeMap::new(),
        }
    }

    pub fn hash_input(&mut self, label: &str, bytes: &[u8]) {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.input_hashes.insert(label.to_string(), hex);
    }
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// Top-level report payload; the single source of truth for all outputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub manifest: Manifest,
    pub kind: String,
    pub n: u32,
    pub params: serde_json::Value,
    pub results: serde_json::Value,
    pub witnesses: Vec<serde_json::Value>,
    pub min_margin: Option<f64>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(manifest: Manifest, kind: &str, n: u32) -> Self {
        Self {
            schema: SCHEMA,
            manifest,
            kind: kind.to_string(),
            n,
            params: serde_json::json!({}),
            results: serde_json::json!({}),
            witnesses: Vec::new(),
            min_margin: None,
            runtime_ms: 0,
        }
    }

    pub fn finish(&mut self) {
        self.manifest.finished_at_ms = now_ms();
    }

    /// Write JSON to `out` (or stdout when `None`); only called on
    /// success, so no partial reports hit disk.
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        match out {
            Some(path) => {
                std::fs::write(path, json.as_bytes())
                    .with_context(|| format!("writing report to {}", path.display()))?;
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(json.as_bytes())?;
                stdout.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// Flat CSV projection of scalar `results` fields plus `min_margin`,
    /// for plotting; witnesses and nested values are omitted.
    pub fn emit_csv(&self, path: &Path) -> Result<()> {
        let mut headers = vec!["kind".to_string(), "n".to_string()];
        let mut values = vec![self.kind.clone(), self.n.to_string()];
        if let serde_json::Value::Object(map) = &self.results {
            for (k, v) in map {
                let cell = match v {
                    serde_json::Value::Number(x) => x.to_string(),
                    serde_json::Value::Bool(x) => x.to_string(),
                    serde_json::Value::String(x) => x.clone(),
                    _ => continue,
                };
                headers.push(k.clone());
                values.push(cell);
            }
        }
        if let Some(m) = self.min_margin {
            headers.push("min_margin".to_string());
            values.push(format!("{m}"));
        }
        headers.push("runtime_ms".to_string());
        values.push(self.runtime_ms.to_string());
        let csv = format!("{}\n{}\n", headers.join(","), values.join(","));
        std::fs::write(path, csv).with_context(|| format!("writing csv to {}", path.display()))?;
        Ok(())
    }
}

/// Thread count: explicit flag, else `ISO_THREADS`, else all cores.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("ISO_THREADS").ok().and_then(|s| s.parse().ok()))
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1))
}

pub fn build_pool(threads: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?)
}

fn chunk_ranges(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect()
}

/// Deterministic parallel set scan: chunk minima merge associatively, the
/// witness pass collects in chunk-index order, so the report is identical
/// for any thread count.
pub fn parallel_scan_sets(
    dim: CubeDim,
    ineq: &SetInequality,
    allow_large: bool,
    pool: &rayon::ThreadPool,
) -> cube_iso_core::Result<ScanReport> {
    use rayon::prelude::*;
    let cap = if allow_large {
        cube_iso_core::verify::SET_SCAN_FLAGGED_CAP
    } else {
        cube_iso_core::verify::SET_SCAN_CAP
    };
    if dim.n() > cap {
        return Err(cube_iso_core::Error::ScanTooLarge {
            n: dim.n(),
            cap: cube_iso_core::verify::SET_SCAN_CAP,
            flagged_cap: cube_iso_core::verify::SET_SCAN_FLAGGED_CAP,
        });
    }
    let start = Instant::now();
    let total = 1u64 << dim.vertex_count();
    let ranges = chunk_ranges(total);
    let outcome = pool.install(|| {
        ranges
            .par_iter()
            .map(|r| scan_sets_chunk(dim, ineq, r.clone()))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(ChunkOutcome::empty(), ChunkOutcome::merge)
    });
    let threshold = outcome.min_margin + TOLERANCE;
    let masks: Vec<u64> = pool.install(|| {
        ranges
            .par_iter()
            .map(|r| set_witnesses_chunk(dim, ineq, r.clone(), threshold))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    Ok(ScanReport {
        n: dim.n(),
        inequality: ineq.name().to_string(),
        scanned: outcome.scanned,
        min_margin: outcome.min_margin,
        witnesses: canonicalize_set_witnesses(dim, &masks),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Deterministic parallel partition scan; see [`parallel_scan_sets`].
pub fn parallel_scan_partitions(
    dim: CubeDim,
    ineq: PartitionInequality,
    allow_large: bool,
    pool: &rayon::ThreadPool,
) -> cube_iso_core::Result<ScanReport> {
    use rayon::prelude::*;
    let cap = if allow_large {
        cube_iso_core::verify::PARTITION_SCAN_FLAGGED_CAP
    } else {
        cube_iso_core::verify::PARTITION_SCAN_CAP
    };
    if dim.n() > cap {
        return Err(cube_iso_core::Error::ScanTooLarge {
            n: dim.n(),
            cap: cube_iso_core::verify::PARTITION_SCAN_CAP,
            flagged_cap: cube_iso_core::verify::PARTITION_SCAN_FLAGGED_CAP,
        });
    }
    let start = Instant::now();
    let total = partition_count(dim);
    let ranges = chunk_ranges(total);
    let outcome = pool.install(|| {
        ranges
            .par_iter()
            .map(|r| scan_partitions_chunk(dim, ineq, r.clone()))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(ChunkOutcome::empty(), ChunkOutcome::merge)
    });
    let threshold = outcome.min_margin + TOLERANCE;
    let indices: Vec<u64> = pool.install(|| {
        ranges
            .par_iter()
            .map(|r| partition_witnesses_chunk(dim, ineq, r.clone(), threshold))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    Ok(ScanReport {
        n: dim.n(),
        inequality: ineq.name().to_string(),
        scanned: outcome.scanned,
        min_margin: outcome.min_margin,
        witnesses: partition_witnesses(dim, &indices),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Parallel annealing: chains are independent and merge deterministically
/// exactly as the sequential [`cube_iso_core::search::anneal`].
pub fn parallel_anneal(
    dim: CubeDim,
    objective: cube_iso_core::search::Objective,
    cfg: &cube_iso_core::search::SearchConfig,
    pool: &rayon::ThreadPool,
) -> cube_iso_core::Result<cube_iso_core::search::AnnealOutcome> {
    use cube_iso_core::search::{anneal_chain, merge_chains};
    use rayon::prelude::*;
    let chains = pool.install(|| {
        (0..cfg.restarts)
            .into_par_iter()
            .map(|c| anneal_chain(dim, objective, cfg, c))
            .collect::<cube_iso_core::Result<Vec<_>>>()
    })?;
    merge_chains(dim, objective, chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_range() {
        let ranges = chunk_ranges(3 * CHUNK + 7);
        assert_eq!(ranges.len(), 4);
        assert_eq!(ranges[0].start, 0);
        assert_eq!(ranges[3].end, 3 * CHUNK + 7);
        let total: u64 = ranges.iter().map(|r| r.end - r.start).sum();
        assert_eq!(total, 3 * CHUNK + 7);
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let dim = CubeDim::new(4).unwrap();
        let seq = cube_iso_core::verify::exhaustive_verify_sets(dim, &SetInequality::Main, false)
            .unwrap();
        let pool = build_pool(4).unwrap();
        let par = parallel_scan_sets(dim, &SetInequality::Main, false, &pool).unwrap();
        assert_eq!(seq.scanned, par.scanned);
        assert_eq!(seq.min_margin.to_bits(), par.min_margin.to_bits());
        assert_eq!(seq.witnesses, par.witnesses);
    }

    #[test]
    fn parallel_anneal_matches_sequential() {
        use cube_iso_core::search::{anneal, Objective, ObjectiveKind, SearchConfig};
        let dim = CubeDim::new(3).unwrap();
        let objective = Objective::new(ObjectiveKind::CubeSep).unwrap();
        let cfg = SearchConfig { iterations: 3_000, restarts: 4, ..SearchConfig::new(17) };
        let seq = anneal(dim, objective, &cfg).unwrap();
        let pool = build_pool(4).unwrap();
        let par = parallel_anneal(dim, objective, &cfg, &pool).unwrap();
        assert_eq!(seq.best_value.to_bits(), par.best_value.to_bits());
        assert_eq!(seq.best, par.best);
        assert_eq!(seq.best_chain, par.best_chain);
        for (a, b) in seq.chains.iter().zip(&par.chains) {
            assert_eq!(a.trace, b.trace);
        }
    }

    #[test]
    fn threads_resolution_order() {
        assert_eq!(resolve_threads(Some(3)), 3);
        assert!(resolve_threads(None) >= 1);
    }
}
