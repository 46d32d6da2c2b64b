//! Range census over the classification predicates.
//!
//! A search splits `[lo, hi]` into fixed-size segments, factors each segment
//! with the sieve, evaluates every requested predicate from one shared set of
//! divisor-function values per integer, and releases matches in ascending
//! order regardless of how many workers ran. After each merged segment the
//! running summary can be written to a checkpoint for later resumption.

mod census;
mod checkpoint;
mod output;
mod parallel;

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{
    for_each_factored, DivisorFunctions, FactorBlock, Factorization, PrimePower,
    DEFAULT_SEGMENT_SIZE, RANGE_LIMIT,
};
use crate::classify::{Flags, Means, NumberProfile, PredicateSpec, ShapePattern};
use crate::error::{Error, Result};

pub use census::{census_report, CensusReport, ShapeMembers, CATALOG_SHAPES, TWO_PRIME_SHAPES};
pub use checkpoint::{Checkpoint, CHECKPOINT_VERSION};
pub use output::{OutputFormat, RecordWriter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchQuery {
    pub lo: u64,
    pub hi: u64,
    pub predicates: Vec<PredicateSpec>,
    pub shape: Option<ShapePattern>,
    pub include_one: bool,
}

impl SearchQuery {
    pub fn new(lo: u64, hi: u64) -> Self {
        SearchQuery {
            lo,
            hi,
            predicates: Vec::new(),
            shape: None,
            include_one: true,
        }
    }

    pub fn with_predicate(mut self, p: PredicateSpec) -> Self {
        self.predicates.push(p);
        self.predicates.sort();
        self.predicates.dedup();
        self
    }

    pub fn with_shape(mut self, shape: ShapePattern) -> Self {
        self.shape = Some(shape);
        self
    }

    pub fn include_one(mut self, include: bool) -> Self {
        self.include_one = include;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo == 0 || self.lo > self.hi || self.hi > RANGE_LIMIT {
            return Err(Error::InvalidQuery(format!(
                "range [{}, {}] must satisfy 1 <= lo <= hi <= 10^10",
                self.lo, self.hi
            )));
        }
        let mut seen = self.predicates.clone();
        seen.sort();
        seen.dedup();
        for w in seen.windows(2) {
            if w[0].predicate == w[1].predicate {
                return Err(Error::InvalidQuery(format!(
                    "predicate {} requested both positively and negated",
                    w[0].predicate
                )));
            }
        }
        Ok(())
    }

    fn canonical(&self) -> SearchQuery {
        let mut q = self.clone();
        q.predicates.sort();
        q.predicates.dedup();
        q
    }

    /// Hex SHA-256 of the canonical query, used to bind checkpoints to it.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.canonical()).expect("query serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// One matching integer with everything needed to recheck its flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: u64,
    pub factorization: String,
    pub d: u128,
    pub d_star: u128,
    pub d_bistar: u128,
    pub sigma: u128,
    pub sigma_star: u128,
    pub sigma_bistar: u128,
    pub means: Means,
    pub flags: Flags,
}

impl SearchRecord {
    pub fn from_profile(p: &NumberProfile) -> Self {
        let f = &p.functions;
        SearchRecord {
            n: p.n,
            factorization: p.factorization.to_string(),
            d: f.d,
            d_star: f.d_star,
            d_bistar: f.d_bistar,
            sigma: f.sigma,
            sigma_star: f.sigma_star,
            sigma_bistar: f.sigma_bistar,
            means: p.means,
            flags: p.flags,
        }
    }

    pub fn functions(&self) -> DivisorFunctions {
        DivisorFunctions {
            d: self.d,
            d_star: self.d_star,
            d_bistar: self.d_bistar,
            sigma: self.sigma,
            sigma_star: self.sigma_star,
            sigma_bistar: self.sigma_bistar,
        }
    }

    /// Canonical single-line JSON, also the input to the summary digest.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Running totals of a search, carried across checkpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub lo: u64,
    pub hi: u64,
    /// First integer not yet scanned; `hi + 1` when complete.
    pub next_unscanned: u64,
    pub records: u64,
    pub records_excluding_one: u64,
    /// Integers in the scanned range satisfying each predicate on its own.
    pub predicate_counts: BTreeMap<String, u64>,
    /// Chained SHA-256 over the JSON lines of all emitted records.
    pub digest: String,
}

const INITIAL_DIGEST: &str = "0000000000000000000000000000000000000000000000000000000000000000";

impl SearchSummary {
    fn start(query: &SearchQuery) -> Self {
        SearchSummary {
            lo: query.lo,
            hi: query.hi,
            next_unscanned: query.lo,
            records: 0,
            records_excluding_one: 0,
            predicate_counts: query
                .predicates
                .iter()
                .map(|p| (p.to_string(), 0))
                .collect(),
            digest: INITIAL_DIGEST.to_string(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.next_unscanned > self.hi
    }

    fn absorb(&mut self, query: &SearchQuery, seg: &SegmentScan, seg_hi: u64) {
        let mut digest = hex::decode(&self.digest).expect("digest is hex");
        for r in &seg.records {
            self.records += 1;
            if r.n != 1 {
                self.records_excluding_one += 1;
            }
            let mut h = Sha256::new();
            h.update(&digest);
            h.update(r.to_json_line().as_bytes());
            digest = h.finalize().to_vec();
        }
        self.digest = hex::encode(digest);
        for (p, c) in query.predicates.iter().zip(&seg.predicate_counts) {
            *self.predicate_counts.entry(p.to_string()).or_default() += c;
        }
        self.next_unscanned = seg_hi + 1;
    }
}

/// Records and per-predicate counts for one segment.
#[derive(Debug, Clone, Default)]
pub struct SegmentScan {
    pub records: Vec<SearchRecord>,
    pub predicate_counts: Vec<u64>,
}

/// Worker count and segment length for range scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub workers: usize,
    pub segment_size: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            segment_size: DEFAULT_SEGMENT_SIZE,
        }
    }
}

impl ScanConfig {
    pub fn new(workers: usize, segment_size: u64) -> Self {
        ScanConfig {
            workers: workers.max(1),
            segment_size: segment_size.max(1),
        }
    }
}

/// Called with the running summary after each merged segment.
#[derive(Clone)]
pub struct ProgressHook(pub std::sync::Arc<dyn Fn(&SearchSummary) + Send + Sync>);

impl ProgressHook {
    pub fn new(f: impl Fn(&SearchSummary) + Send + Sync + 'static) -> Self {
        ProgressHook(std::sync::Arc::new(f))
    }
}

impl std::fmt::Debug for ProgressHook {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ProgressHook")
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub scan: ScanConfig,
    /// Checkpoint file, rewritten after every merged segment.
    pub checkpoint: Option<PathBuf>,
    /// Continue from `checkpoint` if it exists.
    pub resume: bool,
    /// Stop after the segment containing this integer has been merged.
    pub halt_after: Option<u64>,
    pub progress: Option<ProgressHook>,
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            scan: ScanConfig {
                workers: workers.max(1),
                ..ScanConfig::default()
            },
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub summary: SearchSummary,
    pub completed: bool,
}

fn scan_range(
    lo: u64,
    hi: u64,
    query: &SearchQuery,
    block: &mut FactorBlock,
) -> Result<SegmentScan> {
    let mut out = SegmentScan {
        records: Vec::new(),
        predicate_counts: vec![0; query.predicates.len()],
    };
    for_each_factored(lo, hi, block, |n, factors| {
        if n == 1 && !query.include_one {
            return Ok(());
        }
        let shape_ok = query.shape.as_ref().is_none_or(|s| s.matches(factors));
        let funcs = DivisorFunctions::of(factors)?;
        let mut all = shape_ok;
        for (i, p) in query.predicates.iter().enumerate() {
            if p.eval(n, factors, &funcs)? {
                out.predicate_counts[i] += 1;
            } else {
                all = false;
            }
        }
        if all {
            out.records.push(record_for(n, factors)?);
        }
        Ok(())
    })?;
    Ok(out)
}

fn record_for(n: u64, factors: &[PrimePower]) -> Result<SearchRecord> {
    let profile = NumberProfile::from_factorization(
        n,
        Factorization::from_sorted_unchecked(factors.to_vec()),
    )?;
    Ok(SearchRecord::from_profile(&profile))
}

/// Matching records in `[lo, hi]`, ascending. The segment may hold at most
/// the default segment size.
pub fn scan_segment(lo: u64, hi: u64, query: &SearchQuery) -> Result<Vec<SearchRecord>> {
    if lo <= hi && hi - lo + 1 > DEFAULT_SEGMENT_SIZE {
        return Err(Error::SegmentTooLarge {
            lo,
            hi,
            len: hi - lo + 1,
            max: DEFAULT_SEGMENT_SIZE,
        });
    }
    Ok(scan_range(lo, hi, query, &mut FactorBlock::new())?.records)
}

thread_local! {
    static BLOCK: std::cell::RefCell<FactorBlock> = std::cell::RefCell::new(FactorBlock::new());
}

fn with_block<T>(f: impl FnOnce(&mut FactorBlock) -> T) -> T {
    BLOCK.with(|b| f(&mut b.borrow_mut()))
}

/// Runs a full search, passing each matching record to `sink` in ascending
/// order. Output is identical for every worker count and segment size.
pub fn search<F>(query: &SearchQuery, opts: &SearchOptions, mut sink: F) -> Result<SearchOutcome>
where
    F: FnMut(&SearchRecord) -> Result<()>,
{
    query.validate()?;
    let mut summary = SearchSummary::start(query);
    if opts.resume {
        if let Some(path) = &opts.checkpoint {
            if let Some(cp) = Checkpoint::load(path)? {
                cp.check_matches(query, path)?;
                summary = cp.summary;
            }
        }
    }
    if summary.is_complete() {
        return Ok(SearchOutcome {
            summary,
            completed: true,
        });
    }

    let fingerprint = query.fingerprint();
    let completed = parallel::run_ordered(
        summary.next_unscanned,
        query.hi,
        opts.scan.segment_size,
        opts.scan.workers,
        |a, b| with_block(|block| scan_range(a, b, query, block)),
        |_, b, seg| {
            for r in &seg.records {
                sink(r)?;
            }
            summary.absorb(query, &seg, b);
            if let Some(path) = &opts.checkpoint {
                Checkpoint::new(query, &fingerprint, &summary).store(path)?;
            }
            if let Some(hook) = &opts.progress {
                (hook.0)(&summary);
            }
            Ok(match opts.halt_after {
                Some(h) if b >= h && b < query.hi => ControlFlow::Break(()),
                _ => ControlFlow::Continue(()),
            })
        },
    )?;
    Ok(SearchOutcome {
        completed: completed && summary.is_complete(),
        summary,
    })
}

/// Collects all records of a search into memory.
pub fn search_collect(
    query: &SearchQuery,
    opts: &SearchOptions,
) -> Result<(Vec<SearchRecord>, SearchSummary)> {
    let mut records = Vec::new();
    let outcome = search(query, opts, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, outcome.summary))
}

/// Visits every integer of `[lo, hi]` with its factors and divisor
/// functions. `visit` folds into a per-segment accumulator; `merge` receives
/// the accumulators in ascending segment order.
pub fn scan_fold<A, V, M>(lo: u64, hi: u64, cfg: &ScanConfig, visit: V, mut merge: M) -> Result<()>
where
    A: Default + Send,
    V: Fn(&mut A, u64, &[PrimePower], &DivisorFunctions) -> Result<()> + Sync,
    M: FnMut(A) -> Result<()>,
{
    if lo == 0 || lo > hi || hi > RANGE_LIMIT {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "scan needs 1 <= lo <= hi <= 10^10",
        });
    }
    parallel::run_ordered(
        lo,
        hi,
        cfg.segment_size,
        cfg.workers,
        |a, b| {
            with_block(|block| {
                let mut acc = A::default();
                for_each_factored(a, b, block, |n, factors| {
                    let funcs = DivisorFunctions::of(factors)?;
                    visit(&mut acc, n, factors, &funcs)
                })?;
                Ok(acc)
            })
        },
        |_, _, acc| merge(acc).map(|_| ControlFlow::Continue(())),
    )?;
    Ok(())
}
