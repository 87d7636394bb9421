//! Block-parallel, checkpointed searches for words with trace `√2(λ²−1)^m`.
//!
//! Candidates are half-assignments `h` of the free digits `a(0..m−1)` (bit `i`
//! set when `a(i) = 3`), completed through the mirror set. Every filter runs on
//! bitmasks; only survivors are materialized as digit strings.

mod checkpoint;
mod schedule;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checkpoint::{Checkpoint, CHECKPOINT_VERSION};
pub use schedule::{parse_certified, schedule_bound, BASE};

use crate::error::{Error, Result};
use crate::filter::{expected_counts, modeight_passes};
use crate::poly::{trinomial_jset, JSet};
use crate::smallcancel::C6Plan;
use crate::trace::matches_search_target;
use crate::trace::modp::TargetScreen;
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// All mirror-set completions, one per symmetry orbit.
    Jset,
    /// The small-cancellation reduced candidate set (odd `m ≥ 3`).
    C6,
}

impl SearchMode {
    /// What an empty result certifies.
    pub fn certificate(self) -> &'static str {
        match self {
            SearchMode::Jset => "Conjecture noW",
            SearchMode::C6 => "Rosenberger (conditional on oracle-validated enumerator)",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Jset => "jset",
            SearchMode::C6 => "c6",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jset" => Ok(SearchMode::Jset),
            "c6" => Ok(SearchMode::C6),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?} (expected jset or c6)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub threads: usize,
    /// Candidates per block is `2^block_bits`.
    pub block_bits: u32,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Process at most this many blocks in this run, then stop.
    pub stop_after_blocks: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            block_bits: 20,
            checkpoint: None,
            resume: false,
            stop_after_blocks: None,
        }
    }
}

impl SearchOptions {
    pub fn with_threads(threads: usize) -> Self {
        SearchOptions { threads, ..SearchOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub m: u32,
    pub mode: SearchMode,
    /// Canonical digit strings, sorted.
    pub hits: Vec<String>,
    pub candidates_examined: u64,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchRecord {
    /// Everything except the wall time.
    pub fn same_result(&self, other: &SearchRecord) -> bool {
        (self.m, self.mode, &self.hits, self.candidates_examined)
            == (other.m, other.mode, &other.hits, other.candidates_examined)
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Complete(SearchRecord),
    /// Stopped early; progress is in the checkpoint, if one was given.
    Interrupted {
        completed_blocks: u64,
        total_blocks: u64,
    },
}

impl SearchOutcome {
    pub fn complete(self) -> Option<SearchRecord> {
        match self {
            SearchOutcome::Complete(r) => Some(r),
            SearchOutcome::Interrupted { .. } => None,
        }
    }
}

/// Per-`m` bitmask data shared by both modes.
struct Kernel {
    m: u32,
    /// Bits `1..m−1` not in `J`.
    not_j: u64,
    /// For each nonzero symmetry mask: (top bit `t`, complement flag); a half
    /// is canonical when `bit t ^ flag == 0` for each entry.
    canon: Vec<(u32, u64)>,
    counts: Option<(u32, u32)>,
    screen: TargetScreen,
}

impl Kernel {
    fn new(m: u32, jset: &JSet) -> Self {
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let inner = full & !1;
        let j_inner = jset.mask(0, m.min(64)) & inner;
        let not_j = inner & !j_inner;
        // flip: every bit; invert: bit 0 and J ∩ [1, m−1]; their product:
        // [1, m−1] \ J.
        let canon = [full, 1 | j_inner, not_j]
            .into_iter()
            .filter(|&g| g != 0)
            .map(|g| {
                let t = 63 - g.leading_zeros();
                let flag = if t == 0 { 0 } else { (not_j >> t) & 1 };
                (t, flag)
            })
            .collect();
        let counts = (m >= 3).then(|| {
            let (a, d) = expected_counts(m as usize);
            (a as u32, d as u32)
        });
        Kernel { m, not_j, canon, counts, screen: TargetScreen::new(m) }
    }

    #[inline]
    fn is_canonical(&self, h: u64) -> bool {
        self.canon.iter().all(|&(t, flag)| (h >> t) & 1 == flag)
    }

    /// Unbalanced body `u(1..2m−1)` as a bitmask, bit `p` for `u(p+1) = 3`.
    #[inline]
    fn body(&self, h: u64) -> u128 {
        let m = self.m;
        let low = (h ^ self.not_j).reverse_bits() >> (64 - m);
        let low = low & ((1u64 << (m - 1)) - 1);
        u128::from(low) | (u128::from(h) << (m - 1))
    }

    #[inline]
    fn passes_counts(&self, w: u128) -> bool {
        let Some((adj, d2)) = self.counts else { return true };
        let n = 2 * self.m - 1;
        let mask = |bits: u32| (1u128 << bits) - 1;
        let adj_diff = ((w ^ (w >> 1)) & mask(n - 1)).count_ones();
        if n - 1 - adj_diff != adj {
            return false;
        }
        let d2_diff = ((w ^ (w >> 2)) & mask(n - 2)).count_ones();
        n - 2 - d2_diff == d2
    }

    #[inline]
    fn passes_modeight(&self, w: u128) -> bool {
        let k = 2 * u64::from(self.m);
        let y_sum = (k - 1) + 2 * u64::from(w.count_ones()) + 2;
        modeight_passes(k, y_sum)
    }

    /// Filters, then the modular screen, then the exact comparison. Returns
    /// the canonical hit, if any.
    fn test(&self, h: u64) -> Option<String> {
        let w = self.body(h);
        if !self.passes_counts(w) || !self.passes_modeight(w) {
            return None;
        }
        let n = 2 * self.m as usize - 1;
        let mut digits: Vec<u8> = (0..n).map(|p| if (w >> p) & 1 == 1 { 3 } else { 1 }).collect();
        digits.push(2);
        if !self.screen.may_match(&digits) {
            return None;
        }
        let word = Word::from_digits_unchecked(digits);
        if !matches_search_target(&word, self.m) {
            return None;
        }
        Some(word.canonicalize().expect("search normal form").to_string())
    }
}

/// The candidate source for one search.
enum Source {
    Jset { kernel: Kernel, total: u64 },
    C6 { kernel: Kernel, plan: C6Plan },
}

impl Source {
    fn new(m: u32, mode: SearchMode) -> Result<Self> {
        match mode {
            SearchMode::Jset => {
                if !(1..=40).contains(&m) {
                    return Err(Error::InvalidArgument(format!("jset mode needs 1 ≤ m ≤ 40 (got {m})")));
                }
                let kernel = Kernel::new(m, &trinomial_jset(m));
                Ok(Source::Jset { kernel, total: 1 << m })
            }
            SearchMode::C6 => {
                let plan = C6Plan::new(m as usize)?;
                let kernel = Kernel::new(m, plan.jset());
                Ok(Source::C6 { kernel, plan })
            }
        }
    }

    fn total(&self) -> u64 {
        match self {
            Source::Jset { total, .. } => *total,
            Source::C6 { plan, .. } => plan.len(),
        }
    }

    /// Runs enumeration indices `lo..hi`; returns (hits, candidates examined).
    fn run(&self, lo: u64, hi: u64) -> (Vec<String>, u64) {
        let mut hits = Vec::new();
        let mut examined = 0;
        match self {
            Source::Jset { kernel, .. } => {
                let m = kernel.m;
                for g in lo..hi {
                    // a(0) is the most significant bit of the index.
                    let h = g.reverse_bits() >> (64 - m);
                    if !kernel.is_canonical(h) {
                        continue;
                    }
                    examined += 1;
                    hits.extend(kernel.test(h));
                }
            }
            Source::C6 { kernel, plan } => {
                for i in lo..hi {
                    let (_, h) = plan.candidate_half(i).expect("index in range");
                    examined += 1;
                    hits.extend(kernel.test(h));
                }
            }
        }
        (hits, examined)
    }
}

/// Runs a search with default options on all available cores.
pub fn search_m(m: u32, mode: SearchMode) -> Result<SearchRecord> {
    Ok(search_with(m, mode, &SearchOptions::default())?.complete().expect("uninterrupted search completes"))
}

/// Runs (or resumes) a search. Blocks are the unit of work and of
/// checkpointing; hits are merged as sets, so the result does not depend on
/// the number of workers or on where a run was interrupted.
pub fn search_with(m: u32, mode: SearchMode, opts: &SearchOptions) -> Result<SearchOutcome> {
    if opts.threads == 0 {
        return Err(Error::InvalidArgument("threads must be at least 1".into()));
    }
    if opts.block_bits > 40 {
        return Err(Error::InvalidArgument("block_bits must be at most 40".into()));
    }
    let start = Instant::now();
    let source = Source::new(m, mode)?;
    let block_size = 1u64 << opts.block_bits;
    let total = source.total();
    let total_blocks = total.div_ceil(block_size);

    let mut state = Checkpoint::new(m, mode, block_size);
    if opts.resume {
        let path =
            opts.checkpoint.as_ref().ok_or_else(|| Error::InvalidArgument("resume needs a checkpoint path".into()))?;
        if path.exists() {
            state = Checkpoint::load(path)?;
            state.ensure_matches(m, mode, block_size)?;
            if let Some(&b) = state.completed_blocks.iter().find(|&&b| b >= total_blocks) {
                return Err(Error::Checkpoint(format!("block {b} out of range")));
            }
        }
    }

    let mut pending: Vec<u64> = (0..total_blocks).filter(|b| !state.completed_blocks.contains(b)).collect();
    if let Some(limit) = opts.stop_after_blocks {
        pending.truncate(limit.min(pending.len() as u64) as usize);
    }

    let shared = Mutex::new(state);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| {
        pending.par_iter().try_for_each(|&b| -> Result<()> {
            let lo = b * block_size;
            let hi = (lo + block_size).min(total);
            let (hits, examined) = source.run(lo, hi);
            let mut st = shared.lock().expect("checkpoint state lock");
            st.completed_blocks.insert(b);
            st.partial_hits.extend(hits);
            st.candidates_examined += examined;
            if let Some(path) = &opts.checkpoint {
                st.save(path)?;
            }
            Ok(())
        })
    })?;

    let state = shared.into_inner().expect("checkpoint state lock");
    let done = state.completed_blocks.len() as u64;
    if done < total_blocks {
        return Ok(SearchOutcome::Interrupted { completed_blocks: done, total_blocks });
    }
    Ok(SearchOutcome::Complete(SearchRecord {
        m,
        mode,
        hits: state.partial_hits.into_iter().collect(),
        candidates_examined: state.candidates_examined,
        wall_time: start.elapsed(),
    }))
}
