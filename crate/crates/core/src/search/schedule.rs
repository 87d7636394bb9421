//! Length bounds implied by a set of certified odd `m`.
//!
//! A counterexample of length `2n` with `n` even yields one of length `n`, so
//! an even length parameter `k = 2n` is covered once the odd part of `n` is
//! certified.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Odd half-lengths covered without search.
pub const BASE: [u32; 2] = [1, 3];

/// Largest `k` such that every even `k' ≤ k` has `k'/2` with odd part in
/// `BASE ∪ certified`; odd `k` are outside the search's responsibility.
///
/// `certified` must be exactly the odd integers `5, 7, …, M` (possibly empty).
pub fn schedule_bound(certified: &BTreeSet<u32>) -> Result<u32> {
    if let Some(&bad) = certified.iter().find(|&&v| v < 5 || v % 2 == 0) {
        return Err(Error::InvalidArgument(format!("certified values must be odd and at least 5 (got {bad})")));
    }
    let max = certified.last().copied().unwrap_or(3);
    if let Some(gap) = (5..=max).step_by(2).find(|v| !certified.contains(v)) {
        return Err(Error::InvalidArgument(format!("certified set has a gap at {gap}")));
    }
    let covered = |n: u32| {
        let odd = n >> n.trailing_zeros();
        BASE.contains(&odd) || certified.contains(&odd)
    };
    let first_uncovered = (1..).find(|&n| !covered(n)).expect("finite certified set");
    Ok(2 * first_uncovered - 1)
}

/// Parses `"5..31"` (odd values in the inclusive range) or a comma list
/// such as `"5,7,9"`. An empty string is the empty set.
pub fn parse_certified(text: &str) -> Result<BTreeSet<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(BTreeSet::new());
    }
    let num =
        |s: &str| s.trim().parse::<u32>().map_err(|_| Error::InvalidArgument(format!("not a number: {:?}", s.trim())));
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo % 2 == 0 || hi < lo {
            return Err(Error::InvalidArgument(format!("bad range {text:?}")));
        }
        return Ok((lo..=hi).step_by(2).collect());
    }
    text.split(',').map(num).collect()
}
