//! Necessary conditions on candidate words, and completion of a word from
//! half of its letters using the mirror set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{JSet, Poly, TracePoly};
use crate::ring::RootTwo;
use crate::trace::{chebyshev, trace_poly};
use crate::word::{adjacent_eq_count, distance2_eq_count, BalancedWord, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

fn require_search_form(w: &Word) -> Result<()> {
    let d = w.digits();
    let k = d.len();
    if d[k - 1] != 2 || d[..k - 1].contains(&2) {
        return Err(Error::precondition("expected exactly one y² syllable, in the last position"));
    }
    Ok(())
}

/// Exponent-sum condition: `(2k + ℓ) mod 8 ∈ {1, 7}`.
pub fn filter_modeight(w: &Word) -> Result<Verdict> {
    require_search_form(w)?;
    Ok(Verdict::from_bool(modeight_passes(w.k() as u64, w.y_exponent_sum())))
}

#[inline]
pub(crate) fn modeight_passes(k: u64, y_sum: u64) -> bool {
    matches!((2 * k + y_sum) % 8, 1 | 7)
}

/// Expected `(adjacent, distance-2)` equality counts for a target word of
/// half-length `m ≥ 3`.
pub fn expected_counts(m: usize) -> (usize, usize) {
    let d2 = if m % 2 == 1 { (m - 3) / 2 } else { (m - 2) / 2 };
    (m - 1, d2)
}

/// Coefficient-count condition on `a(1..2m−1)`.
pub fn filter_counts(w: &Word) -> Result<Verdict> {
    require_search_form(w)?;
    let k = w.k();
    if k % 2 == 1 || k < 6 {
        return Err(Error::precondition(format!("count filter needs k = 2m with m ≥ 3 (got k={k})")));
    }
    let body = &w.digits()[..k - 1];
    let observed = (adjacent_eq_count(body), distance2_eq_count(body));
    Ok(Verdict::from_bool(observed == expected_counts(k / 2)))
}

/// Completes free digits `a(0..m−1)` to a balanced word: `a(m) = 1` and, for
/// `1 ≤ j ≤ m`, `a(−j) = a(j)` if `j ∈ J`, else `4 − a(j)`.
pub fn complete_from_half(free: &[u8], jset: &JSet) -> Result<BalancedWord> {
    let m = free.len();
    if m == 0 || m != jset.m() as usize {
        return Err(Error::precondition(format!("need m = {} free digits, got {}", jset.m(), free.len())));
    }
    if free.iter().any(|&d| d != 1 && d != 3) {
        return Err(Error::precondition("free digits must be 1 or 3"));
    }
    let mut digits = vec![0u8; 2 * m + 1];
    digits[m..2 * m].copy_from_slice(free);
    digits[2 * m] = 1;
    for j in 1..=m {
        let a = digits[m + j];
        digits[m - j] = if jset.contains(j as i64) { a } else { 4 - a };
    }
    BalancedWord::new(m, digits)
}

/// Both sides of the mod-4 congruence `√2·τ_W ≡ Σ_{j∈J} P_j` where `J` is the
/// full symmetric mirror set and `P_j = T_{2|j|}`.
#[derive(Clone, Debug)]
pub struct SumsCheck {
    pub lhs: TracePoly,
    pub rhs: TracePoly,
    pub verdict: Verdict,
}

pub fn sums_congruence_check(w: &Word) -> Result<SumsCheck> {
    let b = w.to_balanced()?;
    let lhs = trace_poly(&b.to_word())?.mul_sqrt2()?.reduce_mod(4)?;
    let mut rhs = Poly::zero();
    for j in b.mirror_set() {
        let p = chebyshev(2 * j as u32)?;
        // ±j both belong to J except j = 0.
        let mult = if j == 0 { 1 } else { 2 };
        rhs = rhs.checked_add(&p.scale(&RootTwo::from_int(mult))?)?;
    }
    let rhs = rhs.reduce_mod(4)?;
    let verdict = Verdict::from_bool(lhs == rhs);
    Ok(SumsCheck { lhs, rhs, verdict })
}
