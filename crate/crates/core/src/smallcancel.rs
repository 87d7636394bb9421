//! Small cancellation analysis of the relator `W²` over ℤ₂∗ℤ₄, and the
//! reduced candidate enumerator used by the C6-mode search.
//!
//! Words are handled as cyclic syllable sequences: `0` stands for an `x`
//! syllable and `e ∈ {1,2,3}` for `y^e`. The symmetrized set consists of all
//! cyclic rotations of `W²` and of `W⁻²`; a piece is a common prefix of two
//! distinct elements of that set.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::complete_from_half;
use crate::poly::{trinomial_jset, JSet};
use crate::word::{BalancedWord, Word};

/// Cyclic syllable sequence of `W = x y^{a(1)} ⋯ x y^{a(k)}`.
pub fn syllables(w: &Word) -> Vec<u8> {
    w.digits().iter().flat_map(|&d| [0, d]).collect()
}

/// Syllable sequence of the inverse: reversed, with `y^e ↦ y^{4−e}`.
pub fn inverse_syllables(s: &[u8]) -> Vec<u8> {
    s.iter().rev().map(|&e| if e == 0 { 0 } else { 4 - e }).collect()
}

/// One element of the symmetrized set: a rotation of `W²` or of `W⁻²`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Rotation {
    pub inverse: bool,
    pub offset: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PieceReport {
    /// Syllable length of the relator `W²`.
    pub relator_syllables: usize,
    pub max_piece_syllables: usize,
    /// Fewest pieces whose product is an element of the symmetrized set;
    /// `None` when no element is a product of pieces at all.
    pub min_pieces: Option<usize>,
    pub c6_holds: bool,
    /// Two distinct elements sharing a prefix of maximal length.
    pub witness_positions: (Rotation, Rotation),
}

/// The symmetrized set of `W²` with per-rotation maximal piece lengths.
pub struct Symmetrized {
    forward: Vec<u8>,
    backward: Vec<u8>,
    /// Max piece length starting at each rotation; index `offset` for `W²`,
    /// `len + offset` for `W⁻²`.
    reach: Vec<usize>,
    partner: Vec<Rotation>,
}

impl Symmetrized {
    pub fn new(w: &Word) -> Self {
        let s = syllables(w);
        let forward: Vec<u8> = s.iter().chain(s.iter()).copied().collect();
        let backward = inverse_syllables(&forward);
        let len = forward.len();
        let rots: Vec<Rotation> = [false, true]
            .into_iter()
            .flat_map(|inverse| (0..len).map(move |offset| Rotation { inverse, offset }))
            .collect();
        let mut sym = Symmetrized {
            forward,
            backward,
            reach: vec![0; 2 * len],
            partner: vec![Rotation { inverse: false, offset: 0 }; 2 * len],
        };
        let mut order = rots.clone();
        order.sort_by(|a, b| sym.compare(*a, *b));
        // Group equal elements; the longest common prefix with any distinct
        // element is attained at the nearest distinct neighbour in sorted order.
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=order.len() {
            if i == order.len() || sym.compare(order[i - 1], order[i]) != Ordering::Equal {
                groups.push((start, i));
                start = i;
            }
        }
        for (g, &(lo, hi)) in groups.iter().enumerate() {
            let mut best = (0usize, order[lo]);
            if g > 0 {
                let other = order[groups[g - 1].0];
                let l = sym.lcp(order[lo], other);
                if l >= best.0 {
                    best = (l, other);
                }
            }
            if g + 1 < groups.len() {
                let other = order[groups[g + 1].0];
                let l = sym.lcp(order[lo], other);
                if l > best.0 || (g == 0 && l >= best.0) {
                    best = (l, other);
                }
            }
            for &r in &order[lo..hi] {
                let idx = sym.index(r);
                sym.reach[idx] = best.0;
                sym.partner[idx] = best.1;
            }
        }
        sym
    }

    pub fn relator_len(&self) -> usize {
        self.forward.len()
    }

    fn index(&self, r: Rotation) -> usize {
        r.offset + if r.inverse { self.forward.len() } else { 0 }
    }

    #[inline]
    fn at(&self, r: Rotation, i: usize) -> u8 {
        let seq = if r.inverse { &self.backward } else { &self.forward };
        seq[(r.offset + i) % seq.len()]
    }

    fn lcp(&self, a: Rotation, b: Rotation) -> usize {
        (0..self.forward.len()).take_while(|&i| self.at(a, i) == self.at(b, i)).count()
    }

    fn compare(&self, a: Rotation, b: Rotation) -> Ordering {
        (0..self.forward.len())
            .map(|i| self.at(a, i).cmp(&self.at(b, i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Longest piece that is a prefix of the given element.
    pub fn reach(&self, r: Rotation) -> usize {
        self.reach[self.index(r)]
    }

    /// Whether `seq` occurs as a piece (a common prefix of two distinct elements).
    pub fn is_piece(&self, seq: &[u8]) -> bool {
        [false, true].into_iter().any(|inverse| {
            (0..self.forward.len()).any(|offset| {
                let r = Rotation { inverse, offset };
                self.reach(r) >= seq.len() && seq.iter().enumerate().all(|(i, &e)| self.at(r, i) == e)
            })
        })
    }

    /// Fewest pieces tiling some element; `None` if none can be tiled.
    pub fn min_pieces(&self) -> Option<usize> {
        let len = self.forward.len();
        let mut best: Option<usize> = None;
        for inverse in [false, true] {
            for start in 0..len {
                // Suffixes of pieces are pieces, so `pos + reach` never
                // decreases and the farthest jump is optimal.
                let mut pos = 0;
                let mut count = 0;
                while pos < len {
                    let r = self.reach(Rotation { inverse, offset: (start + pos) % len });
                    if r == 0 {
                        count = usize::MAX;
                        break;
                    }
                    pos += r.min(len - pos);
                    count += 1;
                }
                if count != usize::MAX {
                    best = Some(best.map_or(count, |b: usize| b.min(count)));
                }
            }
        }
        best
    }

    pub fn report(&self) -> PieceReport {
        let len = self.forward.len();
        let (idx, &max) =
            self.reach.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).expect("nonempty relator");
        let first = Rotation { inverse: idx >= len, offset: idx % len };
        let min_pieces = self.min_pieces();
        PieceReport {
            relator_syllables: len,
            max_piece_syllables: max,
            min_pieces,
            c6_holds: min_pieces.is_none_or(|n| n >= 6),
            witness_positions: (first, self.partner[idx]),
        }
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

/// Piece statistics and C6 verdict for `W²`.
pub fn max_piece_syllables(w: &Word) -> Result<PieceReport> {
    require_search_form(w)?;
    Ok(Symmetrized::new(w).report())
}

/// Whether `W²` satisfies C6: no element of the symmetrized set is a product
/// of fewer than six pieces.
pub fn check_c6(w: &Word) -> Result<bool> {
    Ok(max_piece_syllables(w)?.c6_holds)
}

/// Whether the y-exponents `a(1−m), …, a(j−1)` form a self-inverse block,
/// i.e. `b_i + b_{n+1−i} ≡ 0 (mod 4)` for the `n = m−1+j` exponents.
pub fn has_self_inverse_block(b: &BalancedWord, j: usize) -> bool {
    let m = b.m() as i64;
    let exps: Vec<u8> = (1 - m..j as i64).map(|i| b.get(i)).collect();
    let n = exps.len();
    (0..n / 2).all(|t| (exps[t] + exps[n - 1 - t]).is_multiple_of(4))
}

/// Solution space of the mirror and self-inverse constraints for one `j`,
/// as half-assignment bitmasks (bit `i` set when `a(i) = 3`).
#[derive(Clone, Debug)]
struct BlockSolutions {
    j: usize,
    /// Assignment with every free component at 0.
    base: u64,
    /// One toggle mask per free component; the first is the most significant
    /// bit of the enumeration index.
    toggles: Vec<u64>,
}

impl BlockSolutions {
    fn build(m: usize, jset: &JSet, j: usize) -> Result<Self> {
        // Union-find with parity over the bits of a(0..m−1).
        let mut parent: Vec<usize> = (0..m).collect();
        let mut par: Vec<u8> = vec![0; m];
        fn find(parent: &mut [usize], par: &mut [u8], x: usize) -> (usize, u8) {
            if parent[x] == x {
                return (x, 0);
            }
            let (root, p) = find(parent, par, parent[x]);
            parent[x] = root;
            par[x] ^= p;
            (root, par[x])
        }
        // a(i) for i < 0 is a(|i|) complemented unless |i| ∈ J.
        let literal = |i: i64| -> (usize, u8) {
            if i >= 0 {
                (i as usize, 0)
            } else {
                (i.unsigned_abs() as usize, u8::from(!jset.contains(i)))
            }
        };
        let idx: Vec<i64> = (1 - m as i64..j as i64).collect();
        let n = idx.len();
        for t in 0..n / 2 {
            let (vp, cp) = literal(idx[t]);
            let (vq, cq) = literal(idx[n - 1 - t]);
            // a(p) + a(q) = 4 means the two digits differ.
            let want = 1 ^ cp ^ cq;
            let (rp, op) = find(&mut parent, &mut par, vp);
            let (rq, oq) = find(&mut parent, &mut par, vq);
            if rp == rq {
                if op ^ oq != want {
                    return Err(Error::precondition(format!("inconsistent self-inverse constraints for m={m}, j={j}")));
                }
            } else {
                parent[rp] = rq;
                par[rp] = op ^ oq ^ want;
            }
        }
        let resolved: Vec<(usize, u8)> = (0..m).map(|v| find(&mut parent, &mut par, v)).collect();
        // Fix y ↦ y⁻¹ by requiring a(1−m) = 1.
        let (anchor_var, anchor_c) = literal(1 - m as i64);
        let (anchor_root, anchor_par) = resolved[anchor_var];
        let anchor_value = anchor_par ^ anchor_c;
        let mut base = 0u64;
        let mut toggles = Vec::new();
        for (v, &(root, p)) in resolved.iter().enumerate() {
            let root_value = if root == anchor_root { anchor_value } else { 0 };
            base |= u64::from(root_value ^ p) << v;
            if root == v && root != anchor_root {
                let mask =
                    resolved.iter().enumerate().filter(|(_, &(r, _))| r == root).fold(0u64, |acc, (u, _)| acc | 1 << u);
                toggles.push(mask);
            }
        }
        Ok(BlockSolutions { j, base, toggles })
    }

    fn count(&self) -> u64 {
        1 << self.toggles.len()
    }

    fn half(&self, index: u64) -> u64 {
        let f = self.toggles.len();
        self.toggles
            .iter()
            .enumerate()
            .filter(|(pos, _)| (index >> (f - 1 - pos)) & 1 == 1)
            .fold(self.base, |h, (_, &t)| h ^ t)
    }
}

/// Indexable description of the C6-reduced candidate set for odd `m`.
#[derive(Clone, Debug)]
pub struct C6Plan {
    m: usize,
    jset: JSet,
    blocks: Vec<BlockSolutions>,
}

impl C6Plan {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) || m > 63 {
            return Err(Error::InvalidArgument(format!("C6 candidates need odd 3 ≤ m ≤ 63 (got {m})")));
        }
        let jset = trinomial_jset(m as u32);
        let blocks = (2..m).step_by(2).map(|j| BlockSolutions::build(m, &jset, j)).collect::<Result<Vec<_>>>()?;
        Ok(C6Plan { m, jset, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn jset(&self) -> &JSet {
        &self.jset
    }

    /// Total number of candidates, `Σ_j 2^{(m−1−j)/2}`.
    pub fn len(&self) -> u64 {
        self.blocks.iter().map(BlockSolutions::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-`j` block sizes.
    pub fn block_sizes(&self) -> Vec<(usize, u64)> {
        self.blocks.iter().map(|b| (b.j, b.count())).collect()
    }

    /// Half-assignment of the candidate with global index `index` (blocks in
    /// increasing `j`): bit `i` is set when `a(i) = 3`.
    pub fn candidate_half(&self, mut index: u64) -> Option<(usize, u64)> {
        for b in &self.blocks {
            if index < b.count() {
                return Some((b.j, b.half(index)));
            }
            index -= b.count();
        }
        None
    }

    pub fn candidate(&self, index: u64) -> Option<(usize, BalancedWord)> {
        let (j, h) = self.candidate_half(index)?;
        let free: Vec<u8> = (0..self.m).map(|i| if (h >> i) & 1 == 1 { 3 } else { 1 }).collect();
        let word = complete_from_half(&free, &self.jset).expect("valid completion");
        Some((j, word))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, BalancedWord)> + '_ {
        (0..self.len()).map(move |i| self.candidate(i).expect("index in range"))
    }
}

/// Stream of candidate balanced words for odd `m`: for each even
/// `j ∈ {2, 4, …, m−1}`, the words satisfying the mirror constraints and
/// having a self-inverse block of syllable length `2m−3+2j` starting at
/// `y^{a(1−m)}`, one representative per `y ↦ y⁻¹` pair.
pub fn enumerate_c6_candidates(m: usize) -> Result<impl Iterator<Item = BalancedWord>> {
    let plan = C6Plan::new(m)?;
    Ok((0..plan.len()).map(move |i| plan.candidate(i).expect("index in range").1))
}
