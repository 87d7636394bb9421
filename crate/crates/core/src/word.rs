//! Words `W = ∏ x·y^{a(j)}` in ℤ₂∗ℤ₄, their balanced form, and the
//! four-element symmetry group generated by inversion and `y ↦ y⁻¹`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `W = x y^{a(1)} x y^{a(2)} ⋯ x y^{a(k)}` with every `a(j) ∈ {1,2,3}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    digits: Vec<u8>,
}

impl Word {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&d) = digits.iter().find(|&&d| !(1..=3).contains(&d)) {
            return Err(Error::InvalidDigit(char::from_digit(d as u32, 10).unwrap_or('?')));
        }
        Ok(Word { digits })
    }

    pub(crate) fn from_digits_unchecked(digits: Vec<u8>) -> Self {
        debug_assert!(!digits.is_empty() && digits.iter().all(|d| (1..=3).contains(d)));
        Word { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Length parameter: the number of `x` letters.
    pub fn k(&self) -> usize {
        self.digits.len()
    }

    /// Number of `y²` syllables.
    pub fn y2_count(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 2).count()
    }

    /// Exponent sum of `y`.
    pub fn y_exponent_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    /// Cyclic rotation by `n` syllable pairs (a conjugate of `W`).
    pub fn rotate(&self, n: usize) -> Word {
        let mut digits = self.digits.clone();
        let k = digits.len();
        digits.rotate_left(n % k);
        Word { digits }
    }

    /// Rotates so that the unique `y²` is last. Errors unless exactly one
    /// digit is 2.
    pub fn to_search_normal_form(&self) -> Result<Word> {
        let twos: Vec<usize> = (0..self.k()).filter(|&i| self.digits[i] == 2).collect();
        match twos.as_slice() {
            [p] => Ok(self.rotate(p + 1)),
            _ => Err(Error::precondition(format!("word must contain exactly one y² syllable (found {})", twos.len()))),
        }
    }

    fn require_normal_form(&self) -> Result<()> {
        let k = self.k();
        if self.digits[k - 1] != 2 || self.digits[..k - 1].contains(&2) {
            return Err(Error::precondition("word must have exactly one y² syllable, in the last position"));
        }
        Ok(())
    }

    /// `W⁻¹`, written back in normal form: `b(j) = 4 − a(k−j)`, `b(k) = 2`.
    pub fn invert(&self) -> Result<Word> {
        self.require_normal_form()?;
        let k = self.k();
        let mut digits: Vec<u8> = (1..k).map(|j| 4 - self.digits[k - j - 1]).collect();
        digits.push(2);
        Ok(Word { digits })
    }

    /// Image under `y ↦ y⁻¹`: every digit `d ↦ 4 − d` (the final 2 is fixed).
    pub fn flip(&self) -> Result<Word> {
        self.require_normal_form()?;
        Ok(self.flip_all())
    }

    fn flip_all(&self) -> Word {
        Word { digits: self.digits.iter().map(|&d| 4 - d).collect() }
    }

    /// Inverse as an element of ℤ₂∗ℤ₄ for arbitrary words, up to conjugacy.
    pub fn inverse_conjugate(&self) -> Word {
        // (x y^a1 ⋯ x y^ak)⁻¹ = y^-ak x ⋯ y^-a1 x ~ x y^-a(k-1) ⋯ x y^-a1 x y^-ak
        let k = self.k();
        let mut digits: Vec<u8> = (1..k).map(|j| 4 - self.digits[k - 1 - j]).collect();
        digits.push(4 - self.digits[k - 1]);
        Word { digits }
    }

    /// Image under `y ↦ y⁻¹` for arbitrary words.
    pub fn flip_general(&self) -> Word {
        self.flip_all()
    }

    /// Lexicographically least image under {identity, invert, flip, invert∘flip}.
    pub fn canonicalize(&self) -> Result<Word> {
        let inv = self.invert()?;
        let flip = self.flip()?;
        let both = inv.flip()?;
        Ok([self.clone(), inv, flip, both].into_iter().min().expect("nonempty"))
    }

    /// Output-only pretty form, e.g. `xyxyxy3xy3xyxy2`.
    pub fn pretty(&self) -> String {
        self.digits.iter().map(|&d| if d == 1 { "xy".to_string() } else { format!("xy{d}") }).collect()
    }

    pub fn to_balanced(&self) -> Result<BalancedWord> {
        let w = self.to_search_normal_form()?;
        let k = w.k();
        if k % 2 == 1 {
            return Err(Error::precondition(format!("balanced form needs even k (got k={k})")));
        }
        if w.digits[..k - 1].contains(&2) {
            return Err(Error::precondition("word must contain exactly one y² syllable"));
        }
        let m = k / 2;
        let mut digits = Vec::with_capacity(2 * m + 1);
        digits.push(1);
        digits.extend_from_slice(&w.digits[..k - 1]);
        digits.push(1);
        Ok(BalancedWord { m, digits })
    }

    /// Equality counts on `a(1..k−1)` and, for balanced-capable words, the
    /// mirror set.
    pub fn stats(&self) -> Result<WordStats> {
        let b = self.to_balanced()?;
        let w = b.to_word();
        let body = &w.digits[..w.k() - 1];
        Ok(WordStats {
            adjacent_eq_count: adjacent_eq_count(body),
            distance2_eq_count: distance2_eq_count(body),
            mirror_set: b.mirror_set(),
        })
    }
}

pub(crate) fn adjacent_eq_count(body: &[u8]) -> usize {
    body.windows(2).filter(|w| w[0] == w[1]).count()
}

pub(crate) fn distance2_eq_count(body: &[u8]) -> usize {
    body.windows(3).filter(|w| w[0] == w[2]).count()
}

/// Combinatorial statistics used by the count filters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordStats {
    /// `#{j ∈ [1, 2m−2] : a(j) = a(j+1)}`.
    pub adjacent_eq_count: usize,
    /// `#{j ∈ [1, 2m−3] : a(j) = a(j+2)}`.
    pub distance2_eq_count: usize,
    /// `{ j ≥ 0 : a(j) = a(−j) }` in balanced form.
    pub mirror_set: Vec<usize>,
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        let digits = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                '3' => Ok(3),
                other => Err(Error::InvalidDigit(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { digits })
    }
}

/// Parses a digit string over `{1,2,3}`.
pub fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// `W = y^{a(−m)} x y^{a(1−m)} x ⋯ x y^{a(m−1)} x y^{a(m)}` with
/// `a(j) ∈ {1,3}` and `a(±m) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BalancedWord {
    m: usize,
    digits: Vec<u8>,
}

impl BalancedWord {
    /// Digits listed for indices `−m..=m`.
    pub fn new(m: usize, digits: Vec<u8>) -> Result<Self> {
        if m == 0 || digits.len() != 2 * m + 1 {
            return Err(Error::precondition(format!(
                "balanced word needs m ≥ 1 and 2m+1 digits (m={m}, got {})",
                digits.len()
            )));
        }
        if digits[0] != 1 || digits[2 * m] != 1 {
            return Err(Error::precondition("balanced word must have a(−m) = a(m) = 1"));
        }
        if digits.iter().any(|&d| d != 1 && d != 3) {
            return Err(Error::precondition("balanced digits must be 1 or 3"));
        }
        Ok(BalancedWord { m, digits })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a(j)` for `−m ≤ j ≤ m`.
    pub fn get(&self, j: i64) -> u8 {
        self.digits[(j + self.m as i64) as usize]
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Back to the unbalanced normal form (single trailing 2).
    pub fn to_word(&self) -> Word {
        let mut digits = self.digits[1..2 * self.m].to_vec();
        digits.push(2);
        Word { digits }
    }

    /// `{ j ≥ 0 : a(j) = a(−j) }`.
    pub fn mirror_set(&self) -> Vec<usize> {
        (0..=self.m).filter(|&j| self.get(j as i64) == self.get(-(j as i64))).collect()
    }
}

impl fmt::Display for BalancedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.digits.iter().map(u8::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}
