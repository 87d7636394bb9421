//! Laurent polynomials over GF(2) and the odd-coefficient sets of trinomial
//! powers `(t + 1 + t⁻¹)^m`.

use std::fmt;

/// A GF(2) Laurent polynomial stored as a bitset of coefficients, bit `i`
/// holding the coefficient of `t^(i - offset)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Laurent {
    words: Vec<u64>,
    offset: usize,
}

impl Gf2Laurent {
    pub fn one() -> Self {
        Gf2Laurent { words: vec![1], offset: 0 }
    }

    /// `t⁻¹ + 1 + t`.
    pub fn trinomial() -> Self {
        Gf2Laurent { words: vec![0b111], offset: 1 }
    }

    pub fn coeff(&self, exp: i64) -> bool {
        let i = exp + self.offset as i64;
        if i < 0 {
            return false;
        }
        let i = i as usize;
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Frobenius squaring: spreads bit `i` to bit `2i`.
    pub fn square(&self) -> Self {
        let mut words = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            words[2 * i] = spread(w as u32);
            words[2 * i + 1] = spread((w >> 32) as u32);
        }
        Gf2Laurent { words, offset: self.offset * 2 }.trimmed()
    }

    /// Multiplication by `t⁻¹ + 1 + t`.
    pub fn mul_trinomial(&self) -> Self {
        let n = self.words.len() + 1;
        let mut words = vec![0u64; n];
        for (i, &w) in self.words.iter().enumerate() {
            words[i] ^= w;
            words[i] ^= w << 1;
            words[i + 1] ^= w >> 63;
            words[i] ^= w << 2;
            words[i + 1] ^= w >> 62;
        }
        Gf2Laurent { words, offset: self.offset + 1 }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.words.len() > 1 && self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    /// `(t⁻¹ + 1 + t)^m` by square-and-multiply.
    pub fn trinomial_pow(m: u32) -> Self {
        let mut acc = Gf2Laurent::one();
        for bit in (0..32 - m.leading_zeros()).rev() {
            acc = acc.square();
            if (m >> bit) & 1 == 1 {
                acc = acc.mul_trinomial();
            }
        }
        acc
    }
}

fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// The symmetric set of indices `j ∈ {-m..m}` whose coefficient in
/// `(t + 1 + t⁻¹)^m` is odd, stored as its non-negative half `{0..m}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JSet {
    m: u32,
    members: Vec<u64>,
}

impl JSet {
    pub fn from_members(m: u32, members: impl IntoIterator<Item = u32>) -> Self {
        let mut bits = vec![0u64; m as usize / 64 + 1];
        for j in members {
            assert!(j <= m, "member {j} out of range 0..={m}");
            bits[j as usize / 64] |= 1 << (j % 64);
        }
        JSet { m, members: bits }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Membership of `|j|`.
    pub fn contains(&self, j: i64) -> bool {
        let j = j.unsigned_abs();
        j <= self.m as u64 && (self.members[j as usize / 64] >> (j % 64)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.m).filter(|&j| self.contains(j as i64))
    }

    /// Bitmask of members in `lo..hi` (bit `j` set for member `j`); requires `hi ≤ 64`.
    pub fn mask(&self, lo: u32, hi: u32) -> u64 {
        assert!(hi <= 64);
        (lo..hi).filter(|&j| self.contains(j as i64)).fold(0, |acc, j| acc | 1 << j)
    }
}

impl fmt::Display for JSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Odd-coefficient set of `(t + 1 + t⁻¹)^m`, by GF(2) powering.
pub fn trinomial_jset(m: u32) -> JSet {
    assert!(m >= 1, "trinomial_jset requires m >= 1");
    let p = Gf2Laurent::trinomial_pow(m);
    JSet::from_members(m, (0..=m).filter(|&j| p.coeff(j as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integer expansion of `(1 + t + t²)^m`, reduced mod 2 at each step.
    fn naive_parity(m: u32) -> Vec<bool> {
        let mut c = vec![true];
        for _ in 0..m {
            let mut n = vec![false; c.len() + 2];
            for (i, &v) in c.iter().enumerate() {
                n[i] ^= v;
                n[i + 1] ^= v;
                n[i + 2] ^= v;
            }
            c = n;
        }
        c
    }

    #[test]
    fn small_cases() {
        assert_eq!(trinomial_jset(1), JSet::from_members(1, [0, 1]));
        assert_eq!(trinomial_jset(3), JSet::from_members(3, [0, 2, 3]));
        assert_eq!(trinomial_jset(6), JSet::from_members(6, [0, 4, 6]));
        assert_eq!(trinomial_jset(3).to_string(), "{0,2,3}");
    }

    #[test]
    fn matches_naive_expansion() {
        for m in 1..200u32 {
            let naive = naive_parity(m);
            let j = trinomial_jset(m);
            for k in 0..=m {
                assert_eq!(j.contains(k as i64), naive[(m + k) as usize], "m={m} j={k}");
            }
            assert!(j.contains(m as i64));
        }
    }

    #[test]
    fn frobenius_doubling() {
        for n in 1..=64u32 {
            let half = trinomial_jset(n);
            let full = trinomial_jset(2 * n);
            let doubled = JSet::from_members(2 * n, half.iter().map(|j| 2 * j));
            assert_eq!(full, doubled, "n={n}");
        }
    }

    #[test]
    fn spread_interleaves() {
        assert_eq!(spread(0b1011), 0b1000101);
        assert_eq!(spread(u32::MAX), 0x5555_5555_5555_5555);
    }
}
