//! k-subsets of `[n]` = {1, ..., n} encoded as bit masks.
//!
//! Element i occupies bit i-1. For fixed k, comparing masks as integers is
//! exactly colexicographic order on subsets, so colex is the single canonical
//! enumeration order used repo-wide.

use crate::binom::binom64;
use crate::error::{Error, Result};

/// Hard cap so every subset fits one machine word.
pub const MAX_GROUND: u32 = 63;

/// A k-element subset of `[n]` as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    mask: u64,
    n: u32,
}

impl KSubset {
    pub fn new(mask: u64, n: u32) -> Result<Self> {
        check_ground(n)?;
        if n < 64 && mask >> n != 0 {
            return Err(Error::InvalidParams(format!(
                "mask {mask:#x} has bits above position {n}"
            )));
        }
        Ok(KSubset { mask, n })
    }

    /// Build from 1-based elements.
    pub fn from_elems(elems: &[u32], n: u32) -> Result<Self> {
        check_ground(n)?;
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return Err(Error::InvalidParams(format!("element {e} outside [1,{n}]")));
            }
            if mask & (1 << (e - 1)) != 0 {
                return Err(Error::InvalidParams(format!("repeated element {e}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(KSubset { mask, n })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.mask.count_ones()
    }

    /// 1-based elements, ascending.
    pub fn elems(&self) -> Vec<u32> {
        mask_elems(self.mask)
    }

    pub fn intersection_size(&self, other: &KSubset) -> Result<u32> {
        if self.n != other.n || self.k() != other.k() {
            return Err(Error::MismatchedParams(self.n, self.k(), other.n, other.k()));
        }
        Ok((self.mask & other.mask).count_ones())
    }

    /// Complement within `[n]`; an (n-k)-subset.
    pub fn complement(&self) -> KSubset {
        KSubset {
            mask: !self.mask & full_mask(self.n),
            n: self.n,
        }
    }

    /// Colexicographic rank within `C([n], k)`.
    pub fn colex_rank(&self) -> u64 {
        colex_rank(self.mask)
    }

    pub fn colex_unrank(rank: u64, n: u32, k: u32) -> Result<KSubset> {
        check_ground(n)?;
        if k > n || rank >= binom64(n, k) {
            return Err(Error::RankOutOfRange { rank, n, k });
        }
        Ok(KSubset {
            mask: colex_unrank(rank, k),
            n,
        })
    }
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
    }
    Ok(())
}

pub fn full_mask(n: u32) -> u64 {
    if n == 0 {
        0
    } else if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// 1-based elements of a mask, ascending.
pub fn mask_elems(mut mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let b = mask.trailing_zeros();
        out.push(b + 1);
        mask &= mask - 1;
    }
    out
}

/// Colex rank of a mask: sum of C(a_i - 1, i) over 1-based elements a_1 < ... < a_k.
pub fn colex_rank(mask: u64) -> u64 {
    let mut r = 0u64;
    for (i, a) in mask_elems(mask).into_iter().enumerate() {
        r += binom64(a - 1, i as u32 + 1);
    }
    r
}

/// Inverse of `colex_rank` for k-element masks.
pub fn colex_unrank(mut rank: u64, k: u32) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        // Largest a with C(a-1, i) <= rank.
        let mut a = i; // C(i-1, i) = 0 <= rank always
        while binom64(a, i) <= rank {
            a += 1;
        }
        mask |= 1 << (a - 1);
        rank -= binom64(a - 1, i);
    }
    mask
}

/// All k-subset masks of `[n]` in colex (= numeric) order.
pub fn combinations(n: u32, k: u32) -> Combinations {
    Combinations {
        n,
        k,
        next: if k > n { None } else { Some(full_mask(k)) },
    }
}

/// Gosper's hack iterator over fixed-popcount masks.
pub struct Combinations {
    n: u32,
    k: u32,
    next: Option<u64>,
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= 1u64 << self.n && !(self.k == 0 && cur == 0) {
            self.next = None;
            return None;
        }
        if self.k == 0 {
            self.next = None;
            return Some(0);
        }
        if cur > full_mask(self.n) {
            self.next = None;
            return None;
        }
        let lo = cur & cur.wrapping_neg();
        let carry = cur.wrapping_add(lo);
        self.next = if carry == 0 {
            None
        } else {
            Some((((cur ^ carry) / lo) >> 2) | carry)
        };
        Some(cur)
    }
}

/// All i-element subsets of the set bits of `mask`, as masks, in colex order
/// relative to the chosen positions.
pub fn sub_masks(mask: u64, i: u32) -> Vec<u64> {
    let bits = mask_elems(mask);
    let k = bits.len() as u32;
    let mut out = Vec::new();
    if i > k {
        return out;
    }
    for pattern in combinations(k, i) {
        let mut m = 0u64;
        let mut p = pattern;
        while p != 0 {
            let idx = p.trailing_zeros() as usize;
            m |= 1 << (bits[idx] - 1);
            p &= p - 1;
        }
        out.push(m);
    }
    out.sort_unstable();
    out
}
