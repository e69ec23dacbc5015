//! The set L of allowed intersection sizes, a nonempty subset of {0, ..., k}.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LSpec {
    /// Bit i set iff i is an allowed intersection size.
    bits: u64,
    k: u32,
}

impl LSpec {
    pub fn from_bits(bits: u64, k: u32) -> Result<Self> {
        if k > 62 {
            return Err(Error::InvalidParams(format!("uniformity {k} too large")));
        }
        let valid = (1u64 << (k + 1)) - 1;
        if bits == 0 {
            return Err(Error::InvalidParams("L must be nonempty".into()));
        }
        if bits & !valid != 0 {
            return Err(Error::InvalidParams(format!(
                "L contains sizes outside [0,{k}]"
            )));
        }
        Ok(LSpec { bits, k })
    }

    pub fn from_sizes(sizes: &[u32], k: u32) -> Result<Self> {
        let mut bits = 0u64;
        for &s in sizes {
            if s > k {
                return Err(Error::InvalidParams(format!("size {s} exceeds k={k}")));
            }
            bits |= 1 << s;
        }
        Self::from_bits(bits, k)
    }

    pub fn interval(lo: u32, hi: u32, k: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParams(format!("empty interval [{lo},{hi}]")));
        }
        let bits = ((1u64 << (hi + 1)) - 1) & !((1u64 << lo) - 1);
        Self::from_bits(bits, k)
    }

    pub fn full(k: u32) -> LSpec {
        LSpec::interval(0, k, k).expect("full interval is valid")
    }

    /// Parses "a,b,c", "a..b", or "all".
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("all") {
            return Ok(Self::full(k));
        }
        if let Some((a, b)) = t.split_once("..") {
            let lo: u32 = a.trim().parse().map_err(|_| bad_l(text))?;
            let hi: u32 = b.trim().parse().map_err(|_| bad_l(text))?;
            if hi > k {
                return Err(Error::InvalidParams(format!("size {hi} exceeds k={k}")));
            }
            return Self::interval(lo, hi, k);
        }
        let sizes: Vec<u32> = t
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| bad_l(text)))
            .collect::<Result<_>>()?;
        Self::from_sizes(&sizes, k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, size: u32) -> bool {
        size <= self.k && self.bits & (1 << size) != 0
    }

    pub fn sizes(&self) -> Vec<u32> {
        (0..=self.k).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.bits == (1u64 << (self.k + 1)) - 1
    }

    /// {0, ..., k} \ L; may be empty.
    pub fn complement_sizes(&self) -> Vec<u32> {
        (0..=self.k).filter(|&i| !self.contains(i)).collect()
    }

    /// k - L = {k - i : i in L}.
    pub fn reflect(&self) -> LSpec {
        let mut bits = 0u64;
        for i in self.sizes() {
            bits |= 1 << (self.k - i);
        }
        LSpec { bits, k: self.k }
    }

    /// Some((lo, hi)) when L is exactly the interval `[lo, hi]`.
    pub fn as_interval(&self) -> Option<(u32, u32)> {
        let lo = self.bits.trailing_zeros();
        let hi = 63 - self.bits.leading_zeros();
        let interval = ((1u64 << (hi + 1)) - 1) & !((1u64 << lo) - 1);
        (self.bits == interval).then_some((lo, hi))
    }

    /// True when L = `[t, k]` for some t (including `[0, k]`).
    pub fn is_interval_to_k(&self) -> bool {
        matches!(self.as_interval(), Some((_, hi)) if hi == self.k)
    }

    /// Smallest i in `[0, k]` with i not in L, if any.
    pub fn min_absent(&self) -> Option<u32> {
        (0..=self.k).find(|&i| !self.contains(i))
    }

    pub fn is_subset_of(&self, other: &LSpec) -> bool {
        self.k == other.k && self.bits & !other.bits == 0
    }
}

impl fmt::Display for LSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.sizes().iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

fn bad_l(text: &str) -> Error {
    Error::InvalidParams(format!("cannot parse L from {text:?}"))
}
