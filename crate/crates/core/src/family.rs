//! Uniform set families: representation, intersection predicates, shadows,
//! restrictions, threshold families, and the text file format.

use crate::binom::{binom_exact, BigCount};
use crate::error::{Error, Result};
use crate::lspec::LSpec;
use crate::subset::{check_ground, combinations, full_mask, mask_elems, sub_masks, KSubset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A duplicate-free family of k-subsets of `[n]`, kept in colex order.
///
/// Immutable after construction: every operation returns a new value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    n: u32,
    k: u32,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: u32, k: u32, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_ground(n)?;
        if k > n {
            return Err(Error::InvalidParams(format!("k={k} exceeds n={n}")));
        }
        let mut members: Vec<u64> = masks.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m.count_ones() != k {
                return Err(Error::InvalidParams(format!(
                    "member {m:#x} is not a {k}-subset"
                )));
            }
            if m & !full_mask(n) != 0 {
                return Err(Error::InvalidParams(format!(
                    "member {m:#x} leaves the ground set [{n}]"
                )));
            }
        }
        Ok(SetFamily { n, k, members })
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, [])
    }

    /// All of `C([n], k)`.
    pub fn complete(n: u32, k: u32) -> Result<Self> {
        check_ground(n)?;
        Self::new(n, k, combinations(n, k))
    }

    pub fn from_sets(n: u32, sets: &[Vec<u32>]) -> Result<Self> {
        let k = sets.first().map_or(0, |s| s.len() as u32);
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let sub = KSubset::from_elems(s, n)?;
            if sub.k() != k {
                return Err(Error::InvalidParams("mixed uniformities".into()));
            }
            masks.push(sub.mask());
        }
        SetFamily::new(n, k, masks)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    pub fn sets(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|&m| mask_elems(m)).collect()
    }

    /// F(S) = members containing S.
    pub fn restrict(&self, s_mask: u64) -> SetFamily {
        SetFamily {
            n: self.n,
            k: self.k,
            members: self
                .members
                .iter()
                .copied()
                .filter(|m| m & s_mask == s_mask)
                .collect(),
        }
    }

    /// {F \ S : F in F(S)}, a (k - |S|)-uniform family avoiding S.
    pub fn strip(&self, s_mask: u64) -> Result<SetFamily> {
        let s = s_mask.count_ones();
        if s > self.k {
            return Err(Error::InvalidParams(format!(
                "|S|={s} exceeds uniformity {}",
                self.k
            )));
        }
        SetFamily::new(
            self.n,
            self.k - s,
            self.members
                .iter()
                .copied()
                .filter(|m| m & s_mask == s_mask)
                .map(|m| m & !s_mask),
        )
    }

    /// The i-shadow: every i-set contained in some member.
    pub fn shadow(&self, i: u32) -> Result<SetFamily> {
        if i > self.k {
            return Err(Error::InvalidParams(format!(
                "shadow order {i} exceeds uniformity {}",
                self.k
            )));
        }
        let mut out = BTreeSet::new();
        for &m in &self.members {
            for sub in sub_masks(m, i) {
                out.insert(sub);
            }
        }
        SetFamily::new(self.n, i, out)
    }

    /// `C([n], k) \ F`.
    pub fn complement_family(&self) -> Result<SetFamily> {
        let mut out = Vec::new();
        let mut it = self.members.iter().copied().peekable();
        for m in combinations(self.n, self.k) {
            if it.peek() == Some(&m) {
                it.next();
            } else {
                out.push(m);
            }
        }
        SetFamily::new(self.n, self.k, out)
    }

    /// {`[n]` \ A : A in F}, an (n-k)-uniform family.
    pub fn complement_sets(&self) -> Result<SetFamily> {
        let full = full_mask(self.n);
        SetFamily::new(
            self.n,
            self.n - self.k,
            self.members.iter().map(|&m| !m & full),
        )
    }

    /// True when F is closed under set complementation (needs n = 2k).
    pub fn is_complement_closed(&self) -> bool {
        let full = full_mask(self.n);
        self.members.iter().all(|&m| self.contains_mask(!m & full))
    }
}

/// |A ∩ B| for two k-subsets over the same ground set.
pub fn intersection_size(a: &KSubset, b: &KSubset) -> Result<u32> {
    a.intersection_size(b)
}

fn check_compatible(a: &SetFamily, b: &SetFamily) -> Result<()> {
    if a.n != b.n || a.k != b.k {
        return Err(Error::MismatchedParams(a.n, a.k, b.n, b.k));
    }
    Ok(())
}

fn check_lspec(f: &SetFamily, l: &LSpec) -> Result<()> {
    if l.k() != f.k {
        return Err(Error::InvalidParams(format!(
            "L is over [0,{}] but the family is {}-uniform",
            l.k(),
            f.k
        )));
    }
    Ok(())
}

/// |A ∩ B| in L for every A in `a`, B in `b`. A set shared by both families
/// is a valid pair with itself (intersection k), exactly as the quantifier
/// "for all A, B" reads.
pub fn is_cross_l(a: &SetFamily, b: &SetFamily, l: &LSpec) -> Result<bool> {
    check_compatible(a, b)?;
    check_lspec(a, l)?;
    for &x in &a.members {
        for &y in &b.members {
            if !l.contains((x & y).count_ones()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// |A ∩ B| in L for all distinct A, B within one family.
pub fn is_l_intersecting(f: &SetFamily, l: &LSpec) -> Result<bool> {
    check_lspec(f, l)?;
    for (i, &x) in f.members.iter().enumerate() {
        for &y in &f.members[i + 1..] {
            if !l.contains((x & y).count_ones()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An ordered tuple of r families over a common (n, k).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyTuple {
    n: u32,
    k: u32,
    families: Vec<SetFamily>,
}

impl FamilyTuple {
    pub fn new(families: Vec<SetFamily>) -> Result<Self> {
        let first = families
            .first()
            .ok_or_else(|| Error::InvalidParams("tuple needs at least one family".into()))?;
        let (n, k) = (first.n, first.k);
        for f in &families {
            if f.n != n || f.k != k {
                return Err(Error::MismatchedParams(n, k, f.n, f.k));
            }
        }
        Ok(FamilyTuple { n, k, families })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> usize {
        self.families.len()
    }

    pub fn families(&self) -> &[SetFamily] {
        &self.families
    }

    pub fn total_size(&self) -> u64 {
        self.families.iter().map(|f| f.len() as u64).sum()
    }

    pub fn all_nonempty(&self) -> bool {
        self.families.iter().all(|f| !f.is_empty())
    }
}

fn check_r(t: &FamilyTuple) -> Result<()> {
    if t.r() < 2 {
        return Err(Error::InvalidParams("cross modes need r >= 2".into()));
    }
    Ok(())
}

/// Every unordered pair of distinct families is cross-L-intersecting.
pub fn is_pairwise_cross_l(t: &FamilyTuple, l: &LSpec) -> Result<bool> {
    check_r(t)?;
    for i in 0..t.families.len() {
        for j in i + 1..t.families.len() {
            if !is_cross_l(&t.families[i], &t.families[j], l)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every choice of one member per family has r-wise intersection size in L.
///
/// Walks the choice lattice level by level, keeping only the set of distinct
/// partial intersection masks; at the last level the sizes are checked.
pub fn is_rcross_l(t: &FamilyTuple, l: &LSpec) -> Result<bool> {
    check_r(t)?;
    check_lspec(&t.families[0], l)?;
    if t.families.iter().any(|f| f.is_empty()) {
        // No full choice exists; the condition is vacuous.
        return Ok(true);
    }
    let mut partial: BTreeSet<u64> = t.families[0].members.iter().copied().collect();
    for f in &t.families[1..t.families.len() - 1] {
        let mut next = BTreeSet::new();
        for &p in &partial {
            for &m in &f.members {
                next.insert(p & m);
            }
        }
        partial = next;
    }
    let last = &t.families[t.families.len() - 1];
    for &p in &partial {
        for &m in &last.members {
            if !l.contains((p & m).count_ones()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Threshold comparison for S_s: |F(S)| > (3/2)·C(n-s, k-s) - C(n-k, k-s),
/// decided in exact integer arithmetic as 2·count + 2·C(n-k, k-s) > 3·C(n-s, k-s).
pub fn threshold_s(f: &SetFamily, s: u32) -> Result<SetFamily> {
    threshold_family(f, s, |count, n, k| {
        let lhs = BigCount::from(2u32) * count
            + BigCount::from(2u32) * binom_exact((n - k) as u64, (k - s) as u64);
        let rhs = BigCount::from(3u32) * binom_exact((n - s) as u64, (k - s) as u64);
        lhs > rhs
    })
}

/// Threshold comparison for T_s: |F(T)| >= C(n-s, k-s) - C(n-k, k-s),
/// decided as count + C(n-k, k-s) >= C(n-s, k-s).
pub fn threshold_t(f: &SetFamily, s: u32) -> Result<SetFamily> {
    threshold_family(f, s, |count, n, k| {
        let lhs = count + binom_exact((n - k) as u64, (k - s) as u64);
        let rhs = binom_exact((n - s) as u64, (k - s) as u64);
        lhs >= rhs
    })
}

fn threshold_family(
    f: &SetFamily,
    s: u32,
    qualifies: impl Fn(BigCount, u32, u32) -> bool,
) -> Result<SetFamily> {
    if s == 0 || s > f.k {
        return Err(Error::InvalidParams(format!(
            "threshold order s={s} outside [1,{}]",
            f.k
        )));
    }
    let mut hits = Vec::new();
    for s_mask in combinations(f.n, s) {
        let count = f.members.iter().filter(|&&m| m & s_mask == s_mask).count();
        if qualifies(BigCount::from(count), f.n, f.k) {
            hits.push(s_mask);
        }
    }
    SetFamily::new(f.n, s, hits)
}

/// The on-disk family object: {n, k, sets} with 1-based sorted elements,
/// listed in colex order. Round-trips bit-exactly.
#[derive(Debug, Serialize, Deserialize)]
struct FamilyFile {
    n: u32,
    k: u32,
    sets: Vec<Vec<u32>>,
}

impl SetFamily {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyFile {
            n: self.n,
            k: self.k,
            sets: self.sets(),
        })
        .expect("family serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<SetFamily> {
        let file: FamilyFile = serde_json::from_str(text)?;
        let fam = SetFamily::from_sets(file.n, &file.sets)?;
        if fam.k != file.k && !(file.sets.is_empty()) {
            return Err(Error::InvalidParams(format!(
                "declared k={} but sets have size {}",
                file.k, fam.k
            )));
        }
        if file.sets.is_empty() {
            return SetFamily::empty(file.n, file.k);
        }
        Ok(fam)
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::binom::binom64;
    use crate::subset::colex_unrank;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn prop_family_json_round_trip(n in 2u32..=12, seed in any::<u64>()) {
            let k = 2 + (seed % (n as u64 - 1).min(4)) as u32;
            let pool = binom64(n, k);
            let mut picks = std::collections::BTreeSet::new();
            let mut state = seed;
            for _ in 0..(1 + seed % 12) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                picks.insert(state % pool);
            }
            let fam = SetFamily::new(n, k, picks.into_iter().map(|r| colex_unrank(r, k))).unwrap();
            let text = fam.to_json();
            let back = SetFamily::from_json(&text).unwrap();
            prop_assert_eq!(&back, &fam);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
