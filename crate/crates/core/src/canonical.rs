//! Canonical forms of families and family tuples under ground-set relabeling.
//!
//! The key of a tuple is the lexicographically least serialization over all
//! permutations of `[n]`, after sorting each family internally (colex) and
//! sorting the tuple of families by (size, member ranks). Two tuples get the
//! same key exactly when a relabeling maps one onto the other, with family
//! order ignored; equal-role families are interchangeable.

use crate::error::{Error, Result};
use crate::family::{FamilyTuple, SetFamily};
use crate::group::{all_perms, apply_to_mask};
use crate::util::hex;

pub const MAX_CANONICAL_N: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn hex(&self) -> String {
        hex(&self.0)
    }
}

fn serialize_sorted(n: u32, k: u32, families: &[Vec<u64>]) -> Vec<u8> {
    let mut out = Vec::new();
    out.push(n as u8);
    out.push(k as u8);
    out.push(families.len() as u8);
    for f in families {
        out.extend_from_slice(&(f.len() as u16).to_be_bytes());
        for &m in f {
            out.extend_from_slice(&m.to_be_bytes());
        }
    }
    out
}

fn image_bytes(n: u32, k: u32, families: &[&[u64]], perm: &[u8]) -> Vec<u8> {
    let mut mapped: Vec<Vec<u64>> = families
        .iter()
        .map(|f| {
            let mut v: Vec<u64> = f.iter().map(|&m| apply_to_mask(&perm.to_vec(), m)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    mapped.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    serialize_sorted(n, k, &mapped)
}

/// Canonical key of a family tuple; full relabeling search, so n <= 10.
pub fn canonical_form(tuple: &FamilyTuple) -> Result<CanonicalKey> {
    let n = tuple.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::CanonicalTooLarge {
            n,
            max: MAX_CANONICAL_N,
        });
    }
    let fams: Vec<&[u64]> = tuple.families().iter().map(|f| f.masks()).collect();
    let mut best: Option<Vec<u8>> = None;
    for perm in all_perms(n) {
        let bytes = image_bytes(n, tuple.k(), &fams, &perm);
        if best.as_ref().is_none_or(|b| bytes < *b) {
            best = Some(bytes);
        }
    }
    Ok(CanonicalKey(best.expect("at least the identity is tried")))
}

/// Least relabeled image of a single family, as a family. Used as the orbit
/// representative in isomorph-free enumeration.
pub fn canonical_family(fam: &SetFamily) -> Result<SetFamily> {
    let n = fam.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::CanonicalTooLarge {
            n,
            max: MAX_CANONICAL_N,
        });
    }
    let mut best: Option<Vec<u64>> = None;
    for perm in all_perms(n) {
        let mut v: Vec<u64> = fam.masks().iter().map(|&m| apply_to_mask(&perm, m)).collect();
        v.sort_unstable();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    SetFamily::new(fam.n(), fam.k(), best.expect("identity tried"))
}
