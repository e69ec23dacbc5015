//! Permutations of `[n]`, the induced relabeling action on subset masks, and
//! orbit-based primitivity tests for vertex sets.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use std::collections::BTreeSet;

/// perm`[i]` = image of 0-based position i.
pub type Perm = Vec<u8>;

pub fn identity(n: u32) -> Perm {
    (0..n as u8).collect()
}

/// Relabel the 1-based elements of `mask` through `perm` (0-based positions).
pub fn apply_to_mask(perm: &Perm, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << perm[b];
    }
    out
}

pub fn apply_to_family(perm: &Perm, fam: &SetFamily) -> SetFamily {
    SetFamily::new(
        fam.n(),
        fam.k(),
        fam.masks().iter().map(|&m| apply_to_mask(perm, m)),
    )
    .expect("relabeling preserves family validity")
}

/// Generators of the symmetric group on `[n]`: a transposition and an n-cycle.
pub fn symmetric_generators(n: u32) -> Vec<Perm> {
    if n < 2 {
        return vec![identity(n)];
    }
    let mut swap = identity(n);
    swap.swap(0, 1);
    let mut cycle: Perm = (1..n as u8).collect();
    cycle.push(0);
    vec![swap, cycle]
}

/// A permutation group given by generators, acting on k-subsets by relabeling.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub n: u32,
    pub generators: Vec<Perm>,
}

impl GroupAction {
    pub fn symmetric(n: u32) -> Self {
        GroupAction {
            n,
            generators: symmetric_generators(n),
        }
    }

    /// The orbit of a family under the group, by breadth-first closure.
    pub fn orbit(&self, fam: &SetFamily, budget: usize) -> Result<Vec<SetFamily>> {
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut queue = vec![fam.clone()];
        seen.insert(fam.masks().to_vec());
        while let Some(cur) = queue.pop() {
            for g in &self.generators {
                let img = apply_to_family(g, &cur);
                if seen.insert(img.masks().to_vec()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(format!(
                            "orbit exceeded {budget} images"
                        )));
                    }
                    queue.push(img);
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|masks| SetFamily::new(fam.n(), fam.k(), masks).expect("orbit member is valid"))
            .collect())
    }
}

fn check_b(b: &SetFamily, total: u64) -> Result<()> {
    if b.len() as u64 <= 1 || b.len() as u64 >= total {
        return Err(Error::InvalidParams(format!(
            "primitivity tests need 1 < |B| < {total}, got |B| = {}",
            b.len()
        )));
    }
    Ok(())
}

/// B is imprimitive when every group image meets B in nothing or all of B.
pub fn is_imprimitive_set(
    b: &SetFamily,
    action: &GroupAction,
    total: u64,
    budget: usize,
) -> Result<bool> {
    check_b(b, total)?;
    let size = b.len();
    for img in action.orbit(b, budget)? {
        let common = img.masks().iter().filter(|m| b.contains_mask(**m)).count();
        if common != 0 && common != size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// B is semi-imprimitive when every image meets B in 0, 1, or |B| sets.
pub fn is_semi_imprimitive_set(
    b: &SetFamily,
    action: &GroupAction,
    total: u64,
    budget: usize,
) -> Result<bool> {
    check_b(b, total)?;
    let size = b.len();
    for img in action.orbit(b, budget)? {
        let common = img.masks().iter().filter(|m| b.contains_mask(**m)).count();
        if common != 0 && common != 1 && common != size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All n! permutations of `[n]`, in lexicographic order (Heap-free, iterative
/// next-permutation). Intended for n <= 10.
pub struct PermIter {
    next: Option<Perm>,
}

pub fn all_perms(n: u32) -> PermIter {
    PermIter {
        next: Some(identity(n)),
    }
}

impl Iterator for PermIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        if next_permutation(&mut nxt) {
            self.next = Some(nxt);
        }
        Some(cur)
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
