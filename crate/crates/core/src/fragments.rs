//! Independence and fragment machinery for the conflict graph: the
//! nontrivial independence number via forced-pair matching, deficiency
//! minima, fragments and their partner involution, primitivity
//! classification, and the part-transitive structure checks.

use crate::canonical::canonical_family;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::IntersectionGraph;
use crate::group::{is_imprimitive_set, is_semi_imprimitive_set, GroupAction};
use crate::matching::konig_max_independent;
use crate::subset::full_mask;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::X => "X",
            Side::Y => "Y",
        }
    }
}

/// Maximum |A| + |B| over independent sets using both sides (A ⊆ X, B ⊆ Y,
/// both nonempty), with one witness pair. None when the graph is complete
/// bipartite, i.e. the instance admits no nonempty pair at all.
///
/// Every nontrivial independent set contains a nonadjacent cross pair, and
/// the relabeling action is transitive on cross pairs of fixed intersection
/// size, so one forced pair per allowed size suffices: delete the pair and
/// its neighbourhoods, then take a maximum independent set of the rest by
/// König duality.
pub fn alpha_nontrivial(g: &IntersectionGraph) -> Option<(u64, (SetFamily, SetFamily))> {
    let n = g.n();
    let k = g.k();
    let all = g.all_vertices();
    let adj = g.adjacency();
    let lo = (2 * k).saturating_sub(n);
    let mut best: Option<(u64, (SetFamily, SetFamily))> = None;
    for i in (lo..=k).filter(|&i| g.lspec().contains(i)) {
        // Representative pair with intersection exactly i:
        // A0 = [k], B0 = [k-i+1, 2k-i].
        let a0 = full_mask(k);
        let b0 = (full_mask(2 * k - i) >> (k - i)) << (k - i);
        debug_assert_eq!((a0 & b0).count_ones(), i);
        let x0 = rank_of(g, a0);
        let y0 = rank_of(g, b0);
        let xs = all & !(1u128 << x0) & !g.adjacency()[y0];
        let ys = all & !(1u128 << y0) & !g.adjacency()[x0];
        let (ix, iy) = konig_max_independent(adj, xs, ys);
        let total = 2 + ix.count_ones() as u64 + iy.count_ones() as u64;
        if best.as_ref().is_none_or(|(b, _)| total > *b) {
            let a = bits_to_family(g, ix | (1u128 << x0));
            let b = bits_to_family(g, iy | (1u128 << y0));
            best = Some((total, (a, b)));
        }
    }
    best
}

/// Reference oracle: exhaustive scan over one side's subsets. Exact for any
/// graph but exponential; used to certify the matching-based route.
pub fn alpha_exhaustive(g: &IntersectionGraph) -> Option<u64> {
    let m = g.side_size();
    assert!(m <= 26, "exhaustive scan is for small graphs");
    let all = g.all_vertices();
    let adj = g.adjacency();
    let mut best: Option<u64> = None;
    fn go(
        adj: &[u128],
        all: u128,
        m: usize,
        idx: usize,
        a_size: u64,
        n_union: u128,
        best: &mut Option<u64>,
    ) {
        if idx == m {
            if a_size >= 1 && n_union != all {
                let total = a_size + (all & !n_union).count_ones() as u64;
                if best.is_none_or(|b| total > b) {
                    *best = Some(total);
                }
            }
            return;
        }
        go(adj, all, m, idx + 1, a_size, n_union, best);
        go(adj, all, m, idx + 1, a_size + 1, n_union | adj[idx], best);
    }
    go(adj, all, m, 0, 0, 0, &mut best);
    best
}

/// Minimum deficiency over nonempty A on `side` with N(A) not the whole
/// opposite side. Equals |opposite side| - alpha; may be negative (the empty
/// graph gives -|X|). Errors on complete bipartite graphs where no admissible
/// A exists.
pub fn epsilon(g: &IntersectionGraph, _side: Side) -> Result<i64> {
    let (alpha, _) = alpha_nontrivial(g).ok_or(Error::CompleteBipartite)?;
    Ok(g.side_size() as i64 - alpha as i64)
}

fn rank_of(g: &IntersectionGraph, mask: u64) -> usize {
    g.vertex_masks()
        .binary_search(&mask)
        .expect("mask is a vertex of the graph")
}

fn bits_to_family(g: &IntersectionGraph, bits: u128) -> SetFamily {
    let mut masks = Vec::with_capacity(bits.count_ones() as usize);
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        masks.push(g.vertex_masks()[i]);
    }
    SetFamily::new(g.n(), g.k(), masks).expect("graph vertices form a valid family")
}

fn family_to_bits(g: &IntersectionGraph, fam: &SetFamily) -> u128 {
    let mut bits = 0u128;
    for &m in fam.masks() {
        bits |= 1u128 << rank_of(g, m);
    }
    bits
}

/// N(A) != opposite side and |N(A)| - |A| attains the deficiency minimum.
pub fn is_fragment(g: &IntersectionGraph, a: &SetFamily, side: Side) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::InvalidParams("fragments are nonempty".into()));
    }
    let eps = epsilon(g, side)?;
    let bits = family_to_bits(g, a);
    let nb = g.neighborhood(bits);
    Ok(nb != g.all_vertices() && nb.count_ones() as i64 - a.len() as i64 == eps)
}

/// The partner of a fragment: the opposite side minus its neighbourhood.
/// An involution, with |A| + |phi(A)| = alpha.
pub fn phi(g: &IntersectionGraph, a: &SetFamily, side: Side) -> Result<(SetFamily, Side)> {
    if !is_fragment(g, a, side)? {
        return Err(Error::InvalidParams("phi is defined on fragments only".into()));
    }
    let bits = family_to_bits(g, a);
    let image = g.all_vertices() & !g.neighborhood(bits);
    let opposite = match side {
        Side::X => Side::Y,
        Side::Y => Side::X,
    };
    Ok((bits_to_family(g, image), opposite))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Primitivity {
    #[serde(rename = "PRIMITIVE")]
    Primitive,
    #[serde(rename = "IMPRIMITIVE")]
    Imprimitive,
    #[serde(rename = "SEMI_IMPRIMITIVE")]
    SemiImprimitive,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// One enumerated fragment with its derived data.
#[derive(Debug, Clone, Serialize)]
pub struct FragmentRecord {
    pub side: Side,
    pub size: usize,
    pub deficiency: i64,
    pub balanced: bool,
    pub primitivity: Primitivity,
    pub vertices: Vec<Vec<u32>>,
    #[serde(skip)]
    pub family: SetFamily,
    #[serde(skip)]
    pub phi_image: SetFamily,
}

/// Classify a vertex set under the relabeling action. Sizes 1 and |X| fall
/// outside the imprimitive/semi-imprimitive definitions and count as
/// primitive here.
pub fn classify_primitivity(
    b: &SetFamily,
    action: &GroupAction,
    total: u64,
    budget: usize,
) -> Primitivity {
    if b.len() as u64 <= 1 || b.len() as u64 >= total {
        return Primitivity::Primitive;
    }
    match is_imprimitive_set(b, action, total, budget) {
        Ok(true) => Primitivity::Imprimitive,
        Ok(false) => match is_semi_imprimitive_set(b, action, total, budget) {
            Ok(true) => Primitivity::SemiImprimitive,
            Ok(false) => Primitivity::Primitive,
            Err(_) => Primitivity::Unknown,
        },
        Err(_) => Primitivity::Unknown,
    }
}

/// Full census of the fragments on one side up to `size_cap`, by isomorph-free
/// level search: only canonical orbit representatives are extended, fragments
/// found among representatives are expanded back to their full orbits.
/// Returns the records and whether the search was exhaustive within budget.
pub fn enumerate_fragments(
    g: &IntersectionGraph,
    side: Side,
    size_cap: usize,
    budget: usize,
) -> Result<(Vec<FragmentRecord>, bool)> {
    if size_cap < 1 {
        return Err(Error::InvalidParams("size cap must be at least 1".into()));
    }
    let Some((alpha, _)) = alpha_nontrivial(g) else {
        return Ok((Vec::new(), true)); // complete bipartite: no fragments
    };
    let eps = g.side_size() as i64 - alpha as i64;
    let action = GroupAction::symmetric(g.n());
    let total = g.side_size() as u64;
    let all = g.all_vertices();

    let mut complete = true;
    let mut work = 0usize;
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();

    // Level 1 representative: all vertices lie in one orbit.
    let mut reps: Vec<SetFamily> = vec![canonical_family(&bits_to_family(g, 1u128))?];
    for size in 1..=size_cap.min(g.side_size()) {
        for rep in &reps {
            work += 1;
            let bits = family_to_bits(g, rep);
            let nb = g.neighborhood(bits);
            if nb != all && nb.count_ones() as i64 - rep.len() as i64 == eps {
                for img in action.orbit(rep, budget)? {
                    found.insert(img.masks().to_vec());
                }
            }
        }
        if work > budget {
            complete = false;
            break;
        }
        if size == size_cap.min(g.side_size()) {
            break;
        }
        // Extend every representative by every absent vertex, canonicalize,
        // de-duplicate. Every orbit of the next level is reached because the
        // canonical image of any (S ∪ {v}) equals the canonical image of some
        // extension of S's representative.
        let mut next: BTreeSet<Vec<u64>> = BTreeSet::new();
        for rep in &reps {
            let bits = family_to_bits(g, rep);
            let mut absent = all & !bits;
            while absent != 0 {
                let v = absent.trailing_zeros() as usize;
                absent &= absent - 1;
                let ext = bits | (1u128 << v);
                let canon = canonical_family(&bits_to_family(g, ext))?;
                next.insert(canon.masks().to_vec());
                work += 1;
                if work > budget {
                    complete = false;
                    break;
                }
            }
            if !complete {
                break;
            }
        }
        if !complete {
            break;
        }
        reps = next
            .into_iter()
            .map(|m| SetFamily::new(g.n(), g.k(), m).expect("canonical rep is valid"))
            .collect();
    }

    let mut records = Vec::new();
    for masks in found {
        let fam = SetFamily::new(g.n(), g.k(), masks)?;
        let bits = family_to_bits(g, &fam);
        let image = bits_to_family(g, all & !g.neighborhood(bits));
        let primitivity = classify_primitivity(&fam, &action, total, budget);
        records.push(FragmentRecord {
            side,
            size: fam.len(),
            deficiency: eps,
            balanced: fam.len() == image.len(),
            primitivity,
            vertices: fam.sets(),
            family: fam,
            phi_image: image,
        });
    }
    records.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.family.cmp(&b.family)));
    Ok((records, complete))
}

/// Serialized census of both sides plus the instance summary.
#[derive(Debug, Serialize)]
pub struct FragmentReport {
    pub n: u32,
    pub k: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub alpha: Option<u64>,
    #[serde(rename = "epsilonX")]
    pub epsilon_x: Option<i64>,
    #[serde(rename = "epsilonY")]
    pub epsilon_y: Option<i64>,
    #[serde(rename = "dX")]
    pub d_x: u32,
    pub complete: bool,
    pub fragments: Vec<FragmentRecord>,
}

pub fn fragment_report(
    g: &IntersectionGraph,
    size_cap: usize,
    budget: usize,
) -> Result<FragmentReport> {
    let alpha = alpha_nontrivial(g).map(|(a, _)| a);
    let eps = alpha.map(|a| g.side_size() as i64 - a as i64);
    let (mut fragments, complete_x) = enumerate_fragments(g, Side::X, size_cap, budget)?;
    let (ys, complete_y) = enumerate_fragments(g, Side::Y, size_cap, budget)?;
    fragments.extend(ys);
    Ok(FragmentReport {
        n: g.n(),
        k: g.k(),
        l: g.lspec().sizes(),
        alpha,
        epsilon_x: eps,
        epsilon_y: eps,
        d_x: g.degree(),
        complete: complete_x && complete_y,
        fragments,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

#[derive(Debug, Serialize)]
pub struct StructureCheck {
    pub check: String,
    pub alpha: Option<u64>,
    pub reference_value: Option<u64>,
    pub verdict: Verdict,
    pub detail: String,
}

/// Part-transitive structure check: when every fragment is primitive the
/// independence number must be |Y| - d(X) + 1, so either that equality holds,
/// or some enumerated fragment is non-primitive.
pub fn check_primitive_independence(
    g: &IntersectionGraph,
    size_cap: usize,
    budget: usize,
) -> Result<StructureCheck> {
    structure_check(g, size_cap, budget, false)
}

/// Imprimitive-fragment existence check: with |X| = |Y|, if the independence
/// number exceeds |Y| - d(X) + 1 then an imprimitive fragment must exist.
pub fn check_imprimitive_existence(
    g: &IntersectionGraph,
    size_cap: usize,
    budget: usize,
) -> Result<StructureCheck> {
    structure_check(g, size_cap, budget, true)
}

fn structure_check(
    g: &IntersectionGraph,
    size_cap: usize,
    budget: usize,
    strict_imprimitive: bool,
) -> Result<StructureCheck> {
    let name = if strict_imprimitive {
        "imprimitive-fragment existence"
    } else {
        "primitive-fragment independence number"
    };
    if g.is_empty_graph() || g.is_complete_bipartite() {
        return Ok(StructureCheck {
            check: name.into(),
            alpha: alpha_nontrivial(g).map(|(a, _)| a),
            reference_value: None,
            verdict: Verdict::Pass,
            detail: "degenerate graph; the hypothesis is vacuous".into(),
        });
    }
    let (alpha, _) = alpha_nontrivial(g).expect("non-complete graph has a nonadjacent pair");
    let reference = g.side_size() as u64 - g.degree() as u64 + 1;
    if alpha == reference {
        return Ok(StructureCheck {
            check: name.into(),
            alpha: Some(alpha),
            reference_value: Some(reference),
            verdict: Verdict::Pass,
            detail: "alpha equals |Y| - d(X) + 1".into(),
        });
    }
    // alpha > reference: a non-primitive fragment must appear.
    let (records, complete) = enumerate_fragments(g, Side::X, size_cap, budget)?;
    let witness = records.iter().find(|r| {
        if strict_imprimitive {
            r.primitivity == Primitivity::Imprimitive
        } else {
            matches!(
                r.primitivity,
                Primitivity::Imprimitive | Primitivity::SemiImprimitive
            )
        }
    });
    let verdict = match (witness, complete) {
        (Some(_), _) => Verdict::Pass,
        (None, false) => Verdict::Unknown,
        (None, true) => Verdict::Fail,
    };
    Ok(StructureCheck {
        check: name.into(),
        alpha: Some(alpha),
        reference_value: Some(reference),
        verdict,
        detail: match witness {
            Some(w) => format!(
                "alpha exceeds |Y| - d(X) + 1; witness fragment of size {} found",
                w.size
            ),
            None if !complete => "census truncated by budget".into(),
            None => "no qualifying fragment in the complete census".into(),
        },
    })
}
