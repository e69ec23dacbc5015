//! Brute-force-certified oracles for the three maximization modes, witness
//! enumeration up to isomorphism, and the extremal-characterization check.

use crate::binom::binom64;
use crate::canonical::{canonical_form, CanonicalKey, MAX_CANONICAL_N};
use crate::construct::{
    complement_closed_applies, complement_split_applies, construct_cross2_extremal,
    star_star_applies, subcube_applies, Cross2Variant,
};
use crate::error::{Error, Result};
use crate::family::{FamilyTuple, SetFamily};
use crate::fragments::alpha_nontrivial;
use crate::graph::IntersectionGraph;
use crate::lspec::LSpec;
use crate::subset::full_mask;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    #[serde(rename = "cross2")]
    Cross2,
    #[serde(rename = "pairwise")]
    Pairwise,
    #[serde(rename = "rcross")]
    RCross,
}

/// Knobs for the search engines. Defaults match desk scale.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Enumerate witnesses when the lattice fits this many nodes.
    pub witness_budget: u64,
    /// Node budget for branch-and-bound engines.
    pub node_budget: u64,
    /// Collect witnesses at all.
    pub collect_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            witness_budget: 1 << 22,
            node_budget: 10_000_000,
            collect_witnesses: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    /// Decimal maximum, or "INFEASIBLE".
    pub max_sum: String,
    pub complete: bool,
    pub witness_count: usize,
    pub witnesses: Vec<Vec<serde_json::Value>>,
    pub canonical_keys: Vec<String>,
    #[serde(skip)]
    pub max: Option<u64>,
    #[serde(skip)]
    pub witness_tuples: Vec<FamilyTuple>,
}

impl SearchResult {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        mode: SearchMode,
        n: u32,
        k: u32,
        r: u32,
        l: &LSpec,
        max: Option<u64>,
        complete: bool,
        witness_tuples: Vec<FamilyTuple>,
    ) -> SearchResult {
        let mut keyed: Vec<(CanonicalKey, FamilyTuple)> = witness_tuples
            .into_iter()
            .filter_map(|t| canonical_form(&t).ok().map(|k| (k, t)))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let canonical_keys: Vec<String> = keyed.iter().map(|(k, _)| k.hex()).collect();
        let witness_tuples: Vec<FamilyTuple> = keyed.into_iter().map(|(_, t)| t).collect();
        let witnesses = witness_tuples
            .iter()
            .map(|t| {
                t.families()
                    .iter()
                    .map(|f| serde_json::from_str(&f.to_json()).expect("family json is valid"))
                    .collect()
            })
            .collect();
        SearchResult {
            mode,
            n,
            k,
            r,
            l: l.sizes(),
            max_sum: max.map_or_else(|| "INFEASIBLE".into(), |v| v.to_string()),
            complete,
            witness_count: witness_tuples.len(),
            witnesses,
            canonical_keys,
            max,
            witness_tuples,
        }
    }
}

fn check_instance(n: u32, k: u32, l: &LSpec) -> Result<()> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!("need n >= k >= 2, got n={n} k={k}")));
    }
    if l.k() != k {
        return Err(Error::InvalidParams("L uniformity mismatch".into()));
    }
    Ok(())
}

/// Exact maximum of |A| + |B| over nonempty cross-L-intersecting pairs, via
/// the forced-pair matching route; witnesses are all maximum pairs up to
/// isomorphism, enumerated exhaustively when the side fits the budget.
pub fn oracle_cross2_max(n: u32, k: u32, l: &LSpec, opts: &SearchOptions) -> Result<SearchResult> {
    check_instance(n, k, l)?;
    let g = IntersectionGraph::build(n, k, l)?;
    let alpha = alpha_nontrivial(&g);
    let max = alpha.as_ref().map(|(a, _)| *a);
    let mut witnesses = Vec::new();
    let mut complete = true;
    if let (Some(alpha), true) = (max, opts.collect_witnesses) {
        let m = g.side_size();
        if n <= MAX_CANONICAL_N && (1u128 << m) <= opts.witness_budget as u128 {
            witnesses = enumerate_max_pairs(&g, alpha)?;
        } else {
            // The maximum is exact regardless; only the witness census is
            // beyond budget at this scale.
            complete = false;
        }
    }
    Ok(SearchResult::assemble(
        SearchMode::Cross2,
        n,
        k,
        2,
        l,
        max,
        complete,
        witnesses,
    ))
}

/// All maximum nontrivial independent pairs: the optimal pairs are exactly
/// (A, Y \ N(A)) over the minimum-deficiency sets A, so one pass over the
/// X-side subsets finds every one of them exactly once.
fn enumerate_max_pairs(g: &IntersectionGraph, alpha: u64) -> Result<Vec<FamilyTuple>> {
    let m = g.side_size();
    let all = g.all_vertices();
    let adj = g.adjacency();
    let mut out = Vec::new();
    // DFS over X-subsets with an incremental neighbourhood union.
    let mut stack: Vec<(usize, u128, u128)> = vec![(0, 0, 0)];
    while let Some((idx, a_bits, nb)) = stack.pop() {
        if idx == m {
            if a_bits != 0 && nb != all {
                let b_bits = all & !nb;
                if a_bits.count_ones() as u64 + b_bits.count_ones() as u64 == alpha {
                    let a = bits_to_family(g, a_bits);
                    let b = bits_to_family(g, b_bits);
                    out.push(FamilyTuple::new(vec![a, b])?);
                }
            }
            continue;
        }
        stack.push((idx + 1, a_bits, nb));
        stack.push((idx + 1, a_bits | (1u128 << idx), nb | adj[idx]));
    }
    Ok(out)
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

/// Compatibility rows: j in row i (i != j) iff the two subsets intersect in an
/// allowed size. The diagonal is tracked separately: a vertex may serve several
/// families at once only when k is allowed.
struct Compat {
    rows: Vec<u128>,
    all: u128,
    self_ok: bool,
}

fn compat_from_graph(g: &IntersectionGraph) -> Compat {
    let m = g.side_size();
    let all = g.all_vertices();
    let rows = (0..m)
        .map(|i| all & !g.adjacency()[i] & !(1u128 << i))
        .collect();
    Compat {
        rows,
        all,
        self_ok: g.lspec().contains(g.k()),
    }
}

/// Exact maximum of the total size of r nonempty pairwise cross-L-intersecting
/// families. r = 2 coincides definitionally with the two-family problem and is
/// served by the matching oracle.
pub fn oracle_pairwise_max(
    n: u32,
    k: u32,
    r: u32,
    l: &LSpec,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    check_instance(n, k, l)?;
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    if r == 2 {
        let mut res = oracle_cross2_max(n, k, l, opts)?;
        res.mode = SearchMode::Pairwise;
        return Ok(res);
    }
    let g = IntersectionGraph::build(n, k, l)?;
    let compat = compat_from_graph(&g);
    let alpha2 = alpha_nontrivial(&g).map(|(a, _)| a);

    let mut best: Option<u64> = None;
    let mut complete = true;
    let mut witnesses: Vec<FamilyTuple> = Vec::new();

    if compat.self_ok {
        // Shared-core branch: a clique M joined by every family plus the
        // region compatible with all of M, collected in one family.
        let (a_best, a_ties, a_complete) =
            clique_core_search(&compat, r as u64, opts.collect_witnesses, opts.node_budget);
        best = a_best;
        complete = a_complete;
        if opts.collect_witnesses {
            for (m_bits, s_bits) in a_ties {
                witnesses.extend(core_witness_tuples(&g, &compat, m_bits, s_bits, r as usize)?);
            }
        }
    }

    // Disjoint-family branch. Only needed when the shared core cannot already
    // dominate: every disjoint solution is a valid two-family split, so it is
    // bounded by the two-family maximum.
    let need_b = match (compat.self_ok, best, alpha2) {
        (false, _, _) => true,
        (true, Some(b), Some(a2)) => {
            if opts.collect_witnesses {
                b <= a2
            } else {
                b < a2
            }
        }
        (true, Some(_), None) => false,
        (true, None, _) => true,
    };
    if need_b {
        let mut engine = PartitionDfs::new(&compat, r as usize, opts);
        engine.best = best;
        engine.run();
        complete = complete && engine.complete;
        match (best, engine.best) {
            (Some(a), Some(b)) if b > a => {
                best = Some(b);
                witnesses = partition_witness_tuples(&g, &engine.ties)?;
            }
            (Some(a), Some(b)) if b == a && opts.collect_witnesses => {
                witnesses.extend(partition_witness_tuples(&g, &engine.ties)?);
            }
            (None, Some(b)) => {
                best = Some(b);
                witnesses = partition_witness_tuples(&g, &engine.ties)?;
            }
            _ => {}
        }
    }
    if !opts.collect_witnesses {
        witnesses.clear();
    }
    Ok(SearchResult::assemble(
        SearchMode::Pairwise,
        n,
        k,
        r,
        l,
        best,
        complete,
        witnesses,
    ))
}

/// Enumerate cliques containing vertex 0 (every clique class has such an
/// image under relabeling), scoring r·|M| + |common region|.
fn clique_core_search(
    compat: &Compat,
    r: u64,
    collect: bool,
    node_budget: u64,
) -> (Option<u64>, Vec<(u128, u128)>, bool) {
    let m = compat.rows.len();
    if m == 0 {
        return (None, Vec::new(), true);
    }
    let mut best: Option<u64> = None;
    let mut ties: Vec<(u128, u128)> = Vec::new();
    let mut nodes = 0u64;
    // Stack entries: (clique bits, common-compat region, extension candidates).
    let root_common = compat.rows[0];
    let mut stack = vec![(1u128 << 0, root_common, root_common)];
    while let Some((m_bits, common, ext)) = stack.pop() {
        nodes += 1;
        if nodes > node_budget {
            return (best, ties, false);
        }
        let value = r * m_bits.count_ones() as u64 + common.count_ones() as u64;
        match best {
            Some(b) if value < b => {}
            Some(b) if value == b => {
                if collect {
                    ties.push((m_bits, common));
                }
            }
            _ => {
                best = Some(value);
                ties.clear();
                if collect {
                    ties.push((m_bits, common));
                }
            }
        }
        let ub_base = r * m_bits.count_ones() as u64;
        let mut cand = ext;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let new_m = m_bits | (1u128 << v);
            let new_common = common & compat.rows[v];
            let new_ext = cand & compat.rows[v];
            let ub = ub_base
                + r
                + r * new_ext.count_ones() as u64
                + (new_common & !new_ext).count_ones() as u64;
            let keep = match best {
                Some(b) if collect => ub >= b,
                Some(b) => ub > b,
                None => true,
            };
            if keep {
                stack.push((new_m, new_common, new_ext));
            }
        }
    }
    (best, ties, true)
}

/// Expand an optimal core (M, S) into family tuples: connected components of
/// the conflict graph inside S may be grouped into at most r blocks in any
/// way, each family being M plus one block.
fn core_witness_tuples(
    g: &IntersectionGraph,
    compat: &Compat,
    m_bits: u128,
    s_bits: u128,
    r: usize,
) -> Result<Vec<FamilyTuple>> {
    let comps = conflict_components(compat, s_bits);
    let mut out = Vec::new();
    for grouping in partitions_up_to(comps.len(), r) {
        let mut blocks: Vec<u128> = vec![0; r];
        for (ci, &bi) in grouping.iter().enumerate() {
            blocks[bi] |= comps[ci];
        }
        let families: Vec<SetFamily> = blocks
            .into_iter()
            .map(|b| bits_to_family(g, m_bits | b))
            .collect();
        out.push(FamilyTuple::new(families)?);
    }
    Ok(out)
}

/// Connected components of the conflict (incompatibility) graph on `set`.
fn conflict_components(compat: &Compat, set: u128) -> Vec<u128> {
    let mut rest = set;
    let mut comps = Vec::new();
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut frontier = 0u128;
            let mut it = comp;
            while it != 0 {
                let v = it.trailing_zeros() as usize;
                it &= it - 1;
                // Conflicts inside `set`: everything not compatible with v.
                frontier |= set & !compat.rows[v] & !(1u128 << v);
            }
            let grown = comp | (frontier & set);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        comps.push(comp);
        rest &= !comp;
    }
    comps
}

/// All ways to assign `items` labelled elements into at most `blocks`
/// unordered blocks (restricted growth strings).
fn partitions_up_to(items: usize, blocks: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; items];
    fn go(idx: usize, used: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=used.min(blocks - 1) {
            cur[idx] = b;
            let nused = used.max(b + 1);
            go(idx + 1, nused, blocks, cur, out);
        }
    }
    if items == 0 {
        out.push(Vec::new());
        return out;
    }
    go(0, 0, blocks, &mut cur, &mut out);
    out
}

/// DFS over disjoint class assignments for the no-shared-core case: classes
/// are the families, conflicting vertices must share a class, all r classes
/// must end nonempty.
struct PartitionDfs<'a> {
    compat: &'a Compat,
    r: usize,
    m: usize,
    node_budget: u64,
    nodes: u64,
    complete: bool,
    best: Option<u64>,
    ties: Vec<Vec<u128>>,
    collect: bool,
    class_bits: Vec<u128>,
    assigned: u128,
    compat_all: u128,
}

impl<'a> PartitionDfs<'a> {
    fn new(compat: &'a Compat, r: usize, opts: &SearchOptions) -> Self {
        PartitionDfs {
            compat,
            r,
            m: compat.rows.len(),
            node_budget: opts.node_budget,
            nodes: 0,
            complete: true,
            best: None,
            ties: Vec::new(),
            collect: opts.collect_witnesses,
            class_bits: vec![0; r],
            assigned: 0,
            compat_all: compat.all,
        }
    }

    fn run(&mut self) {
        let allowed = vec![u32::MAX; self.m];
        self.dfs(0, 0, &allowed);
    }

    fn dfs(&mut self, idx: usize, used: usize, allowed: &[u32]) {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.complete = false;
            return;
        }
        let placed = self.assigned.count_ones() as u64;
        if idx == self.m {
            if used == self.r {
                match self.best {
                    Some(b) if placed < b => {}
                    Some(b) if placed == b => {
                        if self.collect {
                            self.ties.push(self.class_bits.clone());
                        }
                    }
                    _ => {
                        self.best = Some(placed);
                        self.ties.clear();
                        if self.collect {
                            self.ties.push(self.class_bits.clone());
                        }
                    }
                }
            }
            return;
        }
        // Bound: everyone not yet ruled out may still be placed.
        let alive = allowed[idx..self.m].iter().filter(|&&a| a != 0).count() as u64;
        let potential = placed + alive;
        if let Some(b) = self.best {
            let enough = if self.collect { potential >= b } else { potential > b };
            if !enough {
                return;
            }
        }
        // Feasibility: classes still to open need openers compatible with
        // every assigned vertex.
        if used < self.r {
            let openers = (self.compat_all & !self.assigned) >> idx;
            let mut count = 0;
            let mut rest = openers;
            while rest != 0 && count < self.r - used {
                count += 1;
                rest &= rest - 1;
            }
            if count < self.r - used {
                return;
            }
        }

        // Option: leave idx out.
        self.dfs(idx + 1, used, allowed);

        // Option: place idx into an existing class or open the next one.
        let top = (used + 1).min(self.r);
        for c in 0..top {
            if allowed[idx] & (1 << c) == 0 {
                continue;
            }
            let mut next_allowed = allowed.to_vec();
            let row = self.compat.rows[idx];
            for (w, slot) in next_allowed.iter_mut().enumerate().skip(idx + 1) {
                if row & (1u128 << w) == 0 {
                    // Conflict: w can only join idx's class.
                    *slot &= 1 << c;
                }
            }
            let saved_compat_all = self.compat_all;
            self.compat_all &= row;
            self.class_bits[c] |= 1u128 << idx;
            self.assigned |= 1u128 << idx;
            self.dfs(idx + 1, used.max(c + 1), &next_allowed);
            self.assigned &= !(1u128 << idx);
            self.class_bits[c] &= !(1u128 << idx);
            self.compat_all = saved_compat_all;
        }
    }
}

fn partition_witness_tuples(
    g: &IntersectionGraph,
    ties: &[Vec<u128>],
) -> Result<Vec<FamilyTuple>> {
    ties.iter()
        .map(|classes| {
            let families: Vec<SetFamily> =
                classes.iter().map(|&b| bits_to_family(g, b)).collect();
            FamilyTuple::new(families)
        })
        .collect()
}

/// Exact maximum of the total size of r nonempty r-cross-L-intersecting
/// families: every choice of one member per family must have r-wise
/// intersection size in L. r = 2 is served by the matching oracle.
pub fn oracle_rcross_max(
    n: u32,
    k: u32,
    r: u32,
    l: &LSpec,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    check_instance(n, k, l)?;
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    if r == 2 {
        let mut res = oracle_cross2_max(n, k, l, opts)?;
        res.mode = SearchMode::RCross;
        return Ok(res);
    }
    let g = IntersectionGraph::build(n, k, l)?;
    let mut engine = RCrossDfs::new(&g, r as usize, l, opts);
    engine.run();
    let witnesses = if opts.collect_witnesses {
        engine
            .ties
            .iter()
            .map(|fams| {
                FamilyTuple::new(fams.iter().map(|&b| bits_to_family(&g, b)).collect())
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(SearchResult::assemble(
        SearchMode::RCross,
        n,
        k,
        r,
        l,
        engine.best,
        engine.complete,
        witnesses,
    ))
}

/// Family-by-family subset DFS with live partial-intersection profiles.
/// Constraints bind only on full choices, so the last family is taken
/// greedily per element; a profile that falls below min(L) kills its prefix.
struct RCrossDfs<'a> {
    g: &'a IntersectionGraph,
    r: usize,
    l: LSpec,
    min_l: u32,
    m: usize,
    node_budget: u64,
    nodes: u64,
    complete: bool,
    collect: bool,
    best: Option<u64>,
    ties: Vec<Vec<u128>>,
    families: Vec<u128>,
}

impl<'a> RCrossDfs<'a> {
    fn new(g: &'a IntersectionGraph, r: usize, l: &LSpec, opts: &SearchOptions) -> Self {
        RCrossDfs {
            g,
            r,
            l: *l,
            min_l: l.sizes()[0],
            m: g.side_size(),
            node_budget: opts.node_budget,
            nodes: 0,
            complete: true,
            collect: opts.collect_witnesses,
            best: None,
            ties: Vec::new(),
            families: Vec::new(),
        }
    }

    fn run(&mut self) {
        let profiles: Vec<u64> = vec![full_mask(self.g.n())];
        self.family_dfs(1, 0, &profiles);
    }

    /// Choose family `level` (1-based; levels 1..r-1 are enumerated).
    fn family_dfs(&mut self, level: usize, sum: u64, profiles: &[u64]) {
        self.vertex_dfs(level, 0, 0, sum, profiles, &mut Vec::new());
    }

    fn vertex_dfs(
        &mut self,
        level: usize,
        idx: usize,
        fam_bits: u128,
        sum: u64,
        prev_profiles: &[u64],
        new_profiles: &mut Vec<u64>,
    ) {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.complete = false;
            return;
        }
        // Upper bound: finish this family, fill all remaining ones.
        let fam_size = fam_bits.count_ones() as u64;
        let ub = sum
            + fam_size
            + (self.m - idx) as u64
            + (self.r - level) as u64 * self.m as u64;
        if let Some(b) = self.best {
            let enough = if self.collect { ub >= b } else { ub > b };
            if !enough {
                return;
            }
        }
        if idx == self.m {
            if fam_bits == 0 {
                return;
            }
            let mut profiles: Vec<u64> = new_profiles.clone();
            profiles.sort_unstable();
            profiles.dedup();
            self.families.push(fam_bits);
            if level + 1 == self.r {
                self.finish(sum + fam_size, &profiles);
            } else {
                self.family_dfs(level + 1, sum + fam_size, &profiles);
            }
            self.families.pop();
            return;
        }

        // Include vertex idx in the current family.
        let vmask = self.g.vertex_masks()[idx];
        let mut ok = true;
        let mut added: Vec<u64> = Vec::with_capacity(prev_profiles.len());
        for &p in prev_profiles {
            let np = p & vmask;
            if np.count_ones() < self.min_l {
                ok = false;
                break;
            }
            added.push(np);
        }
        if ok {
            let before = new_profiles.len();
            new_profiles.extend(added);
            self.vertex_dfs(
                level,
                idx + 1,
                fam_bits | (1u128 << idx),
                sum,
                prev_profiles,
                new_profiles,
            );
            new_profiles.truncate(before);
        }

        // Exclude vertex idx.
        self.vertex_dfs(level, idx + 1, fam_bits, sum, prev_profiles, new_profiles);
    }

    /// All middle families fixed; the last family is free per element.
    fn finish(&mut self, sum: u64, profiles: &[u64]) {
        let mut last = 0u128;
        for idx in 0..self.m {
            let vmask = self.g.vertex_masks()[idx];
            if profiles
                .iter()
                .all(|&p| self.l.contains((p & vmask).count_ones()))
            {
                last |= 1u128 << idx;
            }
        }
        if last == 0 {
            return;
        }
        let total = sum + last.count_ones() as u64;
        match self.best {
            Some(b) if total < b => {}
            Some(b) if total == b => {
                if self.collect {
                    let mut fams = self.families.clone();
                    fams.push(last);
                    self.ties.push(fams);
                }
            }
            _ => {
                self.best = Some(total);
                self.ties.clear();
                if self.collect {
                    let mut fams = self.families.clone();
                    fams.push(last);
                    self.ties.push(fams);
                }
            }
        }
    }
}

/// Slow reference scans, deliberately kept structurally separate from the
/// engines they certify.
pub mod naive {
    use super::*;

    /// Max over nonempty (F_1, ..., F_r), r in {2, 3}, of the total size under
    /// the pairwise cross condition, by nested subset scans with the last
    /// family filled greedily inside the common compatible region.
    pub fn naive_pairwise_max(n: u32, k: u32, r: u32, l: &LSpec) -> Result<Option<u64>> {
        check_instance(n, k, l)?;
        let g = IntersectionGraph::build(n, k, l)?;
        let m = g.side_size();
        assert!(m <= 20, "naive scan is for small instances");
        let verts = g.vertex_masks();
        let compat: Vec<u128> = (0..m)
            .map(|i| {
                let mut row = 0u128;
                for j in 0..m {
                    if i != j && l.contains((verts[i] & verts[j]).count_ones()) {
                        row |= 1u128 << j;
                    }
                }
                if l.contains(k) {
                    row |= 1u128 << i;
                }
                row
            })
            .collect();
        let all = (1u128 << m) - 1;
        let region = |bits: u128| -> u128 {
            let mut reg = all;
            let mut rest = bits;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                reg &= compat[v];
            }
            reg
        };
        let mut best: Option<u64> = None;
        match r {
            2 => {
                for f1 in 1..=all {
                    let reg = region(f1);
                    if reg != 0 {
                        let total = f1.count_ones() as u64 + reg.count_ones() as u64;
                        if best.is_none_or(|b| total > b) {
                            best = Some(total);
                        }
                    }
                }
            }
            3 => {
                for f1 in 1..=all {
                    let reg1 = region(f1);
                    if reg1 == 0 {
                        continue;
                    }
                    // F_2 ranges over nonempty subsets of reg1.
                    let mut f2 = reg1;
                    loop {
                        let reg2 = reg1 & region(f2);
                        if reg2 != 0 {
                            let total = f1.count_ones() as u64
                                + f2.count_ones() as u64
                                + reg2.count_ones() as u64;
                            if best.is_none_or(|b| total > b) {
                                best = Some(total);
                            }
                        }
                        if f2 == 0 {
                            break;
                        }
                        f2 = (f2 - 1) & reg1;
                        if f2 == 0 {
                            break;
                        }
                    }
                }
            }
            _ => return Err(Error::InvalidParams("naive scan supports r in {2,3}".into())),
        }
        Ok(best)
    }

    /// Same nested structure for the r-wise condition, with explicit profile
    /// recomputation per candidate tuple.
    pub fn naive_rcross_max(n: u32, k: u32, r: u32, l: &LSpec) -> Result<Option<u64>> {
        check_instance(n, k, l)?;
        let g = IntersectionGraph::build(n, k, l)?;
        let m = g.side_size();
        assert!(m <= 20, "naive scan is for small instances");
        let verts = g.vertex_masks();
        let all = (1u128 << m) - 1;
        let profiles_of = |bits: u128, base: &[u64]| -> Vec<u64> {
            let mut out = Vec::new();
            for &p in base {
                let mut rest = bits;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    out.push(p & verts[v]);
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        };
        let free_last = |profiles: &[u64]| -> u64 {
            verts
                .iter()
                .filter(|&&v| profiles.iter().all(|&p| l.contains((p & v).count_ones())))
                .count() as u64
        };
        let base = vec![full_mask(n)];
        let mut best: Option<u64> = None;
        match r {
            2 => {
                for f1 in 1..=all {
                    let prof = profiles_of(f1, &base);
                    let last = free_last(&prof);
                    if last > 0 {
                        let total = f1.count_ones() as u64 + last;
                        if best.is_none_or(|b| total > b) {
                            best = Some(total);
                        }
                    }
                }
            }
            3 => {
                for f1 in 1..=all {
                    let prof1 = profiles_of(f1, &base);
                    for f2 in 1..=all {
                        let prof2 = profiles_of(f2, &prof1);
                        let last = free_last(&prof2);
                        if last > 0 {
                            let total =
                                f1.count_ones() as u64 + f2.count_ones() as u64 + last;
                            if best.is_none_or(|b| total > b) {
                                best = Some(total);
                            }
                        }
                    }
                }
            }
            _ => return Err(Error::InvalidParams("naive scan supports r in {2,3}".into())),
        }
        Ok(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatchVerdict {
    #[serde(rename = "true")]
    Match,
    #[serde(rename = "false")]
    Mismatch,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

#[derive(Debug, Serialize)]
pub struct CharacterizationReport {
    pub n: u32,
    pub k: u32,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub witness_match: MatchVerdict,
    pub oracle_classes: usize,
    pub expected_classes: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

/// Compare the oracle's maximum-pair classes against the equality cases of
/// the two-family theorem, as canonical-key sets.
pub fn verify_characterization(
    n: u32,
    k: u32,
    l: &LSpec,
    opts: &SearchOptions,
) -> Result<CharacterizationReport> {
    let oracle = oracle_cross2_max(n, k, l, opts)?;
    if oracle.max.is_none() {
        return Ok(CharacterizationReport {
            n,
            k,
            l: l.sizes(),
            witness_match: MatchVerdict::Match,
            oracle_classes: 0,
            expected_classes: 0,
            missing: vec![],
            extra: vec![],
        });
    }
    if !oracle.complete || n > MAX_CANONICAL_N {
        return Ok(CharacterizationReport {
            n,
            k,
            l: l.sizes(),
            witness_match: MatchVerdict::Unknown,
            oracle_classes: oracle.witness_count,
            expected_classes: 0,
            missing: vec![],
            extra: vec![],
        });
    }
    let expected = expected_extremal_keys(n, k, l)?;
    let got: BTreeMap<String, ()> = oracle
        .canonical_keys
        .iter()
        .map(|h| (h.clone(), ()))
        .collect();
    let missing: Vec<String> = expected
        .keys()
        .filter(|h| !got.contains_key(*h))
        .cloned()
        .collect();
    let extra: Vec<String> = got
        .keys()
        .filter(|h| !expected.contains_key(*h))
        .cloned()
        .collect();
    Ok(CharacterizationReport {
        n,
        k,
        l: l.sizes(),
        witness_match: if missing.is_empty() && extra.is_empty() {
            MatchVerdict::Match
        } else {
            MatchVerdict::Mismatch
        },
        oracle_classes: got.len(),
        expected_classes: expected.len(),
        missing,
        extra,
    })
}

/// Canonical keys of every configuration the equality characterization lists
/// at these parameters.
fn expected_extremal_keys(n: u32, k: u32, l: &LSpec) -> Result<BTreeMap<String, ()>> {
    use crate::bounds::{classify_regime, Regime};
    let mut keys = BTreeMap::new();
    let mut add = |t: &FamilyTuple| -> Result<()> {
        keys.insert(canonical_form(t)?.hex(), ());
        Ok(())
    };
    match classify_regime(n, k, l)? {
        Regime::Infeasible => {}
        Regime::CaseI => {
            let full = SetFamily::complete(n, k)?;
            add(&FamilyTuple::new(vec![full.clone(), full])?)?;
        }
        Regime::CaseII => {
            let (a, b) = construct_cross2_extremal(n, k, l, &Cross2Variant::StarPair)?;
            add(&FamilyTuple::new(vec![a, b])?)?;
            if star_star_applies(k, l) {
                let (a, b) = construct_cross2_extremal(n, k, l, &Cross2Variant::StarStar)?;
                add(&FamilyTuple::new(vec![a, b])?)?;
            }
            if subcube_applies(n, k, l) {
                let (a, b) = construct_cross2_extremal(n, k, l, &Cross2Variant::Subcube)?;
                add(&FamilyTuple::new(vec![a, b])?)?;
            }
            if complement_split_applies(n, k, l) {
                for (a, b) in all_complement_splits(n, k)? {
                    add(&FamilyTuple::new(vec![a, b])?)?;
                }
            }
        }
        Regime::CaseIII => {
            let (a, b) = construct_cross2_extremal(n, k, l, &Cross2Variant::PairMiddle)?;
            add(&FamilyTuple::new(vec![a, b])?)?;
            if complement_closed_applies(k, l) {
                for (a, b) in all_complement_closed_splits(n, k)? {
                    add(&FamilyTuple::new(vec![a, b])?)?;
                }
            }
        }
    }
    Ok(keys)
}

/// Every (A, complement of A) over nonempty proper A. Exponential in C(n,k);
/// guarded by the callers' scale.
fn all_complement_splits(n: u32, k: u32) -> Result<Vec<(SetFamily, SetFamily)>> {
    let m = binom64(n, k);
    if m > 16 {
        return Err(Error::BudgetExceeded(format!(
            "complement-split enumeration over C({n},{k}) = {m} subsets"
        )));
    }
    let complete = SetFamily::complete(n, k)?;
    let masks = complete.masks().to_vec();
    let mut out = Vec::new();
    for bits in 1..((1u32 << m) - 1) {
        let a: Vec<u64> = (0..m)
            .filter(|&i| bits & (1 << i) != 0)
            .map(|i| masks[i as usize])
            .collect();
        let fam = SetFamily::new(n, k, a)?;
        let comp = fam.complement_family()?;
        out.push((fam, comp));
    }
    Ok(out)
}

/// Every (A, complement of A) where A is a nonempty proper union of
/// set-complementary pairs (n = 2k).
fn all_complement_closed_splits(n: u32, k: u32) -> Result<Vec<(SetFamily, SetFamily)>> {
    debug_assert_eq!(n, 2 * k);
    let complete = SetFamily::complete(n, k)?;
    let full = full_mask(n);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for &m in complete.masks() {
        let c = !m & full;
        if m < c {
            pairs.push((m, c));
        }
    }
    let p = pairs.len();
    if p > 16 {
        return Err(Error::BudgetExceeded(format!(
            "complement-closed enumeration over {p} pairs"
        )));
    }
    let mut out = Vec::new();
    for bits in 1..((1u32 << p) - 1) {
        let mut masks = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if bits & (1 << i) != 0 {
                masks.push(a);
                masks.push(b);
            }
        }
        let fam = SetFamily::new(n, k, masks)?;
        let comp = fam.complement_family()?;
        out.push((fam, comp));
    }
    Ok(out)
}

/// Least n0 in the swept range from which the oracle matches the formula all
/// the way to the top of the range.
pub fn empirical_threshold(rows: &[(u32, Option<u64>, Option<u64>)]) -> Option<u32> {
    let mut threshold = None;
    for &(n, oracle, formula) in rows {
        if oracle == formula {
            threshold.get_or_insert(n);
        } else {
            threshold = None;
        }
    }
    threshold
}
