//! Maximum bipartite matching and the König construction of a maximum
//! independent set, on u128-coded vertex subsets.

/// Maximum matching between the X-vertices in `xs` and Y-vertices in `ys`,
/// with adjacency rows `adj` (X index -> Y bitset). Returns the matching size
/// and the matched partner arrays (usize::MAX = unmatched).
pub fn max_matching(adj: &[u128], xs: u128, ys: u128) -> (usize, Vec<usize>, Vec<usize>) {
    let m = adj.len();
    let ymax = 128 - ys.leading_zeros() as usize;
    let mut match_x = vec![usize::MAX; m];
    let mut match_y = vec![usize::MAX; ymax];
    let mut size = 0;

    // Greedy seed, then augmenting paths.
    let mut rest = xs;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let free = adj[x] & ys & !occupied(&match_y);
        if free != 0 {
            let y = free.trailing_zeros() as usize;
            match_x[x] = y;
            match_y[y] = x;
            size += 1;
        }
    }

    let mut rest = xs;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if match_x[x] != usize::MAX {
            continue;
        }
        let mut visited = 0u128;
        if augment(adj, ys, x, &mut match_x, &mut match_y, &mut visited) {
            size += 1;
        }
    }
    (size, match_x, match_y)
}

fn occupied(match_y: &[usize]) -> u128 {
    let mut out = 0u128;
    for (y, &x) in match_y.iter().enumerate() {
        if x != usize::MAX {
            out |= 1u128 << y;
        }
    }
    out
}

fn augment(
    adj: &[u128],
    ys: u128,
    x: usize,
    match_x: &mut [usize],
    match_y: &mut [usize],
    visited: &mut u128,
) -> bool {
    let mut cand = adj[x] & ys & !*visited;
    while cand != 0 {
        let y = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        *visited |= 1u128 << y;
        if match_y[y] == usize::MAX
            || augment(adj, ys, match_y[y], match_x, match_y, visited)
        {
            match_x[x] = y;
            match_y[y] = x;
            return true;
        }
    }
    false
}

/// Maximum independent set of the induced bipartite graph on (`xs`, `ys`):
/// the complement of a minimum vertex cover obtained from a maximum matching
/// by alternating reachability (König duality). Returns (X-part, Y-part).
pub fn konig_max_independent(adj: &[u128], xs: u128, ys: u128) -> (u128, u128) {
    let (_, match_x, match_y) = max_matching(adj, xs, ys);

    // Alternating BFS from unmatched X vertices: X -> Y over edges,
    // Y -> X over matching edges.
    let mut zx = 0u128;
    let mut zy = 0u128;
    let mut queue: Vec<usize> = Vec::new();
    let mut rest = xs;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if match_x[x] == usize::MAX {
            zx |= 1u128 << x;
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        let mut cand = adj[x] & ys & !zy;
        while cand != 0 {
            let y = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            zy |= 1u128 << y;
            let xm = match_y[y];
            if xm != usize::MAX && zx & (1u128 << xm) == 0 {
                zx |= 1u128 << xm;
                queue.push(xm);
            }
        }
    }
    // Cover = (X \ Z) ∪ (Y ∩ Z); independent set is its complement.
    (xs & zx, ys & !zy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_on_a_path() {
        // X = {0,1}, Y = {0,1}; edges 0-0, 0-1, 1-1.
        let adj = vec![0b11u128, 0b10u128];
        let (size, ..) = max_matching(&adj, 0b11, 0b11);
        assert_eq!(size, 2);
    }

    #[test]
    fn konig_on_a_star() {
        // X = {0,1,2} all adjacent to Y = {0} only.
        let adj = vec![1u128, 1, 1];
        let (ix, iy) = konig_max_independent(&adj, 0b111, 0b1);
        assert_eq!(ix.count_ones() + iy.count_ones(), 3);
        // No edge inside: if any X chosen, Y0 must be out.
        if ix != 0 {
            assert_eq!(iy, 0);
        }
    }

    #[test]
    fn mis_complements_matching_size() {
        // Random-ish dense bipartite graphs: |MIS| = |X| + |Y| - matching.
        let mut seed = 0x1234_5678u64;
        for _ in 0..200 {
            let nx = 6;
            let ny = 7;
            let mut adj = vec![0u128; nx];
            for row in adj.iter_mut() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                *row = (seed >> 17) as u128 & ((1 << ny) - 1);
            }
            let xs = (1u128 << nx) - 1;
            let ys = (1u128 << ny) - 1;
            let (m, ..) = max_matching(&adj, xs, ys);
            let (ix, iy) = konig_max_independent(&adj, xs, ys);
            assert_eq!(
                (ix.count_ones() + iy.count_ones()) as usize,
                nx + ny - m
            );
            // Independence.
            let mut rest = ix;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                assert_eq!(adj[x] & iy, 0);
            }
        }
    }
}
