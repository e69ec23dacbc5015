//! The bipartite conflict graph G(X, Y): X = Y = all k-subsets of `[n]`,
//! with an edge A–B exactly when |A ∩ B| is a forbidden size.

use crate::binom::{binom64, binom_exact, BigCount};
use crate::error::{Error, Result};
use crate::lspec::LSpec;
use crate::subset::{check_ground, combinations};

/// Vertex sets are indexed by colex rank; a side-subset is one u128 word.
pub const MAX_SIDE: u64 = 128;

#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    n: u32,
    k: u32,
    l: LSpec,
    /// Vertex masks in colex order; shared by both sides.
    verts: Vec<u64>,
    /// adj`[i]` = opposite-side neighbours of vertex i. Symmetric across sides.
    adj: Vec<u128>,
    deg: u32,
}

impl IntersectionGraph {
    pub fn build(n: u32, k: u32, l: &LSpec) -> Result<Self> {
        check_ground(n)?;
        if k < 2 || n < k {
            return Err(Error::InvalidParams(format!("need n >= k >= 2, got n={n} k={k}")));
        }
        if l.k() != k {
            return Err(Error::InvalidParams("L uniformity mismatch".into()));
        }
        let side = binom64(n, k);
        if side > MAX_SIDE {
            return Err(Error::GraphTooLarge {
                vertices: side,
                max: MAX_SIDE,
            });
        }
        let verts: Vec<u64> = combinations(n, k).collect();
        let m = verts.len();
        let mut adj = vec![0u128; m];
        for i in 0..m {
            for j in 0..m {
                if !l.contains((verts[i] & verts[j]).count_ones()) {
                    adj[i] |= 1u128 << j;
                }
            }
        }
        let deg = adj.first().map_or(0, |a| a.count_ones());
        Ok(IntersectionGraph {
            n,
            k,
            l: *l,
            verts,
            adj,
            deg,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lspec(&self) -> &LSpec {
        &self.l
    }

    pub fn side_size(&self) -> usize {
        self.verts.len()
    }

    pub fn vertex_masks(&self) -> &[u64] {
        &self.verts
    }

    pub fn adjacency(&self) -> &[u128] {
        &self.adj
    }

    /// Common degree d(X) = d(Y); every vertex has the same degree under the
    /// relabeling action.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// The closed form sum_{i not in L} C(k,i)·C(n-k,k-i).
    pub fn degree_formula(&self) -> BigCount {
        self.l
            .complement_sizes()
            .into_iter()
            .map(|i| {
                binom_exact(self.k as u64, i as u64)
                    * binom_exact((self.n - self.k) as u64, (self.k - i) as u64)
            })
            .sum()
    }

    pub fn all_vertices(&self) -> u128 {
        if self.verts.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.verts.len()) - 1
        }
    }

    /// Union of neighbourhoods of the vertices in `set`.
    pub fn neighborhood(&self, set: u128) -> u128 {
        let mut out = 0u128;
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= self.adj[i];
            rest &= rest - 1;
        }
        out
    }

    pub fn is_empty_graph(&self) -> bool {
        self.adj.iter().all(|&a| a == 0)
    }

    pub fn is_complete_bipartite(&self) -> bool {
        let all = self.all_vertices();
        self.adj.iter().all(|&a| a == all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(spec: &str, k: u32) -> LSpec {
        LSpec::parse(spec, k).unwrap()
    }

    #[test]
    fn degrees_match_formula() {
        for (n, k, spec) in [
            (4u32, 2u32, "1"),
            (4, 2, "all"),
            (5, 2, "2"),
            (6, 2, "1,2"),
            (6, 3, "0,3"),
            (5, 3, "1,2"),
        ] {
            let g = IntersectionGraph::build(n, k, &l(spec, k)).unwrap();
            let formula = g.degree_formula();
            for (i, a) in g.adjacency().iter().enumerate() {
                assert_eq!(
                    BigCount::from(a.count_ones()),
                    formula,
                    "vertex {i} at ({n},{k},{spec})"
                );
            }
        }
    }

    #[test]
    fn small_graph_shapes() {
        let g = IntersectionGraph::build(4, 2, &l("1", 2)).unwrap();
        assert_eq!(g.side_size(), 6);
        assert_eq!(g.degree(), 2);

        let g = IntersectionGraph::build(4, 2, &l("all", 2)).unwrap();
        assert!(g.is_empty_graph());

        let g = IntersectionGraph::build(5, 2, &l("2", 2)).unwrap();
        assert_eq!(g.degree(), 9);

        let g = IntersectionGraph::build(3, 2, &l("0", 2)).unwrap();
        assert!(g.is_complete_bipartite());
    }

    #[test]
    fn empty_iff_no_forbidden_size_in_window() {
        // Conflict sizes live in [max(0, 2k-n), k]; the graph is empty exactly
        // when the complement of L misses that window.
        for n in 4..=7u32 {
            for k in 2..=3u32.min(n) {
                for bits in 1..(1u64 << (k + 1)) {
                    let ls = LSpec::from_bits(bits, k).unwrap();
                    let g = IntersectionGraph::build(n, k, &ls).unwrap();
                    let lo = (2 * k).saturating_sub(n);
                    let expect_empty =
                        (lo..=k).all(|i| ls.contains(i));
                    assert_eq!(g.is_empty_graph(), expect_empty, "n={n} k={k} L={ls}");
                }
            }
        }
    }
}
