//! Constructors for the extremal configurations attaining the catalog bounds.

use crate::error::{Error, Result};
use crate::family::{FamilyTuple, SetFamily};
use crate::lspec::LSpec;
use crate::subset::{combinations, full_mask};

/// Named extremal pair shapes for the two-family problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cross2Variant {
    /// A = {`[k]`}, B = {F : |F ∩ `[k]`| in L}.
    StarPair,
    /// A = seed, B = `C([n],k) \ seed`; valid when every distinct pair size lies in L.
    ComplementSplit(SetFamily),
    /// k = 2, L = {1,2}: A = B = all pairs through the point 1.
    StarStar,
    /// k = n-2, L ∩ `[k-2,k]` = {k-1,k}: A = B = `C([n-1], n-2)`.
    Subcube,
    /// n = 2k: A = {`[k]`, `[k+1,2k]`}, B = {F : |F ∩ `[k]`| in L}.
    PairMiddle,
    /// n = 2k, L = `[1,k-1]`: A = closure of seed under set complement, B = family complement of A.
    ComplementClosed(SetFamily),
}

impl Cross2Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Cross2Variant::StarPair => "STAR_PAIR",
            Cross2Variant::ComplementSplit(_) => "COMPLEMENT_SPLIT",
            Cross2Variant::StarStar => "STAR_STAR",
            Cross2Variant::Subcube => "SUBCUBE",
            Cross2Variant::PairMiddle => "PAIR_MIDDLE",
            Cross2Variant::ComplementClosed(_) => "COMPLEMENT_CLOSED",
        }
    }
}

fn prefix_mask(k: u32) -> u64 {
    full_mask(k)
}

/// `{F in C([n],k) : |F ∩ [k]| in L}`.
fn meets_prefix_in(n: u32, k: u32, l: &LSpec) -> Result<SetFamily> {
    let p = prefix_mask(k);
    SetFamily::new(
        n,
        k,
        combinations(n, k).filter(|m| l.contains((m & p).count_ones())),
    )
}

/// Side-condition helpers quoted from the equality characterizations.
pub fn complement_split_applies(n: u32, k: u32, l: &LSpec) -> bool {
    if n >= 2 * k {
        l.as_interval() == Some((0, k - 1))
    } else {
        // n < 2k: [2k-n, k-1] ⊆ L.
        (2 * k - n..k).all(|i| l.contains(i))
    }
}

pub fn star_star_applies(k: u32, l: &LSpec) -> bool {
    k == 2 && l.bits() == 0b110
}

pub fn subcube_applies(n: u32, k: u32, l: &LSpec) -> bool {
    if k + 2 != n || k < 2 {
        return false;
    }
    // L ∩ [k-2, k] = {k-1, k}.
    let lo = k.saturating_sub(2);
    (lo..=k).all(|i| l.contains(i) == (i >= k - 1))
}

pub fn complement_closed_applies(k: u32, l: &LSpec) -> bool {
    k >= 2 && l.as_interval() == Some((1, k - 1))
}

pub fn construct_cross2_extremal(
    n: u32,
    k: u32,
    l: &LSpec,
    variant: &Cross2Variant,
) -> Result<(SetFamily, SetFamily)> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!("need n >= k >= 2, got n={n} k={k}")));
    }
    if l.k() != k {
        return Err(Error::InvalidParams("L is over the wrong uniformity".into()));
    }
    match variant {
        Cross2Variant::StarPair => {
            let a = SetFamily::new(n, k, [prefix_mask(k)])?;
            let b = meets_prefix_in(n, k, l)?;
            Ok((a, b))
        }
        Cross2Variant::ComplementSplit(seed) => {
            if !complement_split_applies(n, k, l) {
                return Err(Error::InvalidParams(
                    "complement split needs L = [0,k-1] (or its n<2k window form)".into(),
                ));
            }
            if seed.n() != n || seed.k() != k {
                return Err(Error::MismatchedParams(n, k, seed.n(), seed.k()));
            }
            let b = seed.complement_family()?;
            if seed.is_empty() || b.is_empty() {
                return Err(Error::InvalidParams(
                    "complement split needs a nonempty proper seed".into(),
                ));
            }
            Ok((seed.clone(), b))
        }
        Cross2Variant::StarStar => {
            if !star_star_applies(k, l) {
                return Err(Error::InvalidParams("star/star needs k=2 and L={1,2}".into()));
            }
            let star = SetFamily::new(n, k, combinations(n, k).filter(|m| m & 1 != 0))?;
            Ok((star.clone(), star))
        }
        Cross2Variant::Subcube => {
            if !subcube_applies(n, k, l) {
                return Err(Error::InvalidParams(
                    "subcube needs k = n-2 and L ∩ [k-2,k] = {k-1,k}".into(),
                ));
            }
            let hyper = SetFamily::new(
                n,
                k,
                combinations(n, k).filter(|m| m & (1 << (n - 1)) == 0),
            )?;
            Ok((hyper.clone(), hyper))
        }
        Cross2Variant::PairMiddle => {
            if n != 2 * k {
                return Err(Error::InvalidParams("pair/middle needs n = 2k".into()));
            }
            if l.reflect() != *l || l.is_full() {
                return Err(Error::InvalidParams(
                    "pair/middle needs L = k-L and L != [0,k]".into(),
                ));
            }
            let a = SetFamily::new(n, k, [prefix_mask(k), full_mask(n) & !prefix_mask(k)])?;
            let b = meets_prefix_in(n, k, l)?;
            Ok((a, b))
        }
        Cross2Variant::ComplementClosed(seed) => {
            if n != 2 * k || !complement_closed_applies(k, l) {
                return Err(Error::InvalidParams(
                    "complement-closed split needs n = 2k and L = [1,k-1]".into(),
                ));
            }
            if seed.n() != n || seed.k() != k {
                return Err(Error::MismatchedParams(n, k, seed.n(), seed.k()));
            }
            let full = full_mask(n);
            let closed = SetFamily::new(
                n,
                k,
                seed.masks().iter().flat_map(|&m| [m, !m & full]),
            )?;
            let b = closed.complement_family()?;
            if closed.is_empty() || b.is_empty() {
                return Err(Error::InvalidParams(
                    "complement-closed split needs a nonempty proper closure".into(),
                ));
            }
            Ok((closed, b))
        }
    }
}

/// r-1 copies of {`[k]`} plus {A : |A ∩ `[k]`| in L}; needs k in L.
pub fn construct_pairwise_extremal(n: u32, k: u32, r: usize, l: &LSpec) -> Result<FamilyTuple> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    if !l.contains(k) {
        return Err(Error::InvalidParams(
            "identical singleton families force k in L".into(),
        ));
    }
    let head = SetFamily::new(n, k, [prefix_mask(k)])?;
    let tail = meets_prefix_in(n, k, l)?;
    let mut families = vec![head; r - 1];
    families.push(tail);
    FamilyTuple::new(families)
}

/// A_1 = {`[k]`}; A_2 = {A : |A ∩ `[k]`| <= s-1, `[l]` ⊆ A}; A_3..A_r = {A : `[l]` ⊆ A}.
/// The tuple is r-cross `[l, s-1]`-intersecting by construction.
pub fn construct_rcross_extremal(n: u32, k: u32, r: usize, ell: u32, s: u32) -> Result<FamilyTuple> {
    if r < 2 || ell > k || s == 0 || s > k || ell >= s {
        return Err(Error::InvalidParams(format!(
            "need r >= 2 and 0 <= l < s <= k, got r={r} l={ell} s={s} k={k}"
        )));
    }
    let lead = prefix_mask(ell);
    let head = SetFamily::new(n, k, [prefix_mask(k)])?;
    let second = SetFamily::new(
        n,
        k,
        combinations(n, k)
            .filter(|m| m & lead == lead && (m & prefix_mask(k)).count_ones() < s),
    )?;
    let mut families = vec![head, second];
    if r > 2 {
        let rest = SetFamily::new(n, k, combinations(n, k).filter(|m| m & lead == lead))?;
        families.extend(std::iter::repeat_n(rest, r - 2));
    }
    FamilyTuple::new(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{is_cross_l, is_pairwise_cross_l, is_rcross_l};

    fn l(spec: &str, k: u32) -> LSpec {
        LSpec::parse(spec, k).unwrap()
    }

    #[test]
    fn star_pair_example() {
        let ls = l("0,2", 2);
        let (a, b) = construct_cross2_extremal(5, 2, &ls, &Cross2Variant::StarPair).unwrap();
        assert_eq!(a.sets(), vec![vec![1, 2]]);
        assert_eq!(
            b.sets(),
            vec![vec![1, 2], vec![3, 4], vec![3, 5], vec![4, 5]]
        );
        assert_eq!(a.len() + b.len(), 5);
        assert!(is_cross_l(&a, &b, &ls).unwrap());
    }

    #[test]
    fn pair_middle_example() {
        let ls = l("1", 2);
        let (a, b) = construct_cross2_extremal(4, 2, &ls, &Cross2Variant::PairMiddle).unwrap();
        assert_eq!(a.sets(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(b.len(), 4);
        assert_eq!(a.len() + b.len(), 6);
        assert!(is_cross_l(&a, &b, &ls).unwrap());
    }

    #[test]
    fn subcube_example() {
        let ls = l("3,4", 4);
        let (a, b) = construct_cross2_extremal(6, 4, &ls, &Cross2Variant::Subcube).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(a.masks().iter().all(|m| m & (1 << 5) == 0));
        assert!(is_cross_l(&a, &b, &ls).unwrap());
    }

    #[test]
    fn star_star_rejects_bad_params() {
        assert!(construct_cross2_extremal(6, 3, &l("1,2", 3), &Cross2Variant::StarStar).is_err());
        assert!(construct_cross2_extremal(6, 2, &l("1", 2), &Cross2Variant::StarStar).is_err());
        let ls = l("1,2", 2);
        let (a, b) = construct_cross2_extremal(6, 2, &ls, &Cross2Variant::StarStar).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(is_cross_l(&a, &b, &ls).unwrap());
    }

    #[test]
    fn pairwise_examples() {
        let ls = l("0,2", 2);
        let t = construct_pairwise_extremal(6, 2, 3, &ls).unwrap();
        let sizes: Vec<usize> = t.families().iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![1, 1, 7]);
        assert!(is_pairwise_cross_l(&t, &ls).unwrap());

        let ls2 = l("2", 2);
        let t2 = construct_pairwise_extremal(5, 2, 2, &ls2).unwrap();
        assert_eq!(t2.total_size(), 2);
        assert!(is_pairwise_cross_l(&t2, &ls2).unwrap());

        assert!(construct_pairwise_extremal(6, 2, 3, &l("0,1", 2)).is_err());
    }

    #[test]
    fn rcross_examples() {
        let t = construct_rcross_extremal(5, 2, 2, 0, 1).unwrap();
        assert_eq!(t.total_size(), 4);
        assert!(is_rcross_l(&t, &l("0", 2)).unwrap());

        let t2 = construct_rcross_extremal(6, 2, 3, 1, 2).unwrap();
        let sizes: Vec<usize> = t2.families().iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![1, 4, 5]);
        assert_eq!(t2.total_size(), 10);
        assert!(is_rcross_l(&t2, &l("1", 2)).unwrap());

        assert!(construct_rcross_extremal(6, 2, 2, 2, 2).is_err());
    }
}
