//! Closed-form evaluation of every maximum-sum bound, with the regime
//! classifier for the two-family problem and infeasibility detection.

use crate::binom::{binom_exact, BigCount};
use crate::construct::{
    complement_closed_applies, complement_split_applies, star_star_applies, subcube_applies,
};
use crate::error::{Error, Result};
use crate::lspec::LSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Which clause of the two-family theorem governs (n, k, L).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "CASE_I")]
    CaseI,
    #[serde(rename = "CASE_II")]
    CaseII,
    #[serde(rename = "CASE_III")]
    CaseIII,
    #[serde(rename = "INFEASIBLE")]
    Infeasible,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::CaseI => "CASE_I",
            Regime::CaseII => "CASE_II",
            Regime::CaseIII => "CASE_III",
            Regime::Infeasible => "INFEASIBLE",
        }
    }
}

fn check_instance(n: u32, k: u32, l: &LSpec) -> Result<()> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!("need n >= k >= 2, got n={n} k={k}")));
    }
    if l.k() != k {
        return Err(Error::InvalidParams(format!(
            "L is over [0,{}] but k={k}",
            l.k()
        )));
    }
    Ok(())
}

/// Exactly one clause fires per instance. When n >= 2k the forced window
/// `[2k-n, k]` is all of `[0, k]`, so the full-L clause and the window clause agree;
/// the full-L (CASE_I) reading takes precedence over the self-reflection clause.
pub fn classify_regime(n: u32, k: u32, l: &LSpec) -> Result<Regime> {
    check_instance(n, k, l)?;
    if n < 2 * k {
        let lo = 2 * k - n;
        let meets = (lo..=k).any(|i| l.contains(i));
        if !meets {
            return Ok(Regime::Infeasible);
        }
        let covers = (lo..=k).all(|i| l.contains(i));
        if covers {
            return Ok(Regime::CaseI);
        }
        return Ok(Regime::CaseII);
    }
    if l.is_full() {
        return Ok(Regime::CaseI);
    }
    if n == 2 * k && l.reflect() == *l {
        return Ok(Regime::CaseIII);
    }
    Ok(Regime::CaseII)
}

/// One addend C(k,i)·C(n-k,k-i) per allowed size i.
pub fn sum_terms(n: u32, k: u32, l: &LSpec) -> Vec<(u32, BigCount)> {
    l.sizes()
        .into_iter()
        .map(|i| {
            (
                i,
                binom_exact(k as u64, i as u64) * binom_exact((n - k) as u64, (k - i) as u64),
            )
        })
        .collect()
}

/// A fully evaluated bound with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    pub mode: String,
    pub n: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    pub regime: Regime,
    /// Decimal value, or "INFEASIBLE".
    pub value: String,
    pub asymptotic: bool,
    pub terms: Vec<(u32, String)>,
    pub extremal_classes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub count: Option<BigCount>,
}

impl BoundResult {
    pub fn is_infeasible(&self) -> bool {
        self.count.is_none()
    }
}

/// Maximum of |A| + |B| over nonempty cross-L-intersecting pairs.
pub fn bound_cross2(n: u32, k: u32, l: &LSpec) -> Result<BoundResult> {
    let regime = classify_regime(n, k, l)?;
    let terms = sum_terms(n, k, l);
    let sum: BigCount = terms.iter().map(|(_, t)| t.clone()).sum();
    let (count, classes): (Option<BigCount>, Vec<String>) = match regime {
        Regime::Infeasible => (None, vec![]),
        Regime::CaseI => (
            Some(BigCount::from(2u32) * binom_exact(n as u64, k as u64)),
            vec!["COMPLETE_BOTH".into()],
        ),
        Regime::CaseII => {
            let mut classes = vec!["STAR_PAIR".into()];
            if complement_split_applies(n, k, l) {
                classes.push("COMPLEMENT_SPLIT".into());
            }
            if star_star_applies(k, l) {
                classes.push("STAR_STAR".into());
            }
            if subcube_applies(n, k, l) {
                classes.push("SUBCUBE".into());
            }
            (Some(sum + BigCount::one()), classes)
        }
        Regime::CaseIII => {
            let mut classes = vec!["PAIR_MIDDLE".into()];
            if complement_closed_applies(k, l) {
                classes.push("COMPLEMENT_CLOSED".into());
            }
            (Some(sum + BigCount::from(2u32)), classes)
        }
    };
    Ok(BoundResult {
        mode: "cross2".into(),
        n,
        k,
        r: Some(2),
        l: l.sizes(),
        regime,
        value: count
            .as_ref()
            .map_or_else(|| "INFEASIBLE".into(), |v| v.to_string()),
        asymptotic: false,
        terms: terms.iter().map(|(i, t)| (*i, t.to_string())).collect(),
        extremal_classes: classes,
        warnings: vec![],
        count,
    })
}

/// Largest intersecting k-uniform family: C(n-1, k-1), for n >= 2k.
pub fn bound_ekr(n: u32, k: u32) -> Result<BigCount> {
    if n < 2 * k {
        return Err(Error::InvalidParams(format!("need n >= 2k, got n={n} k={k}")));
    }
    Ok(binom_exact((n - 1) as u64, (k - 1) as u64))
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalBound {
    pub numer: String,
    pub denom: String,
    pub floor: String,
    pub approx: f64,
    pub range_ok: bool,
}

/// Product bound for a single L-intersecting family: prod (n-l)/(k-l) over l in L.
/// Exact rational, reported with its floor. The stated validity range
/// n >= 2^k·k^3 is reported, not enforced.
pub fn bound_deza_erdos_frankl(n: u32, k: u32, l: &LSpec) -> Result<RationalBound> {
    check_instance(n, k, l)?;
    if l.contains(k) {
        return Err(Error::InvalidParams(
            "product bound needs k not in L (division by k - l)".into(),
        ));
    }
    let mut prod = BigRational::one();
    for li in l.sizes() {
        prod *= BigRational::new(BigInt::from(n - li), BigInt::from(k - li));
    }
    debug_assert!(!prod.is_negative());
    let floor = prod.floor().to_integer();
    let range_ok = {
        let needed = BigCount::from(2u32).pow(k) * BigCount::from(k as u64).pow(3);
        BigCount::from(n) >= needed
    };
    Ok(RationalBound {
        numer: prod.numer().to_string(),
        denom: prod.denom().to_string(),
        floor: floor.to_string(),
        approx: prod.to_f64().unwrap_or(f64::NAN),
        range_ok,
    })
}

/// Cross t-intersecting over mixed uniformities a, b:
/// C(n,b) - sum_{i<t} C(a,i)·C(n-a,b-i) + 1. Side conditions are warnings.
pub fn bound_wang_zhang(n: u32, a: u32, b: u32, t: u32) -> (BigCount, Vec<String>) {
    let mut warnings = Vec::new();
    if n < 4 {
        warnings.push("stated range needs n >= 4".into());
    }
    if a < 2 || b < 2 {
        warnings.push("stated range needs a, b >= 2".into());
    }
    if t >= a.min(b) {
        warnings.push("stated range needs t < min{a, b}".into());
    }
    if a + b >= n + t {
        warnings.push("stated range needs a + b < n + t".into());
    }
    if (n, t) == (a + b, 1) {
        warnings.push("stated range excludes (n, t) = (a+b, 1)".into());
    }
    if binom_exact(n as u64, a as u64) > binom_exact(n as u64, b as u64) {
        warnings.push("stated range needs C(n,a) <= C(n,b)".into());
    }
    let mut removed = BigCount::zero();
    for i in 0..t {
        removed += binom_exact(a as u64, i as u64)
            * binom_exact((n - a) as u64, (b - i) as u64);
    }
    let value = binom_exact(n as u64, b as u64) - removed + BigCount::one();
    (value, warnings)
}

/// Which side of a two-branch maximum wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MaxBranch {
    #[serde(rename = "hilton_milner")]
    HiltonMilner,
    #[serde(rename = "star")]
    Star,
    #[serde(rename = "tie")]
    Tie,
}

fn pick(hm: BigCount, star: BigCount) -> (BigCount, MaxBranch) {
    match hm.cmp(&star) {
        std::cmp::Ordering::Greater => (hm, MaxBranch::HiltonMilner),
        std::cmp::Ordering::Less => (star, MaxBranch::Star),
        std::cmp::Ordering::Equal => (hm, MaxBranch::Tie),
    }
}

/// Pairwise cross-intersecting (L = `[1,k]`):
/// max{C(n,k) - C(n-k,k) + r - 1, r·C(n-1,k-1)}, for n >= 2k.
pub fn bound_pairwise_cross_intersecting(n: u32, k: u32, r: u32) -> Result<(BigCount, MaxBranch)> {
    if n < 2 * k || r < 2 {
        return Err(Error::InvalidParams(format!(
            "need n >= 2k and r >= 2, got n={n} k={k} r={r}"
        )));
    }
    let hm = binom_exact(n as u64, k as u64) - binom_exact((n - k) as u64, k as u64)
        + BigCount::from(r - 1);
    let star = BigCount::from(r) * binom_exact((n - 1) as u64, (k - 1) as u64);
    Ok(pick(hm, star))
}

/// M(n,k,t): the maximum size of a t-intersecting k-uniform family on `[n]`,
/// via the complete-intersection maximum over window extensions.
pub fn max_t_intersecting(n: u32, k: u32, t: u32) -> BigCount {
    let mut best = BigCount::zero();
    for i in 0..=(k - t) {
        let w = t + 2 * i;
        if w > n {
            break;
        }
        let mut size = BigCount::zero();
        for j in (t + i)..=k {
            size += binom_exact(w as u64, j as u64)
                * binom_exact((n - w) as u64, (k - j) as u64);
        }
        if size > best {
            best = size;
        }
    }
    best
}

/// Pairwise cross t-intersecting:
/// max{C(n,k) - sum_{i<t} C(k,i)C(n-k,k-i) + r - 1, r·M(n,k,t)}.
pub fn bound_pairwise_t(n: u32, k: u32, t: u32, r: u32) -> Result<(BigCount, MaxBranch)> {
    if !(t >= 1 && k > t && r >= 2 && n + t > 2 * k) {
        return Err(Error::InvalidParams(format!(
            "need n >= 2k-t+1, k > t >= 1, r >= 2, got n={n} k={k} t={t} r={r}"
        )));
    }
    let mut removed = BigCount::zero();
    for i in 0..t {
        removed += binom_exact(k as u64, i as u64)
            * binom_exact((n - k) as u64, (k - i) as u64);
    }
    let hm = binom_exact(n as u64, k as u64) - removed + BigCount::from(r - 1);
    let star = BigCount::from(r) * max_t_intersecting(n, k, t);
    Ok(pick(hm, star))
}

/// Case dispatch for the pairwise cross-L maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairwiseCase {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "interval_to_k")]
    IntervalToK,
    #[serde(rename = "below_k")]
    BelowK,
    #[serde(rename = "contains_k_non_interval")]
    ContainsKNonInterval,
}

/// Pairwise cross L-intersecting maximum for the supported L shapes.
/// Values other than L = `[0,k]` hold for sufficiently large n and carry the
/// asymptotic flag. Unsupported L shapes are first-class errors, never guesses.
pub fn bound_pairwise_l(n: u32, k: u32, r: u32, l: &LSpec) -> Result<BoundResult> {
    check_instance(n, k, l)?;
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let (case, count, asymptotic): (PairwiseCase, BigCount, bool) = if l.is_full() {
        (
            PairwiseCase::Full,
            BigCount::from(r) * binom_exact(n as u64, k as u64),
            false,
        )
    } else if l.contains(k) {
        match l.as_interval() {
            Some((t, _)) => {
                // L = [t, k] with t >= 1: HM-type branch vs r·C(n-t, k-t).
                let mut removed = BigCount::zero();
                for i in 0..t {
                    removed += binom_exact(k as u64, i as u64)
                        * binom_exact((n - k) as u64, (k - i) as u64);
                }
                let hm = binom_exact(n as u64, k as u64) - removed + BigCount::from(r - 1);
                let star =
                    BigCount::from(r) * binom_exact((n - t) as u64, (k - t) as u64);
                (PairwiseCase::IntervalToK, hm.max(star), true)
            }
            None => {
                let sum: BigCount = sum_terms(n, k, l).into_iter().map(|(_, t)| t).sum();
                (
                    PairwiseCase::ContainsKNonInterval,
                    sum + BigCount::from(r - 1),
                    true,
                )
            }
        }
    } else if l.as_interval() == Some((0, k - 1)) {
        (
            PairwiseCase::BelowK,
            binom_exact(n as u64, k as u64),
            true,
        )
    } else {
        return Err(Error::UnsupportedL(format!(
            "no proven pairwise bound for L={l} (open problem territory)"
        )));
    };
    let classes = match case {
        PairwiseCase::Full => vec!["COMPLETE_ALL".into()],
        PairwiseCase::ContainsKNonInterval => vec!["SINGLETONS_PLUS_STAR_L".into()],
        PairwiseCase::BelowK => vec!["DISJOINT_COVER".into()],
        PairwiseCase::IntervalToK => vec![],
    };
    let terms = sum_terms(n, k, l);
    Ok(BoundResult {
        mode: "pairwise".into(),
        n,
        k,
        r: Some(r),
        l: l.sizes(),
        regime: Regime::CaseII,
        value: count.to_string(),
        asymptotic,
        terms: terms.iter().map(|(i, t)| (*i, t.to_string())).collect(),
        extremal_classes: classes,
        warnings: vec![],
        count: Some(count),
    })
}

/// r-cross t-intersecting maximum:
/// max over m in `[t,k]` of sum_{i=t}^{k} C(m,i)C(n-m,k-i) + (r-1)C(n-m,k-m).
/// Ties break to the smallest m.
pub fn bound_rcross_t(n: u32, k: u32, t: u32, r: u32) -> Result<(BigCount, u32)> {
    if !(t >= 1 && t <= k && r >= 2 && n + t >= 2 * k && n >= k) {
        return Err(Error::InvalidParams(format!(
            "need n >= 2k-t, 1 <= t <= k, r >= 2, got n={n} k={k} t={t} r={r}"
        )));
    }
    let mut best: Option<(BigCount, u32)> = None;
    for m in t..=k {
        let mut v = BigCount::zero();
        for i in t..=k {
            v += binom_exact(m as u64, i as u64)
                * binom_exact((n - m) as u64, (k - i) as u64);
        }
        v += BigCount::from(r - 1) * binom_exact((n - m) as u64, (k - m) as u64);
        match &best {
            Some((b, _)) if v <= *b => {}
            _ => best = Some((v, m)),
        }
    }
    Ok(best.expect("m range [t,k] is nonempty"))
}

/// r-cross `[l, s-1]`-intersecting maximum (asymptotic in n):
/// (r-1)·C(n-l,k-l) - sum_{i=s-l}^{k-l} C(k-l,i)·C(n-k,k-l-i) + 1.
pub fn bound_rcross_interval(n: u32, k: u32, r: u32, ell: u32, s: u32) -> Result<BigCount> {
    if !(r >= 2 && ell < s && s <= k && n >= k) {
        return Err(Error::InvalidParams(format!(
            "need r >= 2 and 0 <= l < s <= k <= n, got n={n} k={k} r={r} l={ell} s={s}"
        )));
    }
    let mut removed = BigCount::zero();
    for i in (s - ell)..=(k - ell) {
        removed += binom_exact((k - ell) as u64, i as u64)
            * binom_exact((n - k) as u64, (k - ell - i) as u64);
    }
    let lead = BigCount::from(r - 1) * binom_exact((n - ell) as u64, (k - ell) as u64);
    Ok(lead - removed + BigCount::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(spec: &str, k: u32) -> LSpec {
        LSpec::parse(spec, k).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(6, 2, &l("1,2", 2)).unwrap(), Regime::CaseII);
        assert_eq!(classify_regime(4, 2, &l("1", 2)).unwrap(), Regime::CaseIII);
        assert_eq!(classify_regime(3, 2, &l("0", 2)).unwrap(), Regime::Infeasible);
        assert_eq!(classify_regime(4, 2, &l("all", 2)).unwrap(), Regime::CaseI);
        assert_eq!(classify_regime(3, 2, &l("1,2", 2)).unwrap(), Regime::CaseI);
        assert_eq!(classify_regime(3, 2, &l("0,2", 2)).unwrap(), Regime::CaseII);
    }

    #[test]
    fn cross2_values() {
        assert_eq!(bound_cross2(6, 2, &l("1,2", 2)).unwrap().count, Some(big(10)));
        assert_eq!(bound_cross2(4, 2, &l("1", 2)).unwrap().count, Some(big(6)));
        assert_eq!(bound_cross2(4, 2, &l("all", 2)).unwrap().count, Some(big(12)));
        assert!(bound_cross2(3, 2, &l("0", 2)).unwrap().is_infeasible());
    }

    #[test]
    fn cross2_term_consistency() {
        for (nn, kk, spec, constant) in [(6u32, 2u32, "1,2", 1u64), (4, 2, "1", 2)] {
            let b = bound_cross2(nn, kk, &l(spec, kk)).unwrap();
            let sum: BigCount = b
                .terms
                .iter()
                .map(|(_, t)| t.parse::<BigCount>().unwrap())
                .sum();
            assert_eq!(sum + big(constant), b.count.clone().unwrap());
        }
    }

    #[test]
    fn ekr_values() {
        assert_eq!(bound_ekr(6, 2).unwrap(), big(5));
        assert_eq!(bound_ekr(6, 3).unwrap(), big(10));
        assert_eq!(bound_ekr(4, 2).unwrap(), big(3));
        assert!(bound_ekr(5, 3).is_err());
    }

    #[test]
    fn product_bound() {
        let b = bound_deza_erdos_frankl(10, 3, &l("1", 3)).unwrap();
        assert_eq!((b.numer.as_str(), b.denom.as_str(), b.floor.as_str()), ("9", "2", "4"));
        let b2 = bound_deza_erdos_frankl(10, 3, &l("0,1", 3)).unwrap();
        assert_eq!(b2.approx, 15.0);
        assert!(bound_deza_erdos_frankl(10, 3, &l("1,3", 3)).is_err());
    }

    #[test]
    fn wang_zhang_values() {
        assert_eq!(bound_wang_zhang(6, 2, 3, 1).0, big(17));
        assert_eq!(bound_wang_zhang(7, 2, 3, 1).0, big(26));
        // C(6,2) - C(2,0)C(4,2) + 1 = 15 - 6 + 1.
        assert_eq!(bound_wang_zhang(6, 2, 2, 1).0, big(10));
    }

    #[test]
    fn pairwise_cross_intersecting_values() {
        let (v, br) = bound_pairwise_cross_intersecting(6, 2, 3).unwrap();
        assert_eq!((v, br), (big(15), MaxBranch::Star));
        let (v, br) = bound_pairwise_cross_intersecting(9, 2, 2).unwrap();
        assert_eq!((v, br), (big(16), MaxBranch::Tie));
        let (v, br) = bound_pairwise_cross_intersecting(20, 3, 2).unwrap();
        assert_eq!((v, br), (big(461), MaxBranch::HiltonMilner));
    }

    #[test]
    fn pairwise_t_values() {
        assert_eq!(bound_pairwise_t(7, 3, 1, 2).unwrap().0, big(32));
        assert_eq!(bound_pairwise_t(6, 2, 1, 2).unwrap().0, big(10));
        assert_eq!(bound_pairwise_t(5, 2, 1, 3).unwrap().0, big(12));
    }

    #[test]
    fn max_t_intersecting_values() {
        assert_eq!(max_t_intersecting(7, 3, 1), big(15));
        assert_eq!(max_t_intersecting(5, 2, 1), big(4));
        assert_eq!(max_t_intersecting(6, 2, 1), big(5));
    }

    #[test]
    fn pairwise_l_cases() {
        let b = bound_pairwise_l(6, 2, 3, &l("0,2", 2)).unwrap();
        assert_eq!(b.count, Some(big(9)));
        assert!(b.asymptotic);

        let b = bound_pairwise_l(6, 2, 3, &l("all", 2)).unwrap();
        assert_eq!(b.count, Some(big(45)));
        assert!(!b.asymptotic);

        match bound_pairwise_l(6, 2, 3, &l("0", 2)) {
            Err(Error::UnsupportedL(_)) => {}
            other => panic!("expected UnsupportedL, got {other:?}"),
        }
    }

    #[test]
    fn rcross_t_values() {
        assert_eq!(bound_rcross_t(6, 2, 1, 2).unwrap(), (big(10), 1));
        // (8,3,1,2): evaluate all m by hand.
        // m=1: C(1,1)C(7,2) + C(7,2) = 21 + 21 = 42
        // m=2: [C(2,1)C(6,2) + C(2,2)C(6,1)] + C(6,1) = 36 + 6 = 42
        // m=3: [C(3,1)C(5,2) + C(3,2)C(5,1) + 1] + C(5,0) = 46 + 1 = 47
        assert_eq!(bound_rcross_t(8, 3, 1, 2).unwrap(), (big(47), 3));
        // Degenerate t=k sweep collapses to r at m=k.
        assert_eq!(bound_rcross_t(7, 3, 3, 4).unwrap(), (big(4), 3));
    }

    #[test]
    fn rcross_interval_values() {
        assert_eq!(bound_rcross_interval(5, 2, 2, 0, 1).unwrap(), big(4));
        assert_eq!(bound_rcross_interval(6, 2, 3, 1, 2).unwrap(), big(10));
        // L = {k-1} simplifies to (r-1)(n-k+1).
        for n in 6..=12u32 {
            for r in 2..=4u32 {
                let k = 3;
                assert_eq!(
                    bound_rcross_interval(n, k, r, k - 1, k).unwrap(),
                    big(((r - 1) * (n - k + 1)) as u64)
                );
            }
        }
    }

    #[test]
    fn reflection_symmetry_at_2k() {
        for k in 2..=4u32 {
            let n = 2 * k;
            for bits in 1..(1u64 << (k + 1)) {
                let ls = LSpec::from_bits(bits, k).unwrap();
                let a = bound_cross2(n, k, &ls).unwrap();
                let b = bound_cross2(n, k, &ls.reflect()).unwrap();
                assert_eq!(a.count, b.count, "k={k} L={ls}");
            }
        }
    }

    #[test]
    fn sigma_monotone_in_l() {
        for (nn, kk) in [(6u32, 2u32), (7, 3), (5, 3)] {
            for bits in 1..(1u64 << (kk + 1)) {
                for extra in 0..=kk {
                    let l1 = LSpec::from_bits(bits, kk).unwrap();
                    let l2 = LSpec::from_bits(bits | (1 << extra), kk).unwrap();
                    let s1: BigCount = sum_terms(nn, kk, &l1).into_iter().map(|(_, t)| t).sum();
                    let s2: BigCount = sum_terms(nn, kk, &l2).into_iter().map(|(_, t)| t).sum();
                    assert!(s1 <= s2);
                }
            }
        }
    }
}
