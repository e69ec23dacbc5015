//! Parameter-grid parsing for sweeps: "n=4..8,k=2..3,L=all,r=2..3".
//!
//! Value forms: a single integer, a range "a..b" (inclusive), or for L:
//! "all" (every nonempty subset of `[0,k]`), an interval "a..b", or an explicit
//! list with ';' separators ("0;2").

use crossl_core::error::Error;
use crossl_core::lspec::LSpec;

#[derive(Debug, Clone)]
pub struct GridPoint {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub l: LSpec,
}

#[derive(Debug, Clone)]
enum LChoice {
    All,
    Fixed(String),
}

pub fn parse_grid(spec: &str, mode: &str) -> Result<Vec<GridPoint>, Error> {
    let mut ns: Option<Vec<u32>> = None;
    let mut ks: Option<Vec<u32>> = None;
    let mut rs: Vec<u32> = vec![2];
    let mut lchoice = LChoice::All;

    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParams(format!("grid term {part:?} is not key=value")))?;
        match key.trim() {
            "n" => ns = Some(parse_int_range(value)?),
            "k" => ks = Some(parse_int_range(value)?),
            "r" => rs = parse_int_range(value)?,
            "L" => {
                lchoice = if value.trim().eq_ignore_ascii_case("all") {
                    LChoice::All
                } else {
                    LChoice::Fixed(value.trim().replace(';', ","))
                }
            }
            other => {
                return Err(Error::InvalidParams(format!("unknown grid key {other:?}")));
            }
        }
    }
    let ns = ns.ok_or_else(|| Error::InvalidParams("grid needs n=...".into()))?;
    let ks = ks.ok_or_else(|| Error::InvalidParams("grid needs k=...".into()))?;
    if mode == "cross2" {
        rs = vec![2];
    }

    let mut out = Vec::new();
    for &n in &ns {
        for &k in &ks {
            if k < 2 || k > n {
                continue;
            }
            let lspecs: Vec<LSpec> = match &lchoice {
                LChoice::All => (1..(1u64 << (k + 1)))
                    .map(|bits| LSpec::from_bits(bits, k).expect("enumerated bits are valid"))
                    .collect(),
                LChoice::Fixed(text) => vec![LSpec::parse(text, k)?],
            };
            for &r in &rs {
                for l in &lspecs {
                    out.push(GridPoint { n, k, r, l: *l });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParams("grid is empty".into()));
    }
    Ok(out)
}

fn parse_int_range(text: &str) -> Result<Vec<u32>, Error> {
    let t = text.trim();
    let bad = || Error::InvalidParams(format!("cannot parse range {text:?}"));
    if let Some((a, b)) = t.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![t.parse().map_err(|_| bad())?])
    }
}
