//! Shared argument parsing: words, rational pools, and inline variety specs.

use std::collections::BTreeSet;

use epilat_core::antichain::RationalIndex;
use epilat_core::varieties::VarietyKind;
use epilat_core::words::Word;

use crate::Failure;

pub fn word(text: &str) -> Result<Word, Failure> {
    text.parse()
        .map_err(|e| Failure::Input(format!("bad word {text:?}: {e}")))
}

/// Pool syntax `a..b/d`: the rationals k/d lying in [a, b], for integer
/// bounds a ≤ b and positive denominator d (default 1).
pub fn pool(text: &str) -> Result<BTreeSet<RationalIndex>, Failure> {
    let bad = || Failure::Input(format!("bad pool {text:?}: expected a..b/d"));
    let (lo_str, rest) = text.split_once("..").ok_or_else(bad)?;
    let (hi_str, den_str) = match rest.split_once('/') {
        Some((h, d)) => (h, d),
        None => (rest, "1"),
    };
    let lo: i64 = lo_str.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi_str.trim().parse().map_err(|_| bad())?;
    let den: i64 = den_str.trim().parse().map_err(|_| bad())?;
    if den <= 0 || lo > hi {
        return Err(bad());
    }
    let mut out = BTreeSet::new();
    for k in lo * den..=hi * den {
        out.insert(RationalIndex::new(k, den).expect("positive denominator"));
    }
    Ok(out)
}

/// Inline variety spec `kind:n:xi`, e.g. `C:1:0` or `A:2:1/2`.
pub fn inline_spec(text: &str) -> Option<(VarietyKind, usize, RationalIndex)> {
    let mut parts = text.splitn(3, ':');
    let kind = match parts.next()? {
        "C" | "c" => VarietyKind::Chain,
        "A" | "a" => VarietyKind::Antichain,
        _ => return None,
    };
    let n: usize = parts.next()?.parse().ok()?;
    let xi: RationalIndex = parts.next()?.parse().ok()?;
    if n == 0 {
        return None;
    }
    Some((kind, n, xi))
}
