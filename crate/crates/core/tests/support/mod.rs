//! Shared test support: a brute-force applicability oracle independent of
//! the backtracking matcher.

// each test binary compiles this module separately and uses a different
// subset of it
#![allow(dead_code)]

use epilat_core::words::{Letter, Word};

/// All distinct non-empty factors of `v`, shortest first.
pub fn all_factors(v: &Word) -> Vec<Vec<Letter>> {
    let s = v.letters();
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for len in 1..=s.len() {
        for start in 0..=s.len() - len {
            let f = s[start..start + len].to_vec();
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out
}

fn contains_slice(haystack: &[Letter], needle: &[Letter]) -> bool {
    haystack.windows(needle.len()).any(|w| w == needle)
}

/// Decides applicability by direct substitution enumeration. Every image of
/// a successful substitution occurs inside the target, so assigning every
/// tuple of target factors to the pattern's distinct letters (pruned by
/// total image length) covers all substitutions with image lengths bounded
/// by the target length.
pub fn oracle_applicable(pattern: &Word, target: &Word) -> bool {
    if pattern.len() > target.len() {
        return false;
    }
    let distinct = pattern.distinct_letters();
    let counts: Vec<usize> = distinct
        .iter()
        .map(|d| pattern.letters().iter().filter(|&l| l == d).count())
        .collect();
    let factors = all_factors(target);
    let mut images: Vec<usize> = Vec::with_capacity(distinct.len());
    assign(
        pattern,
        target,
        &counts,
        &factors,
        &mut images,
        pattern.len(),
    )
}

fn assign(
    pattern: &Word,
    target: &Word,
    counts: &[usize],
    factors: &[Vec<Letter>],
    images: &mut Vec<usize>,
    min_total: usize,
) -> bool {
    if images.len() == counts.len() {
        let distinct = pattern.distinct_letters();
        let mut built: Vec<Letter> = Vec::new();
        for l in pattern.letters() {
            let slot = distinct.iter().position(|d| d == l).unwrap();
            built.extend_from_slice(&factors[images[slot]]);
        }
        return contains_slice(target.letters(), &built);
    }
    let slot = images.len();
    for (fi, f) in factors.iter().enumerate() {
        // total length if this factor is chosen and every unassigned letter
        // gets a single-letter image
        let total = min_total + (f.len() - 1) * counts[slot];
        if total > target.len() {
            continue;
        }
        images.push(fi);
        if assign(pattern, target, counts, factors, images, total) {
            images.pop();
            return true;
        }
        images.pop();
    }
    false
}

/// Restricted growth strings of length 1..=max_len over at most
/// `max_classes` classes, rendered as words over the letters x, y, z.
pub fn canonical_patterns(max_len: usize, max_classes: usize) -> Vec<Word> {
    fn rec(
        prefix: &mut Vec<usize>,
        max_used: usize,
        max_len: usize,
        max_classes: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        let cap = (max_used + 1).min(max_classes - 1);
        for c in 0..=cap {
            prefix.push(c);
            rec(prefix, max_used.max(c), max_len, max_classes, out);
            prefix.pop();
        }
    }
    let mut strings = Vec::new();
    let mut prefix = vec![0];
    rec(&mut prefix, 0, max_len, max_classes, &mut strings);
    strings
        .into_iter()
        .map(|s| Word::from_ids(s.into_iter().map(|c| 23 + c as u32)).unwrap())
        .collect()
}

/// All words over the first `alphabet` letters with length 1..=max_len, in
/// length-lex order.
pub fn all_words(alphabet: u32, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &level {
            for id in 0..alphabet {
                let mut cand = base.clone();
                cand.push(id);
                next.push(cand);
            }
        }
        for ids in &next {
            out.push(Word::from_ids(ids.iter().copied()).unwrap());
        }
        level = next;
    }
    out
}
