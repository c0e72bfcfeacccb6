//! Letters, words, substitutions, and the applicability quasi-order.
//!
//! A word `u` is *applicable* to a word `v` when `v = a·ξ(u)·b` for some
//! substitution ξ sending every letter of `u` to a non-empty word (`a`, `b`
//! possibly empty). [`is_applicable`] decides this exactly by bounded
//! backtracking; [`contains_square`] is the special case of the pattern `xx`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A letter of the countable alphabet, identified by a non-negative integer.
///
/// Ids `0..=25` have the display names `a..=z`; larger ids have no name and
/// words containing them render as comma-separated id lists.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(id: u32) -> Self {
        Letter(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// Single-char display name for small ids, `None` for ids above `z`.
    pub fn display_char(self) -> Option<char> {
        if self.0 < 26 {
            Some((b'a' + self.0 as u8) as char)
        } else {
            None
        }
    }

    /// The letter named by a lowercase ASCII char.
    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter(c as u32 - 'a' as u32))
        } else {
            None
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.display_char() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.0),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("words must be non-empty")]
    Empty,
    #[error("cannot parse word from {0:?}")]
    Parse(String),
    #[error("substitution has no image for letter {0}")]
    MissingLetter(Letter),
}

/// A finite non-empty sequence of letters. Equality is letter-sequence
/// equality; there is no empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            Err(WordError::Empty)
        } else {
            Ok(Word(letters))
        }
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self, WordError> {
        Word::new(ids.into_iter().map(Letter::new).collect())
    }

    /// The one-letter word.
    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// `l` repeated `n` times; `n` must be positive.
    pub fn letter_power(l: Letter, n: usize) -> Result<Self, WordError> {
        Word::new(vec![l; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first_letter(&self) -> Letter {
        self.0[0]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The factor `self[start..end]`, if the range is valid and non-empty.
    pub fn factor(&self, start: usize, end: usize) -> Option<Word> {
        if start < end && end <= self.len() {
            Some(Word(self.0[start..end].to_vec()))
        } else {
            None
        }
    }

    /// Distinct letters in order of first occurrence.
    pub fn distinct_letters(&self) -> Vec<Letter> {
        let mut seen = Vec::new();
        for &l in &self.0 {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        seen
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|l| l.display_char().is_some()) {
            for l in &self.0 {
                write!(f, "{}", l.display_char().unwrap())?;
            }
            Ok(())
        } else {
            let ids: Vec<String> = self.0.iter().map(|l| l.id().to_string()).collect();
            write!(f, "{}", ids.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts a string of single-char letter names (`"abcab"`) or a
    /// comma-separated list of letter ids (`"0,1,23"`).
    fn from_str(s: &str) -> Result<Self, WordError> {
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        if s.chars().all(|c| c.is_ascii_lowercase()) {
            return Word::new(s.chars().filter_map(Letter::from_char).collect());
        }
        if s.chars().all(|c| c.is_ascii_digit() || c == ',') {
            let mut ids = Vec::new();
            for part in s.split(',') {
                let id: u32 = part.parse().map_err(|_| WordError::Parse(s.to_string()))?;
                ids.push(id);
            }
            return Word::from_ids(ids);
        }
        Err(WordError::Parse(s.to_string()))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite letter-to-word map with non-empty images, applied to words
/// multiplicatively.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<Letter, Word>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Letter, Word)>>(pairs: I) -> Self {
        Substitution {
            map: pairs.into_iter().collect(),
        }
    }

    /// Maps every letter of `w` to itself.
    pub fn identity_on(w: &Word) -> Self {
        Substitution {
            map: w
                .distinct_letters()
                .into_iter()
                .map(|l| (l, Word::letter(l)))
                .collect(),
        }
    }

    pub fn insert(&mut self, l: Letter, image: Word) {
        self.map.insert(l, image);
    }

    pub fn image(&self, l: Letter) -> Option<&Word> {
        self.map.get(&l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Word)> {
        self.map.iter()
    }

    /// Image of `u`: the images of `u`'s letters concatenated in order.
    pub fn apply(&self, u: &Word) -> Result<Word, WordError> {
        let mut out = Vec::with_capacity(u.len());
        for &l in u.letters() {
            let image = self.map.get(&l).ok_or(WordError::MissingLetter(l))?;
            out.extend_from_slice(image.letters());
        }
        Ok(Word(out))
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.map.len()))?;
        for (l, w) in &self.map {
            map.serialize_entry(&l.to_string(), &w.to_string())?;
        }
        map.end()
    }
}

/// See [`Substitution::apply`].
pub fn apply_substitution(s: &Substitution, u: &Word) -> Result<Word, WordError> {
    s.apply(u)
}

/// True iff `u` occurs as a contiguous factor of `v`.
pub fn is_factor(u: &Word, v: &Word) -> bool {
    v.letters().windows(u.len()).any(|w| w == u.letters())
}

/// Evidence that a pattern maps onto `target[start..end]`.
#[derive(Clone, Debug, Serialize)]
pub struct ApplicabilityWitness {
    pub substitution: Substitution,
    pub start: usize,
    pub end: usize,
}

impl ApplicabilityWitness {
    /// Re-checks the witness: applying the substitution to `pattern` must
    /// reproduce exactly `target[start..end]`.
    pub fn verify(&self, pattern: &Word, target: &Word) -> bool {
        match (
            self.substitution.apply(pattern),
            target.factor(self.start, self.end),
        ) {
            (Ok(image), Some(factor)) => image == factor,
            _ => false,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("applicability search exceeded the budget of {budget} nodes")]
pub struct BudgetExceeded {
    pub budget: u64,
}

/// Decides applicability of `pattern` to `target` exactly.
///
/// Every returned witness satisfies [`ApplicabilityWitness::verify`]. A
/// substitution instance inside `target` has total length at most
/// `target.len()`, so each image length is bounded and the search is finite.
pub fn is_applicable(pattern: &Word, target: &Word) -> Option<ApplicabilityWitness> {
    search(pattern, target, None).expect("unbudgeted search cannot exceed a budget")
}

/// [`is_applicable`] with an explicit search-node budget. Exceeding the
/// budget is an error distinct from a "no" answer.
pub fn is_applicable_within(
    pattern: &Word,
    target: &Word,
    budget: u64,
) -> Result<Option<ApplicabilityWitness>, BudgetExceeded> {
    search(pattern, target, Some(budget))
}

struct Matcher<'a> {
    pattern: &'a [Letter],
    target: &'a [Letter],
    /// pattern position -> slot of its (distinct) letter
    slots: Vec<usize>,
    /// slot -> bound image as a (start, len) range of `target`
    bindings: Vec<Option<(usize, usize)>>,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Word, target: &'a Word, budget: Option<u64>) -> Self {
        let distinct = pattern.distinct_letters();
        let slots = pattern
            .letters()
            .iter()
            .map(|l| distinct.iter().position(|d| d == l).unwrap())
            .collect();
        Matcher {
            pattern: pattern.letters(),
            target: target.letters(),
            slots,
            bindings: vec![None; distinct.len()],
            nodes: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    /// Leftmost pattern position first, shortest image first; a repeated
    /// letter's image is fixed at its first binding.
    fn match_from(&mut self, i: usize, p: usize) -> Result<Option<usize>, BudgetExceeded> {
        self.tick()?;
        if i == self.pattern.len() {
            return Ok(Some(p));
        }
        let slot = self.slots[i];
        if let Some((s, len)) = self.bindings[slot] {
            if p + len <= self.target.len() && self.target[s..s + len] == self.target[p..p + len] {
                return self.match_from(i + 1, p + len);
            }
            return Ok(None);
        }
        // Remaining-length feasibility: every later position needs at least
        // its bound image length, or one letter if unbound.
        let min_rest: usize = (i + 1..self.pattern.len())
            .map(|j| self.bindings[self.slots[j]].map_or(1, |(_, l)| l))
            .sum();
        let avail = self.target.len() - p;
        if avail < 1 + min_rest {
            return Ok(None);
        }
        let max_len = avail - min_rest;
        for len in 1..=max_len {
            self.bindings[slot] = Some((p, len));
            if let Some(end) = self.match_from(i + 1, p + len)? {
                return Ok(Some(end));
            }
        }
        self.bindings[slot] = None;
        Ok(None)
    }

    fn witness(&self, pattern: &Word, start: usize, end: usize) -> ApplicabilityWitness {
        let mut substitution = Substitution::new();
        for (slot, &l) in pattern.distinct_letters().iter().enumerate() {
            let (s, len) = self.bindings[slot].expect("every pattern letter is bound on success");
            let image = Word(self.target[s..s + len].to_vec());
            substitution.insert(l, image);
        }
        ApplicabilityWitness {
            substitution,
            start,
            end,
        }
    }
}

fn search(
    pattern: &Word,
    target: &Word,
    budget: Option<u64>,
) -> Result<Option<ApplicabilityWitness>, BudgetExceeded> {
    if pattern.len() > target.len() {
        return Ok(None);
    }
    let mut m = Matcher::new(pattern, target, budget);
    for start in 0..=(target.len() - pattern.len()) {
        m.bindings.iter_mut().for_each(|b| *b = None);
        if let Some(end) = m.match_from(0, start)? {
            let witness = m.witness(pattern, start, end);
            debug_assert!(witness.verify(pattern, target));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// A factor of the form `tt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub position: usize,
    pub root: Word,
}

/// First square factor of `w` (leftmost position, then shortest root), or
/// `None` if `w` is square-free. Agrees with `is_applicable(xx, w)` on the
/// yes/no answer.
pub fn contains_square(w: &Word) -> Option<SquareWitness> {
    let s = w.letters();
    for i in 0..s.len() {
        for r in 1..=(s.len() - i) / 2 {
            if s[i..i + r] == s[i + r..i + 2 * r] {
                return Some(SquareWitness {
                    position: i,
                    root: Word(s[i..i + r].to_vec()),
                });
            }
        }
    }
    None
}

/// All square-free words over the first `alphabet_size` letters with length
/// at most `max_length`, in length-then-lexicographic order.
pub fn enumerate_square_free(alphabet_size: u32, max_length: usize) -> SquareFreeWords {
    let level = if max_length == 0 {
        Vec::new()
    } else {
        (0..alphabet_size).map(|id| vec![Letter(id)]).collect()
    };
    SquareFreeWords {
        alphabet_size,
        max_length,
        level,
        next_index: 0,
        level_length: 1,
    }
}

pub struct SquareFreeWords {
    alphabet_size: u32,
    max_length: usize,
    level: Vec<Vec<Letter>>,
    next_index: usize,
    level_length: usize,
}

impl SquareFreeWords {
    /// A square in an extension of a square-free word must end at the last
    /// position.
    fn suffix_square_free(w: &[Letter]) -> bool {
        let n = w.len();
        for r in 1..=n / 2 {
            if w[n - 2 * r..n - r] == w[n - r..n] {
                return false;
            }
        }
        true
    }
}

impl Iterator for SquareFreeWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.next_index < self.level.len() {
                let w = Word(self.level[self.next_index].clone());
                self.next_index += 1;
                return Some(w);
            }
            if self.level_length >= self.max_length || self.level.is_empty() {
                return None;
            }
            let mut next = Vec::new();
            for base in &self.level {
                for id in 0..self.alphabet_size {
                    let mut cand = base.clone();
                    cand.push(Letter(id));
                    if Self::suffix_square_free(&cand) {
                        next.push(cand);
                    }
                }
            }
            self.level = next;
            self.next_index = 0;
            self.level_length += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_rejects_empty() {
        assert_eq!(Word::new(vec![]), Err(WordError::Empty));
        assert_eq!("".parse::<Word>(), Err(WordError::Empty));
    }

    #[test]
    fn word_text_roundtrip() {
        assert_eq!(w("abcab").to_string(), "abcab");
        assert_eq!(w("0,1,23").to_string(), "abx");
        let big = Word::from_ids([5, 700]).unwrap();
        assert_eq!(big.to_string(), "5,700");
        assert_eq!("5,700".parse::<Word>().unwrap(), big);
    }

    #[test]
    fn apply_substitution_examples() {
        // s={x↦ab, y↦c}, u=xyx → abcab
        let s = Substitution::from_pairs([
            (Letter::from_char('x').unwrap(), w("ab")),
            (Letter::from_char('y').unwrap(), w("c")),
        ]);
        assert_eq!(s.apply(&w("xyx")).unwrap(), w("abcab"));

        // identity substitution
        let target = w("abcab");
        let id = Substitution::identity_on(&target);
        assert_eq!(id.apply(&target).unwrap(), target);

        // s={x↦a}, u=xx → aa
        let s = Substitution::from_pairs([(Letter::from_char('x').unwrap(), w("a"))]);
        assert_eq!(s.apply(&w("xx")).unwrap(), w("aa"));
    }

    #[test]
    fn apply_substitution_missing_letter() {
        let s = Substitution::from_pairs([(Letter::from_char('x').unwrap(), w("a"))]);
        assert_eq!(
            s.apply(&w("xy")),
            Err(WordError::MissingLetter(Letter::from_char('y').unwrap()))
        );
    }

    #[test]
    fn is_factor_examples() {
        assert!(is_factor(&w("ab"), &w("abcab")));
        assert!(!is_factor(&w("ba"), &w("aab")));
        assert!(is_factor(&w("abc"), &w("abc")));
    }

    #[test]
    fn applicable_examples() {
        let witness = is_applicable(&w("xx"), &w("abab")).unwrap();
        assert!(witness.verify(&w("xx"), &w("abab")));

        assert!(is_applicable(&w("xx"), &w("aba")).is_none());

        let witness = is_applicable(&w("xyx"), &w("abcab")).unwrap();
        assert!(witness.verify(&w("xyx"), &w("abcab")));

        assert!(is_applicable(&w("xy"), &w("a")).is_none());
    }

    #[test]
    fn applicable_is_reflexive() {
        for s in ["a", "ab", "abcab", "xyzzy"] {
            let u = w(s);
            let witness = is_applicable(&u, &u).expect("reflexive");
            assert!(witness.verify(&u, &u));
        }
    }

    #[test]
    fn budget_is_distinct_from_no() {
        let err = is_applicable_within(&w("xx"), &w("abab"), 1).unwrap_err();
        assert_eq!(err.budget, 1);
        // A generous budget reproduces the exhaustive result.
        assert!(is_applicable_within(&w("xx"), &w("abab"), 10_000)
            .unwrap()
            .is_some());
        assert!(is_applicable_within(&w("xx"), &w("aba"), 10_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn square_examples() {
        let sq = contains_square(&w("abab")).unwrap();
        assert_eq!(sq.position, 0);
        assert_eq!(sq.root, w("ab"));

        assert!(contains_square(&w("abcacb")).is_none());
        assert!(contains_square(&w("a")).is_none());
    }

    #[test]
    fn square_free_enumeration_examples() {
        let two: Vec<String> = enumerate_square_free(2, 3).map(|w| w.to_string()).collect();
        assert_eq!(two, ["a", "b", "ab", "ba", "aba", "bab"]);

        let one: Vec<String> = enumerate_square_free(1, 5).map(|w| w.to_string()).collect();
        assert_eq!(one, ["a"]);

        let three: Vec<String> = enumerate_square_free(3, 1).map(|w| w.to_string()).collect();
        assert_eq!(three, ["a", "b", "c"]);
    }

    #[test]
    fn square_free_enumeration_matches_filter() {
        // Cross-check the incremental suffix test against the full scan.
        let mut all = Vec::new();
        fn rec(prefix: &mut Vec<Letter>, max: usize, out: &mut Vec<Word>) {
            if !prefix.is_empty() {
                out.push(Word(prefix.clone()));
            }
            if prefix.len() == max {
                return;
            }
            for id in 0..3 {
                prefix.push(Letter(id));
                rec(prefix, max, out);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 6, &mut all);
        let mut expected: Vec<Word> = all
            .into_iter()
            .filter(|w| contains_square(w).is_none())
            .collect();
        expected.sort_by_key(|w| (w.len(), w.letters().to_vec()));
        let got: Vec<Word> = enumerate_square_free(3, 6).collect();
        assert_eq!(got, expected);
    }
}
