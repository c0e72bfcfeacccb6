//! Rational-indexed families of square-free, pairwise non-applicable words.
//!
//! Families are produced greedily from the square-free enumeration and are
//! verification-gated: a family is only handed out together with a passing
//! [`AntichainCertificate`].

use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::words::{
    contains_square, enumerate_square_free, is_applicable, ApplicabilityWitness, Letter,
    SquareWitness, Word,
};

/// A rational number in lowest terms with positive denominator, ordered the
/// usual way.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RationalIndex(Ratio<i64>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("denominator must be non-zero")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

impl RationalIndex {
    pub fn new(numer: i64, denom: i64) -> Result<Self, RationalError> {
        if denom == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(RationalIndex(Ratio::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        RationalIndex(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }
}

impl fmt::Display for RationalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for RationalIndex {
    type Err = RationalError;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, RationalError> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| RationalError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let numer = parse_int(p)?;
                let denom = parse_int(q)?;
                if denom == 0 {
                    Err(RationalError::ZeroDenominator)
                } else {
                    Ok(RationalIndex::new(numer, denom)?)
                }
            }
            None => Ok(RationalIndex::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for RationalIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A fixed bijection from the naturals onto the rationals: 0 ↦ 0, odd
/// `2k−1` ↦ the k-th positive rational in Calkin–Wilf order, even `2k` ↦ its
/// negation.
pub fn rational_of_nat(n: u64) -> RationalIndex {
    if n == 0 {
        return RationalIndex::from_integer(0);
    }
    let k = n.div_ceil(2);
    let (p, q) = calkin_wilf(k);
    let numer = if n % 2 == 1 { p as i64 } else { -(p as i64) };
    RationalIndex::new(numer, q as i64).expect("calkin-wilf denominators are positive")
}

/// The k-th rational of the Calkin–Wilf sequence (1-indexed): walk the tree
/// from the root along the binary digits of k below its leading bit.
fn calkin_wilf(k: u64) -> (u64, u64) {
    debug_assert!(k >= 1);
    let (mut p, mut q) = (1u64, 1u64);
    let bits = 63 - k.leading_zeros();
    for shift in (0..bits).rev() {
        if (k >> shift) & 1 == 0 {
            q += p; // left child p/(p+q)
        } else {
            p += q; // right child (p+q)/q
        }
    }
    (p, q)
}

/// A family member: a word labelled by its rational index.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IndexedWord {
    pub index: RationalIndex,
    pub word: Word,
}

impl IndexedWord {
    pub fn first_letter(&self) -> Letter {
        self.word.first_letter()
    }
}

/// Proof that a family is a square-free anti-chain: every ordered pair
/// failed applicability and every member passed the square scan.
#[derive(Clone, Debug)]
pub struct AntichainCertificate {
    pub members: Vec<IndexedWord>,
    pub checked_pairs: usize,
    pub squarefree_checked: usize,
}

impl Serialize for AntichainCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MemberFlag<'a> {
            index: &'a RationalIndex,
            squarefree: bool,
        }
        let mut st = serializer.serialize_struct("AntichainCertificate", 3)?;
        st.serialize_field("member_count", &self.members.len())?;
        st.serialize_field("checked_pairs", &self.checked_pairs)?;
        let flags: Vec<MemberFlag> = self
            .members
            .iter()
            .map(|m| MemberFlag {
                index: &m.index,
                squarefree: true,
            })
            .collect();
        st.serialize_field("members", &flags)?;
        st.end()
    }
}

/// The first defect found in a claimed anti-chain family.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AntichainViolation {
    Square {
        member: usize,
        witness: SquareWitness,
    },
    ApplicablePair {
        from: usize,
        to: usize,
        witness: ApplicabilityWitness,
    },
}

impl fmt::Display for AntichainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AntichainViolation::Square { member, witness } => {
                write!(
                    f,
                    "member {member} contains the square {}{} at {}",
                    witness.root, witness.root, witness.position
                )
            }
            AntichainViolation::ApplicablePair { from, to, .. } => {
                write!(f, "member {from} is applicable to member {to}")
            }
        }
    }
}

/// Checks every member for square-freeness and every ordered pair for
/// non-applicability; the per-pair checks are independent and may run in any
/// order.
pub fn verify_antichain(words: &[IndexedWord]) -> Result<AntichainCertificate, AntichainViolation> {
    for (i, m) in words.iter().enumerate() {
        if let Some(witness) = contains_square(&m.word) {
            return Err(AntichainViolation::Square { member: i, witness });
        }
    }
    let mut checked_pairs = 0;
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            checked_pairs += 1;
            if let Some(witness) = is_applicable(&a.word, &b.word) {
                return Err(AntichainViolation::ApplicablePair {
                    from: i,
                    to: j,
                    witness,
                });
            }
        }
    }
    Ok(AntichainCertificate {
        members: words.to_vec(),
        checked_pairs,
        squarefree_checked: words.len(),
    })
}

/// Knobs for the greedy family search.
#[derive(Clone, Debug)]
pub struct FamilyConfig {
    /// Candidate alphabet size; at least 3 (square-free words over 2 letters
    /// are finite in number).
    pub alphabet_size: u32,
    /// Words shorter than this are never candidates. Short patterns are
    /// applicable to almost every longer square-free word and freeze the
    /// greedy search: with this at 5 the family saturates at 5 members, at
    /// 10 it reaches 24. Candidates of one length only need a
    /// letter-to-letter morphism to apply to each other, which is rare, so
    /// in practice the family fills up within a single length layer.
    pub min_length: usize,
    /// Length ceiling for the square-free enumeration.
    pub max_length: usize,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig {
            alphabet_size: 3,
            min_length: 10,
            max_length: 16,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerationError {
    #[error("family generation needs an alphabet of at least 3 letters, got {0}")]
    AlphabetTooSmall(u32),
    #[error(
        "family search exhausted: found {found} of {requested} members within \
         the length ceiling {max_length}; raise the ceiling"
    )]
    Exhausted {
        requested: usize,
        found: usize,
        max_length: usize,
    },
    #[error("family indices must be pairwise distinct")]
    DuplicateIndex,
}

/// A verified family: the members together with their certificate.
#[derive(Clone, Debug)]
pub struct GeneratedFamily {
    pub members: Vec<IndexedWord>,
    pub certificate: AntichainCertificate,
}

/// Greedy family of `count` words indexed by the first `count` rationals of
/// [`rational_of_nat`]. Deterministic; the first `count` members of a larger
/// family coincide with the smaller one.
pub fn generate_family(
    count: usize,
    cfg: &FamilyConfig,
) -> Result<GeneratedFamily, GenerationError> {
    let indices: Vec<RationalIndex> = (0..count as u64).map(rational_of_nat).collect();
    generate_family_indexed(&indices, cfg)
}

/// Greedy family labelled by explicit indices (for example a rational grid
/// used as a variety pool). The words depend only on `indices.len()` and the
/// config.
pub fn generate_family_indexed(
    indices: &[RationalIndex],
    cfg: &FamilyConfig,
) -> Result<GeneratedFamily, GenerationError> {
    for (i, a) in indices.iter().enumerate() {
        if indices[..i].contains(a) {
            return Err(GenerationError::DuplicateIndex);
        }
    }
    let words = generate_words(indices.len(), cfg)?;
    let members: Vec<IndexedWord> = indices
        .iter()
        .zip(words)
        .map(|(&index, word)| IndexedWord { index, word })
        .collect();
    let certificate = verify_antichain(&members).expect("greedy admission is verification-gated");
    Ok(GeneratedFamily {
        members,
        certificate,
    })
}

/// Scan square-free words in length-lex order and admit a candidate iff it
/// is non-applicable in both directions against all admitted members.
fn generate_words(count: usize, cfg: &FamilyConfig) -> Result<Vec<Word>, GenerationError> {
    if cfg.alphabet_size < 3 {
        return Err(GenerationError::AlphabetTooSmall(cfg.alphabet_size));
    }
    let mut admitted: Vec<Word> = Vec::with_capacity(count);
    for cand in enumerate_square_free(cfg.alphabet_size, cfg.max_length) {
        if admitted.len() == count {
            break;
        }
        if cand.len() < cfg.min_length {
            continue;
        }
        let independent = admitted
            .iter()
            .all(|m| is_applicable(m, &cand).is_none() && is_applicable(&cand, m).is_none());
        if independent {
            admitted.push(cand);
        }
    }
    if admitted.len() < count {
        return Err(GenerationError::Exhausted {
            requested: count,
            found: admitted.len(),
            max_length: cfg.max_length,
        });
    }
    Ok(admitted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalIndex {
        s.parse().unwrap()
    }

    #[test]
    fn rational_normalizes_and_orders() {
        assert_eq!(RationalIndex::new(2, 4).unwrap(), q("1/2"));
        assert_eq!(RationalIndex::new(1, -2).unwrap(), q("-1/2"));
        assert!(q("-1/2") < q("1/3"));
        assert!(q("1/3") < q("1/2"));
        assert_eq!(q("3").to_string(), "3/1");
        assert_eq!(
            RationalIndex::new(1, 0),
            Err(RationalError::ZeroDenominator)
        );
    }

    #[test]
    fn rational_of_nat_first_values() {
        let first: Vec<String> = (0..7).map(|n| rational_of_nat(n).to_string()).collect();
        assert_eq!(first, ["0/1", "1/1", "-1/1", "1/2", "-1/2", "2/1", "-2/1"]);
    }

    #[test]
    fn rational_of_nat_injective_prefix() {
        let mut seen = std::collections::BTreeSet::new();
        for n in 0..2000 {
            assert!(seen.insert(rational_of_nat(n)), "collision at n={n}");
        }
    }

    #[test]
    fn rational_of_nat_small_rationals_appear_early() {
        let first: std::collections::BTreeSet<RationalIndex> =
            (0..64).map(rational_of_nat).collect();
        for p in -4i64..=4 {
            for den in 1i64..=4 {
                let r = RationalIndex::new(p, den).unwrap();
                if r.numer().abs() <= 4 && r.denom() <= 4 {
                    assert!(first.contains(&r), "{r} missing from first 64 outputs");
                }
            }
        }
    }

    #[test]
    fn verify_catches_square() {
        let family = vec![IndexedWord {
            index: q("0"),
            word: "abab".parse().unwrap(),
        }];
        match verify_antichain(&family) {
            Err(AntichainViolation::Square { member: 0, witness }) => {
                assert_eq!(witness.root, "ab".parse().unwrap());
            }
            other => panic!("expected square violation, got {other:?}"),
        }
    }

    #[test]
    fn verify_catches_duplicate_by_reflexivity() {
        let w: Word = "abaca".parse().unwrap();
        let family = vec![
            IndexedWord {
                index: q("0"),
                word: w.clone(),
            },
            IndexedWord {
                index: q("1"),
                word: w,
            },
        ];
        match verify_antichain(&family) {
            Err(AntichainViolation::ApplicablePair {
                from: 0,
                to: 1,
                witness,
            }) => {
                assert!(witness.verify(&"abaca".parse().unwrap(), &"abaca".parse().unwrap()));
            }
            other => panic!("expected pair violation, got {other:?}"),
        }
    }

    #[test]
    fn verify_decides_aba_bab() {
        // aba maps onto bab letter-for-letter, so this pair is not an
        // anti-chain.
        let family = vec![
            IndexedWord {
                index: q("0"),
                word: "aba".parse().unwrap(),
            },
            IndexedWord {
                index: q("1"),
                word: "bab".parse().unwrap(),
            },
        ];
        match verify_antichain(&family) {
            Err(AntichainViolation::ApplicablePair { from, to, witness }) => {
                assert_eq!((from, to), (0, 1));
                assert!(witness.verify(&"aba".parse().unwrap(), &"bab".parse().unwrap()));
            }
            other => panic!("expected pair violation, got {other:?}"),
        }
    }

    #[test]
    fn generate_family_empty() {
        let fam = generate_family(0, &FamilyConfig::default()).unwrap();
        assert!(fam.members.is_empty());
        assert_eq!(fam.certificate.checked_pairs, 0);
    }

    #[test]
    fn generate_family_single() {
        let fam = generate_family(1, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.members.len(), 1);
        assert_eq!(fam.certificate.checked_pairs, 0);
        assert!(contains_square(&fam.members[0].word).is_none());
    }

    #[test]
    fn generate_family_monotone_and_deterministic() {
        let cfg = FamilyConfig::default();
        let small = generate_family(6, &cfg).unwrap();
        let large = generate_family(7, &cfg).unwrap();
        assert_eq!(&large.members[..6], &small.members[..]);
        let again = generate_family(6, &cfg).unwrap();
        assert_eq!(again.members, small.members);
    }

    #[test]
    fn generate_family_rejects_small_alphabet() {
        let cfg = FamilyConfig {
            alphabet_size: 2,
            ..FamilyConfig::default()
        };
        assert_eq!(
            generate_family(3, &cfg).unwrap_err(),
            GenerationError::AlphabetTooSmall(2)
        );
    }

    #[test]
    fn generation_exhausted_is_an_error() {
        let cfg = FamilyConfig {
            max_length: 5,
            ..FamilyConfig::default()
        };
        match generate_family(1000, &cfg) {
            Err(GenerationError::Exhausted {
                requested,
                max_length,
                ..
            }) => {
                assert_eq!(requested, 1000);
                assert_eq!(max_length, 5);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn indexed_generation_rejects_duplicates() {
        let idx = [q("1/2"), q("2/4")];
        assert_eq!(
            generate_family_indexed(&idx, &FamilyConfig::default()).unwrap_err(),
            GenerationError::DuplicateIndex
        );
    }
}
