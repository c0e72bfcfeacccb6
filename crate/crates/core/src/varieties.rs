//! 0-reduced identity systems and their inclusion order.
//!
//! A system is a finite set of zero-words: the power word `x^m` (always
//! present) plus extra generators. The word `u = 0` follows from the system
//! iff some generator is applicable to `u`; every order computation here
//! reduces to that single test. More generators means a smaller variety, so
//! inclusion of varieties runs opposite to inclusion of systems.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antichain::{IndexedWord, RationalIndex};
use crate::words::{is_applicable, ApplicabilityWitness, Letter, Word};

/// Letter used to spell the power word `x^m`.
const POWER_LETTER: Letter = Letter::new(23);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarietyError {
    #[error("nil exponent must be at least 2, got {0}")]
    NilExponentTooSmall(usize),
    #[error("family has no word for pool index {0}")]
    MissingFamilyMember(RationalIndex),
}

/// A finite presentation `{x^m = 0} ∪ {w = 0 : w extra}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ZeroReducedSystem {
    nil_exponent: usize,
    extra_generators: BTreeSet<Word>,
    pub label: Option<String>,
}

impl ZeroReducedSystem {
    pub fn new(
        nil_exponent: usize,
        extra_generators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, VarietyError> {
        if nil_exponent < 2 {
            return Err(VarietyError::NilExponentTooSmall(nil_exponent));
        }
        Ok(ZeroReducedSystem {
            nil_exponent,
            extra_generators: extra_generators.into_iter().collect(),
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn nil_exponent(&self) -> usize {
        self.nil_exponent
    }

    pub fn power_word(&self) -> Word {
        Word::letter_power(POWER_LETTER, self.nil_exponent).expect("exponent is positive")
    }

    pub fn extra_generators(&self) -> impl Iterator<Item = &Word> {
        self.extra_generators.iter()
    }

    /// All generator words: the power word first, then the extras.
    pub fn generators(&self) -> Vec<Word> {
        let mut gens = Vec::with_capacity(1 + self.extra_generators.len());
        gens.push(self.power_word());
        gens.extend(self.extra_generators.iter().cloned());
        gens
    }

    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!(
                "{{x^{}, {} extras}}",
                self.nil_exponent,
                self.extra_generators.len()
            ),
        }
    }
}

/// How `u = 0` was derived: the generator and its embedding into `u`.
#[derive(Clone, Debug, Serialize)]
pub struct ConsequenceProof {
    pub generator: Word,
    pub witness: ApplicabilityWitness,
}

/// `u = 0` follows from the system iff some generator is applicable to `u`;
/// the zero class of the system consists exactly of such words.
pub fn is_zero_consequence(sys: &ZeroReducedSystem, u: &Word) -> Option<ConsequenceProof> {
    for generator in sys.generators() {
        if let Some(witness) = is_applicable(&generator, u) {
            return Some(ConsequenceProof { generator, witness });
        }
    }
    None
}

/// Which family of systems a spec realizes: `Chain` keeps every pool index
/// at or above `xi`, `Antichain` keeps the open unit interval around `xi`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum VarietyKind {
    #[serde(rename = "C")]
    Chain,
    #[serde(rename = "A")]
    Antichain,
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyKind::Chain => write!(f, "C"),
            VarietyKind::Antichain => write!(f, "A"),
        }
    }
}

/// Desk-scale description of one parametrized system: the realized extra
/// generators are exactly `first(Z_α)^(n−1) · Z_α` for the in-range pool
/// indices α.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VarietySpec {
    pub kind: VarietyKind,
    pub n: usize,
    pub xi: RationalIndex,
    pub pool: BTreeSet<RationalIndex>,
}

impl VarietySpec {
    pub fn in_range(&self, alpha: RationalIndex) -> bool {
        match self.kind {
            VarietyKind::Chain => alpha >= self.xi,
            VarietyKind::Antichain => {
                let lo = RationalIndex::new(self.xi.numer() - self.xi.denom(), self.xi.denom())
                    .expect("denominator unchanged");
                let hi = RationalIndex::new(self.xi.numer() + self.xi.denom(), self.xi.denom())
                    .expect("denominator unchanged");
                lo < alpha && alpha < hi
            }
        }
    }

    pub fn display_name(&self) -> String {
        format!("{}(n={}, xi={})", self.kind, self.n, self.xi)
    }
}

/// The generator contributed by the family word for `alpha`: its first
/// letter to the `n−1` (an empty prefix when n = 1) followed by the word.
pub fn pool_generator(member: &IndexedWord, n: usize) -> Word {
    let mut letters = vec![member.first_letter(); n - 1];
    letters.extend_from_slice(member.word.letters());
    Word::new(letters).expect("family words are non-empty")
}

/// Realizes a spec against a family: nil exponent `n+1`, one extra generator
/// per in-range pool index.
pub fn build_variety(
    spec: &VarietySpec,
    family: &[IndexedWord],
) -> Result<ZeroReducedSystem, VarietyError> {
    let mut extras = BTreeSet::new();
    for &alpha in spec.pool.iter().filter(|&&a| spec.in_range(a)) {
        let member = family
            .iter()
            .find(|m| m.index == alpha)
            .ok_or(VarietyError::MissingFamilyMember(alpha))?;
        extras.insert(pool_generator(member, spec.n));
    }
    Ok(ZeroReducedSystem::new(spec.n + 1, extras)?.with_label(spec.display_name()))
}

/// One line of an inclusion check: is this generator of the candidate
/// super-variety's system a consequence of the sub side?
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub generator: Word,
    pub consequence: Option<ConsequenceProof>,
}

/// Outcome of `variety(sub) ⊆ variety(sup)`.
#[derive(Clone, Debug, Serialize)]
pub struct InclusionReport {
    pub included: bool,
    /// On failure: a generator of `sup`'s system that is zero there but not
    /// in `sub`'s variety.
    pub witness: Option<Word>,
    pub trace: Vec<GeneratorCheck>,
}

/// Decides `variety(sub) ⊆ variety(sup)`: the sub variety satisfies all of
/// sup's identities iff every generator of `sup`'s system is a
/// zero-consequence of `sub`'s system.
pub fn includes(sub: &ZeroReducedSystem, sup: &ZeroReducedSystem) -> InclusionReport {
    let mut witness = None;
    let mut trace = Vec::new();
    for generator in sup.generators() {
        let consequence = is_zero_consequence(sub, &generator);
        if consequence.is_none() && witness.is_none() {
            witness = Some(generator.clone());
        }
        trace.push(GeneratorCheck {
            generator,
            consequence,
        });
    }
    InclusionReport {
        included: witness.is_none(),
        witness,
        trace,
    }
}

/// Order relation between two systems' varieties, with witnesses for every
/// strictness claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Comparison {
    Equal,
    /// `a ⊂ b`; the witness is zero in `a`'s variety but not in `b`'s.
    AStrictlyBelow {
        witness: Word,
    },
    /// `b ⊂ a`; the witness is zero in `b`'s variety but not in `a`'s.
    BStrictlyBelow {
        witness: Word,
    },
    Incomparable {
        /// Zero in `b`'s variety but not in `a`'s.
        witness_not_below_a: Word,
        /// Zero in `a`'s variety but not in `b`'s.
        witness_not_below_b: Word,
    },
}

/// Derived from two [`includes`] calls.
pub fn compare(a: &ZeroReducedSystem, b: &ZeroReducedSystem) -> Comparison {
    let a_in_b = includes(a, b);
    let b_in_a = includes(b, a);
    match (a_in_b.included, b_in_a.included) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::AStrictlyBelow {
            witness: b_in_a.witness.expect("failed inclusion carries a witness"),
        },
        (false, true) => Comparison::BStrictlyBelow {
            witness: a_in_b.witness.expect("failed inclusion carries a witness"),
        },
        (false, false) => Comparison::Incomparable {
            witness_not_below_a: a_in_b.witness.expect("failed inclusion carries a witness"),
            witness_not_below_b: b_in_a.witness.expect("failed inclusion carries a witness"),
        },
    }
}

/// Meet of the two varieties: the union of the identity systems. `x^m = 0`
/// implies `x^m' = 0` for `m' ≥ m`, so the smaller exponent presents the
/// union minimally.
pub fn meet(a: &ZeroReducedSystem, b: &ZeroReducedSystem) -> ZeroReducedSystem {
    let extras: BTreeSet<Word> = a
        .extra_generators()
        .chain(b.extra_generators())
        .cloned()
        .collect();
    ZeroReducedSystem::new(a.nil_exponent().min(b.nil_exponent()), extras)
        .expect("both exponents are valid")
}

/// `u = 0` holds in the join of the two varieties iff it holds in both.
pub fn join_satisfies(a: &ZeroReducedSystem, b: &ZeroReducedSystem, u: &Word) -> bool {
    is_zero_consequence(a, u).is_some() && is_zero_consequence(b, u).is_some()
}

/// The nonzero elements of the relatively free object, truncated to words
/// over the first `alphabet_size` letters of length at most `max_length`:
/// exactly the words no generator applies to, in length-lex order.
pub fn free_object_enumerate(
    sys: &ZeroReducedSystem,
    alphabet_size: u32,
    max_length: usize,
) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for base in &level {
            for id in 0..alphabet_size {
                let mut cand = base.clone();
                cand.push(Letter::new(id));
                next.push(cand);
            }
        }
        for letters in &next {
            let w = Word::new(letters.clone()).expect("non-empty by construction");
            if is_zero_consequence(sys, &w).is_none() {
                out.push(w);
            }
        }
        level = next;
    }
    out
}
