//! Computational algebra on words, identity systems, lattices, and finite
//! semigroups.
//!
//! The crate has five parts:
//!
//! - [`words`]: letters, words, substitutions, the applicability
//!   quasi-order, and square-free enumeration;
//! - [`antichain`]: rational-indexed families of square-free, pairwise
//!   non-applicable words with verification certificates;
//! - [`varieties`]: 0-reduced identity systems `{w = 0}` with decidable
//!   inclusion, meets, join membership, and free-object enumeration;
//! - [`lattice`]: finite lattices and partition lattices, modular-element
//!   detection, and the separation implications behind chain/anti-chain
//!   ordering arguments;
//! - [`epigroups`]: Cayley-table analysis of finite semigroups:
//!   pseudo-inverses, index, and the unary identity checks.
//!
//! Everything is deterministic and pure; all types are immutable values and
//! safe to share across threads.

pub mod antichain;
pub mod epigroups;
pub mod lattice;
pub mod varieties;
pub mod words;

pub use antichain::{
    generate_family, generate_family_indexed, rational_of_nat, verify_antichain,
    AntichainCertificate, AntichainViolation, FamilyConfig, GeneratedFamily, GenerationError,
    IndexedWord, RationalIndex,
};
pub use epigroups::{
    analyze, check_e_n, check_e_n_with_unary, enumerate_semigroups, epigroup_index,
    EpigroupStructure, FiniteSemigroup, IdentityCheckReport, SemigroupError,
};
pub use lattice::{
    antichain_separation_check, chain_separation_check, equivalence_lattice, hasse_dot,
    is_lower_modular, is_upper_modular, lower_modular_elements, modularity,
    nonsingleton_class_count, separation_mutation_witness, small_lattice_corpus,
    upper_modular_elements, verify_vv_proposition, EquivalenceLattice, FiniteLattice, LatticeError,
    ModularityReport, Partition, PropositionCheck, SeparationCheck,
};
pub use varieties::{
    build_variety, compare, free_object_enumerate, includes, is_zero_consequence, join_satisfies,
    meet, Comparison, ConsequenceProof, InclusionReport, VarietyError, VarietyKind, VarietySpec,
    ZeroReducedSystem,
};
pub use words::{
    apply_substitution, contains_square, enumerate_square_free, is_applicable,
    is_applicable_within, is_factor, ApplicabilityWitness, BudgetExceeded, Letter, SquareWitness,
    Substitution, Word, WordError,
};
