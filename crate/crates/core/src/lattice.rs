//! Finite lattices, partition lattices, and modular-element analysis.
//!
//! Everything here is brute force over the definitions: this module is the
//! verification bedrock for the rest of the crate, so the checks trade speed
//! for trustworthiness.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive on ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("carrier size {size} exceeds the cap of {cap}")]
    SizeGuard { size: usize, cap: usize },
    #[error("lattice must have at least one element")]
    Empty,
    #[error("leq pair ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
}

/// An explicit finite lattice: the order relation plus join/meet tables
/// derived and validated at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl FiniteLattice {
    /// Builds from a full order matrix (row-major `size × size`), validating
    /// the partial-order axioms and unique bounds.
    pub fn from_leq_matrix(size: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        assert_eq!(leq.len(), size * size, "matrix must be size*size");
        let at = |i: usize, j: usize| leq[i * size + j];
        for i in 0..size {
            if !at(i, i) {
                return Err(LatticeError::NotReflexive(i));
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && at(i, j) && at(j, i) {
                    return Err(LatticeError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if !at(i, j) {
                    continue;
                }
                for k in 0..size {
                    if at(j, k) && !at(i, k) {
                        return Err(LatticeError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        let mut join = vec![0; size * size];
        let mut meet = vec![0; size * size];
        for i in 0..size {
            for j in 0..size {
                let uppers: Vec<usize> = (0..size).filter(|&k| at(i, k) && at(j, k)).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&v| at(u, v)))
                    .ok_or(LatticeError::NoJoin(i, j))?;
                join[i * size + j] = lub;
                let lowers: Vec<usize> = (0..size).filter(|&k| at(k, i) && at(k, j)).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&l| lowers.iter().all(|&v| at(v, l)))
                    .ok_or(LatticeError::NoMeet(i, j))?;
                meet[i * size + j] = glb;
            }
        }
        Ok(FiniteLattice {
            size,
            leq,
            join,
            meet,
        })
    }

    /// Builds from generating pairs: the reflexive-transitive closure of the
    /// given `a ≤ b` pairs is taken first, so covers suffice as input.
    pub fn from_leq_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(LatticeError::OutOfRange(a, b));
            }
            leq[a * size + b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        FiniteLattice::from_leq_matrix(size, leq)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.size + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.size + j]
    }

    pub fn bottom(&self) -> usize {
        (0..self.size)
            .find(|&b| (0..self.size).all(|x| self.leq(b, x)))
            .expect("a finite lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.size)
            .find(|&t| (0..self.size).all(|x| self.leq(x, t)))
            .expect("a finite lattice has a top")
    }

    /// The order-dual lattice.
    pub fn dual(&self) -> FiniteLattice {
        let mut leq = vec![false; self.size * self.size];
        for i in 0..self.size {
            for j in 0..self.size {
                leq[i * self.size + j] = self.leq(j, i);
            }
        }
        FiniteLattice::from_leq_matrix(self.size, leq).expect("dual of a lattice is a lattice")
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between =
                    (0..self.size).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The pentagon: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c.
/// Elements are indexed 0 = bottom, 1 = a, 2 = b, 3 = c, 4 = top.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_leq_pairs(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
        .expect("pentagon is a lattice")
}

/// The diamond: bottom, three incomparable atoms, top.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_leq_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("diamond is a lattice")
}

/// The n-element chain.
pub fn chain_lattice(n: usize) -> FiniteLattice {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_leq_pairs(n, &pairs).expect("a chain is a lattice")
}

/// Modular-element analysis of a single lattice element. A false flag always
/// carries a counterexample pair violating the defining identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularityReport {
    pub element: usize,
    pub is_lower_modular: bool,
    pub is_upper_modular: bool,
    pub lower_counterexample: Option<(usize, usize)>,
    pub upper_counterexample: Option<(usize, usize)>,
}

fn lower_modular_counterexample(l: &FiniteLattice, x: usize) -> Option<(usize, usize)> {
    for y in 0..l.size() {
        if !l.leq(x, y) {
            continue;
        }
        for z in 0..l.size() {
            if l.meet(l.join(z, x), y) != l.join(l.meet(z, y), x) {
                return Some((y, z));
            }
        }
    }
    None
}

fn upper_modular_counterexample(l: &FiniteLattice, x: usize) -> Option<(usize, usize)> {
    for y in 0..l.size() {
        if !l.leq(y, x) {
            continue;
        }
        for z in 0..l.size() {
            if l.join(l.meet(z, x), y) != l.meet(l.join(z, y), x) {
                return Some((y, z));
            }
        }
    }
    None
}

/// Exhaustively checks both modularity conditions for `x`.
pub fn modularity(l: &FiniteLattice, x: usize) -> ModularityReport {
    let lower = lower_modular_counterexample(l, x);
    let upper = upper_modular_counterexample(l, x);
    ModularityReport {
        element: x,
        is_lower_modular: lower.is_none(),
        is_upper_modular: upper.is_none(),
        lower_counterexample: lower,
        upper_counterexample: upper,
    }
}

/// True iff `x ≤ y` implies `(z∨x)∧y = (z∧y)∨x` for all `y`, `z`.
pub fn is_lower_modular(l: &FiniteLattice, x: usize) -> ModularityReport {
    modularity(l, x)
}

/// The dual condition: `y ≤ x` implies `(z∧x)∨y = (z∨y)∧x` for all `y`, `z`.
pub fn is_upper_modular(l: &FiniteLattice, x: usize) -> ModularityReport {
    modularity(l, x)
}

/// Elements whose lower-modularity check passes.
pub fn lower_modular_elements(l: &FiniteLattice) -> Vec<usize> {
    (0..l.size())
        .filter(|&x| lower_modular_counterexample(l, x).is_none())
        .collect()
}

/// Elements whose upper-modularity check passes.
pub fn upper_modular_elements(l: &FiniteLattice) -> Vec<usize> {
    (0..l.size())
        .filter(|&x| upper_modular_counterexample(l, x).is_none())
        .collect()
}

/// A partition of `{0, …, s−1}` into blocks, stored as a canonical block
/// assignment: block ids appear in increasing order of their least element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    assignment: Vec<usize>,
}

impl Partition {
    /// Canonicalizes an arbitrary element-to-block map.
    pub fn from_assignment(raw: &[usize]) -> Partition {
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &b in raw {
            let next = relabel.len();
            let id = *relabel.entry(b).or_insert(next);
            assignment.push(id);
        }
        Partition { assignment }
    }

    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Partition {
        let mut raw = vec![usize::MAX; size];
        for (id, block) in blocks.iter().enumerate() {
            for &e in block {
                raw[e] = id;
            }
        }
        assert!(
            raw.iter().all(|&b| b != usize::MAX),
            "blocks must cover the carrier"
        );
        Partition::from_assignment(&raw)
    }

    pub fn singletons(size: usize) -> Partition {
        Partition::from_assignment(&(0..size).collect::<Vec<_>>())
    }

    pub fn single_block(size: usize) -> Partition {
        Partition::from_assignment(&vec![0; size])
    }

    pub fn carrier_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn block_of(&self, e: usize) -> usize {
        self.assignment[e]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.assignment[a] == self.assignment[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let count = self.assignment.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (e, &b) in self.assignment.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }

    /// Refinement order: every block of `self` lies inside a block of
    /// `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let s = self.carrier_size();
        for a in 0..s {
            for b in (a + 1)..s {
                if self.same_block(a, b) && !other.same_block(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Join: transitive closure of the union of the two relations, computed
    /// by union-find.
    pub fn join(&self, other: &Partition) -> Partition {
        let s = self.carrier_size();
        let mut uf = UnionFind::new(s);
        for e in 1..s {
            for f in 0..e {
                if self.same_block(e, f) || other.same_block(e, f) {
                    uf.union(e, f);
                }
            }
        }
        let raw: Vec<usize> = (0..s).map(|e| uf.find(e)).collect();
        Partition::from_assignment(&raw)
    }

    /// Meet: blockwise intersection.
    pub fn meet(&self, other: &Partition) -> Partition {
        let s = self.carrier_size();
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut raw = Vec::with_capacity(s);
        for e in 0..s {
            let key = (self.block_of(e), other.block_of(e));
            let next = ids.len();
            raw.push(*ids.entry(key).or_insert(next));
        }
        Partition::from_assignment(&raw)
    }

    /// Number of blocks with at least two elements.
    pub fn nonsingleton_class_count(&self) -> usize {
        self.blocks().iter().filter(|b| b.len() >= 2).count()
    }

    /// All partitions of an `s`-set, in lexicographic order of their
    /// canonical assignments (restricted growth strings).
    pub fn all(s: usize) -> Vec<Partition> {
        fn rec(prefix: &mut Vec<usize>, max_used: usize, s: usize, out: &mut Vec<Partition>) {
            if prefix.len() == s {
                out.push(Partition {
                    assignment: prefix.clone(),
                });
                return;
            }
            for b in 0..=max_used + 1 {
                prefix.push(b);
                rec(prefix, max_used.max(b), s, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if s == 0 {
            return out;
        }
        let mut prefix = vec![0];
        rec(&mut prefix, 0, s, &mut out);
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// See [`Partition::nonsingleton_class_count`].
pub fn nonsingleton_class_count(p: &Partition) -> usize {
    p.nonsingleton_class_count()
}

/// Carrier cap for partition-lattice construction; Bell numbers grow too
/// fast beyond this.
pub const EQ_LATTICE_CAP: usize = 6;

/// The lattice of all partitions of an `s`-set under refinement, with the
/// element-to-partition table.
#[derive(Debug)]
pub struct EquivalenceLattice {
    pub lattice: FiniteLattice,
    pub partitions: Vec<Partition>,
}

pub fn equivalence_lattice(s: usize) -> Result<EquivalenceLattice, LatticeError> {
    if s == 0 {
        return Err(LatticeError::Empty);
    }
    if s > EQ_LATTICE_CAP {
        return Err(LatticeError::SizeGuard {
            size: s,
            cap: EQ_LATTICE_CAP,
        });
    }
    let partitions = Partition::all(s);
    let m = partitions.len();
    let mut leq = vec![false; m * m];
    for (i, p) in partitions.iter().enumerate() {
        for (j, q) in partitions.iter().enumerate() {
            leq[i * m + j] = p.refines(q);
        }
    }
    let lattice = FiniteLattice::from_leq_matrix(m, leq)?;
    Ok(EquivalenceLattice {
        lattice,
        partitions,
    })
}

/// Result of an exhaustive proposition check; `violation` is the first
/// failing element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionCheck {
    pub holds: bool,
    pub violation: Option<usize>,
}

/// Checks, over every partition of an `s`-set, that upper-modularity in the
/// partition lattice is equivalent to having at most one non-singleton
/// class.
pub fn verify_vv_proposition(s: usize) -> Result<PropositionCheck, LatticeError> {
    let eq = equivalence_lattice(s)?;
    for (i, p) in eq.partitions.iter().enumerate() {
        let upper = upper_modular_counterexample(&eq.lattice, i).is_none();
        let few_classes = p.nonsingleton_class_count() <= 1;
        if upper != few_classes {
            return Ok(PropositionCheck {
                holds: false,
                violation: Some(i),
            });
        }
    }
    Ok(PropositionCheck {
        holds: true,
        violation: None,
    })
}

/// Result of an exhaustive triple check; `violation` is the first failing
/// triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCheck {
    pub holds: bool,
    pub violation: Option<[usize; 3]>,
}

/// Chain-separation implication: if `c1` is lower-modular, `c1 ≤ c2`,
/// `e∧c2 ≤ c1` and `e∨c1 = e∨c2`, then `c1 = c2`. Exhaustive over all
/// triples.
pub fn chain_separation_check(l: &FiniteLattice) -> SeparationCheck {
    for c1 in lower_modular_elements(l) {
        for c2 in 0..l.size() {
            if !l.leq(c1, c2) {
                continue;
            }
            for e in 0..l.size() {
                if l.leq(l.meet(e, c2), c1) && l.join(e, c1) == l.join(e, c2) && c1 != c2 {
                    return SeparationCheck {
                        holds: false,
                        violation: Some([c1, c2, e]),
                    };
                }
            }
        }
    }
    SeparationCheck {
        holds: true,
        violation: None,
    }
}

/// Anti-chain-separation implication: if `a1` is lower-modular,
/// `e∧(a1∨a2) ≤ a1` and `a2 ≤ e∨a1`, then `a2 ≤ a1`. Exhaustive over all
/// triples.
pub fn antichain_separation_check(l: &FiniteLattice) -> SeparationCheck {
    for a1 in lower_modular_elements(l) {
        for a2 in 0..l.size() {
            for e in 0..l.size() {
                if l.leq(l.meet(e, l.join(a1, a2)), a1)
                    && l.leq(a2, l.join(e, a1))
                    && !l.leq(a2, a1)
                {
                    return SeparationCheck {
                        holds: false,
                        violation: Some([a1, a2, e]),
                    };
                }
            }
        }
    }
    SeparationCheck {
        holds: true,
        violation: None,
    }
}

/// Searches for a triple witnessing that lower-modularity is essential in
/// the chain-separation implication: `c1` NOT lower-modular, the remaining
/// hypotheses hold, yet `c1 ≠ c2`.
pub fn separation_mutation_witness(l: &FiniteLattice) -> Option<[usize; 3]> {
    let lm = lower_modular_elements(l);
    for c1 in 0..l.size() {
        if lm.contains(&c1) {
            continue;
        }
        for c2 in 0..l.size() {
            if c1 == c2 || !l.leq(c1, c2) {
                continue;
            }
            for e in 0..l.size() {
                if l.leq(l.meet(e, c2), c1) && l.join(e, c1) == l.join(e, c2) {
                    return Some([c1, c2, e]);
                }
            }
        }
    }
    None
}

/// DOT rendering of the covering relation, drawn bottom-to-top.
pub fn hasse_dot(l: &FiniteLattice, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..l.size() {
        let label = labels
            .and_then(|ls| ls.get(i).cloned())
            .unwrap_or_else(|| i.to_string());
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for (i, j) in l.covers() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// Cap for the exhaustive small-lattice corpus.
pub const CORPUS_CAP: usize = 6;

/// Every lattice on at most `max_size` labeled points, one representative
/// per naturally labeled order (indices sorted by a linear extension, which
/// catches every lattice up to isomorphism). Generated by enumerating the
/// transitive upper-triangular relations and keeping those with unique
/// joins and meets.
pub fn small_lattice_corpus(max_size: usize) -> Result<Vec<FiniteLattice>, LatticeError> {
    if max_size > CORPUS_CAP {
        return Err(LatticeError::SizeGuard {
            size: max_size,
            cap: CORPUS_CAP,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if (mask >> bit) & 1 == 1 {
                    leq[i * n + j] = true;
                }
            }
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| !leq[i * n + j] || (0..n).all(|k| !leq[j * n + k] || leq[i * n + k]))
            });
            if !transitive {
                continue;
            }
            if let Ok(lat) = FiniteLattice::from_leq_matrix(n, leq) {
                out.push(lat);
            }
        }
    }
    Ok(out)
}

/// Deduplicates a corpus by lattice isomorphism (minimal order-matrix over
/// all relabelings).
pub fn dedup_by_isomorphism(lattices: &[FiniteLattice]) -> Vec<FiniteLattice> {
    fn canonical_key(l: &FiniteLattice) -> Vec<bool> {
        let n = l.size();
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut m = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    m[p[i] * n + p[j]] = l.leq(i, j);
                }
            }
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        });
        best.expect("at least one permutation")
    }

    fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for l in lattices {
        let key = (l.size(), canonical_key(l));
        if seen.insert(key) {
            out.push(l.clone());
        }
    }
    out
}
