//! Finite semigroup analysis: pseudo-inversion, index, and the unary
//! identity checks.
//!
//! In a finite semigroup the powers of any element eventually cycle, and the
//! cycle is a group with exactly one idempotent. All structure here is read
//! off that cycle: no subgroup is ever materialized.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("order must be positive")]
    Empty,
    #[error("table must be {order}×{order}")]
    BadShape { order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    BadEntry {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("enumeration order {size} exceeds the cap of {cap}")]
    SizeGuard { size: usize, cap: usize },
    #[error("unary table must have {order} entries with values below {order}")]
    BadUnaryTable { order: usize },
}

/// A finite semigroup given by its Cayley table; associativity is validated
/// at construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for FiniteSemigroup {
    type Error = SemigroupError;

    fn try_from(raw: RawTable) -> Result<Self, SemigroupError> {
        FiniteSemigroup::from_rows(raw.order, &raw.table)
    }
}

impl From<FiniteSemigroup> for RawTable {
    fn from(s: FiniteSemigroup) -> RawTable {
        RawTable {
            order: s.order,
            table: (0..s.order)
                .map(|i| s.table[i * s.order..(i + 1) * s.order].to_vec())
                .collect(),
        }
    }
}

impl FiniteSemigroup {
    pub fn from_rows(order: usize, rows: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(SemigroupError::BadShape { order });
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(SemigroupError::BadEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                table.push(v);
            }
        }
        let s = FiniteSemigroup { order, table };
        s.check_associative()?;
        Ok(s)
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        for x in 0..self.order {
            for y in 0..self.order {
                for z in 0..self.order {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(SemigroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// `a` to the `n`-th power, `n ≥ 1`.
    pub fn power(&self, a: usize, n: usize) -> usize {
        assert!(n >= 1, "powers start at 1");
        let mut acc = a;
        for _ in 1..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }
}

/// Eventual cycle of the power sequence `a, a², …`: the first power lying on
/// the cycle and the cycle's elements in order.
struct PowerCycle {
    /// least n with `a^n` on the cycle
    entry: usize,
    /// `a^entry, a^(entry+1), …` for one period
    elements: Vec<usize>,
}

fn power_cycle(s: &FiniteSemigroup, a: usize) -> PowerCycle {
    let mut first_seen = vec![usize::MAX; s.order()];
    let mut value = a;
    let mut exponent = 1;
    loop {
        if first_seen[value] != usize::MAX {
            let entry = first_seen[value];
            let period = exponent - entry;
            let mut elements = Vec::with_capacity(period);
            let mut v = s.power(a, entry);
            for _ in 0..period {
                elements.push(v);
                v = s.mul(v, a);
            }
            return PowerCycle { entry, elements };
        }
        first_seen[value] = exponent;
        value = s.mul(value, a);
        exponent += 1;
    }
}

/// Per-element unary structure of a finite semigroup.
#[derive(Clone, Debug, Serialize)]
pub struct EpigroupStructure {
    pub base: FiniteSemigroup,
    /// `a ↦ e_a`, the idempotent power of `a`.
    pub unit_of: Vec<usize>,
    /// `a ↦ ā`, the inverse of `a·e_a` in the group around `e_a`.
    pub pseudo_inverse: Vec<usize>,
    /// Least n such that every `a^n` lies in a subgroup.
    pub index: usize,
}

/// Computes, for each element, the idempotent of its power cycle, the
/// pseudo-inverse `(a·e_a)^(t−1)` where t is the least power returning to
/// `e_a`, and the least exponent landing in the cycle. A power of `a` lies
/// in a subgroup iff it lies on the cycle, so the index is the maximum of
/// those entry exponents.
pub fn analyze(s: &FiniteSemigroup) -> EpigroupStructure {
    let mut unit_of = Vec::with_capacity(s.order());
    let mut pseudo_inverse = Vec::with_capacity(s.order());
    let mut index = 1;
    for a in 0..s.order() {
        let cycle = power_cycle(s, a);
        let idempotents: Vec<usize> = cycle
            .elements
            .iter()
            .copied()
            .filter(|&e| s.is_idempotent(e))
            .collect();
        assert_eq!(
            idempotents.len(),
            1,
            "a power cycle contains exactly one idempotent"
        );
        let e = idempotents[0];
        let b = s.mul(a, e);
        let mut t = 1;
        let mut p = b;
        while p != e {
            p = s.mul(p, b);
            t += 1;
            assert!(t <= s.order(), "b generates a finite cyclic group");
        }
        let inverse = if t == 1 { e } else { s.power(b, t - 1) };
        unit_of.push(e);
        pseudo_inverse.push(inverse);
        index = index.max(cycle.entry);
    }
    EpigroupStructure {
        base: s.clone(),
        unit_of,
        pseudo_inverse,
        index,
    }
}

/// The least n such that the n-th power of every element lies in a
/// subgroup.
pub fn epigroup_index(s: &FiniteSemigroup) -> usize {
    analyze(s).index
}

/// One identity evaluated over all assignments; counterexamples re-evaluate
/// to genuine violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheckReport {
    pub identity: String,
    pub holds: bool,
    pub counterexample: Option<Vec<usize>>,
}

impl IdentityCheckReport {
    fn check_unary(name: String, s: &FiniteSemigroup, f: impl Fn(usize) -> bool) -> Self {
        for x in 0..s.order() {
            if !f(x) {
                return IdentityCheckReport {
                    identity: name,
                    holds: false,
                    counterexample: Some(vec![x]),
                };
            }
        }
        IdentityCheckReport {
            identity: name,
            holds: true,
            counterexample: None,
        }
    }
}

/// Evaluates the four defining identities of the index-n membership check:
/// associativity, `x x' = x' x`, `x x'² = x'`, and `x^(n+1) x' = x^n`, with
/// `x'` the computed pseudo-inverse. Monotone in n: a semigroup passing at n
/// passes at n+1.
pub fn check_e_n(s: &FiniteSemigroup, n: usize) -> Vec<IdentityCheckReport> {
    let structure = analyze(s);
    check_e_n_with_unary(s, n, &structure.pseudo_inverse)
        .expect("computed pseudo-inverse table is well-formed")
}

/// [`check_e_n`] against a caller-supplied unary operation instead of the
/// computed pseudo-inverse.
pub fn check_e_n_with_unary(
    s: &FiniteSemigroup,
    n: usize,
    unary: &[usize],
) -> Result<Vec<IdentityCheckReport>, SemigroupError> {
    if unary.len() != s.order() || unary.iter().any(|&v| v >= s.order()) {
        return Err(SemigroupError::BadUnaryTable { order: s.order() });
    }
    let inv = |x: usize| unary[x];
    let mut reports = Vec::with_capacity(4);

    let mut assoc = IdentityCheckReport {
        identity: "(xy)z = x(yz)".to_string(),
        holds: true,
        counterexample: None,
    };
    'outer: for x in 0..s.order() {
        for y in 0..s.order() {
            for z in 0..s.order() {
                if s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z)) {
                    assoc.holds = false;
                    assoc.counterexample = Some(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    reports.push(assoc);

    reports.push(IdentityCheckReport::check_unary(
        "x x' = x' x".to_string(),
        s,
        |x| s.mul(x, inv(x)) == s.mul(inv(x), x),
    ));
    reports.push(IdentityCheckReport::check_unary(
        "x x'^2 = x'".to_string(),
        s,
        |x| s.mul(x, s.mul(inv(x), inv(x))) == inv(x),
    ));
    reports.push(IdentityCheckReport::check_unary(
        format!("x^{} x' = x^{}", n + 1, n),
        s,
        |x| s.mul(s.power(x, n + 1), inv(x)) == s.power(x, n),
    ));
    Ok(reports)
}

/// Cap for exhaustive Cayley-table enumeration.
pub const ENUMERATION_CAP: usize = 3;

/// Streams every associative table on `order` elements by filtering all
/// `order^(order²)` binary operations.
pub fn enumerate_semigroups(order: usize) -> Result<SemigroupEnumeration, SemigroupError> {
    if order == 0 {
        return Err(SemigroupError::Empty);
    }
    if order > ENUMERATION_CAP {
        return Err(SemigroupError::SizeGuard {
            size: order,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(SemigroupEnumeration {
        order,
        next: 0,
        total: (order as u64).pow((order * order) as u32),
    })
}

#[derive(Debug)]
pub struct SemigroupEnumeration {
    order: usize,
    next: u64,
    total: u64,
}

impl Iterator for SemigroupEnumeration {
    type Item = FiniteSemigroup;

    fn next(&mut self) -> Option<FiniteSemigroup> {
        while self.next < self.total {
            let mut code = self.next;
            self.next += 1;
            let cells = self.order * self.order;
            let mut table = Vec::with_capacity(cells);
            for _ in 0..cells {
                table.push((code % self.order as u64) as usize);
                code /= self.order as u64;
            }
            let candidate = FiniteSemigroup {
                order: self.order,
                table,
            };
            if candidate.check_associative().is_ok() {
                return Some(candidate);
            }
        }
        None
    }
}
