//! `epigroup analyze` and `epigroup scan`.

use std::path::PathBuf;

use clap::Subcommand;
use serde::Deserialize;
use serde_json::json;

use epilat_core::epigroups::{
    analyze, check_e_n, check_e_n_with_unary, enumerate_semigroups, FiniteSemigroup,
    SemigroupError, ENUMERATION_CAP,
};

use crate::manifest::RunManifest;
use crate::{CmdResult, Failure, Outcome};

#[derive(Subcommand)]
pub enum EpigroupCmd {
    /// Compute pseudo-inverses, the index, and the identity reports for a
    /// Cayley table.
    Analyze {
        file: PathBuf,
        /// Check the identities at this n instead of the computed index.
        #[arg(long)]
        n: Option<usize>,
        /// Check the identities against the "unary" table from the input
        /// file instead of the computed pseudo-inverse.
        #[arg(long = "supplied-unary")]
        supplied_unary: bool,
    },
    /// Exhaustively analyze every associative table up to an order cap and
    /// report the invariant sweep.
    Scan {
        #[arg(long = "max-order", default_value_t = ENUMERATION_CAP)]
        max_order: usize,
    },
}

/// Cayley input: `{"order": m, "table": [[...], ...]}` with 0-based entries;
/// an optional `"unary"` array supplies a pseudo-inversion candidate.
#[derive(Deserialize)]
struct SemigroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    unary: Option<Vec<usize>>,
}

pub fn run(cmd: &EpigroupCmd, manifest: &mut RunManifest) -> CmdResult {
    match cmd {
        EpigroupCmd::Analyze {
            file,
            n,
            supplied_unary,
        } => {
            manifest.set_subcommand("epigroup analyze");
            let bytes = manifest
                .record_input(file)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
            let input: SemigroupFile = serde_json::from_slice(&bytes)
                .map_err(|e| Failure::Input(format!("bad semigroup file: {e}")))?;
            let semigroup =
                FiniteSemigroup::from_rows(input.order, &input.table).map_err(|e| match e {
                    SemigroupError::NotAssociative { x, y, z } => Failure::InputDetailed(
                        format!("not a semigroup: {e}"),
                        json!({ "triple": [x, y, z] }),
                    ),
                    other => Failure::Input(other.to_string()),
                })?;
            let structure = analyze(&semigroup);
            let n = n.unwrap_or(structure.index);
            manifest.record_param("n", n.to_string());
            let identities = if *supplied_unary {
                let unary = input.unary.ok_or_else(|| {
                    Failure::Input(
                        "--supplied-unary needs a \"unary\" table in the input".to_string(),
                    )
                })?;
                check_e_n_with_unary(&semigroup, n, &unary)
                    .map_err(|e| Failure::Input(e.to_string()))?
            } else {
                check_e_n(&semigroup, n)
            };
            let all_hold = identities.iter().all(|r| r.holds);
            let summary = format!(
                "order {}, index {}, identities at n={n}: {}",
                semigroup.order(),
                structure.index,
                if all_hold { "all hold" } else { "violated" }
            );
            Ok(Outcome::json(
                0,
                json!({
                    "order": semigroup.order(),
                    "index": structure.index,
                    "unit_of": structure.unit_of,
                    "pseudo_inverse": structure.pseudo_inverse,
                    "n": n,
                    "identities": identities,
                    "member_of_e_n": all_hold,
                }),
            )
            .with_summary(summary))
        }
        EpigroupCmd::Scan { max_order } => {
            manifest.set_subcommand("epigroup scan");
            manifest.record_param("max_order", max_order.to_string());
            let mut orders = Vec::new();
            for order in 1..=*max_order {
                let stream =
                    enumerate_semigroups(order).map_err(|e| Failure::Input(e.to_string()))?;
                let mut count = 0usize;
                let mut index_histogram = vec![0usize; order + 1];
                let mut violations = 0usize;
                for s in stream {
                    let e = analyze(&s);
                    count += 1;
                    index_histogram[e.index] += 1;
                    let ok_at_index = check_e_n(&s, e.index).iter().all(|r| r.holds);
                    let fails_below =
                        e.index < 2 || !check_e_n(&s, e.index - 1).last().unwrap().holds;
                    if !ok_at_index || !fails_below {
                        violations += 1;
                    }
                }
                orders.push(json!({
                    "order": order,
                    "semigroups": count,
                    "index_histogram": index_histogram,
                    "violations": violations,
                }));
            }
            let clean = orders.iter().all(|o| o["violations"].as_u64() == Some(0));
            Ok(Outcome::json(
                if clean { 0 } else { 1 },
                json!({ "orders": orders, "all_invariants_hold": clean }),
            )
            .with_summary(if clean {
                "invariant sweep clean".to_string()
            } else {
                "invariant sweep found violations".to_string()
            }))
        }
    }
}
