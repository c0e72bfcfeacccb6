//! `lattice analyze | eqlattice | check-lemmas | dot`.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde::Deserialize;
use serde_json::json;

use epilat_core::lattice::{
    antichain_separation_check, chain_separation_check, equivalence_lattice, hasse_dot,
    lower_modular_elements, modularity, separation_mutation_witness, upper_modular_elements,
    verify_vv_proposition, FiniteLattice,
};

use crate::manifest::RunManifest;
use crate::{CmdResult, Failure, Outcome, Output};

#[derive(Subcommand)]
pub enum LatticeCmd {
    /// List lower- and upper-modular elements with counterexamples.
    Analyze { file: PathBuf },
    /// Build the partition lattice of an s-element set.
    Eqlattice { size: usize },
    /// Run the separation implications (and, with --eq, the
    /// upper-modularity proposition) on a lattice.
    CheckLemmas {
        /// Lattice JSON file.
        file: Option<PathBuf>,
        /// Use the partition lattice of this carrier size instead.
        #[arg(long)]
        eq: Option<usize>,
    },
    /// Emit the Hasse diagram as Graphviz DOT.
    Dot {
        file: Option<PathBuf>,
        #[arg(long)]
        eq: Option<usize>,
        /// Write the DOT text here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Lattice input: `{"size": n, "leq": [[i, j], ...]}`; the
/// reflexive-transitive closure of the pairs is taken, so covers suffice.
#[derive(Deserialize)]
struct LatticeFile {
    size: usize,
    leq: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

fn load_lattice(
    path: &Path,
    manifest: &mut RunManifest,
) -> Result<(FiniteLattice, Option<Vec<String>>), Failure> {
    let bytes = manifest
        .record_input(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: LatticeFile = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Input(format!("bad lattice file: {e}")))?;
    let lattice = FiniteLattice::from_leq_pairs(file.size, &file.leq)
        .map_err(|e| Failure::Input(format!("not a lattice: {e}")))?;
    Ok((lattice, file.labels))
}

fn pick_lattice(
    file: &Option<PathBuf>,
    eq: &Option<usize>,
    manifest: &mut RunManifest,
) -> Result<(FiniteLattice, Option<Vec<String>>), Failure> {
    match (file, eq) {
        (Some(path), None) => load_lattice(path, manifest),
        (None, Some(s)) => {
            manifest.record_param("eq", s.to_string());
            let eq = equivalence_lattice(*s).map_err(|e| Failure::Input(e.to_string()))?;
            let labels = eq
                .partitions
                .iter()
                .map(|p| {
                    p.blocks()
                        .iter()
                        .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .collect();
            Ok((eq.lattice, Some(labels)))
        }
        _ => Err(Failure::Input(
            "pass exactly one of a lattice FILE or --eq SIZE".to_string(),
        )),
    }
}

pub fn run(cmd: &LatticeCmd, manifest: &mut RunManifest) -> CmdResult {
    match cmd {
        LatticeCmd::Analyze { file } => {
            manifest.set_subcommand("lattice analyze");
            let (lattice, _) = load_lattice(file, manifest)?;
            let reports: Vec<_> = (0..lattice.size())
                .map(|x| modularity(&lattice, x))
                .collect();
            let lower = lower_modular_elements(&lattice);
            let upper = upper_modular_elements(&lattice);
            let summary = format!(
                "{} elements; lower-modular {:?}, upper-modular {:?}",
                lattice.size(),
                lower,
                upper
            );
            Ok(Outcome::json(
                0,
                json!({
                    "size": lattice.size(),
                    "lower_modular": lower,
                    "upper_modular": upper,
                    "reports": reports,
                }),
            )
            .with_summary(summary))
        }
        LatticeCmd::Eqlattice { size } => {
            manifest.set_subcommand("lattice eqlattice");
            manifest.record_param("size", size.to_string());
            let eq = equivalence_lattice(*size).map_err(|e| Failure::Input(e.to_string()))?;
            let partitions: Vec<Vec<Vec<usize>>> =
                eq.partitions.iter().map(|p| p.blocks()).collect();
            Ok(Outcome::json(
                0,
                json!({
                    "carrier": size,
                    "size": eq.lattice.size(),
                    "partitions": partitions,
                    "lower_modular": lower_modular_elements(&eq.lattice),
                    "upper_modular": upper_modular_elements(&eq.lattice),
                }),
            )
            .with_summary(format!("{} partitions of a {size}-set", eq.lattice.size())))
        }
        LatticeCmd::CheckLemmas { file, eq } => {
            manifest.set_subcommand("lattice check-lemmas");
            let (lattice, _) = pick_lattice(file, eq, manifest)?;
            let chain = chain_separation_check(&lattice);
            let anti = antichain_separation_check(&lattice);
            let mutation = separation_mutation_witness(&lattice);
            let proposition = match eq {
                Some(s) => {
                    Some(verify_vv_proposition(*s).map_err(|e| Failure::Input(e.to_string()))?)
                }
                None => None,
            };
            let all_hold =
                chain.holds && anti.holds && proposition.as_ref().is_none_or(|p| p.holds);
            let summary = if all_hold {
                "all lemma checks hold".to_string()
            } else {
                "a lemma check failed".to_string()
            };
            Ok(Outcome::json(
                if all_hold { 0 } else { 1 },
                json!({
                    "chain_separation": chain,
                    "antichain_separation": anti,
                    "mutation_witness": mutation,
                    "vv_proposition": proposition,
                }),
            )
            .with_summary(summary))
        }
        LatticeCmd::Dot { file, eq, out } => {
            manifest.set_subcommand("lattice dot");
            let (lattice, labels) = pick_lattice(file, eq, manifest)?;
            let dot = hasse_dot(&lattice, labels.as_deref());
            match out {
                Some(path) => {
                    std::fs::write(path, &dot).map_err(|e| {
                        Failure::Input(format!("cannot write {}: {e}", path.display()))
                    })?;
                    manifest.record_output(path);
                    Ok(Outcome::json(
                        0,
                        json!({ "written": path.display().to_string() }),
                    ))
                }
                None => Ok(Outcome {
                    exit: 0,
                    output: Output::Text(dot),
                    summary: None,
                }),
            }
        }
    }
}
