//! `family generate` and `family verify`.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;

use epilat_core::antichain::{
    generate_family, generate_family_indexed, verify_antichain, FamilyConfig, GenerationError,
    IndexedWord,
};

use crate::manifest::RunManifest;
use crate::parse;
use crate::{CmdResult, Failure, Outcome};

#[derive(Subcommand)]
pub enum FamilyCmd {
    /// Produce a verified family, indexed by the standard rational
    /// enumeration or by an explicit pool.
    Generate {
        /// Number of members (omit when --pool fixes the index set).
        count: Option<usize>,
        /// Index the members by the rational grid a..b/d instead of the
        /// standard enumeration.
        #[arg(long)]
        pool: Option<String>,
        #[arg(long, default_value_t = 3)]
        alphabet: u32,
        /// Shortest admissible candidate word.
        #[arg(long = "min-length")]
        min_length: Option<usize>,
        /// Length ceiling for the candidate scan.
        #[arg(long = "max-length")]
        max_length: Option<usize>,
        /// Write the family (a JSON array of {index, word}) here; the
        /// certificate goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a family file and print its certificate.
    Verify { file: PathBuf },
}

fn config(alphabet: u32, min_length: Option<usize>, max_length: Option<usize>) -> FamilyConfig {
    let mut cfg = FamilyConfig {
        alphabet_size: alphabet,
        ..FamilyConfig::default()
    };
    if let Some(l) = min_length {
        cfg.min_length = l;
    }
    if let Some(l) = max_length {
        cfg.max_length = l;
    }
    cfg
}

pub fn run(cmd: &FamilyCmd, manifest: &mut RunManifest) -> CmdResult {
    match cmd {
        FamilyCmd::Generate {
            count,
            pool,
            alphabet,
            min_length,
            max_length,
            out,
        } => {
            manifest.set_subcommand("family generate");
            manifest.record_param("alphabet", alphabet.to_string());
            let cfg = config(*alphabet, *min_length, *max_length);
            manifest.record_param("min_length", cfg.min_length.to_string());
            manifest.record_param("max_length", cfg.max_length.to_string());

            let family = match (count, pool) {
                (_, Some(spec)) => {
                    manifest.record_param("pool", spec);
                    let indices: Vec<_> = parse::pool(spec)?.into_iter().collect();
                    generate_family_indexed(&indices, &cfg)
                }
                (Some(k), None) => {
                    manifest.record_param("count", k.to_string());
                    generate_family(*k, &cfg)
                }
                (None, None) => {
                    return Err(Failure::Input(
                        "family generate needs a COUNT or --pool".to_string(),
                    ))
                }
            };
            let family = family.map_err(|e| match e {
                GenerationError::Exhausted { .. } => Failure::Resource(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;

            let members_json = serde_json::to_value(&family.members).expect("family serializes");
            let cert_json =
                serde_json::to_value(&family.certificate).expect("certificate serializes");
            let summary = format!(
                "family of {} members verified: {} pair checks",
                family.members.len(),
                family.certificate.checked_pairs
            );
            match out {
                Some(path) => {
                    let rendered = format!(
                        "{}\n",
                        serde_json::to_string_pretty(&members_json).expect("serializable")
                    );
                    std::fs::write(path, rendered).map_err(|e| {
                        Failure::Input(format!("cannot write {}: {e}", path.display()))
                    })?;
                    manifest.record_output(path);
                    Ok(Outcome::json(0, cert_json).with_summary(summary))
                }
                None => Ok(Outcome::json(
                    0,
                    json!({ "family": members_json, "certificate": cert_json }),
                )
                .with_summary(summary)),
            }
        }
        FamilyCmd::Verify { file } => {
            manifest.set_subcommand("family verify");
            let bytes = manifest
                .record_input(file)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
            let members: Vec<IndexedWord> = serde_json::from_slice(&bytes)
                .map_err(|e| Failure::Input(format!("bad family file: {e}")))?;
            match verify_antichain(&members) {
                Ok(cert) => {
                    let summary = format!(
                        "certificate: {} members, {} pair checks",
                        members.len(),
                        cert.checked_pairs
                    );
                    Ok(
                        Outcome::json(0, serde_json::to_value(&cert).unwrap())
                            .with_summary(summary),
                    )
                }
                Err(violation) => {
                    let summary = format!("verification failed: {violation}");
                    Ok(
                        Outcome::json(1, json!({ "verified": false, "counterexample": violation }))
                            .with_summary(summary),
                    )
                }
            }
        }
    }
}
