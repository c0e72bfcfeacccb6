//! `applicable` and `squarefree` subcommands.

use clap::Subcommand;
use serde_json::json;

use epilat_core::words::{
    contains_square, enumerate_square_free, is_applicable, is_applicable_within,
};

use crate::manifest::RunManifest;
use crate::parse;
use crate::{CmdResult, Failure, Outcome};

pub fn applicable(
    pattern: &str,
    target: &str,
    budget: Option<u64>,
    manifest: &mut RunManifest,
) -> CmdResult {
    manifest.set_subcommand("applicable");
    manifest.record_param("pattern", pattern);
    manifest.record_param("target", target);
    let pattern = parse::word(pattern)?;
    let target = parse::word(target)?;
    let witness = match budget {
        Some(b) => is_applicable_within(&pattern, &target, b)
            .map_err(|e| Failure::Resource(e.to_string()))?,
        None => is_applicable(&pattern, &target),
    };
    match witness {
        Some(w) => Ok(Outcome::json(
            0,
            json!({
                "applicable": true,
                "pattern": pattern.to_string(),
                "target": target.to_string(),
                "witness": w,
            }),
        )
        .with_summary(format!("{pattern} is applicable to {target}"))),
        None => Ok(Outcome::json(1, json!({ "applicable": false }))
            .with_summary(format!("{pattern} is not applicable to {target}"))),
    }
}

#[derive(Subcommand)]
pub enum SquarefreeCmd {
    /// Report the first square factor of a word, if any.
    Check { word: String },
    /// List the square-free words over the first `alphabet` letters up to a
    /// length bound.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        alphabet: u32,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

pub fn squarefree(cmd: &SquarefreeCmd, manifest: &mut RunManifest) -> CmdResult {
    match cmd {
        SquarefreeCmd::Check { word } => {
            manifest.set_subcommand("squarefree check");
            manifest.record_param("word", word);
            let w = parse::word(word)?;
            match contains_square(&w) {
                Some(sq) => Ok(Outcome::json(
                    1,
                    json!({
                        "word": w.to_string(),
                        "squarefree": false,
                        "square": sq,
                    }),
                )
                .with_summary(format!("{w} contains a square at {}", sq_pos(&w)))),
                None => Ok(Outcome::json(
                    0,
                    json!({ "word": w.to_string(), "squarefree": true }),
                )),
            }
        }
        SquarefreeCmd::Enumerate { alphabet, max_len } => {
            manifest.set_subcommand("squarefree enumerate");
            manifest.record_param("alphabet", alphabet.to_string());
            manifest.record_param("max_len", max_len.to_string());
            let words: Vec<String> = enumerate_square_free(*alphabet, *max_len)
                .map(|w| w.to_string())
                .collect();
            Ok(Outcome::json(
                0,
                json!({
                    "alphabet": alphabet,
                    "max_length": max_len,
                    "count": words.len(),
                    "words": words,
                }),
            ))
        }
    }
}

fn sq_pos(w: &epilat_core::words::Word) -> usize {
    contains_square(w).map(|s| s.position).unwrap_or(0)
}
