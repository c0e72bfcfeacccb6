//! `variety build`, `variety compare`, and `variety free-object`.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::json;

use epilat_core::antichain::IndexedWord;
use epilat_core::varieties::{
    build_variety, compare, free_object_enumerate, VarietyError, VarietySpec, ZeroReducedSystem,
};
use epilat_core::words::Word;

use crate::manifest::RunManifest;
use crate::parse;
use crate::{CmdResult, Failure, Outcome};

#[derive(Subcommand)]
pub enum VarietyCmd {
    /// Realize a spec against a family file and print the identity system.
    Build {
        /// Inline spec `kind:n:xi` (e.g. `C:1:0`) or a JSON spec file.
        spec: String,
        #[arg(long)]
        family: PathBuf,
        /// Pool grid a..b/d; required with an inline spec.
        #[arg(long)]
        pool: Option<String>,
    },
    /// Compare the varieties of two specs over a shared family.
    Compare {
        spec_a: String,
        spec_b: String,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        pool: Option<String>,
    },
    /// Enumerate the nonzero words of the relatively free object of an
    /// explicit system.
    FreeObject {
        /// Generator words; single-letter powers (like `xx`) set the nil
        /// exponent.
        #[arg(long)]
        gens: Vec<String>,
        /// Nil exponent m for the power word x^m; inferred from a
        /// single-letter-power generator when omitted.
        #[arg(long = "nil-exponent")]
        nil_exponent: Option<usize>,
        #[arg(long)]
        alphabet: u32,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

fn load_family(path: &Path, manifest: &mut RunManifest) -> Result<Vec<IndexedWord>, Failure> {
    let bytes = manifest
        .record_input(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_slice(&bytes).map_err(|e| Failure::Input(format!("bad family file: {e}")))
}

fn load_spec(
    text: &str,
    pool: &Option<String>,
    manifest: &mut RunManifest,
) -> Result<VarietySpec, Failure> {
    if let Some((kind, n, xi)) = parse::inline_spec(text) {
        let pool_spec = pool
            .as_ref()
            .ok_or_else(|| Failure::Input(format!("inline spec {text:?} needs --pool=a..b/d")))?;
        return Ok(VarietySpec {
            kind,
            n,
            xi,
            pool: parse::pool(pool_spec)?,
        });
    }
    let path = Path::new(text);
    let bytes = manifest.record_input(path).map_err(|e| {
        Failure::Input(format!(
            "bad spec {text:?}: not kind:n:xi and not a readable file ({e})"
        ))
    })?;
    let mut spec: VarietySpec = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Input(format!("bad spec file {text:?}: {e}")))?;
    if let Some(p) = pool {
        spec.pool = parse::pool(p)?;
    }
    Ok(spec)
}

fn realize(spec: &VarietySpec, family: &[IndexedWord]) -> Result<ZeroReducedSystem, Failure> {
    build_variety(spec, family).map_err(|e| match e {
        VarietyError::MissingFamilyMember(_) => Failure::Input(e.to_string()),
        other => Failure::Input(other.to_string()),
    })
}

pub fn run(cmd: &VarietyCmd, manifest: &mut RunManifest) -> CmdResult {
    match cmd {
        VarietyCmd::Build { spec, family, pool } => {
            manifest.set_subcommand("variety build");
            manifest.record_param("spec", spec);
            if let Some(p) = pool {
                manifest.record_param("pool", p);
            }
            let members = load_family(family, manifest)?;
            let spec = load_spec(spec, pool, manifest)?;
            let system = realize(&spec, &members)?;
            let summary = format!(
                "{}: x^{} plus {} pool generators",
                system.display_name(),
                system.nil_exponent(),
                system.extra_generators().count()
            );
            Ok(Outcome::json(0, serde_json::to_value(&system).unwrap()).with_summary(summary))
        }
        VarietyCmd::Compare {
            spec_a,
            spec_b,
            family,
            pool,
        } => {
            manifest.set_subcommand("variety compare");
            manifest.record_param("spec_a", spec_a);
            manifest.record_param("spec_b", spec_b);
            if let Some(p) = pool {
                manifest.record_param("pool", p);
            }
            let members = load_family(family, manifest)?;
            let spec_a = load_spec(spec_a, pool, manifest)?;
            let spec_b = load_spec(spec_b, pool, manifest)?;
            let a = realize(&spec_a, &members)?;
            let b = realize(&spec_b, &members)?;
            let comparison = compare(&a, &b);
            let summary = format!(
                "{} vs {}: {}",
                a.display_name(),
                b.display_name(),
                match &comparison {
                    epilat_core::varieties::Comparison::Equal => "equal".to_string(),
                    epilat_core::varieties::Comparison::AStrictlyBelow { .. } =>
                        "a-strictly-below".to_string(),
                    epilat_core::varieties::Comparison::BStrictlyBelow { .. } =>
                        "b-strictly-below".to_string(),
                    epilat_core::varieties::Comparison::Incomparable { .. } =>
                        "incomparable".to_string(),
                }
            );
            Ok(Outcome::json(
                0,
                json!({
                    "a": a.display_name(),
                    "b": b.display_name(),
                    "comparison": comparison,
                }),
            )
            .with_summary(summary))
        }
        VarietyCmd::FreeObject {
            gens,
            nil_exponent,
            alphabet,
            max_len,
        } => {
            manifest.set_subcommand("variety free-object");
            manifest.record_param("gens", gens.join(" "));
            manifest.record_param("alphabet", alphabet.to_string());
            manifest.record_param("max_len", max_len.to_string());
            let words: Vec<Word> = gens
                .iter()
                .map(|g| parse::word(g))
                .collect::<Result<_, _>>()?;

            // single-letter powers define the nil exponent; the rest are
            // extra generators
            let mut inferred: Option<usize> = *nil_exponent;
            let mut extras = Vec::new();
            for w in words {
                let first = w.first_letter();
                if w.len() >= 2 && w.letters().iter().all(|&l| l == first) {
                    inferred = Some(inferred.map_or(w.len(), |m| m.min(w.len())));
                } else {
                    extras.push(w);
                }
            }
            let nil = inferred.ok_or_else(|| {
                Failure::Input(
                    "no nil exponent: pass --nil-exponent or a power generator like xx".to_string(),
                )
            })?;
            let system =
                ZeroReducedSystem::new(nil, extras).map_err(|e| Failure::Input(e.to_string()))?;
            let free = free_object_enumerate(&system, *alphabet, *max_len);
            let rendered: Vec<String> = free.iter().map(|w| w.to_string()).collect();
            let summary = format!("{} nonzero words of length <= {max_len}", rendered.len());
            Ok(Outcome::json(
                0,
                json!({
                    "nil_exponent": nil,
                    "alphabet": alphabet,
                    "max_length": max_len,
                    "count": rendered.len(),
                    "words": rendered,
                }),
            )
            .with_summary(summary))
        }
    }
}
