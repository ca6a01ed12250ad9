//! Report files: `<sub>-<first 16 hex of sha256(config)>.json`, never
//! overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Path and content hash of an input file, so the config pins what was read.
#[derive(Debug, Clone, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

pub fn read_input(path: &Path) -> Result<(String, InputFile)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((
        text,
        InputFile {
            path: path.display().to_string(),
            sha256: digest,
        },
    ))
}

pub fn config_hash(sub: &str, config: &Value) -> String {
    let canon = serde_json::to_vec(&json!({ "subcommand": sub, "config": config })).expect("json values serialize");
    hex::encode(Sha256::digest(&canon))[..16].to_string()
}

pub enum Written {
    New(PathBuf),
    Kept(PathBuf),
}

/// Renders the report; writes it under `dir` if given, else returns it for
/// stdout.
pub fn emit(sub: &str, config: &impl Serialize, result: &impl Serialize, dir: Option<&Path>) -> Result<Option<Written>> {
    let config = serde_json::to_value(config)?;
    let report = json!({
        "subcommand": sub,
        "config": config,
        "result": serde_json::to_value(result)?,
    });
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    let Some(dir) = dir else {
        print!("{text}");
        return Ok(None);
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{sub}-{}.json", config_hash(sub, &config)));
    match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
        Ok(mut f) => {
            use std::io::Write;
            f.write_all(text.as_bytes())?;
            Ok(Some(Written::New(path)))
        }
        Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
            let old = fs::read_to_string(&path)?;
            if old != text {
                eprintln!("warning: {} exists with different content; left untouched", path.display());
            }
            Ok(Some(Written::Kept(path)))
        }
        Err(e) => Err(e).with_context(|| format!("writing {}", path.display())),
    }
}
