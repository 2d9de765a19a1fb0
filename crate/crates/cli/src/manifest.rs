//! JSON manifests: a command name, input files, parameters and an output
//! directory, turned into the argument vector of that command.
//!
//! ```json
//! {
//!   "command": "goodness",
//!   "body": "circle.json",
//!   "params": {"N": 5, "rcap": 0.05, "delta": 0.05},
//!   "out": "runs/goodness"
//! }
//! ```
//!
//! Relative paths are resolved against the manifest's directory.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::Parser;
use convexlab::{Error, Result};
use serde::Deserialize;
use serde_json::Value;

use crate::{Cli, Command};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub command: String,
    pub body: Option<PathBuf>,
    pub measure: Option<PathBuf>,
    pub set: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub out: Option<PathBuf>,
}

impl ExperimentManifest {
    pub fn to_args(&self, base: &Path) -> Result<Vec<String>> {
        if self.command == "run" {
            return Err(Error::InvalidInput(
                "a manifest cannot run another manifest".into(),
            ));
        }
        let mut args = vec!["convexlab".to_string(), self.command.clone()];
        let files = [
            ("body", &self.body),
            ("measure", &self.measure),
            ("set", &self.set),
            ("points", &self.points),
        ];
        for (flag, path) in files {
            if let Some(p) = path {
                args.push(format!("--{flag}"));
                args.push(base.join(p).to_string_lossy().into_owned());
            }
        }
        if let Some(seed) = self.seed {
            args.push("--seed".into());
            args.push(seed.to_string());
        }
        for (key, value) in &self.params {
            let flag = format!("--{key}");
            match value {
                Value::Bool(true) => args.push(flag),
                Value::Bool(false) | Value::Null => {}
                Value::Number(n) => {
                    args.push(flag);
                    args.push(n.to_string());
                }
                Value::String(s) => {
                    args.push(flag);
                    args.push(s.clone());
                }
                Value::Array(items) => {
                    let parts = items
                        .iter()
                        .map(|v| match v {
                            Value::Number(n) => Ok(n.to_string()),
                            _ => Err(Error::InvalidInput(format!(
                                "parameter `{key}` must be a list of numbers"
                            ))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    args.push(flag);
                    args.push(parts.join(","));
                }
                Value::Object(_) => {
                    return Err(Error::InvalidInput(format!(
                        "parameter `{key}` cannot be an object"
                    )))
                }
            }
        }
        if let Some(out) = &self.out {
            args.push("--out".into());
            args.push(base.join(out).to_string_lossy().into_owned());
        }
        Ok(args)
    }
}

pub fn load(path: &Path) -> Result<Command> {
    let manifest: ExperimentManifest = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let args = manifest.to_args(base)?;
    let cli = Cli::try_parse_from(&args).map_err(|e| {
        Error::InvalidInput(format!(
            "manifest does not match `{}`: {}",
            manifest.command,
            e.render()
        ))
    })?;
    Ok(cli.command)
}
