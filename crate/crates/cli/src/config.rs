//! `--config` files: a flat JSON object whose keys are flag names.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::args::SUBCOMMANDS;
use crate::CliError;

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = s.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

fn flags_from_json(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("config {} is not valid JSON: {e}", path.display()))
    })?;
    let Value::Object(map) = value else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let mut flags = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            return Err(CliError::Usage("config files cannot nest".into()));
        }
        match value {
            Value::Bool(true) => flags.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => {
                flags.push(flag.into());
                flags.push(n.to_string().into());
            }
            Value::String(s) => {
                flags.push(flag.into());
                flags.push(s.into());
            }
            Value::Array(_) | Value::Object(_) => {
                return Err(CliError::Usage(format!(
                    "config key `{key}` must be a scalar"
                )));
            }
        }
    }
    Ok(flags)
}

/// Splices the config flags in right after the subcommand, so anything the
/// user typed later on the command line overrides them.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let Some(at) = args.iter().position(|a| SUBCOMMANDS.iter().any(|s| a == s)) else {
        // let clap report the missing subcommand
        return Ok(args);
    };
    let flags = flags_from_json(Path::new(&path))?;
    let mut out = args[..=at].to_vec();
    out.extend(flags);
    out.extend_from_slice(&args[at + 1..]);
    Ok(out)
}
