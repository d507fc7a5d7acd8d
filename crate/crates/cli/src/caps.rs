use std::path::Path;

use stabilitylab::Limits;

use crate::args::Common;
use crate::CliError;

/// Defaults, then the environment cap file, then `--caps`, then the
/// individual cap flags.
pub fn resolve(common: &Common, env_file: Option<&Path>) -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    for path in env_file.into_iter().chain(common.caps.as_deref()) {
        limits = read_file(path)?;
    }
    if let Some(v) = common.matrix_dim_cap {
        limits.matrix_dim = v;
    }
    if let Some(v) = common.degree_cap {
        limits.degree = v;
    }
    if let Some(v) = common.enumeration_cap {
        limits.enumeration = v;
    }
    if let Some(v) = common.group_order_cap {
        limits.group_order = v;
    }
    if let Some(v) = common.window_words_cap {
        limits.window_words = v;
    }
    limits.validate()?;
    Ok(limits)
}

fn read_file(path: &Path) -> Result<Limits, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read cap file {}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Usage(format!("bad cap file {}: {e}", path.display())))
}
