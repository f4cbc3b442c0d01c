use std::fs;
use std::path::Path;

use chaintree::{parse_edge_list, ChainSpec, LabeledGraph, DEFAULT_EDGE_CAP};

use crate::CliError;

/// Environment variable overriding the edge cap for graph expansion.
pub const EDGE_CAP_ENV: &str = "CHAINTREE_MAX_EDGES";

/// Accepts inline JSON (`{"m":[..],"n":[..]}`), the inline form `m=1,1;n=2,2`,
/// or a path to a file holding either.
pub fn resolve_spec(arg: &str) -> Result<ChainSpec, CliError> {
    let text = arg.trim();
    if text.starts_with('{') {
        return ChainSpec::from_json(text).map_err(|e| CliError::Input(e.to_string()));
    }
    if text.contains('=') {
        return text.parse().map_err(|e: chaintree::SpecError| CliError::Input(e.to_string()));
    }
    let content = fs::read_to_string(text)
        .map_err(|e| CliError::Input(format!("cannot read spec file {text}: {e}")))?;
    let content = content.trim();
    if content.starts_with('{') {
        ChainSpec::from_json(content).map_err(|e| CliError::Input(format!("{text}: {e}")))
    } else {
        content.parse().map_err(|e: chaintree::SpecError| CliError::Input(format!("{text}: {e}")))
    }
}

pub fn read_edge_list(path: &Path) -> Result<LabeledGraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn edge_cap() -> Result<usize, CliError> {
    match std::env::var(EDGE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{EDGE_CAP_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_EDGE_CAP),
    }
}
