//! Reading instance and strategy files.

use std::fs;
use std::path::Path;

use stackprod_core::{parse_inline, validate_instance, Instance, Ratio, RawInstance};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Renders `path:line:column: message` followed by the offending line and a
/// caret under the column.
fn with_context(path: &Path, text: &str, line: usize, column: usize, message: &str) -> String {
    let mut out = format!("{}:{line}:{column}: {message}", path.display());
    if let Some(src) = text.lines().nth(line.saturating_sub(1)) {
        let pad = column.saturating_sub(1).min(src.len());
        out.push_str(&format!("\n  {src}\n  {}^", " ".repeat(pad)));
    }
    out
}

pub fn parse_raw(path: &Path, text: &str) -> Result<RawInstance, CliError> {
    serde_json::from_str(text).map_err(|e| {
        // serde reports the message with its own " at line L column C" suffix
        let full = e.to_string();
        let message = full.split(" at line ").next().unwrap_or(&full);
        CliError::Parse(with_context(path, text, e.line(), e.column(), message))
    })
}

pub fn load_raw(path: &Path) -> Result<RawInstance, CliError> {
    let text = read(path)?;
    parse_raw(path, &text)
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let raw = load_raw(path)?;
    validate_instance(&raw).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// A strategy given on the command line: inline `0,7/10,3/10` or the name of
/// a file holding either that syntax or a JSON array of rational strings.
pub fn load_strategy(arg: &str) -> Result<Vec<Ratio>, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| CliError::Parse(format!("strategy {arg}: {e}")));
    }
    parse_inline(trimmed).map_err(|e| CliError::Parse(format!("strategy {arg}: {e}")))
}
