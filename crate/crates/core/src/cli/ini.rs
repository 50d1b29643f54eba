//! A small INI reader: `[section]` headers, `key = value` lines, full-line
//! comments starting with `#` or `;`. Keys before the first header belong to
//! the unnamed top-level section.

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IniEntry {
    pub section: String,
    pub key: String,
    pub value: String,
    /// 1-based source line; 0 for entries added from the command line.
    pub line: usize,
}

impl IniEntry {
    pub fn location(&self) -> String {
        if self.line == 0 {
            format!("override --{}", self.path())
        } else {
            format!("line {}", self.line)
        }
    }

    pub fn path(&self) -> String {
        if self.section.is_empty() {
            self.key.clone()
        } else {
            format!("{}.{}", self.section, self.key)
        }
    }
}

pub fn parse_ini(text: &str) -> Result<Vec<IniEntry>> {
    let mut entries: Vec<IniEntry> = Vec::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(';') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .map(str::trim)
                .filter(|s| !s.is_empty() && !s.contains(['[', ']']))
                .ok_or_else(|| Error::Parse(format!("line {line}: malformed section header '{trimmed}'")))?;
            section = name.to_string();
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, _)| !k.is_empty() && !k.contains(char::is_whitespace))
            .ok_or_else(|| Error::Parse(format!("line {line}: expected 'key = value', got '{trimmed}'")))?;
        if let Some(first) = entries.iter().find(|e| e.section == section && e.key == key) {
            return Err(Error::Parse(format!(
                "line {line}: duplicate key '{}' (first set on line {})",
                first.path(),
                first.line
            )));
        }
        entries.push(IniEntry {
            section: section.clone(),
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(entries)
}
