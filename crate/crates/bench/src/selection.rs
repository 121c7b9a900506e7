//! Selection files: one node id per line. Blank lines are ignored.

use std::path::Path;

use scndp_core::{Error, NodeSet};

use crate::error::{read_text, Result};

pub fn parse_selection(text: &str) -> Result<NodeSet> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let id = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("expected a node id, found `{line}`"),
        })?;
        ids.push(id);
    }
    Ok(NodeSet::new(ids)?)
}

pub fn read_selection(path: &Path) -> Result<NodeSet> {
    parse_selection(&read_text(path)?)
}

pub fn selection_text(s: &NodeSet) -> String {
    s.iter().map(|v| format!("{v}\n")).collect()
}

pub fn write_selection(path: &Path, s: &NodeSet) -> Result<()> {
    std::fs::write(path, selection_text(s))?;
    Ok(())
}

/// Comma-separated ids as given on the command line.
pub fn parse_id_list(list: &str) -> Result<NodeSet> {
    parse_selection(&list.replace(',', "\n"))
}
