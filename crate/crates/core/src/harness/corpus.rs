//! Corpus layout: one directory per revision holding `before.<ext>`,
//! `after.<ext>` (Java-like source, or `ast.json` interchange) and optional
//! `mapping.<algorithm>.json` documents.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::ast::{load_ast, parse_source, Ast};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Revision {
    pub id: String,
    pub before: PathBuf,
    pub after: PathBuf,
    /// External mapping documents by algorithm name.
    pub external: BTreeMap<String, PathBuf>,
}

impl Revision {
    pub fn from_dir(dir: &Path) -> Result<Revision> {
        let id = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| dir.display().to_string());
        let mut before = None;
        let mut after = None;
        let mut external = BTreeMap::new();
        for entry in read_dir_sorted(dir)? {
            let name = entry
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            if let Some(rest) = name.strip_prefix("mapping.").and_then(|r| r.strip_suffix(".json")) {
                external.insert(rest.to_string(), entry.clone());
            } else if name.starts_with("before.") {
                before = pick(before, entry);
            } else if name.starts_with("after.") {
                after = pick(after, entry);
            }
        }
        let missing = |what: &str| Error::Revision(format!("{}: missing {} file", dir.display(), what));
        Ok(Revision {
            id,
            before: before.ok_or_else(|| missing("before"))?,
            after: after.ok_or_else(|| missing("after"))?,
            external,
        })
    }
}

/// Prefers an interchange document over source text.
fn pick(current: Option<PathBuf>, candidate: PathBuf) -> Option<PathBuf> {
    match current {
        Some(c) if is_interchange(&c) => Some(c),
        _ => Some(candidate),
    }
}

fn is_interchange(path: &Path) -> bool {
    path.to_string_lossy().ends_with(".ast.json")
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        out.push(entry.map_err(io)?.path());
    }
    out.sort();
    Ok(out)
}

/// Revision directories under `root`, sorted by name.
pub fn discover(root: &Path) -> Result<Vec<PathBuf>> {
    Ok(read_dir_sorted(root)?.into_iter().filter(|p| p.is_dir()).collect())
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses source text or loads an interchange document, by file name.
pub fn load_tree(path: &Path) -> Result<Ast> {
    let bytes = read_file(path)?;
    if is_interchange(path) {
        return Ok(load_ast(&bytes)?);
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Revision(format!("{}: not valid UTF-8", path.display())))?;
    parse_source(&text).map_err(|e| Error::Revision(format!("{}: {}", path.display(), e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_discovery() {
        let root = tempfile::tempdir().unwrap();
        let rev = root.path().join("r1");
        fs::create_dir(&rev).unwrap();
        fs::write(rev.join("before.java"), "class A {}").unwrap();
        fs::write(rev.join("after.java"), "class A { int x; }").unwrap();
        fs::write(rev.join("mapping.gt.json"), "{}").unwrap();
        fs::create_dir(root.path().join("r0")).unwrap();
        let dirs = discover(root.path()).unwrap();
        assert_eq!(dirs.len(), 2);
        assert!(Revision::from_dir(&dirs[0]).is_err());
        let r = Revision::from_dir(&dirs[1]).unwrap();
        assert_eq!(r.id, "r1");
        assert_eq!(r.external.keys().collect::<Vec<_>>(), ["gt"]);
        assert_eq!(load_tree(&r.after).unwrap().statements().len(), 2);
    }

    #[test]
    fn syntax_errors_name_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("before.java");
        fs::write(&p, "class {").unwrap();
        let msg = load_tree(&p).unwrap_err().to_string();
        assert!(msg.contains("before.java") && msg.contains("syntax error"));
    }
}
