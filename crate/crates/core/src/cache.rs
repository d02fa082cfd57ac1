//! On-disk atom tables.
//!
//! File layout (`atoms-n<n>.txt`):
//!
//! ```text
//! atoms n=<n> count=<k>
//! <atom in canonical text>      (k lines, increasing)
//! sha256=<hex of all preceding bytes>
//! ```

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::atoms::{enumerate_atoms_with_limit, is_atom, AtomTable, DEFAULT_MAX_ATOMS};
use crate::error::{Error, Result};
use crate::fsutil::{write_atomic, LockFile};
use crate::group::{Block, CyclicGroup};

/// Environment variable overriding the default cache directory.
pub const CACHE_DIR_ENV: &str = "ZEROSUM_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Loaded,
    Built,
    /// The file existed but failed validation and was replaced.
    Rebuilt,
}

pub fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("atoms-n{n}.txt"))
}

pub fn render(table: &AtomTable) -> String {
    let mut body = format!("atoms n={} count={}\n", table.group().order(), table.len());
    for a in table.atoms() {
        body.push_str(&a.to_text());
        body.push('\n');
    }
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    body.push_str(&format!("sha256={digest}\n"));
    body
}

pub fn parse(group: CyclicGroup, text: &str, path: &Path) -> Result<AtomTable> {
    let corrupt = |message: String| Error::Corrupt { path: path.to_path_buf(), message };
    let trailer_at = text
        .trim_end_matches('\n')
        .rfind('\n')
        .map(|i| i + 1)
        .ok_or_else(|| corrupt("missing checksum line".into()))?;
    let (body, trailer) = text.split_at(trailer_at);
    let digest = trailer.trim_end().strip_prefix("sha256=").ok_or_else(|| corrupt("missing checksum line".into()))?;
    if hex::encode(Sha256::digest(body.as_bytes())) != digest {
        return Err(Error::ChecksumMismatch { path: path.to_path_buf() });
    }
    let mut lines = body.lines();
    let header = lines.next().unwrap_or_default();
    let expected = format!("atoms n={} count=", group.order());
    let count: usize = header
        .strip_prefix(&expected)
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| corrupt(format!("bad header `{header}`")))?;
    let atoms = lines
        .map(|l| {
            let a = Block::parse(group, l)?;
            if !is_atom(&a) {
                return Err(corrupt(format!("`{l}` is not an atom")));
            }
            Ok(a)
        })
        .collect::<Result<Vec<_>>>()?;
    if atoms.len() != count || atoms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(corrupt("atom list is not a sorted list of the stated length".into()));
    }
    AtomTable::from_atoms(group, atoms)
}

/// Loads the cached table for Z_n, or enumerates and writes it. Invalid
/// files are never trusted: they are rebuilt with a warning.
pub fn cache_load_or_build(group: CyclicGroup, dir: &Path) -> Result<(AtomTable, CacheOutcome)> {
    let path = cache_path(dir, group.order());
    let _lock = LockFile::acquire(&path)?;
    let mut outcome = CacheOutcome::Built;
    if path.exists() {
        let loaded = std::fs::read_to_string(&path).map_err(Error::from).and_then(|text| parse(group, &text, &path));
        match loaded {
            Ok(table) => {
                log::debug!("loaded {} atoms from {}", table.len(), path.display());
                return Ok((table, CacheOutcome::Loaded));
            }
            Err(e) => {
                log::warn!("rebuilding atom cache {}: {e}", path.display());
                outcome = CacheOutcome::Rebuilt;
            }
        }
    }
    let table = enumerate_atoms_with_limit(group, DEFAULT_MAX_ATOMS)?;
    write_atomic(&path, render(&table).as_bytes())?;
    Ok((table, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cold_warm_and_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let g = CyclicGroup::new(3).unwrap();
        let (t, o) = cache_load_or_build(g, dir.path()).unwrap();
        assert_eq!((t.len(), o), (4, CacheOutcome::Built));
        let text = std::fs::read_to_string(cache_path(dir.path(), 3)).unwrap();
        assert!(text.starts_with("atoms n=3 count=4\n2^3\n1 2\n1^3\n0\nsha256="));

        let (t2, o) = cache_load_or_build(g, dir.path()).unwrap();
        assert_eq!((t2, o), (t.clone(), CacheOutcome::Loaded));

        std::fs::write(cache_path(dir.path(), 3), &text[..20]).unwrap();
        let (t3, o) = cache_load_or_build(g, dir.path()).unwrap();
        assert_eq!((t3, o), (t.clone(), CacheOutcome::Rebuilt));

        let tampered = text.replace("1^3\n", "1^3 0\n");
        std::fs::write(cache_path(dir.path(), 3), tampered).unwrap();
        let (_, o) = cache_load_or_build(g, dir.path()).unwrap();
        assert_eq!(o, CacheOutcome::Rebuilt);
    }

    #[test]
    fn checksum_detects_edit() {
        let g = CyclicGroup::new(4).unwrap();
        let table = enumerate_atoms_with_limit(g, 1000).unwrap();
        let text = render(&table);
        let p = Path::new("mem");
        assert_eq!(parse(g, &text, p).unwrap(), table);
        let edited = text.replacen("count=", "count=0", 1);
        assert!(matches!(parse(g, &edited, p), Err(Error::ChecksumMismatch { .. })));
    }
}
