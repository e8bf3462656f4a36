//! On-disk cache of extension inventories: one JSON-lines file per
//! `(p, f, e)`, a header line with a checksum of the body, then one
//! extension per line.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::enumerate::{Inventory, LocalFieldExt};
use super::PadicError;

#[derive(Serialize, Deserialize)]
struct Header {
    schema: u32,
    p: u64,
    f: u32,
    e: u32,
    prec_b: u32,
    classified_prec: u32,
    tuple_count: u128,
    count: usize,
    sha256: String,
}

fn file_name(p: u64, f: u32, e: u32) -> String {
    format!("p{p}_f{f}_e{e}.jsonl")
}

fn hex_digest(body: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(body.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn io_err(e: std::io::Error) -> PadicError {
    PadicError::Io(e.to_string())
}

/// Writes an inventory to `dir`, creating the directory if needed.
pub fn cache_store(dir: &Path, inv: &Inventory) -> Result<(), PadicError> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let mut body = String::new();
    for ext in &inv.extensions {
        body.push_str(&serde_json::to_string(ext).expect("extension serializes"));
        body.push('\n');
    }
    let header = Header {
        schema: 1,
        p: inv.p,
        f: inv.f,
        e: inv.e,
        prec_b: inv.prec_b,
        classified_prec: inv.classified_prec,
        tuple_count: inv.tuple_count,
        count: inv.extensions.len(),
        sha256: hex_digest(&body),
    };
    let path = dir.join(file_name(inv.p, inv.f, inv.e));
    let mut out = fs::File::create(&path).map_err(io_err)?;
    writeln!(
        out,
        "{}",
        serde_json::to_string(&header).expect("header serializes")
    )
    .map_err(io_err)?;
    out.write_all(body.as_bytes()).map_err(io_err)?;
    Ok(())
}

/// Loads the inventory for `(p, f, e)` from `dir`. Returns `Ok(None)` when
/// no cache entry exists; a present but inconsistent file is
/// [`PadicError::CorruptCache`].
pub fn cache_load(dir: &Path, p: u64, f: u32, e: u32) -> Result<Option<Inventory>, PadicError> {
    let path = dir.join(file_name(p, f, e));
    let content = match fs::read_to_string(&path) {
        Ok(c) => c,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(io_err(err)),
    };
    let corrupt = |msg: &str| PadicError::CorruptCache(format!("{}: {msg}", path.display()));
    let Some((header_line, body)) = content.split_once('\n') else {
        return Err(corrupt("missing header line"));
    };
    let header: Header =
        serde_json::from_str(header_line).map_err(|e| corrupt(&format!("bad header: {e}")))?;
    if header.schema != 1 {
        return Err(corrupt(&format!("unsupported schema {}", header.schema)));
    }
    if (header.p, header.f, header.e) != (p, f, e) {
        return Err(corrupt("header key does not match the file name"));
    }
    if hex_digest(body) != header.sha256 {
        return Err(corrupt("checksum mismatch"));
    }
    let mut extensions: Vec<LocalFieldExt> = Vec::with_capacity(header.count);
    for line in body.lines() {
        let ext: LocalFieldExt =
            serde_json::from_str(line).map_err(|e| corrupt(&format!("bad extension line: {e}")))?;
        extensions.push(ext);
    }
    if extensions.len() != header.count {
        return Err(corrupt("extension count does not match the header"));
    }
    Ok(Some(Inventory {
        p,
        f,
        e,
        prec_b: header.prec_b,
        classified_prec: header.classified_prec,
        tuple_count: header.tuple_count,
        extensions,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::enumerate::enumerate_extensions;
    use crate::padic::DEFAULT_TUPLE_BUDGET;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let inv = enumerate_extensions(3, 1, 2, DEFAULT_TUPLE_BUDGET).unwrap();
        cache_store(dir.path(), &inv).unwrap();
        let loaded = cache_load(dir.path(), 3, 1, 2).unwrap().unwrap();
        assert_eq!(loaded, inv);
    }

    #[test]
    fn missing_key_is_none() {
        let dir = tempfile::tempdir().unwrap();
        assert!(cache_load(dir.path(), 2, 1, 2).unwrap().is_none());
    }

    #[test]
    fn tampered_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let inv = enumerate_extensions(3, 1, 2, DEFAULT_TUPLE_BUDGET).unwrap();
        cache_store(dir.path(), &inv).unwrap();
        let path = dir.path().join(file_name(3, 1, 2));
        let content = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, content.replace("\"d\":1", "\"d\":2")).unwrap();
        assert!(matches!(
            cache_load(dir.path(), 3, 1, 2),
            Err(PadicError::CorruptCache(_))
        ));
    }

    #[test]
    fn catalog_uses_cache(){
        let dir = tempfile::tempdir().unwrap();
        let cat = crate::padic::Catalog::new(DEFAULT_TUPLE_BUDGET, Some(dir.path().into()));
        let a = cat.extensions(5, 1, 2).unwrap();
        assert!(dir.path().join(file_name(5, 1, 2)).exists());
        // a fresh catalog over the same directory loads instead of
        // enumerating
        let cat2 = crate::padic::Catalog::new(0, Some(dir.path().into()));
        let b = cat2.extensions(5, 1, 2).unwrap();
        assert_eq!(*a, *b);
    }
}
