//! Versioned on-disk cache of field log tables.
//!
//! Layout, all integers little-endian `u32`:
//!
//! ```text
//! magic "FQLT" | version | p | k | modulus[0..=k] | log[0..q]
//! ```
//!
//! `log[v]` is the discrete log of the element with vector encoding `v`
//! (`u32::MAX` for zero). Loading re-derives the antilog and Zech tables and
//! rejects any file whose log table is not consistent with multiplication by
//! the generator modulo the stored modulus.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::{FieldError, FieldOptions, FieldTable};

pub const MAGIC: &[u8; 4] = b"FQLT";
pub const VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "PRIMSURF_CACHE_DIR";

fn io_err(e: std::io::Error) -> FieldError {
    FieldError::CacheIo(e.to_string())
}

/// File name keyed by (p, k, modulus).
pub fn cache_file_name(p: u64, k: u32, modulus: &[u32]) -> String {
    let m: Vec<String> = modulus.iter().map(u32::to_string).collect();
    format!("fq-p{p}-k{k}-m{}.fqlt", m.join("_"))
}

pub fn write_table(table: &FieldTable, path: &Path) -> Result<(), FieldError> {
    let mut buf = Vec::with_capacity(16 + 4 * (table.modulus().len() + table.q() as usize));
    buf.extend_from_slice(MAGIC);
    for x in [VERSION, table.p() as u32, table.k()] {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    for &c in table.modulus() {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    for &l in table.log_table() {
        buf.extend_from_slice(&l.to_le_bytes());
    }
    let mut f = fs::File::create(path).map_err(io_err)?;
    f.write_all(&buf).map_err(io_err)
}

pub fn read_table(path: &Path) -> Result<FieldTable, FieldError> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .map_err(io_err)?
        .read_to_end(&mut bytes)
        .map_err(io_err)?;
    let corrupt = |m: &str| FieldError::CacheIntegrity(format!("{}: {m}", path.display()));
    if bytes.len() < 16 || &bytes[..4] != MAGIC {
        return Err(corrupt("bad magic"));
    }
    if bytes.len() % 4 != 0 {
        return Err(corrupt("truncated file"));
    }
    let words: Vec<u32> = bytes[4..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    let (version, p, k) = (words[0], words[1] as u64, words[2]);
    if version != VERSION {
        return Err(corrupt(&format!("unsupported version {version}")));
    }
    if k == 0 || k > 32 || words.len() < 3 + k as usize + 1 {
        return Err(corrupt("bad header"));
    }
    let modulus = words[3..3 + k as usize + 1].to_vec();
    let log = words[3 + k as usize + 1..].to_vec();
    FieldTable::from_log_table(p, k, modulus, log).map_err(|e| match e {
        FieldError::CacheIntegrity(m) => corrupt(&m),
        other => other,
    })
}

/// Loads `(p, k)` from `dir` if cached, otherwise builds it and writes the
/// cache file. A present-but-corrupt file is an error, never silently rebuilt.
pub fn load_or_build(dir: &Path, p: u64, k: u32, options: &FieldOptions) -> Result<FieldTable, FieldError> {
    let modulus = match &options.modulus {
        Some(m) => m.clone(),
        None => super::irreducible_monics(p, k).next().ok_or(FieldError::NotPrime(p))?,
    };
    let path: PathBuf = dir.join(cache_file_name(p, k, &modulus));
    if path.exists() {
        let t = read_table(&path)?;
        if t.p() != p || t.k() != k || t.modulus() != modulus.as_slice() {
            return Err(FieldError::CacheIntegrity(format!(
                "{}: header does not match its file name",
                path.display()
            )));
        }
        return Ok(t);
    }
    let opts = FieldOptions {
        modulus: Some(modulus),
        ..options.clone()
    };
    let t = FieldTable::with_options(p, k, &opts)?;
    fs::create_dir_all(dir).map_err(io_err)?;
    write_table(&t, &path)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let t = load_or_build(dir.path(), 5, 2, &FieldOptions::default()).unwrap();
        let path = dir.path().join(cache_file_name(5, 2, t.modulus()));
        assert!(path.exists());
        let again = load_or_build(dir.path(), 5, 2, &FieldOptions::default()).unwrap();
        assert_eq!(again.log_table(), t.log_table());
        assert_eq!(again.generator_vector(), t.generator_vector());

        // Swap two log entries: still a bijection, but inconsistent with the generator.
        let mut bytes = fs::read(&path).unwrap();
        let off = 16 + 4 * 3;
        let (a, b) = (off + 4 * 2, off + 4 * 3);
        for i in 0..4 {
            bytes.swap(a + i, b + i);
        }
        fs::write(&path, &bytes).unwrap();
        let err = load_or_build(dir.path(), 5, 2, &FieldOptions::default()).unwrap_err();
        assert!(matches!(err, FieldError::CacheIntegrity(_)), "{err:?}");

        fs::write(&path, b"FQLT").unwrap();
        assert!(matches!(read_table(&path), Err(FieldError::CacheIntegrity(_))));
    }
}
