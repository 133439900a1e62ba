//! Filesystem helpers.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// Write bytes atomically: into a unique temp file in the target directory,
/// then rename over the destination. Concurrent runs never observe partial
/// content.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let fail = |e: std::io::Error| CliError::processing(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(parent).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.persist(path)
        .map_err(|e| CliError::processing(format!("writing {}: {}", path.display(), e.error)))?;
    Ok(())
}

pub fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path)
        .map_err(|e| CliError::processing(format!("creating {}: {e}", path.display())))
}

/// Seed for a derived random stream, mixed with splitmix64 so nearby inputs
/// land far apart.
pub fn mix_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master;
    for word in [stream, index] {
        z = z.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(word);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
    }
    z
}

/// Seed derived from a label, for per-word streams.
pub fn mix_seed_label(master: u64, stream: u64, label: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    mix_seed(master, stream, hash)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
    }

    #[test]
    fn seed_mixing_separates_streams() {
        assert_ne!(mix_seed(7, 0, 0), mix_seed(7, 0, 1));
        assert_ne!(mix_seed(7, 0, 0), mix_seed(7, 1, 0));
        assert_ne!(mix_seed(7, 0, 0), mix_seed(8, 0, 0));
        assert_eq!(mix_seed(7, 3, 9), mix_seed(7, 3, 9));
        assert_ne!(mix_seed_label(7, 0, "cat"), mix_seed_label(7, 0, "dog"));
        assert_eq!(mix_seed_label(7, 0, "cat"), mix_seed_label(7, 0, "cat"));
    }
}
