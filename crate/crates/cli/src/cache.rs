//! Content-addressed on-disk store for irreducible characters.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use splint_core::chars::CharacterStore;
use splint_core::rootsys::DominantWeight;
use splint_core::weightlat::{CharacterJson, FormalCharacter};
use tempfile::NamedTempFile;

/// One stored character, written as a single JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub value: CharacterJson,
    pub checksum: String,
}

impl CacheEntry {
    pub fn new(key: String, value: CharacterJson) -> Self {
        let checksum = checksum(&value);
        CacheEntry {
            key,
            value,
            checksum,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.checksum == checksum(&self.value)
    }
}

fn checksum(value: &CharacterJson) -> String {
    let body = serde_json::to_vec(value).expect("character JSON serializes");
    hex::encode(Sha256::digest(body))
}

/// `"G2:3,2"`.
pub fn cache_key(w: &DominantWeight) -> String {
    let coeffs: Vec<String> = w.coeffs.iter().map(u32::to_string).collect();
    format!("{}:{}", w.system, coeffs.join(","))
}

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let name = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{name}.jsonl"))
    }

    /// The stored entry, if present and intact.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(text.lines().next()?).ok()?;
        (entry.key == key && entry.is_valid()).then_some(entry)
    }

    /// Writes through a temporary file and an atomic rename.
    pub fn put(&self, entry: &CacheEntry) -> std::io::Result<()> {
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path_for(&entry.key))
            .map_err(|e| e.error)?;
        Ok(())
    }
}

impl CharacterStore for DiskCache {
    fn load(&self, highest: &DominantWeight) -> Option<FormalCharacter> {
        let entry = self.get(&cache_key(highest))?;
        FormalCharacter::from_json(&entry.value).ok()
    }

    fn save(&self, highest: &DominantWeight, character: &FormalCharacter) {
        // a failed write only costs a recomputation later
        let _ = self.put(&CacheEntry::new(cache_key(highest), character.to_json()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use splint_core::chars::character_of;
    use splint_core::rootsys::Label;

    #[test]
    fn round_trip_of_the_g2_adjoint() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let w = DominantWeight::new(Label::G2, &[0, 1]).unwrap();
        let chi = character_of(Label::G2, &[0, 1]).unwrap();
        cache.save(&w, &chi.character);
        let back = cache.load(&w).unwrap();
        assert_eq!(back.sorted_terms(), chi.character.sorted_terms());
        assert_eq!(cache_key(&w), "G2:0,1");
    }

    #[test]
    fn corrupt_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let w = DominantWeight::new(Label::A(2), &[1, 0]).unwrap();
        let chi = character_of(Label::A(2), &[1, 0]).unwrap();
        cache.save(&w, &chi.character);
        let path = cache.path_for(&cache_key(&w));
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"c\":1", "\"c\":7", 1)).unwrap();
        assert!(cache.load(&w).is_none());
        fs::write(&path, "not json").unwrap();
        assert!(cache.load(&w).is_none());
        cache.save(&w, &chi.character);
        assert!(cache.load(&w).is_some());
    }
}
