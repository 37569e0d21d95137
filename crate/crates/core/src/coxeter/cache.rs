//! On-disk cache of element tables, stored as versioned JSON.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CoxeterError, CoxeterSystem, GroupSpec};

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    spec: GroupSpec,
    field_base: u32,
    order: usize,
    num_roots: usize,
    perms: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// File name for a group spec: the sanitized label, or a hash of the matrix.
pub fn cache_file_name(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Label(l) => {
            let clean: String = l
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                .collect();
            format!("{clean}.v{CACHE_FORMAT_VERSION}.json")
        }
        GroupSpec::Matrix(m) => {
            let h = fnv1a(m.iter().flatten().flat_map(|x| x.to_le_bytes()));
            format!("matrix-{h:016x}.v{CACHE_FORMAT_VERSION}.json")
        }
    }
}

impl CoxeterSystem {
    /// Loads the element table from `cache_dir` when present and valid, otherwise
    /// builds it and writes the cache. A corrupt or stale cache file is rebuilt.
    pub fn load_or_build(
        spec: &GroupSpec,
        size_cap: usize,
        cache_dir: Option<&Path>,
    ) -> Result<(CoxeterSystem, CacheStatus), CoxeterError> {
        let Some(dir) = cache_dir else {
            return Ok((CoxeterSystem::build(spec, size_cap)?, CacheStatus::Disabled));
        };
        let path: PathBuf = dir.join(cache_file_name(spec));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
                if file.version == CACHE_FORMAT_VERSION && &file.spec == spec && file.order <= size_cap {
                    if let Ok(sys) = CoxeterSystem::from_parts(spec, file.perms) {
                        if sys.field().base() == file.field_base
                            && sys.order() == file.order
                            && sys.num_reflections() == file.num_roots
                        {
                            return Ok((sys, CacheStatus::Hit));
                        }
                    }
                }
            }
        }
        let sys = CoxeterSystem::build(spec, size_cap)?;
        let file = CacheFile {
            version: CACHE_FORMAT_VERSION,
            spec: spec.clone(),
            field_base: sys.field().base(),
            order: sys.order(),
            num_roots: sys.num_reflections(),
            perms: sys.raw_perms().to_vec(),
        };
        fs::create_dir_all(dir).map_err(|e| CoxeterError::Cache(e.to_string()))?;
        let text = serde_json::to_string(&file).map_err(|e| CoxeterError::Cache(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text).map_err(|e| CoxeterError::Cache(e.to_string()))?;
        fs::rename(&tmp, &path).map_err(|e| CoxeterError::Cache(e.to_string()))?;
        Ok((sys, CacheStatus::Miss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GroupSpec::Label("B3".into());
        let (a, s1) = CoxeterSystem::load_or_build(&spec, 1000, Some(dir.path())).unwrap();
        assert_eq!(s1, CacheStatus::Miss);
        let (b, s2) = CoxeterSystem::load_or_build(&spec, 1000, Some(dir.path())).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(a.order(), b.order());
        for x in a.elements() {
            assert_eq!(a.reduced_word(x), b.reduced_word(x));
        }
    }

    #[test]
    fn corrupt_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GroupSpec::Label("A2".into());
        fs::write(dir.path().join(cache_file_name(&spec)), "{not json").unwrap();
        let (w, s) = CoxeterSystem::load_or_build(&spec, 1000, Some(dir.path())).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        assert_eq!(w.order(), 6);
    }

    #[test]
    fn file_names_are_stable() {
        assert_eq!(cache_file_name(&GroupSpec::Label("I2(5)".into())), "I2_5_.v1.json");
        let m = GroupSpec::Matrix(vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(cache_file_name(&m), cache_file_name(&m.clone()));
    }
}
