//! On-disk cache: `<root>/v<VERSION>/<key>/chain.bin` and `classes.json`.
//!
//! `chain.bin` is a magic tag, the format version, a little-endian payload
//! (degree, then per level the base point and its generators) and the SHA-256
//! of the payload. A version mismatch is a miss; a checksum or verification
//! failure is an integrity error. Writers take a lock file in the key directory.

use std::fs::{self, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::perm::{Permutation, StabilizerChain};

/// Bumped on any change to either serialized format.
pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the cache directory; a command-line flag wins.
pub const CACHE_ENV: &str = "ORDER3_CACHE_DIR";

const MAGIC: &[u8; 8] = b"O3CHAIN\0";
const LOCK_ATTEMPTS: u32 = 600;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error at {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cache integrity error in {path}: {msg}")]
    Integrity { path: String, msg: String },
    #[error("cache entry {0} is locked by another writer")]
    Locked(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

#[derive(Serialize, Deserialize)]
struct ClassFile<T> {
    version: u32,
    sha256: String,
    records: T,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    /// The flag value if given, else the environment variable, else no cache.
    pub fn resolve(flag: Option<PathBuf>) -> Option<Self> {
        flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .filter(|p| !p.as_os_str().is_empty())
            .map(Self::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Directory-safe key: the sanitized name plus a digest of the exact name.
    pub fn key_for(&self, name: &str) -> String {
        let safe: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .take(48)
            .collect();
        let digest = Sha256::digest(name.as_bytes());
        format!("{safe}-{}", &hex(&digest)[..12])
    }

    fn dir(&self, key: &str) -> PathBuf {
        self.root.join(format!("v{CACHE_VERSION}")).join(key)
    }

    fn lock(&self, key: &str) -> Result<LockGuard, CacheError> {
        let dir = self.dir(key);
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let path = dir.join(".lock");
        for _ in 0..LOCK_ATTEMPTS {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(LockGuard(path)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                    thread::sleep(Duration::from_millis(50))
                }
                Err(e) => return Err(io_err(&path)(e)),
            }
        }
        Err(CacheError::Locked(key.to_string()))
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }

    pub fn store_chain(&self, key: &str, chain: &StabilizerChain) -> Result<(), CacheError> {
        let _guard = self.lock(key)?;
        let mut payload = Vec::new();
        payload.extend((chain.degree() as u32).to_le_bytes());
        payload.extend((chain.levels().len() as u32).to_le_bytes());
        for level in chain.levels() {
            payload.extend((level.base_point() as u16).to_le_bytes());
            payload.extend((level.generators().len() as u32).to_le_bytes());
            for g in level.generators() {
                for &x in g.images() {
                    payload.extend(x.to_le_bytes());
                }
            }
        }
        let mut bytes = MAGIC.to_vec();
        bytes.extend(CACHE_VERSION.to_le_bytes());
        bytes.extend(&payload);
        bytes.extend(Sha256::digest(&payload));
        self.write_atomic(&self.dir(key).join("chain.bin"), &bytes)
    }

    /// `Ok(None)` on a miss (absent file or other format version).
    pub fn load_chain(&self, key: &str) -> Result<Option<StabilizerChain>, CacheError> {
        let path = self.dir(key).join("chain.bin");
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let bad = |msg: &str| CacheError::Integrity {
            path: path.display().to_string(),
            msg: msg.to_string(),
        };
        if bytes.len() < 12 + 32 || &bytes[..8] != MAGIC {
            return Err(bad("not a chain file"));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != CACHE_VERSION {
            return Ok(None);
        }
        let (payload, sum) = bytes[12..].split_at(bytes.len() - 12 - 32);
        if Sha256::digest(payload).as_slice() != sum {
            return Err(bad("checksum mismatch"));
        }
        let mut r = Reader {
            buf: payload,
            pos: 0,
        };
        let decoded = (|| {
            let degree = r.u32()? as usize;
            let nlevels = r.u32()? as usize;
            let mut base = Vec::with_capacity(nlevels);
            let mut gens = Vec::with_capacity(nlevels);
            for _ in 0..nlevels {
                base.push(r.u16()?);
                let k = r.u32()? as usize;
                let mut level = Vec::with_capacity(k);
                for _ in 0..k {
                    let imgs: Option<Vec<usize>> =
                        (0..degree).map(|_| r.u16().map(usize::from)).collect();
                    level.push(Permutation::from_images(imgs?).ok()?);
                }
                gens.push(level);
            }
            (r.pos == r.buf.len()).then_some((degree, base, gens))
        })();
        let (degree, base, gens) = decoded.ok_or_else(|| bad("truncated or malformed payload"))?;
        StabilizerChain::from_parts(degree, &base, gens)
            .map(Some)
            .map_err(|e| bad(&e.to_string()))
    }

    pub fn store_classes<T: Serialize>(&self, key: &str, records: &T) -> Result<(), CacheError> {
        let _guard = self.lock(key)?;
        let body = serde_json::to_string(records).expect("records serialize");
        let file = ClassFile {
            version: CACHE_VERSION,
            sha256: hex(&Sha256::digest(body.as_bytes())),
            records,
        };
        let text = serde_json::to_string_pretty(&file).expect("records serialize");
        self.write_atomic(&self.dir(key).join("classes.json"), text.as_bytes())
    }

    pub fn load_classes<T: Serialize + DeserializeOwned>(
        &self,
        key: &str,
    ) -> Result<Option<T>, CacheError> {
        let path = self.dir(key).join("classes.json");
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let bad = |msg: String| CacheError::Integrity {
            path: path.display().to_string(),
            msg,
        };
        let probe: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if probe.get("version").and_then(|v| v.as_u64()) != Some(u64::from(CACHE_VERSION)) {
            return Ok(None);
        }
        let file: ClassFile<T> = serde_json::from_value(probe).map_err(|e| bad(e.to_string()))?;
        let body = serde_json::to_string(&file.records).expect("records serialize");
        if hex(&Sha256::digest(body.as_bytes())) != file.sha256 {
            return Err(bad("checksum mismatch".into()));
        }
        Ok(Some(file.records))
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Option<[u8; N]> {
        let s = self.buf.get(self.pos..self.pos + N)?;
        self.pos += N;
        s.try_into().ok()
    }

    fn u16(&mut self) -> Option<u16> {
        self.take::<2>().map(u16::from_le_bytes)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take::<4>().map(u32::from_le_bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, construct_cached, GroupName};

    #[test]
    fn chain_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let name = GroupName::PSL(3, 4);
        let a = construct_cached(&name, Some(&cache)).unwrap();
        let b = construct_cached(&name, Some(&cache)).unwrap();
        assert_eq!(a.order(), 20160);
        assert_eq!(b.order(), 20160);
        assert_eq!(a.chain().base(), b.chain().base());
        let key = cache.key_for(&name.to_string());
        assert!(dir.path().join("v1").join(&key).join("chain.bin").exists());
    }

    #[test]
    fn stale_version_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let h = construct(&GroupName::Alt(5)).unwrap();
        let key = cache.key_for("Alt(5)");
        cache.store_chain(&key, h.chain()).unwrap();
        let path = dir.path().join("v1").join(&key).join("chain.bin");
        let mut bytes = fs::read(&path).unwrap();
        bytes[8..12].copy_from_slice(&(CACHE_VERSION + 1).to_le_bytes());
        fs::write(&path, bytes).unwrap();
        assert!(cache.load_chain(&key).unwrap().is_none());
        // A miss recomputes.
        assert_eq!(
            construct_cached(&GroupName::Alt(5), Some(&cache))
                .unwrap()
                .order(),
            60
        );
    }

    #[test]
    fn corruption_is_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let h = construct(&GroupName::Alt(5)).unwrap();
        let key = cache.key_for("Alt(5)");
        cache.store_chain(&key, h.chain()).unwrap();
        let path = dir.path().join("v1").join(&key).join("chain.bin");
        let mut bytes = fs::read(&path).unwrap();
        bytes[20] ^= 0xff;
        fs::write(&path, bytes).unwrap();
        assert!(matches!(
            cache.load_chain(&key),
            Err(CacheError::Integrity { .. })
        ));
        assert!(construct_cached(&GroupName::Alt(5), Some(&cache)).is_err());
    }

    #[test]
    fn classes_round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let recs = vec![(1u32, "x".to_string()), (2, "y".to_string())];
        cache.store_classes("k", &recs).unwrap();
        assert_eq!(
            cache.load_classes::<Vec<(u32, String)>>("k").unwrap(),
            Some(recs)
        );
        let path = dir.path().join("v1").join("k").join("classes.json");
        let text = fs::read_to_string(&path).unwrap().replace("\"y\"", "\"z\"");
        fs::write(&path, text).unwrap();
        assert!(cache.load_classes::<Vec<(u32, String)>>("k").is_err());
    }

    #[test]
    fn flag_wins_over_environment() {
        let c = Cache::resolve(Some(PathBuf::from("/tmp/flag"))).unwrap();
        assert_eq!(c.root(), Path::new("/tmp/flag"));
    }
}
