//! On-disk store for dominant characters.
//!
//! One file per `(system, highest weight)`: a header, the sorted character text and a
//! trailing `sha256` line over everything above it. Files are written to a temporary
//! name and renamed into place, so readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use donkin_core::charcalc::{CharacterStore, DominantCharacter};
use donkin_core::rootdata::{RootSystem, Weight};
use sha2::{Digest, Sha256};

const MAGIC: &str = "donkin character v1";
const EXT: &str = "char";

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

fn file_stem(lam: &Weight) -> String {
    lam.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_")
}

/// Why an entry was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEntry {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
    /// Entry count per root system, sorted by name.
    pub systems: Vec<(String, usize)>,
}

pub struct DiskCache {
    dir: PathBuf,
    rejected: AtomicU64,
    write_errors: AtomicU64,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> DiskCache {
        DiskCache {
            dir: dir.into(),
            rejected: AtomicU64::new(0),
            write_errors: AtomicU64::new(0),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Entries skipped on load because they failed validation.
    pub fn rejected(&self) -> u64 {
        self.rejected.load(Ordering::Relaxed)
    }

    pub fn write_errors(&self) -> u64 {
        self.write_errors.load(Ordering::Relaxed)
    }

    pub fn path_for(&self, system: &str, lam: &Weight) -> PathBuf {
        self.dir.join(system).join(format!("{}.{EXT}", file_stem(lam)))
    }

    pub fn render(system: &str, lam: &Weight, ch: &DominantCharacter) -> String {
        let body = format!("{MAGIC}\nsystem {system}\nweight {lam}\n{}", ch.to_text());
        let body = if body.ends_with('\n') { body } else { format!("{body}\n") };
        format!("{body}sha256 {}\n", digest(&body))
    }

    /// Parses and validates an entry against its expected system and weight.
    pub fn parse(rs: &Arc<RootSystem>, lam: Option<&Weight>, text: &str) -> Result<(Weight, DominantCharacter), String> {
        let (body, last) = text
            .trim_end_matches('\n')
            .rsplit_once('\n')
            .ok_or("truncated entry")?;
        let body = format!("{body}\n");
        let sum = last.strip_prefix("sha256 ").ok_or("missing checksum line")?;
        if sum != digest(&body) {
            return Err("checksum mismatch".into());
        }
        let mut lines = body.lines();
        if lines.next() != Some(MAGIC) {
            return Err("unknown header".into());
        }
        let system = lines.next().and_then(|l| l.strip_prefix("system ")).ok_or("missing system line")?;
        if system != rs.spec().to_string() {
            return Err(format!("entry is for {system}, expected {}", rs.spec()));
        }
        let weight = lines.next().and_then(|l| l.strip_prefix("weight ")).ok_or("missing weight line")?;
        let stored = rs.parse_weight(weight).map_err(|e| e.to_string())?;
        if let Some(lam) = lam {
            if &stored != lam {
                return Err(format!("entry is for {stored}, expected {lam}"));
            }
        }
        let rest: Vec<&str> = lines.collect();
        let ch = DominantCharacter::from_text(Arc::clone(rs), &rest.join("\n"))
            .and_then(DominantCharacter::into_genuine)
            .map_err(|e| e.to_string())?;
        if ch.get(&stored) != 1.into() {
            return Err("not the character of a dual Weyl module".into());
        }
        Ok((stored, ch))
    }

    fn write_atomic(&self, path: &Path, text: &str) -> std::io::Result<()> {
        let parent = path.parent().expect("entry paths have a parent");
        fs::create_dir_all(parent)?;
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    fn entry_files(&self) -> Vec<(String, PathBuf)> {
        let mut out = Vec::new();
        let Ok(systems) = fs::read_dir(&self.dir) else { return out };
        for sys in systems.flatten() {
            if !sys.path().is_dir() {
                continue;
            }
            let name = sys.file_name().to_string_lossy().into_owned();
            let Ok(files) = fs::read_dir(sys.path()) else { continue };
            for f in files.flatten() {
                let p = f.path();
                if p.extension().is_some_and(|e| e == EXT) {
                    out.push((name.clone(), p));
                }
            }
        }
        out.sort();
        out
    }

    pub fn stats(&self) -> CacheStats {
        let mut stats = CacheStats::default();
        for (sys, path) in self.entry_files() {
            stats.entries += 1;
            stats.bytes += fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
            match stats.systems.last_mut() {
                Some((s, n)) if *s == sys => *n += 1,
                _ => stats.systems.push((sys, 1)),
            }
        }
        stats
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let files = self.entry_files();
        for (_, p) in &files {
            fs::remove_file(p)?;
        }
        Ok(files.len())
    }

    /// Checks every entry; returns the number of good entries and the bad ones.
    pub fn verify(&self) -> (usize, Vec<BadEntry>) {
        let mut good = 0;
        let mut bad = Vec::new();
        for (sys, path) in self.entry_files() {
            let outcome = (|| -> Result<(), String> {
                let spec = sys.parse().map_err(|e: donkin_core::Error| e.to_string())?;
                let rs = RootSystem::build(&spec).map_err(|e| e.to_string())?;
                let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
                let (lam, _) = DiskCache::parse(&rs, None, &text)?;
                if path.file_stem().map(|s| s.to_string_lossy().into_owned()) != Some(file_stem(&lam)) {
                    return Err(format!("file name does not match weight {lam}"));
                }
                Ok(())
            })();
            match outcome {
                Ok(()) => good += 1,
                Err(reason) => bad.push(BadEntry { path, reason }),
            }
        }
        (good, bad)
    }
}

impl CharacterStore for DiskCache {
    fn load(&self, rs: &Arc<RootSystem>, lam: &Weight) -> Option<DominantCharacter> {
        let system = rs.spec().to_string();
        let path = self.path_for(&system, lam);
        let text = fs::read_to_string(&path).ok()?;
        match DiskCache::parse(rs, Some(lam), &text) {
            Ok((_, ch)) => Some(ch),
            Err(reason) => {
                self.rejected.fetch_add(1, Ordering::Relaxed);
                eprintln!("warning: cache entry {} skipped: {reason}", path.display());
                None
            }
        }
    }

    fn save(&self, lam: &Weight, ch: &DominantCharacter) {
        let system = ch.system().spec().to_string();
        let path = self.path_for(&system, lam);
        if let Ok(text) = fs::read_to_string(&path) {
            if DiskCache::parse(ch.system(), Some(lam), &text).is_ok() {
                return;
            }
        }
        if let Err(e) = self.write_atomic(&path, &DiskCache::render(&system, lam, ch)) {
            self.write_errors.fetch_add(1, Ordering::Relaxed);
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use donkin_core::charcalc::CharCalc;

    fn rs(name: &str) -> Arc<RootSystem> {
        RootSystem::build(&name.parse().unwrap()).unwrap()
    }

    #[test]
    fn round_trip_and_checksum() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let f4 = rs("F4");
        let lam = f4.fundamental(4);
        assert!(cache.load(&f4, &lam).is_none());
        let ch = CharCalc::new(Arc::clone(&f4)).freudenthal(&lam).unwrap();
        cache.save(&lam, &ch);
        assert_eq!(cache.load(&f4, &lam).as_ref(), Some(ch.as_ref()));
        assert_eq!(cache.verify(), (1, vec![]));
        let text = fs::read_to_string(cache.path_for("F4", &lam)).unwrap();
        assert!(text.starts_with("donkin character v1\nsystem F4\nweight [0,0,0,1]\n"));
        assert!(text.lines().last().unwrap().starts_with("sha256 "));

        // flip one multiplicity
        fs::write(cache.path_for("F4", &lam), text.replace("[0,0,0,0] 2", "[0,0,0,0] 3")).unwrap();
        assert!(cache.load(&f4, &lam).is_none());
        assert_eq!(cache.rejected(), 1);
        let (good, bad) = cache.verify();
        assert_eq!(good, 0);
        assert_eq!(bad[0].reason, "checksum mismatch");
        // saving repairs the entry
        cache.save(&lam, &ch);
        assert_eq!(cache.verify(), (1, vec![]));
    }

    #[test]
    fn wrong_weight_is_rejected() {
        let a2 = rs("A2");
        let calc = CharCalc::new(Arc::clone(&a2));
        let lam = a2.weight(&[1, 1]).unwrap();
        let ch = calc.freudenthal(&lam).unwrap();
        let text = DiskCache::render("A2", &lam, &ch);
        assert!(DiskCache::parse(&a2, Some(&a2.fundamental(1)), &text).is_err());
        assert!(DiskCache::parse(&rs("B2"), None, &text).is_err());
        assert!(DiskCache::parse(&a2, Some(&lam), "").is_err());
        assert!(DiskCache::parse(&a2, Some(&lam), &text).is_ok());
    }

    #[test]
    fn stats_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path().join("nested"));
        assert_eq!(cache.stats(), CacheStats::default());
        assert_eq!(cache.verify(), (0, vec![]));
        for name in ["A2", "G2"] {
            let r = rs(name);
            let calc = CharCalc::new(Arc::clone(&r)).with_store(Arc::new(DiskCache::new(cache.dir())));
            calc.freudenthal(&r.fundamental(1)).unwrap();
            calc.freudenthal(&r.fundamental(2)).unwrap();
        }
        let s = cache.stats();
        assert_eq!(s.entries, 4);
        assert_eq!(s.systems, vec![("A2".to_string(), 2), ("G2".to_string(), 2)]);
        assert_eq!(cache.clear().unwrap(), 4);
        assert_eq!(cache.stats().entries, 0);
    }
}
