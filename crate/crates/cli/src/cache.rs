//! Append-only JSONL store of ν records.
//!
//! One JSON object per line. Writers take an exclusive `flock` on the file
//! and readers a shared one. A line that does not parse (a write torn by a
//! crash) is skipped, and the next append starts on a fresh line.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::os::fd::{AsRawFd, RawFd};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use fptkit::estimator::LevelCache;
use fptkit::ffpoly::BracketLevel;
use fptkit::frobenius::{IdealPair, NuRecord, NuValue};

use crate::problem::level_key;

pub const CACHE_FILE: &str = "nu-v1.jsonl";
const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Line {
    key: String,
    version: String,
    e: u32,
    q: u32,
    /// `None` records a level that is not F-pure.
    nu: Option<u64>,
    witness: Option<Vec<u64>>,
}

/// `$FPT_CACHE_DIR`, else `$XDG_CACHE_HOME/fptkit`, else `~/.cache/fptkit`.
pub fn default_dir() -> Option<PathBuf> {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env("FPT_CACHE_DIR")
        .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("fptkit")))
        .or_else(|| env("HOME").map(|d| d.join(".cache").join("fptkit")))
}

/// Advisory lock held until drop. Declare it after the file it locks so
/// that it is released first.
struct Lock(RawFd);

impl Lock {
    fn new(file: &File, exclusive: bool) -> io::Result<Self> {
        let op = if exclusive { libc::LOCK_EX } else { libc::LOCK_SH };
        let fd = file.as_raw_fd();
        // SAFETY: `fd` is an open descriptor owned by `file`.
        if unsafe { libc::flock(fd, op) } != 0 {
            return Err(io::Error::last_os_error());
        }
        Ok(Lock(fd))
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        // SAFETY: the owning file is still open, see the type's docs.
        unsafe {
            libc::flock(self.0, libc::LOCK_UN);
        }
    }
}

pub struct JsonlCache {
    path: PathBuf,
    entries: RefCell<HashMap<String, Line>>,
    hits: RefCell<u32>,
    write_errors: RefCell<Vec<String>>,
}

impl JsonlCache {
    /// Opens (creating if needed) the cache file in `dir` and loads it.
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(CACHE_FILE);
        let file = OpenOptions::new().read(true).append(true).create(true).open(&path)?;
        let mut entries = HashMap::new();
        {
            let _lock = Lock::new(&file, false)?;
            for line in BufReader::new(&file).lines() {
                let Ok(line) = line else { continue };
                let Ok(rec) = serde_json::from_str::<Line>(&line) else { continue };
                if rec.version == TOOL_VERSION {
                    entries.insert(rec.key.clone(), rec);
                }
            }
        }
        Ok(JsonlCache {
            path,
            entries: RefCell::new(entries),
            hits: RefCell::new(0),
            write_errors: RefCell::new(Vec::new()),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Levels served from the file so far.
    pub fn hits(&self) -> u32 {
        *self.hits.borrow()
    }

    /// Appends that failed; the computed values are still returned.
    pub fn write_errors(&self) -> Vec<String> {
        self.write_errors.borrow().clone()
    }

    fn append(&self, line: &Line) -> io::Result<()> {
        let mut file = OpenOptions::new().read(true).append(true).open(&self.path)?;
        let _lock = Lock::new(&file, true)?;
        let len = file.metadata()?.len();
        let mut text = serde_json::to_string(line).map_err(io::Error::other)?;
        text.push('\n');
        if len > 0 {
            let mut last = [0u8];
            file.seek(SeekFrom::Start(len - 1))?;
            file.read_exact(&mut last)?;
            if last[0] != b'\n' {
                text.insert(0, '\n');
            }
        }
        file.write_all(text.as_bytes())?;
        file.flush()
    }

    /// Looks up a level without counting a hit.
    pub fn peek(&self, pair: &IdealPair, lvl: &BracketLevel) -> Option<NuRecord> {
        let key = level_key(pair, lvl.e());
        let entries = self.entries.borrow();
        let line = entries.get(&key)?;
        if line.e != lvl.e() || line.q != lvl.q() {
            return None;
        }
        Some(NuRecord {
            level: *lvl,
            nu: line.nu.map_or(NuValue::NotFPure, NuValue::Finite),
            witness: line.witness.clone(),
        })
    }
}

impl LevelCache for JsonlCache {
    fn get(&self, pair: &IdealPair, lvl: &BracketLevel) -> Option<NuRecord> {
        let rec = self.peek(pair, lvl)?;
        *self.hits.borrow_mut() += 1;
        Some(rec)
    }

    fn put(&self, pair: &IdealPair, rec: &NuRecord) {
        let line = Line {
            key: level_key(pair, rec.level.e()),
            version: TOOL_VERSION.to_string(),
            e: rec.level.e(),
            q: rec.level.q(),
            nu: rec.nu.finite(),
            witness: rec.witness.clone(),
        };
        if let Err(err) = self.append(&line) {
            self.write_errors.borrow_mut().push(format!("{}: {err}", self.path.display()));
        }
        self.entries.borrow_mut().insert(line.key.clone(), line);
    }
}
