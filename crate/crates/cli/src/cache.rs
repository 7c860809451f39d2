//! Append-only JSON-lines cache of verdicts keyed by spec, characteristic
//! and certification mode.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use wlplab::{CertifyMode, Characteristic, WlpVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub verdict: WlpVerdict,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub version: String,
}

pub struct Cache {
    path: PathBuf,
    entries: Mutex<HashMap<String, WlpVerdict>>,
    file: Mutex<File>,
}

impl Cache {
    /// Loads every well-formed line of `path` (creating it if needed).
    /// Malformed lines, such as a line cut short by an interrupted run, are
    /// skipped.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                if let Ok(entry) = serde_json::from_str::<CacheEntry>(&line?) {
                    entries.insert(entry.key, entry.verdict);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self {
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            file: Mutex::new(file),
        })
    }

    pub fn key(spec: &str, characteristic: Characteristic, certify: CertifyMode) -> String {
        format!("{spec}|char={characteristic}|certify={certify}")
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<WlpVerdict> {
        self.entries.lock().expect("cache lock").get(key).cloned()
    }

    pub fn append(&self, key: &str, verdict: &WlpVerdict) -> io::Result<()> {
        let entry = CacheEntry {
            key: key.to_string(),
            verdict: verdict.clone(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        let mut line = serde_json::to_string(&entry)?;
        line.push('\n');
        {
            let mut file = self.file.lock().expect("cache lock");
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        self.entries
            .lock()
            .expect("cache lock")
            .insert(entry.key, entry.verdict);
        Ok(())
    }
}
