//! Run manifest written next to every command's outputs so a run can be
//! replayed byte-for-byte.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::format::write_json;
use crate::Result;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: PathBuf,
    pub output_dir: PathBuf,
    pub seed: u64,
    /// Named tolerance overrides; sorted map keeps the file byte-stable.
    pub tolerances: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn write(&self, out_dir: &Path) -> Result<()> {
        write_json(&out_dir.join("manifest.json"), self)
    }
}
