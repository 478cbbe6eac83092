//! Run manifests: config echo, version, wall time, output digests.
//!
//! Identical configs and seeds give byte-identical manifests except for the
//! `timing.` lines.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

pub struct Manifest {
    command: String,
    seed: Option<u64>,
    start: Instant,
    started_unix_ms: u128,
}

impl Manifest {
    pub fn start(argv: &[String]) -> Self {
        Manifest {
            command: argv.join(" "),
            seed: None,
            start: Instant::now(),
            started_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Writes `<first output>.manifest` listing all outputs with digests.
    pub fn write(self, outputs: &[PathBuf]) -> std::io::Result<()> {
        let Some(first) = outputs.first() else {
            return Ok(());
        };
        let mut text = String::new();
        let _ = writeln!(text, "# illposed run manifest");
        let _ = writeln!(text, "version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "command = {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(text, "seed = {seed}");
        }
        let _ = writeln!(text, "timing.started_unix_ms = {}", self.started_unix_ms);
        let _ = writeln!(text, "timing.wall_ms = {}", self.start.elapsed().as_millis());
        for path in outputs {
            let bytes = std::fs::read(path)?;
            let digest = Sha256::digest(&bytes);
            let mut hex = String::with_capacity(64);
            for b in digest {
                let _ = write!(hex, "{b:02x}");
            }
            let _ = writeln!(text, "output.sha256 = {hex}  {}", path.display());
        }
        let manifest_path = manifest_path(first);
        std::fs::write(manifest_path, text)
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest");
    output.with_file_name(name)
}
