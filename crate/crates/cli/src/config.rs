//! Run configuration: flags over an optional TOML file over defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand. All optional so a config file can
/// supply them.
#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Preset name (trivial, cyclicK, sym3, dihedral8, quaternion8) or group file
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Truncation level of the Fock space
    #[arg(long, global = true)]
    pub level: Option<usize>,
    /// Series order in hbar
    #[arg(long, global = true)]
    pub order: Option<u32>,
    /// Bound on ||rho|| for stable constants
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Level n of the wreath product
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Power k of the JM elements
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Number of sampled pairs or triples
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall time in each report (output is then not reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
    /// TOML file with any of the keys above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    group: Option<String>,
    level: Option<usize>,
    order: Option<u32>,
    cap: Option<usize>,
    n: Option<usize>,
    k: Option<u32>,
    samples: Option<usize>,
    seed: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    timing: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: String,
    pub level: usize,
    pub order: u32,
    pub cap: usize,
    pub n: Option<usize>,
    pub k: u32,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

pub const DEFAULT_LEVEL: usize = 4;
pub const DEFAULT_ORDER: u32 = 4;
pub const DEFAULT_CAP: usize = 3;

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("bad config {}", path.display()))
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            group: flags.group.clone().or(file.group).unwrap_or_else(|| "trivial".to_string()),
            level: flags.level.or(file.level).unwrap_or(DEFAULT_LEVEL),
            order: flags.order.or(file.order).unwrap_or(DEFAULT_ORDER),
            cap: flags.cap.or(file.cap).unwrap_or(DEFAULT_CAP),
            n: flags.n.or(file.n),
            k: flags.k.or(file.k).unwrap_or(3),
            samples: flags.samples.or(file.samples).unwrap_or(24),
            seed: flags.seed.or(file.seed).unwrap_or(11),
            format: flags.format.or(file.format).unwrap_or(Format::Json),
            out: flags.out.clone().or(file.out),
            timing: flags.timing || file.timing.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.level > 10 {
            bail!("--level {} is beyond what exact dense blocks can hold here (max 10)", self.level);
        }
        if self.order > 12 {
            bail!("--order {} too large (max 12)", self.order);
        }
        if self.cap == 0 || self.cap > 6 {
            bail!("--cap must be between 1 and 6");
        }
        if matches!(self.n, Some(0)) {
            bail!("--n must be positive");
        }
        if self.k > 12 {
            bail!("--k {} too large (max 12)", self.k);
        }
        if self.samples == 0 {
            bail!("--samples must be positive");
        }
        Ok(())
    }

    /// `n` when given, else `fallback`.
    pub fn n_or(&self, fallback: usize) -> usize {
        self.n.unwrap_or(fallback)
    }
}
