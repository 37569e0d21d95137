//! Run configuration: command-line flags layered over an optional TOML file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use clap::Args;
use serde::Deserialize;

use sbdw_core::coxeter::GroupSpec;
use sbdw_core::geometry::BasePointMode;
use sbdw_core::sbdw::DEFAULT_SUITE_CAP;

use crate::UsageError;

/// Largest group the CLI builds unless `--size-cap` says otherwise (H4).
pub const DEFAULT_GROUP_CAP: usize = 14_400;
/// Groups above this order trigger a runtime warning.
pub const SLOW_GROUP_ORDER: usize = 1152;
pub const DEFAULT_LP_ATTEMPTS: usize = 20;
pub const DEFAULT_LP_SEED: u64 = 7;

#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Type label such as A3, B4, H3, I2(7), A1xA2, or a Coxeter matrix as JSON.
    #[arg(long, short, global = true)]
    pub group: Option<String>,
    /// Coxeter element as a word in the generators (s1s2s3, 1 2 3) or "all".
    #[arg(long = "c", global = true)]
    pub c: Option<String>,
    /// Use a seeded rational base point instead of the canonical one.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for reports and exports.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for cached group tables.
    #[arg(long, env = "SBDW_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest group order that will be built.
    #[arg(long, global = true)]
    pub size_cap: Option<usize>,
    /// Largest group order for the theorem suite and conjecture scans.
    #[arg(long, global = true)]
    pub suite_cap: Option<usize>,
    /// Number of candidate base points tried by the stability search.
    #[arg(long, global = true)]
    pub lp_attempts: Option<usize>,
    /// Seed for the stability search candidates.
    #[arg(long, global = true)]
    pub lp_seed: Option<u64>,
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub group: Option<String>,
    pub c: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub size_cap: Option<usize>,
    pub suite_cap: Option<usize>,
    pub lp_attempts: Option<usize>,
    pub lp_seed: Option<u64>,
    /// Commands executed by `run`.
    pub commands: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementChoice {
    All,
    Word(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub coxeter_element: ElementChoice,
    pub base_point: BasePointMode,
    pub commands: Vec<String>,
    pub output_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub size_cap: usize,
    pub suite_cap: usize,
    pub lp_attempts: usize,
    pub lp_seed: u64,
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let t = text.trim();
    if t.starts_with('[') {
        let m: Vec<Vec<u32>> =
            serde_json::from_str(t).map_err(|e| UsageError(format!("bad Coxeter matrix '{t}': {e}")))?;
        Ok(GroupSpec::Matrix(m))
    } else {
        Ok(GroupSpec::Label(t.to_string()))
    }
}

pub fn parse_element(text: &str) -> Result<ElementChoice> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(ElementChoice::All);
    }
    sbdw_core::coxeter::parse_word(text)
        .map(ElementChoice::Word)
        .map_err(|e| UsageError(e.to_string()).into())
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let group = flags
            .group
            .clone()
            .or(file.group)
            .ok_or_else(|| UsageError("no group given (use --group)".into()))?;
        let c = flags.c.clone().or(file.c).unwrap_or_else(|| "all".into());
        let seed = flags.seed.or(file.seed);
        Ok(RunConfig {
            group: parse_group(&group)?,
            coxeter_element: parse_element(&c)?,
            base_point: seed.map_or(BasePointMode::Canonical, BasePointMode::Seeded),
            commands: file.commands.unwrap_or_default(),
            output_dir: flags.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(".")),
            cache_dir: flags.cache_dir.clone().or(file.cache_dir),
            size_cap: flags.size_cap.or(file.size_cap).unwrap_or(DEFAULT_GROUP_CAP),
            suite_cap: flags.suite_cap.or(file.suite_cap).unwrap_or(DEFAULT_SUITE_CAP),
            lp_attempts: flags.lp_attempts.or(file.lp_attempts).unwrap_or(DEFAULT_LP_ATTEMPTS),
            lp_seed: flags.lp_seed.or(file.lp_seed).unwrap_or(DEFAULT_LP_SEED),
        })
    }
}
