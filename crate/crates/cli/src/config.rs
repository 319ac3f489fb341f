use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

/// Largest grid size accepted by the surface builders.
pub const MAX_SIZE: usize = 32;

/// Values read from an optional TOML file. Command-line flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub svg: Option<bool>,
    pub obj: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
    }
}

/// Settings shared by all commands after merging flags and config.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub svg: bool,
    pub obj: bool,
}

impl RunConfig {
    pub fn merge(flags: &crate::GlobalArgs, file: FileConfig) -> Result<Self, CliError> {
        let cfg = RunConfig {
            tol: flags.tol.or(file.tol).unwrap_or(1e-10),
            max_iter: flags.max_iter.or(file.max_iter).unwrap_or(50),
            seed: flags.seed.or(file.seed).unwrap_or(1),
            out: flags.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(".")),
            svg: flags.svg || file.svg.unwrap_or(false),
            obj: flags.obj || file.obj.unwrap_or(false),
        };
        if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
            return Err(CliError::usage(format!("tolerance must be positive, got {}", cfg.tol)));
        }
        if cfg.max_iter == 0 {
            return Err(CliError::usage("iteration budget must be positive"));
        }
        Ok(cfg)
    }

    pub fn output(&self, name: &str) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.out)
            .map_err(|e| CliError::usage(format!("cannot create {}: {e}", self.out.display())))?;
        Ok(self.out.join(name))
    }
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(())
}
