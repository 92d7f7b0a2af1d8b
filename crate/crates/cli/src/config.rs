//! Configuration resolution: command-line flags beat environment variables,
//! which beat the optional flat key=value config file, which beats defaults.

use std::path::Path;

use stacklab_core::dynamics::DEFAULT_CEILING;

use crate::report::OutputFormat;

pub const ENV_THREADS: &str = "STACKLAB_THREADS";
pub const ENV_CEILING: &str = "STACKLAB_CEILING";
pub const ENV_FORMAT: &str = "STACKLAB_FORMAT";
pub const DEFAULT_CONFIG_FILE: &str = "stacklab.conf";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub threads: Option<usize>,
    pub ceiling: usize,
    pub format: OutputFormat,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            threads: None,
            ceiling: DEFAULT_CEILING,
            format: OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
struct Partial {
    threads: Option<usize>,
    ceiling: Option<usize>,
    format: Option<OutputFormat>,
}

fn parse_file(text: &str) -> Result<Partial, String> {
    let mut p = Partial::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "threads" => {
                p.threads = Some(value.parse().map_err(|_| {
                    format!("config line {}: bad thread count {value:?}", lineno + 1)
                })?)
            }
            "ceiling" => {
                p.ceiling =
                    Some(value.parse().map_err(|_| {
                        format!("config line {}: bad ceiling {value:?}", lineno + 1)
                    })?)
            }
            "format" => p.format = Some(value.parse()?),
            other => return Err(format!("config line {}: unknown key {other:?}", lineno + 1)),
        }
    }
    Ok(p)
}

fn from_env() -> Result<Partial, String> {
    let mut p = Partial::default();
    if let Ok(v) = std::env::var(ENV_THREADS) {
        p.threads = Some(
            v.parse()
                .map_err(|_| format!("{ENV_THREADS}: bad value {v:?}"))?,
        );
    }
    if let Ok(v) = std::env::var(ENV_CEILING) {
        p.ceiling = Some(
            v.parse()
                .map_err(|_| format!("{ENV_CEILING}: bad value {v:?}"))?,
        );
    }
    if let Ok(v) = std::env::var(ENV_FORMAT) {
        p.format = Some(v.parse()?);
    }
    Ok(p)
}

/// Resolves settings from flags, the environment, and an optional config
/// file. An explicit `config_path` must exist; the default file may be
/// absent.
pub fn resolve(
    flag_threads: Option<usize>,
    flag_ceiling: Option<usize>,
    flag_format: Option<OutputFormat>,
    config_path: Option<&Path>,
) -> Result<Settings, String> {
    let file = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            parse_file(&text)?
        }
        None => {
            let default = Path::new(DEFAULT_CONFIG_FILE);
            if default.exists() {
                parse_file(&std::fs::read_to_string(default).map_err(|e| e.to_string())?)?
            } else {
                Partial::default()
            }
        }
    };
    let env = from_env()?;
    let defaults = Settings::default();
    Ok(Settings {
        threads: flag_threads
            .or(env.threads)
            .or(file.threads)
            .or(defaults.threads),
        ceiling: flag_ceiling
            .or(env.ceiling)
            .or(file.ceiling)
            .unwrap_or(defaults.ceiling),
        format: flag_format
            .or(env.format)
            .or(file.format)
            .unwrap_or(defaults.format),
    })
}
