use std::str::FromStr;

use crate::error::{Error, Result};

/// Run-time knobs shared by the searches and table builders.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Largest polynomial degree an iterate or fiber may reach.
    pub degree_cap: u64,
    /// Largest growth factor `d^n` a canonical-height iteration may use.
    pub height_growth_cap: u64,
    /// Archimedean root-finding tolerance.
    pub tol: f64,
    /// Seed for every randomized choice (mod-p splitting, sampled tests).
    pub seed: u64,
    /// Worker threads for row-parallel tables; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_cap: 4096,
            height_growth_cap: 1 << 24,
            tol: 1e-12,
            seed: 0x5eed_b0b5,
            threads: 0,
        }
    }
}

impl Config {
    /// Parses `key = value` lines. Blank lines and `#` comments are ignored;
    /// unknown keys are an error.
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "degree_cap" => cfg.degree_cap = parse_value(key, value)?,
                "height_growth_cap" => cfg.height_growth_cap = parse_value(key, value)?,
                "tol" => cfg.tol = parse_value(key, value)?,
                "seed" => cfg.seed = parse_value(key, value)?,
                "threads" => cfg.threads = parse_value(key, value)?,
                _ => return Err(Error::Parse(format!("line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        Ok(cfg)
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value `{value}` for `{key}`")))
}
