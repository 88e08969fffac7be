//! Run configuration shared by the CLI and the probing machinery.

use crate::rat::{parse_rat, rat, Rat};

/// Tunables for exactness fallbacks, resource caps and randomized probes.
/// The seed makes every randomized probe reproducible; identical
/// configuration and seed give byte-identical reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Tolerance attached to verdicts that had to fall back to numeric
    /// comparison (the region kernels themselves stay exact).
    pub epsilon: Rat,
    /// Row cap for Fourier–Motzkin elimination.
    pub fm_row_cap: usize,
    /// Total iteration budget for randomized model search
    /// (split internally into restarts × iterations).
    pub search_budget: u64,
    /// Cap on language enumeration size in audits.
    pub enum_cap: usize,
    /// Seed for every randomized probe.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            epsilon: rat(1, 1_000_000_000),
            fm_row_cap: 10_000,
            search_budget: 40_000,
            enum_cap: 100_000,
            seed: 1,
        }
    }
}

impl Config {
    pub fn fm_budget(&self) -> crate::geom::FmBudget {
        crate::geom::FmBudget { max_rows: self.fm_row_cap }
    }

    /// Restart/iteration split of the search budget.
    pub fn search_plan(&self) -> (u64, u64) {
        let restarts = (self.search_budget / 4_000).clamp(1, 30);
        (restarts, (self.search_budget / restarts).max(1))
    }

    /// Parses the flat `key=value` config file format. Unknown keys are an
    /// error; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(format!("line {}: expected key=value", lineno + 1))?;
            self.apply_key(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(())
    }

    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "epsilon" => {
                self.epsilon = parse_rat(value)?;
                if self.epsilon <= Rat::from_integer(0.into()) {
                    return Err("epsilon must be positive".into());
                }
            }
            "fm_row_cap" => {
                self.fm_row_cap = value.parse().map_err(|_| "invalid fm_row_cap")?;
            }
            "search_budget" => {
                self.search_budget = value.parse().map_err(|_| "invalid search_budget")?;
            }
            "enum_cap" => {
                self.enum_cap = value.parse().map_err(|_| "invalid enum_cap")?;
            }
            "seed" => {
                self.seed = value.parse().map_err(|_| "invalid seed")?;
            }
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides() {
        let mut c = Config::default();
        c.apply_file("seed=42\nfm_row_cap=500 # tighter\n\nepsilon=1/100").unwrap();
        assert_eq!(c.seed, 42);
        assert_eq!(c.fm_row_cap, 500);
        assert_eq!(c.epsilon, rat(1, 100));
        assert!(c.apply_file("nope=1").is_err());
        assert!(c.apply_file("epsilon=0").is_err());
    }
}
