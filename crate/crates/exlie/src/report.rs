//! Pass/fail records produced by the verification routines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// How identity suites pick their inputs beyond basis tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    /// Random elements drawn per suite.
    pub samples: usize,
    /// Spaces with at most this many elements are enumerated completely.
    pub enumerate_up_to: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 0x5eed_c0de, samples: 24, enumerate_up_to: 625 }
    }
}

impl Sampling {
    pub fn with_seed(seed: u64) -> Self {
        Sampling { seed, ..Self::default() }
    }

    /// A generator for one suite; `stream` separates suites sharing a seed.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), passed, detail: None });
    }

    pub fn push_detail(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: Some(detail.into()) });
    }

    pub fn sampled(sampling: Sampling) -> Self {
        Report { checks: Vec::new(), sampling: Some(sampling) }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.sampling = self.sampling.or(other.sampling);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            write!(out, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(out, " ({d})")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}
