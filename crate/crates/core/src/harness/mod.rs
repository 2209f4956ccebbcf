//! Run configuration, the verification suites, the desk-scale experiment
//! reports and their machine-readable manifest.

pub mod report;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{MomentOptions, DEFAULT_MAX_X};

pub use report::{report, Experiment, ExperimentReport, ReportParams};
pub use verify::{verify, CheckResult, Status, Suite, VerifyReport};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_MAX_NORM: u64 = 1_000_000;
/// Significant decimal digits carried by `f64`.
pub const NATIVE_DIGITS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!("unknown output format '{s}' (text, json, csv)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub precision_digits: u32,
    pub threads: usize,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub max_norm: u64,
    pub max_x: f64,
    pub force: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_digits: NATIVE_DIGITS,
            threads: 1,
            seed: DEFAULT_SEED,
            output_format: OutputFormat::Text,
            max_norm: DEFAULT_MAX_NORM,
            max_x: DEFAULT_MAX_X,
            force: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_digits < 15 {
            return Err(Error::Domain(format!("precision must be at least 15 digits, got {}", self.precision_digits)));
        }
        if self.precision_digits > NATIVE_DIGITS {
            return Err(Error::Domain(format!(
                "only double precision ({NATIVE_DIGITS} digits) is available, got {}",
                self.precision_digits
            )));
        }
        if self.threads == 0 {
            return Err(Error::Domain("threads must be at least 1".into()));
        }
        if !(self.max_x > 0.0) || self.max_norm == 0 {
            return Err(Error::Domain("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn moment_options(&self) -> MomentOptions {
        MomentOptions { max_x: self.max_x, force: self.force, threads: Some(self.threads), ..Default::default() }
    }

    /// Generator for one named stream; every randomized choice comes from here.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    pub fn check_norm(&self, what: &'static str, norm: u64) -> Result<()> {
        if norm > self.max_norm && !self.force {
            return Err(Error::CapExceeded { what, value: norm.to_string(), cap: format!("{} (use force)", self.max_norm) });
        }
        Ok(())
    }
}

/// Fixed 12-significant-digit rendering.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        sci
    }
}

/// `a+bi` with both parts at 12 significant digits.
pub fn sig12_complex(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        return sig12(z.re);
    }
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", sig12(z.re), sign, sig12(z.im.abs()))
}

/// Provenance written alongside every result.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub parallel: bool,
    pub runtime_s: f64,
    pub outputs: Vec<String>,
    /// Per-row timings for experiment reports, kept out of the results themselves.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub row_runtimes_s: Vec<f64>,
}

impl Manifest {
    pub fn new(command: impl Into<String>, config: &RunConfig) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: config.clone(),
            seed: config.seed,
            parallel: crate::moments::PARALLEL,
            runtime_s: 0.0,
            outputs: Vec::new(),
            row_runtimes_s: Vec::new(),
        }
    }
}
