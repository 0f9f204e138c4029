use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Observations as read, in their original order. Only finite values are
/// admitted.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Sample { values })
    }

    pub(crate) fn from_trusted(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Sample { values }
    }

    /// Parses one decimal number per line. Blank lines and anything after a
    /// `#` are ignored. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let value: f64 = line.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("`{line}` is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("`{line}` is not finite"),
                });
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sample = Sample { values };
        let ties = sample.duplicate_magnitudes();
        if ties > 0 {
            log::warn!("{ties} observations share |value| with another; comparisons on ties are resolved by the strict/non-strict rules");
        }
        Ok(sample)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Applies `g` to every observation.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        Sample::new(self.values.iter().map(|&x| g(x)).collect())
    }

    /// Number of observations whose absolute value equals that of an
    /// earlier observation.
    pub fn duplicate_magnitudes(&self) -> usize {
        let mut mags: Vec<f64> = self.values.iter().map(|x| x.abs()).collect();
        mags.sort_by(f64::total_cmp);
        mags.windows(2).filter(|w| w[0] == w[1]).count()
    }
}
