//! Reading fan, ray and series documents.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use wallcross::base::CYFanRays;
use wallcross::fan::{EnergyValues, FanSpec};
use wallcross::series::{ClassSeries, SeriesRecord};
use wallcross::{parse_rational, Rational};

use crate::CliError;

/// One fan per document. Rationals are strings `"p/q"` or `"p"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpecFile {
    pub n: usize,
    pub extra_rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub max_cones: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub energies: Option<EnergyFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyFile {
    pub beta_hat: String,
    pub gamma: Vec<String>,
    #[serde(rename = "H", default)]
    pub h: Vec<String>,
}

/// Rays of a Calabi–Yau fan with the adapted covector `m0`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaysFile {
    pub rays: Vec<Vec<i64>>,
    pub m0: Vec<i64>,
    #[serde(default)]
    pub constants: Option<Vec<String>>,
}

/// Reads `path`, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| CliError::Usage(format!("IoError: {}: {e}", path.display())))?;
    Ok(text)
}

/// Parses JSON, reporting syntax and schema problems with line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let kind = if e.is_data() {
            "SchemaError"
        } else {
            "ParseError"
        };
        CliError::Usage(format!(
            "{kind}: {what} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn rational(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim())
        .ok_or_else(|| CliError::Usage(format!("ParseError: {what}: `{s}` is not a rational")))
}

/// Comma-separated rationals; the empty string is the empty list.
pub fn rational_list(s: &str, what: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| rational(t, what)).collect()
}

pub fn integer_list(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| {
                CliError::Usage(format!("ParseError: {what}: `{t}` is not an integer"))
            })
        })
        .collect()
}

/// Builds the fan; construction errors count as malformed input.
pub fn fan_from_text(text: &str) -> Result<FanSpec, CliError> {
    let file: FanSpecFile = parse_json(text, "fan spec")?;
    let spec = FanSpec::new(file.n, file.extra_rays, file.max_cones)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match file.energies {
        None => Ok(spec),
        Some(e) => {
            let values = EnergyValues {
                beta_hat: rational(&e.beta_hat, "energies.beta_hat")?,
                gamma: e
                    .gamma
                    .iter()
                    .map(|s| rational(s, "energies.gamma"))
                    .collect::<Result<_, _>>()?,
                h: e.h
                    .iter()
                    .map(|s| rational(s, "energies.H"))
                    .collect::<Result<_, _>>()?,
            };
            spec.with_energies(values)
                .map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

pub fn parse_fan_spec(path: &Path) -> Result<FanSpec, CliError> {
    fan_from_text(&read_text(path)?)
}

pub fn parse_rays(path: &Path) -> Result<CYFanRays, CliError> {
    let file: RaysFile = parse_json(&read_text(path)?, "rays file")?;
    let constants = file
        .constants
        .map(|cs| {
            cs.iter()
                .map(|c| rational(c, "constants"))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    CYFanRays::new(file.rays, file.m0, constants).map_err(|e| CliError::Usage(e.to_string()))
}

/// A JSON array of canonical series records, checked against `(n, m)`.
pub fn parse_series(path: &Path, n: usize, m: usize) -> Result<ClassSeries, CliError> {
    let records: Vec<SeriesRecord> = parse_json(&read_text(path)?, "series")?;
    ClassSeries::from_records(n, m, &records).map_err(|e| CliError::Usage(e.to_string()))
}
